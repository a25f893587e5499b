#include "onepoint/maps.hpp"

#include <algorithm>

#include "onepoint/textio.hpp"

namespace onepoint {

namespace {

int64_t projective_point_count(int64_t q, int n) {
    int64_t total = 1;  // (q^(n+1) - 1) / (q - 1)
    int64_t power = 1;
    for (int i = 0; i < n; ++i) {
        power *= q;
        total += power;
        if (total > (int64_t(1) << 40)) return total;
    }
    return total;
}

// Enumerates representatives of P^n(F_q): first nonzero coordinate equal 1.
template <typename Visit>
void for_each_projective_point(const FieldPtr& f, int n, Visit&& visit) {
    const int64_t q = f->order();
    for (int lead = n; lead >= 0; --lead) {
        // coordinates before `lead` are zero, coordinate `lead` is one
        const int free_vars = n - lead;
        int64_t combos = 1;
        for (int i = 0; i < free_vars; ++i) combos *= q;
        for (int64_t idx = 0; idx < combos; ++idx) {
            std::vector<Fq> pt;
            pt.reserve(size_t(n) + 1);
            for (int i = 0; i < lead; ++i) pt.push_back(Fq::zero(f));
            pt.push_back(Fq::one(f));
            int64_t rest = idx;
            for (int i = 0; i < free_vars; ++i) {
                pt.push_back(element_at(f, rest % q));
                rest /= q;
            }
            if (!visit(pt)) return;
        }
    }
}

}  // namespace

ProjMap ProjMap::make(FieldPtr field, std::vector<MPoly> coords, bool search_base_points) {
    if (coords.size() < 2) throw FormatError("a projective map needs at least two coordinates");
    const int n = int(coords.size()) - 1;
    std::optional<int> degree;
    for (const MPoly& c : coords) {
        if (c.nvars() != n + 1) throw MixedRingsError("coordinate arity mismatch");
        if (!c.field()->same(*field)) throw MixedRingsError("coordinate field mismatch");
        if (c.is_zero()) continue;
        const auto d = c.homogeneous_degree();
        if (!d) throw NotHomogeneousError("projective map coordinate");
        if (degree && *degree != *d) throw NotHomogeneousError("coordinates of unequal degree");
        if (!degree) degree = *d;
    }
    if (!degree || *degree < 1) throw FormatError("projective map must have positive degree");
    ProjMap f;
    f.n = n;
    f.field = std::move(field);
    f.coords = std::move(coords);
    f.degree = *degree;
    if (search_base_points) {
        try {
            if (auto witness = find_base_point(f, 2))
                throw BasePointHitError("common zero at " + point_string(*witness));
        } catch (const EnumerationCapExceededError&) {
            // too large to enumerate; constructors guarantee regularity
        }
    }
    return f;
}

ProjMap ProjMap::identity(const FieldPtr& f, int n) {
    std::vector<MPoly> coords;
    for (int i = 0; i <= n; ++i) coords.push_back(MPoly::variable(f, n + 1, i));
    return make(f, std::move(coords), false);
}

ProjMap ProjMap::embedded(const FieldPtr& target) const {
    ProjMap f;
    f.n = n;
    f.field = target;
    f.degree = degree;
    for (const MPoly& c : coords) f.coords.push_back(c.embedded(target));
    return f;
}

std::optional<std::vector<Fq>> find_base_point(const ProjMap& f, int ext_mult, int64_t point_cap) {
    FieldPtr k = f.field;
    if (ext_mult > 1) {
        try {
            k = FieldConfig::make(f.field->p(), f.field->k() * ext_mult);
        } catch (const LimitExceededError& e) {
            throw EnumerationCapExceededError(e.what());
        }
    }
    if (projective_point_count(k->order(), f.n) > point_cap)
        throw EnumerationCapExceededError("base point search space too large");
    const ProjMap fe = f.embedded(k);
    std::optional<std::vector<Fq>> found;
    for_each_projective_point(k, f.n, [&](const std::vector<Fq>& pt) {
        for (const MPoly& c : fe.coords)
            if (!c.eval(pt).is_zero()) return true;
        found = pt;
        return false;
    });
    return found;
}

std::vector<Fq> apply_map(const ProjMap& f, const std::vector<Fq>& point) {
    if (int(point.size()) != f.n + 1) throw FormatError("point arity mismatch");
    std::vector<Fq> image;
    image.reserve(point.size());
    bool all_zero = true;
    for (const MPoly& c : f.coords) {
        image.push_back(c.eval(point));
        all_zero = all_zero && image.back().is_zero();
    }
    if (all_zero) throw BasePointHitError("map applied at a common zero");
    return image;
}

ProjMap compose(const ProjMap& outer, const ProjMap& inner) {
    if (outer.n != inner.n) throw MixedRingsError("composition dimension mismatch");
    const FieldPtr work = common_field(outer.field, inner.field);
    const ProjMap o = outer.embedded(work);
    const ProjMap i = inner.embedded(work);
    std::vector<MPoly> coords;
    coords.reserve(o.coords.size());
    for (const MPoly& c : o.coords) coords.push_back(c.substitute(i.coords));
    ProjMap f;
    f.n = o.n;
    f.field = work;
    f.coords = std::move(coords);
    f.degree = o.degree * i.degree;
    // regularity is inherited from the factors; re-check on small fields
    try {
        if (auto witness = find_base_point(f, 1))
            throw BasePointHitError("composition lost regularity at " + point_string(*witness));
    } catch (const EnumerationCapExceededError&) {
    }
    return f;
}

bool proj_equal(const std::vector<Fq>& x, const std::vector<Fq>& y) {
    if (x.size() != y.size()) return false;
    for (size_t i = 0; i < x.size(); ++i)
        for (size_t j = 0; j < x.size(); ++j)
            if (!(x[i] * y[j] == x[j] * y[i])) return false;
    return true;
}

ProjMap abhyankar_map(int n, int64_t p, const FieldPtr& field) {
    if (n < 1) throw FormatError("dimension must be at least 1");
    if (field->p() != p) throw MixedRingsError("field characteristic does not match p");
    int64_t total = 1, power = 1;
    for (int i = 0; i < n; ++i) {
        power *= p;
        total += power;
    }
    if (total > degree_cap()) throw DegreeTooLargeError("abhyankar degree " + std::to_string(total));

    const int nv = n + 1;
    std::vector<MPoly> gs;
    for (int i = 0; i <= n; ++i) {
        MPoly g(field, nv);
        // all (i+1)-element subsets of {0..n}, in lexicographic order
        std::vector<int> subset(size_t(i) + 1);
        for (int j = 0; j <= i; ++j) subset[size_t(j)] = j;
        while (true) {
            auto mono = Monomial(size_t(nv));
            int64_t head = 1, ppow = 1;
            for (int l = 0; l < n - i; ++l) {
                ppow *= p;
                head += ppow;
            }
            mono.e[size_t(subset[0])] = int32_t(head);  // 1 + p + ... + p^(n-i)
            for (int l = 1; l <= i; ++l) {
                ppow *= p;
                mono.e[size_t(subset[size_t(l)])] = int32_t(ppow);  // p^(n-i+l)
            }
            g.add_term(mono, Fq::one(field));
            int pos = i;
            while (pos >= 0 && subset[size_t(pos)] == n - (i - pos)) --pos;
            if (pos < 0) break;
            ++subset[size_t(pos)];
            for (int l = pos + 1; l <= i; ++l) subset[size_t(l)] = subset[size_t(l - 1)] + 1;
        }
        gs.push_back(std::move(g));
    }
    return ProjMap::make(field, std::move(gs), false);
}

// ---------------------------------------------------------------------------
// Coordinate changes

std::optional<CoordChange> CoordChange::from_matrix(const FieldPtr& f, std::vector<std::vector<Fq>> rows) {
    const size_t n1 = rows.size();
    for (const auto& r : rows)
        if (r.size() != n1) throw FormatError("coordinate matrix not square");
    // Gauss-Jordan inversion
    std::vector<std::vector<Fq>> a = rows;
    auto inv = std::vector<std::vector<Fq>>(n1);
    for (size_t i = 0; i < n1; ++i) {
        inv[i].assign(n1, Fq::zero(f));
        inv[i][i] = Fq::one(f);
    }
    for (size_t col = 0; col < n1; ++col) {
        size_t pivot = col;
        while (pivot < n1 && a[pivot][col].is_zero()) ++pivot;
        if (pivot == n1) return std::nullopt;
        std::swap(a[pivot], a[col]);
        std::swap(inv[pivot], inv[col]);
        const Fq s = a[col][col].inv();
        for (size_t j = 0; j < n1; ++j) {
            a[col][j] = a[col][j] * s;
            inv[col][j] = inv[col][j] * s;
        }
        for (size_t r = 0; r < n1; ++r) {
            if (r == col || a[r][col].is_zero()) continue;
            const Fq factor = a[r][col];
            for (size_t j = 0; j < n1; ++j) {
                a[r][j] = a[r][j] - factor * a[col][j];
                inv[r][j] = inv[r][j] - factor * inv[col][j];
            }
        }
    }
    CoordChange c;
    c.field = f;
    c.mat = std::move(rows);
    c.inv = std::move(inv);
    return c;
}

CoordChange CoordChange::identity(const FieldPtr& f, int n) {
    auto rows = std::vector<std::vector<Fq>>(size_t(n) + 1);
    for (int i = 0; i <= n; ++i) {
        rows[size_t(i)].assign(size_t(n) + 1, Fq::zero(f));
        rows[size_t(i)][size_t(i)] = Fq::one(f);
    }
    return *from_matrix(f, std::move(rows));
}

bool CoordChange::is_identity() const {
    for (size_t i = 0; i < mat.size(); ++i)
        for (size_t j = 0; j < mat.size(); ++j)
            if ((i == j) ? !mat[i][j].is_one() : !mat[i][j].is_zero()) return false;
    return true;
}

MPoly CoordChange::transform(const MPoly& f) const {
    std::vector<MPoly> images;
    const int nv = n() + 1;
    images.reserve(size_t(nv));
    for (int row = 0; row < nv; ++row) {
        MPoly form(field, nv);
        for (int colv = 0; colv < nv; ++colv)
            form = form + MPoly::variable(field, nv, colv).scaled(mat[size_t(row)][size_t(colv)]);
        images.push_back(std::move(form));
    }
    return f.substitute(images);
}

std::vector<Fq> CoordChange::pullback_point(const std::vector<Fq>& x) const {
    const size_t n1 = mat.size();
    if (x.size() != n1) throw FormatError("point arity mismatch");
    const FieldPtr work = common_field(field, x[0].field());
    std::vector<Fq> out;
    out.reserve(n1);
    for (size_t i = 0; i < n1; ++i) {
        Fq acc = Fq::zero(work);
        for (size_t j = 0; j < n1; ++j) acc = acc + embed(inv[i][j], work) * embed(x[j], work);
        out.push_back(acc);
    }
    return out;
}

ProjMap CoordChange::inverse_as_map() const {
    const int nv = n() + 1;
    std::vector<MPoly> coords;
    for (int row = 0; row < nv; ++row) {
        MPoly form(field, nv);
        for (int colv = 0; colv < nv; ++colv)
            form = form + MPoly::variable(field, nv, colv).scaled(inv[size_t(row)][size_t(colv)]);
        coords.push_back(std::move(form));
    }
    return ProjMap::make(field, std::move(coords), false);
}

CoordChange CoordChange::embedded(const FieldPtr& target) const {
    CoordChange c;
    c.field = target;
    auto lift = [&](const std::vector<std::vector<Fq>>& m) {
        auto out = std::vector<std::vector<Fq>>(m.size());
        for (size_t i = 0; i < m.size(); ++i)
            for (const Fq& v : m[i]) out[i].push_back(embed(v, target));
        return out;
    };
    c.mat = lift(mat);
    c.inv = lift(inv);
    return c;
}

CoordChange normalize_hyperplanes(const std::vector<MPoly>& forms) {
    if (forms.size() < 2) throw FormatError("need n+1 linear forms");
    const FieldPtr f = forms[0].field();
    const int nv = int(forms.size());
    auto a = std::vector<std::vector<Fq>>(forms.size());
    for (size_t j = 0; j < forms.size(); ++j) {
        if (forms[j].nvars() != nv) throw MixedRingsError("form arity mismatch");
        if (forms[j].is_zero() || *forms[j].homogeneous_degree() != 1)
            throw FormatError("hyperplane forms must be linear and homogeneous");
        a[j].assign(size_t(nv), Fq::zero(f));
        for (const auto& [mono, c] : forms[j].terms())
            for (int v = 0; v < nv; ++v)
                if (mono.e[size_t(v)] == 1) a[j][size_t(v)] = c;
    }
    auto inv_change = CoordChange::from_matrix(f, a);
    if (!inv_change) throw NotInGeneralPositionError("hyperplane coefficient matrix is singular");
    // the substitution must send form_j to z_j, so transform with A^{-1}
    CoordChange c;
    c.field = f;
    c.mat = inv_change->inv;
    c.inv = inv_change->mat;
    return c;
}

// ---------------------------------------------------------------------------
// Good triples and the additive step

GoodTriple GoodTriple::make(int n, FieldPtr field, int index, MPoly cone, std::vector<Fq> point) {
    if (n < 1) throw FormatError("dimension must be at least 1");
    if (index < 0 || index > n) throw FormatError("triple index out of range");
    if (int(point.size()) != n + 1) throw FormatError("point arity mismatch");
    if (cone.nvars() != n + 1) throw MixedRingsError("cone arity mismatch");
    if (cone.is_zero()) throw ZeroPolynomialError("cone polynomial");
    if (!cone.homogeneous_degree()) throw NotHomogeneousError("cone polynomial");
    for (int v = 0; v < index; ++v)
        if (cone.mentions(v)) throw FormatError("cone mentions hyperplane variable z" + std::to_string(v));

    bool some_nonzero = false;
    for (const Fq& x : point) some_nonzero = some_nonzero || !x.is_zero();
    if (!some_nonzero) throw FormatError("projective point cannot be zero");
    for (const Fq& x : point)
        if (!x.field()->same(*point[0].field())) throw MixedFieldsError("point coordinates in different fields");

    for (int j = 0; j < index; ++j)
        if (point[size_t(j)].is_zero())
            throw PointOnDivisorError("point lies on the hyperplane z" + std::to_string(j) + " = 0");
    if (point.back().is_zero()) throw PointOnDivisorError("point lies on the hyperplane at infinity");
    if (cone.eval(point).is_zero()) throw PointOnDivisorError("cone vanishes at the marked point");

    GoodTriple t;
    t.n = n;
    t.field = std::move(field);
    t.index = index;
    t.cone = std::move(cone);
    t.point = std::move(point);
    return t;
}

GoodTriple GoodTriple::embedded(const FieldPtr& target) const {
    std::vector<Fq> pt;
    pt.reserve(point.size());
    for (const Fq& x : point) pt.push_back(embed(x, target));
    return make(n, target, index, cone.embedded(target), std::move(pt));
}

bool GoodTriple::cone_is_hyperplane_power() const {
    if (cone.num_terms() != 1) return false;
    const auto& [mono, c] = *cone.terms().begin();
    for (int v = 0; v < n; ++v)
        if (mono.e[size_t(v)] != 0) return false;
    return true;
}

Step2Result step2_map(const GoodTriple& t) {
    if (t.index >= t.n) throw FormatError("no additive step at the final index");
    const int i = t.index;
    const int nv = t.n + 1;
    const FieldPtr& f = t.field;

    // (a) the degree in z_i alone equals the total degree
    const auto view = up_view(t.cone, i);
    if (view.degree() < 1 || view.degree() != *t.cone.total_degree())
        throw ConditionFailedError('a', "cone degree in z" + std::to_string(i) + " is below its total degree");

    const AdditivePoly q = additive_multiple(view, f, nv);
    const int64_t d = q.degree();
    if (d > degree_cap()) throw DegreeTooLargeError("step degree " + std::to_string(d));

    // (b) z_n and the off-diagonal coordinates are nonzero at the point
    if (t.point.back().is_zero()) throw ConditionFailedError('b', "z_n vanishes at the point");
    const Fq zn_pow = t.point.back().pow(uint64_t(d - 1));
    for (int j = 0; j < nv; ++j) {
        if (j == i || j == t.n) continue;
        const Fq value = t.point[size_t(j)].pow(uint64_t(d)) - t.point[size_t(j)] * zn_pow;
        if (value.is_zero())
            throw ConditionFailedError('b', "w_" + std::to_string(j) + " vanishes at the point");
    }

    // (c) the constant coefficient r_0 does not vanish identically
    const MPoly& r0 = q.constant_coefficient();
    if (r0.is_zero()) throw ConditionFailedError('c', "additive multiple has zero constant coefficient");

    // (d) the additive multiple does not vanish at the point
    const MPoly wi = q.as_mpoly();
    if (wi.eval(t.point).is_zero()) throw ConditionFailedError('d', "additive multiple vanishes at the point");

    // assemble the map
    std::vector<MPoly> w;
    w.reserve(size_t(nv));
    for (int j = 0; j < nv; ++j) {
        if (j == i) {
            w.push_back(wi);
        } else if (j == t.n) {
            auto mo = Monomial(size_t(nv));
            mo.e[size_t(t.n)] = int32_t(d);
            w.push_back(MPoly::term(f, nv, mo, Fq::one(f)));
        } else {
            auto high = Monomial(size_t(nv));
            high.e[size_t(j)] = int32_t(d);
            auto mixed = Monomial(size_t(nv));
            mixed.e[size_t(j)] = 1;
            mixed.e[size_t(t.n)] = int32_t(d - 1);
            w.push_back(MPoly::term(f, nv, high, Fq::one(f)) - MPoly::term(f, nv, mixed, Fq::one(f)));
        }
    }
    ProjMap map = ProjMap::make(f, std::move(w), false);

    // the image triple; divisor membership failures here are resampleable
    GoodTriple next;
    try {
        next = GoodTriple::make(t.n, f, i + 1, r0, apply_map(map, t.point));
    } catch (const PointOnDivisorError& e) {
        throw ConditionFailedError('t', e.what());
    }

    return Step2Result{std::move(map), std::move(next), q, r0, d};
}

Step2Result step2_map(const GoodTriple& t, const CoordChange& coords) {
    GoodTriple moved;
    try {
        moved = GoodTriple::make(t.n, t.field, t.index, coords.transform(t.cone), coords.pullback_point(t.point));
    } catch (const PointOnDivisorError& e) {
        throw ConditionFailedError('t', e.what());
    }
    return step2_map(moved);
}

}  // namespace onepoint
