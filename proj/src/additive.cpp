#include "onepoint/additive.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <unordered_map>

#include "onepoint/sampling.hpp"
#include "onepoint/upoly.hpp"

namespace onepoint {

int64_t AdditivePoly::degree() const {
    int64_t d = 1;
    for (int i = 0; i < m(); ++i) d *= field->p();
    return d;
}

MPoly AdditivePoly::as_mpoly() const {
    MPoly acc(field, nvars);
    int64_t e = 1;
    for (size_t i = 0; i < coeffs.size(); ++i) {
        auto mono = Monomial(size_t(nvars));
        mono.e[size_t(t_var)] = int32_t(e);
        acc = acc + coeffs[i] * MPoly::term(field, nvars, mono, Fq::one(field));
        e *= field->p();
    }
    return acc;
}

AdditivePoly AdditivePoly::make(FieldPtr field, int nvars, int t_var, std::vector<MPoly> coeffs) {
    if (coeffs.empty()) throw ZeroPolynomialError("additive polynomial needs coefficients");
    if (coeffs.back().is_zero()) throw ZeroPolynomialError("leading additive coefficient r_m vanishes");
    for (const MPoly& c : coeffs)
        if (c.mentions(t_var)) throw MixedRingsError("additive coefficient mentions the t variable");
    AdditivePoly q;
    q.field = std::move(field);
    q.nvars = nvars;
    q.t_var = t_var;
    q.coeffs = std::move(coeffs);
    return q;
}

// ---------------------------------------------------------------------------
// Moore determinant

MPoly moore_determinant(const std::vector<MPoly>& vals) {
    if (vals.empty()) throw FormatError("moore determinant of an empty list");
    const size_t r = vals.size();
    std::vector<std::vector<MPoly>> m(r);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j) m[i].push_back(vals[i].frobenius_power(int(j)));
    return poly_matrix_det(m);
}

// ---------------------------------------------------------------------------
// Symbolic span product and the additive template

namespace {

/// S(x) = product over all (h_1..h_m) in F_p^m of (x + h_1 t_1 + ... + h_m t_m)
/// in F_p[t_1..t_m, x] (x is the last variable).  Computed by the span
/// recursion A <- A^p - A(t_j)^(p-1) A, which expands the same product while
/// keeping every intermediate additive in x; the literal factor-by-factor
/// product serves as the oracle for this routine in the tests.
MPoly symbolic_span_product(int64_t p, int m) {
    const FieldPtr fp = FieldConfig::make(p, 1);
    const int nv = m + 1;
    MPoly a = MPoly::variable(fp, nv, m);
    for (int j = 0; j < m; ++j) {
        const MPoly at_tj = a.substitute_var(m, MPoly::variable(fp, nv, j));
        a = a.frobenius_power(1) - at_tj.pow(uint64_t(p - 1)) * a;
    }
    return a;
}

// Packed-exponent arithmetic for the symmetric reduction.  Monomials in up
// to 8 variables with exponents < 256 pack into a uint64 whose numeric order
// is lex order; the working polynomials are homogeneous, so the lex and
// graded-lex leading terms coincide.
using PackedTerm = std::pair<uint64_t, int64_t>;
using PackedVec = std::vector<PackedTerm>;

uint64_t pack_shift(int m, int var) { return uint64_t(8 * (m - 1 - var)); }

PackedVec packed_mul(const PackedVec& a, const PackedVec& b, int64_t p) {
    std::unordered_map<uint64_t, int64_t> acc;
    acc.reserve(a.size() * 2);
    for (const auto& [ka, ca] : a)
        for (const auto& [kb, cb] : b) {
            int64_t& slot = acc[ka + kb];
            slot = (slot + ca * cb) % p;
        }
    PackedVec out;
    out.reserve(acc.size());
    for (const auto& [k, c] : acc)
        if (c) out.emplace_back(k, c);
    return out;
}

/// Rewrites a homogeneous symmetric polynomial in t_1..t_m as a polynomial in
/// the elementary symmetric functions s_1..s_m by the classical leading-term
/// subtraction.
MPoly symmetric_reduce(const MPoly& w_in, int m) {
    const FieldPtr fp = w_in.field();
    const int64_t p = fp->p();
    if (m > 8) throw DegreeTooLargeError("symmetric reduction supports at most 8 variables");

    MPoly out(fp, m);
    if (w_in.is_zero()) return out;

    // elementary symmetric polynomials, packed
    std::vector<PackedVec> elem(size_t(m) + 1);
    {
        const uint32_t subsets = uint32_t(1) << m;
        for (uint32_t mask = 0; mask < subsets; ++mask) {
            uint64_t key = 0;
            int size = 0;
            for (int v = 0; v < m; ++v)
                if (mask & (uint32_t(1) << v)) {
                    key += uint64_t(1) << pack_shift(m, v);
                    ++size;
                }
            elem[size_t(size)].emplace_back(key, 1);
        }
    }
    // power caches, grown on demand
    const PackedVec unit = {{0, 1}};
    std::vector<std::vector<PackedVec>> pows(size_t(m) + 1, std::vector<PackedVec>{unit});

    std::map<uint64_t, int64_t, std::greater<>> work;
    for (const auto& [mono, c] : w_in.terms()) {
        uint64_t key = 0;
        for (int v = 0; v < m; ++v) {
            if (mono.e[size_t(v)] > 255) throw DegreeTooLargeError("symmetric reduction exponent > 255");
            key += uint64_t(mono.e[size_t(v)]) << pack_shift(m, v);
        }
        work[key] = c.coeffs()[0];
    }

    while (!work.empty()) {
        const auto [lead_key, lead_c] = *work.begin();
        // unpack and check the partition shape a_1 >= ... >= a_m
        auto a = std::vector<int>(size_t(m));
        for (int v = 0; v < m; ++v) a[size_t(v)] = int((lead_key >> pack_shift(m, v)) & 0xff);
        for (int v = 0; v + 1 < m; ++v)
            if (a[size_t(v)] < a[size_t(v + 1)]) throw InternalError("symmetric reduction input is not symmetric");

        auto mono = Monomial(size_t(m));
        PackedVec prod = unit;
        for (int v = 0; v < m; ++v) {
            const int b = (v + 1 < m) ? a[size_t(v)] - a[size_t(v + 1)] : a[size_t(v)];
            mono.e[size_t(v)] = int32_t(b);
            if (b == 0) continue;
            auto& cache = pows[size_t(v + 1)];
            while (int(cache.size()) <= b) cache.push_back(packed_mul(cache.back(), elem[size_t(v + 1)], p));
            prod = packed_mul(prod, cache[size_t(b)], p);
        }
        out.add_term(mono, Fq::from_int(fp, lead_c));

        for (const auto& [k, c] : prod) {
            auto it = work.find(k);
            const int64_t cur = (it == work.end()) ? 0 : it->second;
            int64_t next = (cur - lead_c * c) % p;
            if (next < 0) next += p;
            if (next == 0) {
                if (it != work.end()) work.erase(it);
            } else if (it == work.end()) {
                work.emplace(k, next);
            } else {
                it->second = next;
            }
        }
    }
    return out;
}

MPoly drop_last_var(const MPoly& f) {
    MPoly out(f.field(), f.nvars() - 1);
    for (const auto& [m, c] : f.terms()) {
        if (m.e.back() != 0) throw InternalError("dropped variable still present");
        Monomial mm;
        mm.e.assign(m.e.begin(), m.e.end() - 1);
        out.add_term(mm, c);
    }
    return out;
}

}  // namespace

const std::vector<MPoly>& additive_template(int64_t p, int m) {
    static std::map<std::pair<int64_t, int>, std::vector<MPoly>> cache;
    static std::mutex mu;
    const auto key = std::make_pair(p, m);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    const MPoly s = symbolic_span_product(p, m);
    const UPolyView by_x = up_view(s, m);
    std::vector<MPoly> tmpl;
    int64_t next_pow = 1;
    for (int d = 0; d <= by_x.degree(); ++d) {
        const MPoly& coeff = by_x.coeffs[size_t(d)];
        if (int64_t(d) == next_pow) {
            tmpl.push_back(symmetric_reduce(drop_last_var(coeff), m));
            next_pow *= p;
        } else if (!coeff.is_zero()) {
            throw InternalError("span product has a non-p-power exponent");
        }
    }
    if (int(tmpl.size()) != m + 1) throw InternalError("span product is missing p-power coefficients");
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(key, std::move(tmpl)).first->second;
}

// ---------------------------------------------------------------------------
// Canonical additive multiple

namespace {

// Monic normalization of the view; the leading coefficient must be a nonzero
// constant of the base field.
std::vector<MPoly> monic_coeffs(const UPolyView& view, const std::string& who) {
    const int m = view.degree();
    const MPoly& lead = view.coeffs[size_t(m)];
    if (!lead.is_constant() || lead.is_zero())
        throw NonConstantLeadingCoeffError(who + ": leading coefficient must be a base-field unit");
    const Fq scale = lead.constant_value().inv();
    std::vector<MPoly> c;
    c.reserve(size_t(m) + 1);
    for (const MPoly& coeff : view.coeffs) c.push_back(coeff.scaled(scale));
    return c;
}

int64_t pow_checked(int64_t p, int m, int64_t cap) {
    int64_t d = 1;
    for (int i = 0; i < m; ++i) {
        d *= p;
        if (d > cap)
            throw DegreeTooLargeError("p^m = " + std::to_string(p) + "^" + std::to_string(m) + " exceeds cap " +
                                      std::to_string(cap));
    }
    return d;
}

}  // namespace

AdditivePoly additive_multiple(const UPolyView& P, const FieldPtr& field, int nvars) {
    const int m = P.degree();
    if (m < 1) throw FormatError("additive multiple needs degree >= 1");
    const int64_t p = field->p();
    pow_checked(p, m, additive_degree_cap);

    const std::vector<MPoly> c = monic_coeffs(P, "additive_multiple");
    const std::vector<MPoly>& tmpl = additive_template(p, m);

    // s_i -> coefficient of t^(m-i); template variable j is s_{j+1}
    std::vector<MPoly> images;
    images.reserve(size_t(m));
    for (int j = 0; j < m; ++j) images.push_back(c[size_t(m - 1 - j)]);

    std::vector<MPoly> rs;
    rs.reserve(size_t(m) + 1);
    for (const MPoly& t : tmpl) rs.push_back(t.substitute(images));

    AdditivePoly q = AdditivePoly::make(field, nvars, P.main_var, std::move(rs));

    // The construction is a theorem; verify it anyway.
    const MPoly p_poly = P.reassemble(field, nvars);
    const MPoly q_poly = q.as_mpoly();
    if (!exact_div(q_poly, p_poly).has_value()) throw InternalError("canonical additive multiple is not a multiple");
    if (!is_additive(q_poly, P.main_var)) throw InternalError("canonical additive multiple is not additive");
    if (p_poly.homogeneous_degree().has_value() && !q_poly.homogeneous_degree().has_value())
        throw InternalError("homogeneity was not preserved");
    return q;
}

std::optional<AdditivePoly> additive_multiple_lindep(const UPolyView& P, const FieldPtr& field, int nvars) {
    const int m = P.degree();
    if (m < 1) throw FormatError("additive multiple needs degree >= 1");
    const int64_t p = field->p();
    pow_checked(p, m, additive_degree_cap);
    const std::vector<MPoly> c = monic_coeffs(P, "additive_multiple_lindep");

    using Residue = std::vector<MPoly>;  // coordinates in 1, t, ..., t^(m-1)
    const MPoly zero = MPoly::zero(field, nvars);

    auto reduce = [&](std::vector<MPoly> conv) {
        for (int d = int(conv.size()) - 1; d >= m; --d) {
            if (conv[size_t(d)].is_zero()) continue;
            const MPoly top = conv[size_t(d)];
            conv[size_t(d)] = zero;
            for (int j = 0; j < m; ++j) conv[size_t(d - m + j)] = conv[size_t(d - m + j)] - top * c[size_t(j)];
        }
        conv.resize(size_t(m), zero);
        return conv;
    };
    auto mul = [&](const Residue& u, const Residue& v) {
        std::vector<MPoly> conv(size_t(2 * m - 1), zero);
        for (int i = 0; i < m; ++i) {
            if (u[size_t(i)].is_zero()) continue;
            for (int j = 0; j < m; ++j) conv[size_t(i + j)] = conv[size_t(i + j)] + u[size_t(i)] * v[size_t(j)];
        }
        return reduce(std::move(conv));
    };
    auto pow_residue = [&](Residue base, int64_t e) {
        Residue result(size_t(m), zero);
        result[0] = MPoly::one(field, nvars);
        while (e) {
            if (e & 1) result = mul(result, base);
            e >>= 1;
            if (e) base = mul(base, base);
        }
        return result;
    };

    // residues of t^(p^i) for i = 0..m
    std::vector<Residue> cols;
    Residue t(size_t(m), zero);
    if (m == 1)
        t[0] = -c[0];
    else
        t[1] = MPoly::one(field, nvars);
    cols.push_back(t);
    for (int i = 0; i < m; ++i) cols.push_back(pow_residue(cols.back(), p));

    // kernel vector by signed maximal minors of the m x (m+1) matrix
    std::vector<MPoly> rs;
    bool all_zero = true;
    for (int skip = 0; skip <= m; ++skip) {
        auto mat = std::vector<std::vector<MPoly>>(size_t(m));
        for (int row = 0; row < m; ++row)
            for (int col = 0; col <= m; ++col)
                if (col != skip) mat[size_t(row)].push_back(cols[size_t(col)][size_t(row)]);
        MPoly minor = poly_matrix_det(mat);
        if (skip % 2 == 1) minor = -minor;
        if (!minor.is_zero()) all_zero = false;
        rs.push_back(std::move(minor));
    }
    if (all_zero || rs.back().is_zero()) return std::nullopt;  // residue prefix already dependent
    return AdditivePoly::make(field, nvars, P.main_var, std::move(rs));
}

// ---------------------------------------------------------------------------
// Brute-force oracle over a field

MPoly span_product_multiple(const MPoly& P_univariate) {
    const FieldPtr base = P_univariate.field();
    const int64_t p = base->p();
    UPoly pu = UPoly::from_mpoly(P_univariate);
    const int m = pu.degree();
    if (m < 1) throw FormatError("span product needs degree >= 1");
    const int64_t pm = pow_checked(p, m, additive_degree_cap);
    pu = pu.monic();

    // Find a splitting field by escalating the extension degree.
    FieldPtr split;
    std::vector<Fq> neg_roots;
    for (int e = 1; e <= 24 && !split; ++e) {
        FieldPtr k;
        try {
            k = FieldConfig::make(p, base->k() * e);
        } catch (const LimitExceededError&) {
            break;
        }
        const UPoly pe = pu.embedded(k);
        auto roots = upoly_roots(pe);
        int total = 0;
        for (const auto& [r, mult] : roots) total += mult;
        if (total == m) {
            split = k;
            for (const auto& [r, mult] : roots)
                for (int i = 0; i < mult; ++i) neg_roots.push_back(-r);
        }
    }
    if (!split) throw SplittingNotFoundError("no splitting field within the enumeration cap");

    // Expand the product over all F_p-combinations of the roots.
    UPoly s = UPoly::one(split);
    for (int64_t idx = 0; idx < pm; ++idx) {
        int64_t rest = idx;
        Fq v = Fq::zero(split);
        for (int j = 0; j < m; ++j) {
            const int64_t h = rest % p;
            rest /= p;
            if (h) v = v + neg_roots[size_t(j)] * Fq::from_int(split, h);
        }
        s = s * UPoly(split, {v, Fq::one(split)});
    }

    // Coefficients are Galois-stable, so they descend to the base field.
    std::unordered_map<int64_t, Fq> down;
    for (int64_t i = 0; i < base->order(); ++i) {
        const Fq b = element_at(base, i);
        down.emplace(embed(b, split).index(), b);
    }
    MPoly out(base, 1);
    for (int d = 0; d <= s.degree(); ++d) {
        const Fq c = s.coeff(d);
        if (c.is_zero()) continue;
        auto it = down.find(c.index());
        if (it == down.end()) throw InternalError("span product coefficient escaped the base field");
        auto mono = Monomial(size_t(1));
        mono.e[0] = int32_t(d);
        out.add_term(mono, it->second);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Additivity and independence predicates

bool is_additive(const MPoly& q, int t_var) {
    if (q.is_zero()) return true;
    const int64_t p = q.field()->p();
    for (const auto& [mono, c] : q.terms()) {
        int64_t e = mono.e[size_t(t_var)];
        if (e == 0) return false;
        while (e % p == 0) e /= p;
        if (e != 1) return false;
    }
    if (q.num_terms() <= 64) {
        // the defining identity Q(t+u) = Q(t) + Q(u), with u a fresh variable
        const int nv = q.nvars() + 1;
        MPoly ext(q.field(), nv);
        for (const auto& [mono, c] : q.terms()) {
            Monomial mm;
            mm.e.assign(mono.e.begin(), mono.e.end());
            mm.e.push_back(0);
            ext.add_term(mm, c);
        }
        const MPoly t = MPoly::variable(q.field(), nv, t_var);
        const MPoly u = MPoly::variable(q.field(), nv, nv - 1);
        const MPoly lhs = ext.substitute_var(t_var, t + u);
        const MPoly rhs = ext + ext.substitute_var(t_var, u);
        if (!(lhs == rhs)) return false;
    }
    return true;
}

bool fp_linearly_independent(const std::vector<Fq>& vals) {
    if (vals.empty()) return true;
    const FieldPtr f = vals[0].field();
    const int64_t p = f->p();
    const size_t k = size_t(f->k());
    if (vals.size() > k) return false;
    std::vector<std::vector<int64_t>> rows;
    for (const Fq& v : vals) {
        if (!v.field()->same(*f)) throw MixedFieldsError("independence test across fields");
        rows.emplace_back(v.coeffs().begin(), v.coeffs().end());
    }
    size_t rank = 0;
    for (size_t col = 0; col < k && rank < rows.size(); ++col) {
        size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        int64_t inv = 1;
        for (int64_t x = 1; x < p; ++x)
            if (rows[rank][col] * x % p == 1) inv = x;
        for (auto& v : rows[rank]) v = v * inv % p;
        for (size_t r = rank + 1; r < rows.size(); ++r) {
            const int64_t factor = rows[r][col];
            if (!factor) continue;
            for (size_t cc = 0; cc < k; ++cc) {
                rows[r][cc] = (rows[r][cc] - factor * rows[rank][cc]) % p;
                if (rows[r][cc] < 0) rows[r][cc] += p;
            }
        }
        ++rank;
    }
    return rank == vals.size();
}

MobiusWitness mobius_search(const std::vector<Fq>& vals, const std::optional<Fq>& extra,
                            const FieldPtr& coeff_field, uint64_t seed, uint64_t max_trials) {
    if (vals.empty()) throw FormatError("mobius search needs at least one value");
    FieldPtr work = vals[0].field();
    if (extra) work = common_field(work, extra->field());
    work = common_field(work, coeff_field);
    std::vector<Fq> points;
    for (const Fq& v : vals) points.push_back(embed(v, work));
    if (extra) points.push_back(embed(*extra, work));

    // Enumerate the whole 4-tuple space when it fits the trial budget;
    // otherwise sample uniformly with replacement.
    const uint64_t q = uint64_t(coeff_field->order());
    const bool full = q <= 65536 && q * q * q * q <= max_trials;
    const uint64_t trials = full ? q * q * q * q : max_trials;

    Sampler sampler(seed);
    for (uint64_t trial = 0; trial < trials; ++trial) {
        uint64_t idx[4];
        if (full) {
            uint64_t rest = trial;
            for (auto& slot : idx) {
                slot = rest % q;
                rest /= q;
            }
        } else {
            for (auto& slot : idx) slot = sampler.below(q);
        }
        const Fq a = element_at(coeff_field, int64_t(idx[0]));
        const Fq b = element_at(coeff_field, int64_t(idx[1]));
        const Fq c = element_at(coeff_field, int64_t(idx[2]));
        const Fq d = element_at(coeff_field, int64_t(idx[3]));
        const Fq ae = embed(a, work), be = embed(b, work), ce = embed(c, work), de = embed(d, work);
        if ((ae * de - be * ce).is_zero()) continue;  // degenerate tau
        std::vector<Fq> images;
        images.reserve(points.size());
        bool defined = true;
        for (const Fq& v : points) {
            const Fq den = ce + de * v;
            if (den.is_zero()) {
                defined = false;
                break;
            }
            images.push_back((ae + be * v) / den);
        }
        if (!defined) continue;
        if (fp_linearly_independent(images)) return MobiusWitness{a, b, c, d, trial};
    }
    throw ExhaustedError(trials);
}

}  // namespace onepoint
