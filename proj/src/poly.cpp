#include "onepoint/poly.hpp"

#include <algorithm>
#include <atomic>

namespace onepoint {

bool Monomial::divides(const Monomial& o) const {
    if (e.size() != o.e.size()) return false;
    for (size_t i = 0; i < e.size(); ++i)
        if (e[i] > o.e[i]) return false;
    return true;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r(*this);
    for (size_t i = 0; i < e.size(); ++i) r.e[i] += o.e[i];
    return r;
}

Monomial Monomial::operator/(const Monomial& o) const {
    Monomial r(*this);
    for (size_t i = 0; i < e.size(); ++i) r.e[i] -= o.e[i];
    return r;
}

bool GrlexLess::operator()(const Monomial& a, const Monomial& b) const {
    const int da = a.total(), db = b.total();
    if (da != db) return da < db;
    // lex with z0 most significant: a < b when the first differing exponent
    // is smaller in a
    for (size_t i = 0; i < a.e.size(); ++i)
        if (a.e[i] != b.e[i]) return a.e[i] < b.e[i];
    return false;
}

namespace {
std::atomic<int> g_degree_cap{4096};
}

int degree_cap() { return g_degree_cap.load(); }
void set_degree_cap(int cap) { g_degree_cap.store(cap); }

MPoly MPoly::constant(const FieldPtr& f, int nvars, const Fq& c) {
    MPoly r(f, nvars);
    if (!c.is_zero()) r.terms_.emplace(Monomial(size_t(nvars)), c);
    return r;
}

MPoly MPoly::variable(const FieldPtr& f, int nvars, int var) {
    auto m = Monomial(size_t(nvars));
    m.e[size_t(var)] = 1;
    return term(f, nvars, m, Fq::one(f));
}

MPoly MPoly::term(const FieldPtr& f, int nvars, const Monomial& m, const Fq& c) {
    MPoly r(f, nvars);
    if (!c.is_zero()) r.terms_.emplace(m, c);
    return r;
}

std::optional<int> MPoly::total_degree() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.rbegin()->first.total();  // grlex leader has maximal degree
}

std::optional<int> MPoly::degree_in(int var) const {
    if (terms_.empty()) return std::nullopt;
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, int(m.e[size_t(var)]));
    return d;
}

std::optional<int> MPoly::homogeneous_degree() const {
    if (terms_.empty()) throw ZeroPolynomialError("homogeneous degree of 0");
    const int d = terms_.begin()->first.total();
    for (const auto& [m, c] : terms_)
        if (m.total() != d) return std::nullopt;
    return d;
}

bool MPoly::mentions(int var) const {
    for (const auto& [m, c] : terms_)
        if (m.e[size_t(var)] != 0) return true;
    return false;
}

bool MPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.total() == 0);
}

Fq MPoly::constant_value() const {
    if (terms_.empty()) return Fq::zero(field_);
    auto it = terms_.find(Monomial(size_t(nvars_)));
    return it == terms_.end() ? Fq::zero(field_) : it->second;
}

const std::pair<const Monomial, Fq>& MPoly::leading() const {
    if (terms_.empty()) throw ZeroPolynomialError("leading term of 0");
    return *terms_.rbegin();
}

Fq MPoly::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Fq::zero(field_) : it->second;
}

void MPoly::require_same_ring(const MPoly& o) const {
    if (!field_ || !o.field_) throw InternalError("detached polynomial");
    if (nvars_ != o.nvars_)
        throw MixedRingsError("variable counts differ: " + std::to_string(nvars_) + " vs " + std::to_string(o.nvars_));
    if (field_.get() != o.field_.get() && !field_->same(*o.field_))
        throw MixedRingsError(field_->key() + " vs " + o.field_->key());
}

void MPoly::add_term(const Monomial& m, const Fq& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

MPoly MPoly::operator+(const MPoly& o) const {
    require_same_ring(o);
    MPoly r(*this);
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

MPoly MPoly::operator-(const MPoly& o) const {
    require_same_ring(o);
    MPoly r(*this);
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

MPoly MPoly::operator-() const {
    MPoly r(*this);
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

MPoly MPoly::scaled(const Fq& c) const {
    MPoly r(field_, nvars_);
    if (c.is_zero()) return r;
    for (const auto& [m, coef] : terms_) r.terms_.emplace(m, coef * c);
    return r;
}

MPoly MPoly::operator*(const MPoly& o) const {
    require_same_ring(o);
    MPoly r(field_, nvars_);
    if (terms_.empty() || o.terms_.empty()) return r;
    const int bound = *total_degree() + *o.total_degree();
    if (bound > degree_cap())
        throw DegreeTooLargeError("product degree " + std::to_string(bound) + " exceeds cap " +
                                  std::to_string(degree_cap()));
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) r.add_term(ma * mb, ca * cb);
    return r;
}

MPoly MPoly::pow(uint64_t e) const {
    if (!field_) throw InternalError("detached polynomial");
    if (e > 0 && !terms_.empty() && int64_t(*total_degree()) * int64_t(e) > degree_cap())
        throw DegreeTooLargeError("power degree exceeds cap");
    MPoly result = MPoly::one(field_, nvars_);
    MPoly base = *this;
    while (e) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

MPoly MPoly::frobenius_power(int iterations) const {
    if (!field_) throw InternalError("detached polynomial");
    int64_t scale = 1;
    for (int i = 0; i < iterations; ++i) scale *= field_->p();
    if (!terms_.empty() && int64_t(*total_degree()) * scale > degree_cap())
        throw DegreeTooLargeError("frobenius power degree exceeds cap");
    MPoly r(field_, nvars_);
    for (const auto& [m, c] : terms_) {
        Monomial mm(m);
        for (auto& ev : mm.e) ev = int32_t(int64_t(ev) * scale);
        r.terms_.emplace(std::move(mm), c.pow(uint64_t(scale)));
    }
    return r;
}

bool MPoly::operator==(const MPoly& o) const {
    if (!field_ || !o.field_) return !field_ && !o.field_;
    if (nvars_ != o.nvars_ || !field_->same(*o.field_)) return false;
    if (terms_.size() != o.terms_.size()) return false;
    auto a = terms_.begin();
    auto b = o.terms_.begin();
    for (; a != terms_.end(); ++a, ++b)
        if (!(a->first == b->first) || a->second != b->second) return false;
    return true;
}

Fq MPoly::eval(std::span<const Fq> point) const {
    if (int(point.size()) != nvars_) throw FormatError("point arity mismatch");
    FieldPtr work = field_;
    for (const Fq& x : point) work = common_field(work, x.field());
    std::vector<Fq> xs;
    xs.reserve(point.size());
    for (const Fq& x : point) xs.push_back(embed(x, work));
    // Power cache per variable, filled on demand.
    auto powers = std::vector<std::vector<Fq>>(size_t(nvars_));
    for (int v = 0; v < nvars_; ++v) powers[size_t(v)].push_back(Fq::one(work));
    Fq acc = Fq::zero(work);
    for (const auto& [m, c] : terms_) {
        Fq t = embed(c, work);
        for (int v = 0; v < nvars_; ++v) {
            auto& pv = powers[size_t(v)];
            const int32_t e = m.e[size_t(v)];
            while (int(pv.size()) <= e) pv.push_back(pv.back() * xs[size_t(v)]);
            if (e) t = t * pv[size_t(e)];
        }
        acc = acc + t;
    }
    return acc;
}

MPoly MPoly::derivative(int var) const {
    MPoly r(field_, nvars_);
    for (const auto& [m, c] : terms_) {
        const int32_t e = m.e[size_t(var)];
        if (e == 0) continue;
        const Fq factor = Fq::from_int(field_, e);
        if (factor.is_zero()) continue;  // exponent divisible by p
        Monomial mm(m);
        mm.e[size_t(var)] -= 1;
        r.add_term(mm, c * factor);
    }
    return r;
}

MPoly MPoly::substitute(const std::vector<MPoly>& images) const {
    if (int(images.size()) != nvars_) throw FormatError("substitution arity mismatch");
    FieldPtr work = field_;
    int out_nvars = nvars_;
    if (!images.empty()) {
        work = common_field(field_, images[0].field());
        out_nvars = images[0].nvars();
        for (const MPoly& g : images) {
            if (g.nvars() != out_nvars || !g.field()->same(*images[0].field()))
                throw MixedRingsError("substitution images disagree");
        }
        work = common_field(work, images[0].field());
    }
    // Validate the degree bound before expanding anything.
    if (!terms_.empty()) {
        int64_t worst = 0;
        for (const auto& [m, c] : terms_) {
            int64_t d = 0;
            for (int v = 0; v < nvars_; ++v) {
                const auto dv = images[size_t(v)].total_degree();
                d += int64_t(m.e[size_t(v)]) * int64_t(dv ? *dv : 0);
            }
            worst = std::max(worst, d);
        }
        if (worst > degree_cap())
            throw DegreeTooLargeError("substitution degree " + std::to_string(worst) + " exceeds cap");
    }
    std::vector<MPoly> imgs;
    imgs.reserve(images.size());
    for (const MPoly& g : images) imgs.push_back(g.embedded(work));
    auto powers = std::vector<std::vector<MPoly>>(size_t(nvars_));
    for (int v = 0; v < nvars_; ++v) powers[size_t(v)].push_back(MPoly::one(work, out_nvars));
    MPoly acc(work, out_nvars);
    for (const auto& [m, c] : terms_) {
        MPoly t = MPoly::constant(work, out_nvars, embed(c, work));
        for (int v = 0; v < nvars_; ++v) {
            auto& pv = powers[size_t(v)];
            const int32_t e = m.e[size_t(v)];
            while (int(pv.size()) <= e) pv.push_back(pv.back() * imgs[size_t(v)]);
            if (e) t = t * pv[size_t(e)];
        }
        acc = acc + t;
    }
    return acc;
}

MPoly MPoly::substitute_var(int var, const MPoly& image) const {
    std::vector<MPoly> images;
    images.reserve(size_t(nvars_));
    for (int v = 0; v < nvars_; ++v)
        images.push_back(v == var ? image : MPoly::variable(image.field(), nvars_, v));
    return substitute(images);
}

MPoly MPoly::embedded(const FieldPtr& target) const {
    if (field_->same(*target)) {
        MPoly r(*this);
        r.field_ = target;
        return r;
    }
    MPoly r(target, nvars_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, embed(c, target));
    return r;
}

std::optional<MPoly> exact_div(const MPoly& f, const MPoly& g) {
    if (g.is_zero()) throw DivisorZeroError();
    MPoly rem = f.embedded(common_field(f.field(), g.field()));
    const MPoly gg = g.embedded(rem.field());
    MPoly quot(rem.field(), rem.nvars());
    const auto& glt = gg.leading();
    const Fq glc_inv = glt.second.inv();
    while (!rem.is_zero()) {
        const auto& rlt = rem.leading();
        if (!glt.first.divides(rlt.first)) return std::nullopt;
        const Monomial qm = rlt.first / glt.first;
        const Fq qc = rlt.second * glc_inv;
        quot.add_term(qm, qc);
        rem = rem - gg * MPoly::term(gg.field(), gg.nvars(), qm, qc);
    }
    if (!(gg * quot == f.embedded(rem.field()))) throw InternalError("exact division verification failed");
    return quot;
}

MPoly UPolyView::reassemble(const FieldPtr& f, int nvars) const {
    MPoly acc(f, nvars);
    for (size_t d = 0; d < coeffs.size(); ++d) {
        auto m = Monomial(size_t(nvars));
        m.e[size_t(main_var)] = int32_t(d);
        acc = acc + coeffs[d] * MPoly::term(f, nvars, m, Fq::one(f));
    }
    return acc;
}

UPolyView up_view(const MPoly& f, int main_var) {
    if (main_var < 0 || main_var >= f.nvars()) throw FormatError("main variable out of range");
    UPolyView v;
    v.main_var = main_var;
    for (const auto& [m, c] : f.terms()) {
        const int d = int(m.e[size_t(main_var)]);
        while (int(v.coeffs.size()) <= d) v.coeffs.emplace_back(f.field(), f.nvars());
        Monomial mm(m);
        mm.e[size_t(main_var)] = 0;
        v.coeffs[size_t(d)].add_term(mm, c);
    }
    while (!v.coeffs.empty() && v.coeffs.back().is_zero()) v.coeffs.pop_back();
    return v;
}

MPoly poly_matrix_det(const std::vector<std::vector<MPoly>>& m) {
    const size_t n = m.size();
    if (n == 0) throw FormatError("empty matrix");
    for (const auto& row : m)
        if (row.size() != n) throw FormatError("matrix not square");
    const FieldPtr f = m[0][0].field();
    const int nv = m[0][0].nvars();
    // Expansion along rows over column subsets, memoized.  Subset keys are
    // bitmasks; n stays small (at most 9 here).
    std::map<uint32_t, MPoly> memo;
    auto det = [&](auto&& self, uint32_t cols, size_t row) -> MPoly {
        if (row == n) return MPoly::one(f, nv);
        auto it = memo.find(cols);
        if (it != memo.end()) return it->second;
        MPoly acc(f, nv);
        int sign = 1;
        for (size_t j = 0; j < n; ++j) {
            if (!(cols & (uint32_t(1) << j))) continue;
            const MPoly sub = self(self, cols & ~(uint32_t(1) << j), row + 1);
            const MPoly piece = m[row][j] * sub;
            acc = (sign > 0) ? acc + piece : acc - piece;
            sign = -sign;
        }
        memo.emplace(cols, acc);
        return acc;
    };
    return det(det, (uint32_t(1) << n) - 1, 0);
}

MPoly jacobian_det(std::span<const MPoly> fs, std::span<const int> vars) {
    if (fs.size() != vars.size()) throw FormatError("jacobian arity mismatch");
    std::vector<std::vector<MPoly>> m(fs.size());
    for (size_t i = 0; i < fs.size(); ++i)
        for (size_t j = 0; j < vars.size(); ++j) m[i].push_back(fs[i].derivative(vars[j]));
    return poly_matrix_det(m);
}

std::pair<bool, std::optional<MPoly>> pth_power_part(const MPoly& f) {
    const int64_t p = f.field()->p();
    for (const auto& [m, c] : f.terms())
        for (int32_t e : m.e)
            if (e % p != 0) return {false, std::nullopt};
    const int64_t root_exp = f.field()->order() / p;  // c -> c^(q/p) inverts Frobenius
    MPoly r(f.field(), f.nvars());
    for (const auto& [m, c] : f.terms()) {
        Monomial mm(m);
        for (auto& e : mm.e) e = int32_t(e / p);
        r.add_term(mm, c.pow(uint64_t(root_exp)));
    }
    return {true, r};
}

}  // namespace onepoint
