#include "onepoint/upoly.hpp"

#include <algorithm>

namespace onepoint {

UPoly::UPoly(FieldPtr f, std::vector<Fq> coeffs) : field_(std::move(f)), c_(std::move(coeffs)) { trim(); }

void UPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

UPoly UPoly::one(const FieldPtr& f) { return UPoly(f, {Fq::one(f)}); }

UPoly UPoly::x(const FieldPtr& f) { return UPoly(f, {Fq::zero(f), Fq::one(f)}); }

UPoly UPoly::from_mpoly(const MPoly& f) {
    int var = -1;
    for (int v = 0; v < f.nvars(); ++v) {
        if (f.mentions(v)) {
            if (var >= 0) throw FormatError("polynomial is not univariate");
            var = v;
        }
    }
    UPoly r(f.field());
    if (f.is_zero()) return r;
    const int d = var >= 0 ? *f.degree_in(var) : 0;
    r.c_.assign(size_t(d) + 1, Fq::zero(f.field()));
    for (const auto& [m, c] : f.terms()) r.c_[size_t(var >= 0 ? m.e[size_t(var)] : 0)] = c;
    r.trim();
    return r;
}

Fq UPoly::leading() const {
    if (c_.empty()) throw ZeroPolynomialError("leading coefficient of 0");
    return c_.back();
}

Fq UPoly::coeff(int i) const {
    if (i < 0 || size_t(i) >= c_.size()) return Fq::zero(field_);
    return c_[size_t(i)];
}

UPoly UPoly::operator+(const UPoly& o) const {
    UPoly r(field_);
    r.c_.resize(std::max(c_.size(), o.c_.size()), Fq::zero(field_));
    for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = coeff(int(i)) + o.coeff(int(i));
    r.trim();
    return r;
}

UPoly UPoly::operator-(const UPoly& o) const {
    UPoly r(field_);
    r.c_.resize(std::max(c_.size(), o.c_.size()), Fq::zero(field_));
    for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = coeff(int(i)) - o.coeff(int(i));
    r.trim();
    return r;
}

UPoly UPoly::operator*(const UPoly& o) const {
    if (is_zero() || o.is_zero()) return UPoly(field_);
    UPoly r(field_);
    r.c_.assign(c_.size() + o.c_.size() - 1, Fq::zero(field_));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) r.c_[i + j] = r.c_[i + j] + c_[i] * o.c_[j];
    }
    r.trim();
    return r;
}

UPoly UPoly::scaled(const Fq& s) const {
    UPoly r(field_);
    if (s.is_zero()) return r;
    r.c_.reserve(c_.size());
    for (const Fq& v : c_) r.c_.push_back(v * s);
    r.trim();
    return r;
}

UPoly UPoly::monic() const {
    if (is_zero()) return *this;
    return scaled(leading().inv());
}

UPoly UPoly::derivative() const {
    UPoly r(field_);
    for (size_t i = 1; i < c_.size(); ++i) {
        const Fq f = c_[i] * Fq::from_int(field_, int64_t(i));
        r.c_.push_back(f);
    }
    r.trim();
    return r;
}

Fq UPoly::eval(const Fq& x) const {
    Fq acc = Fq::zero(field_);
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

bool UPoly::operator==(const UPoly& o) const {
    if (c_.size() != o.c_.size()) return false;
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != o.c_[i]) return false;
    return true;
}

UPoly UPoly::embedded(const FieldPtr& target) const {
    UPoly r(target);
    r.c_.reserve(c_.size());
    for (const Fq& v : c_) r.c_.push_back(embed(v, target));
    return r;
}

MPoly UPoly::to_mpoly(const FieldPtr& f, int nvars, int var) const {
    MPoly r(f, nvars);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        auto m = Monomial(size_t(nvars));
        m.e[size_t(var)] = int32_t(i);
        r.add_term(m, embed(c_[i], f));
    }
    return r;
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly& f, const UPoly& g) {
    if (g.is_zero()) throw DivisorZeroError();
    UPoly q(f.field_), r = f;
    const Fq lg_inv = g.leading().inv();
    const int dg = g.degree();
    if (r.degree() >= dg) q.c_.assign(size_t(r.degree() - dg) + 1, Fq::zero(f.field_));
    while (r.degree() >= dg) {
        const int shift = r.degree() - dg;
        const Fq s = r.leading() * lg_inv;
        q.c_[size_t(shift)] = s;
        for (int i = 0; i <= dg; ++i) r.c_[size_t(shift + i)] = r.c_[size_t(shift + i)] - s * g.c_[size_t(i)];
        r.trim();
    }
    q.trim();
    return {q, r};
}

UPoly upoly_gcd(UPoly a, UPoly b) {
    while (!b.is_zero()) {
        UPoly r = UPoly::divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

UPoly upoly_powmod(const UPoly& base, uint64_t e, const UPoly& m) {
    UPoly result = UPoly::one(base.field());
    UPoly acc = UPoly::divmod(base, m).second;
    while (e) {
        if (e & 1) result = UPoly::divmod(result * acc, m).second;
        e >>= 1;
        if (e) acc = UPoly::divmod(acc * acc, m).second;
    }
    return result;
}

std::vector<std::pair<Fq, int>> upoly_roots(const UPoly& f) {
    if (f.is_zero()) throw ZeroPolynomialError("roots of 0");
    std::vector<std::pair<Fq, int>> out;
    UPoly rem = f;
    for (int64_t i = 0; i < f.field()->order() && rem.degree() > 0; ++i) {
        const Fq x = element_at(f.field(), i);
        int mult = 0;
        while (rem.degree() > 0 && rem.eval(x).is_zero()) {
            UPoly lin(f.field(), {-x, Fq::one(f.field())});
            rem = UPoly::divmod(rem, lin).first;
            ++mult;
        }
        if (mult) out.emplace_back(x, mult);
    }
    return out;
}

int distinct_root_count(const UPoly& h) {
    if (h.is_zero()) throw ZeroPolynomialError("distinct roots of 0");
    if (h.degree() == 0) return 0;
    const UPoly hm = h.monic();
    const uint64_t q = uint64_t(h.field()->order());
    // frob starts at X^q mod h and advances one q-power per round; round m
    // counts the roots lying in F_{q^m}.
    UPoly frob = upoly_powmod(UPoly::x(h.field()), q, hm);
    std::vector<int> per_degree(size_t(hm.degree()) + 1, 0);
    for (int m = 1; m <= hm.degree(); ++m) {
        const UPoly g = upoly_gcd(hm, frob - UPoly::x(h.field()));
        // deg g = sum over d | m of d * (number of distinct irreducible
        // factors of degree d); peel off what previous rounds explain.
        int known = 0;
        for (int d = 1; d < m; ++d)
            if (m % d == 0) known += d * per_degree[size_t(d)];
        per_degree[size_t(m)] = (g.degree() - known) / m;
        if (m < hm.degree()) frob = upoly_powmod(frob, q, hm);
    }
    int total = 0;
    for (int d = 1; d <= hm.degree(); ++d) total += d * per_degree[size_t(d)];
    return total;
}

}  // namespace onepoint
