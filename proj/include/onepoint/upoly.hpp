#ifndef ONEPOINT_UPOLY_HPP
#define ONEPOINT_UPOLY_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "onepoint/field.hpp"
#include "onepoint/poly.hpp"

namespace onepoint {

/// Dense univariate polynomial over a finite field; coefficient index equals
/// the power of the variable.  Backs the brute-force machinery: root search,
/// gcds, and X^(q^m) mod h by repeated squaring.
class UPoly {
  public:
    explicit UPoly(FieldPtr f) : field_(std::move(f)) {}
    UPoly(FieldPtr f, std::vector<Fq> coeffs);

    static UPoly zero(const FieldPtr& f) { return UPoly(f); }
    static UPoly one(const FieldPtr& f);
    static UPoly x(const FieldPtr& f);
    static UPoly from_mpoly(const MPoly& f);  // requires a univariate input

    const FieldPtr& field() const { return field_; }
    const std::vector<Fq>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return int(c_.size()) - 1; }  // -1 for zero
    Fq leading() const;
    Fq coeff(int i) const;

    UPoly operator+(const UPoly& o) const;
    UPoly operator-(const UPoly& o) const;
    UPoly operator*(const UPoly& o) const;
    UPoly scaled(const Fq& s) const;
    UPoly monic() const;
    UPoly derivative() const;
    Fq eval(const Fq& x) const;
    bool operator==(const UPoly& o) const;

    UPoly embedded(const FieldPtr& target) const;
    MPoly to_mpoly(const FieldPtr& f, int nvars, int var) const;

    /// Quotient and remainder by a nonzero divisor.
    static std::pair<UPoly, UPoly> divmod(const UPoly& f, const UPoly& g);

  private:
    void trim();

    FieldPtr field_;
    std::vector<Fq> c_;
};

/// Monic gcd.
UPoly upoly_gcd(UPoly a, UPoly b);

/// base^e mod m by repeated squaring; e may be any 64-bit value (q fits well
/// within that), and X^(q^m) is reached by iterating this m times rather than
/// ever materializing the exponent q^m.
UPoly upoly_powmod(const UPoly& base, uint64_t e, const UPoly& m);

/// Roots of f in its own coefficient field, with multiplicities, found by
/// full enumeration and repeated division.
std::vector<std::pair<Fq, int>> upoly_roots(const UPoly& f);

/// Number of distinct roots of h over the algebraic closure: gcd(h, X^(q^m) -
/// X) is taken degree by degree (distinct-degree style), so every factor
/// degree up to deg h is seen.  h must be nonzero.
int distinct_root_count(const UPoly& h);

}  // namespace onepoint

#endif
