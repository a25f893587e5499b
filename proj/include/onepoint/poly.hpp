#ifndef ONEPOINT_POLY_HPP
#define ONEPOINT_POLY_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "onepoint/field.hpp"

namespace onepoint {

/// Exponent tuple of a term.  Fixed length = number of variables of the
/// owning polynomial.
struct Monomial {
    using Exps = boost::container::small_vector<int32_t, 8>;
    Exps e;

    Monomial() = default;
    explicit Monomial(size_t nvars) : e(nvars, 0) {}
    explicit Monomial(Exps exps) : e(std::move(exps)) {}

    int total() const {
        int d = 0;
        for (int32_t v : e) d += v;
        return d;
    }
    bool operator==(const Monomial& o) const { return e == o.e; }
    /// Componentwise divisibility.
    bool divides(const Monomial& o) const;
    Monomial operator*(const Monomial& o) const;
    Monomial operator/(const Monomial& o) const;  // caller guarantees divisibility
};

/// Graded lexicographic order (total degree first, then lex with z0 largest).
/// Fixed globally so that division outcomes are deterministic.
struct GrlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Total-degree cap guarding every product and substitution; composite map
/// degrees grow like products of p^deg, so blowups are caught before any
/// expansion is attempted.
int degree_cap();
void set_degree_cap(int cap);

/// Sparse multivariate polynomial over a fixed finite field.  Terms are kept
/// in a grlex-ordered map with no zero coefficients, so iteration order,
/// printing, and leading-term access are all canonical.  Immutable in use:
/// operations return new values.
class MPoly {
  public:
    using TermMap = std::map<Monomial, Fq, GrlexLess>;

    MPoly() = default;
    MPoly(FieldPtr field, int nvars) : field_(std::move(field)), nvars_(nvars) {}

    static MPoly zero(const FieldPtr& f, int nvars) { return MPoly(f, nvars); }
    static MPoly constant(const FieldPtr& f, int nvars, const Fq& c);
    static MPoly one(const FieldPtr& f, int nvars) { return constant(f, nvars, Fq::one(f)); }
    static MPoly variable(const FieldPtr& f, int nvars, int var);
    static MPoly term(const FieldPtr& f, int nvars, const Monomial& m, const Fq& c);

    const FieldPtr& field() const { return field_; }
    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    size_t num_terms() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    /// Total degree; the zero polynomial has no degree (nullopt sentinel).
    std::optional<int> total_degree() const;
    /// Degree in one variable (nullopt for the zero polynomial).
    std::optional<int> degree_in(int var) const;
    /// Common degree of all terms, or nullopt when terms disagree.
    /// Throws ZeroPolynomialError on the zero polynomial; a nonzero constant
    /// is homogeneous of degree 0.
    std::optional<int> homogeneous_degree() const;
    bool mentions(int var) const;
    bool is_constant() const;
    /// The coefficient of the constant monomial, or the value of a constant
    /// polynomial (zero element for the zero polynomial).
    Fq constant_value() const;

    const std::pair<const Monomial, Fq>& leading() const;  // largest in grlex
    Fq coeff(const Monomial& m) const;

    MPoly operator+(const MPoly& o) const;
    MPoly operator-(const MPoly& o) const;
    MPoly operator*(const MPoly& o) const;
    MPoly operator-() const;
    MPoly scaled(const Fq& c) const;
    MPoly pow(uint64_t e) const;
    /// p-th power computed termwise (valid in characteristic p).
    MPoly frobenius_power(int iterations = 1) const;

    bool operator==(const MPoly& o) const;
    bool operator!=(const MPoly& o) const { return !(*this == o); }

    /// Evaluation at a point whose coordinates live in one field compatible
    /// with the coefficient field; the result lives in the common extension.
    Fq eval(std::span<const Fq> point) const;

    /// Formal partial derivative.
    MPoly derivative(int var) const;

    /// Simultaneous substitution of one image polynomial per variable; the
    /// images must share a field and variable count, and the coefficient
    /// field must embed into theirs.  Ring homomorphism.
    MPoly substitute(const std::vector<MPoly>& images) const;
    /// Substitute a single variable, keeping the others.
    MPoly substitute_var(int var, const MPoly& image) const;

    /// The same polynomial with coefficients embedded into a larger field.
    MPoly embedded(const FieldPtr& target) const;

    /// Internal: add c at monomial m (drops the term when it cancels).
    void add_term(const Monomial& m, const Fq& c);

  private:
    void require_same_ring(const MPoly& o) const;

    FieldPtr field_;
    int nvars_ = 0;
    TermMap terms_;
};

/// Exact quotient f / g, or nullopt when g does not divide f.  Division is by
/// leading-term elimination in grlex order; the quotient is verified by
/// multiplication before being returned.  Throws DivisorZeroError when g = 0.
std::optional<MPoly> exact_div(const MPoly& f, const MPoly& g);

/// View of f as a univariate polynomial in one main variable with
/// coefficients in the remaining variables (same ambient ring, main variable
/// absent from the coefficients).
struct UPolyView {
    int main_var = 0;
    std::vector<MPoly> coeffs;  // index = power of main_var; trailing entry nonzero

    int degree() const { return int(coeffs.size()) - 1; }  // -1 for zero
    MPoly reassemble(const FieldPtr& f, int nvars) const;
};

UPolyView up_view(const MPoly& f, int main_var);

/// Determinant of the Jacobian matrix of fs with respect to vars.
MPoly jacobian_det(std::span<const MPoly> fs, std::span<const int> vars);

/// Determinant of a square matrix of polynomials (cofactor expansion with
/// column-subset memoization; fine for the small sizes used here).
MPoly poly_matrix_det(const std::vector<std::vector<MPoly>>& m);

/// Whether every exponent is divisible by p; if so, also returns the p-th
/// root (coefficient roots are c^(q/p), exponents divide by p).  Requires a
/// perfect (finite) coefficient field, which is all this library has.
std::pair<bool, std::optional<MPoly>> pth_power_part(const MPoly& f);

}  // namespace onepoint

#endif
