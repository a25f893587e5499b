#ifndef ONEPOINT_ADDITIVE_HPP
#define ONEPOINT_ADDITIVE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "onepoint/field.hpp"
#include "onepoint/poly.hpp"

namespace onepoint {

/// A polynomial of the form sum r_i t^(p^i) with coefficients in a polynomial
/// ring (the t variable itself is excluded from the coefficients).  Kernels
/// of such polynomials are F_p-vector spaces, which is what the whole
/// construction runs on.
struct AdditivePoly {
    FieldPtr field;
    int nvars = 0;   // ambient ring arity of the coefficients
    int t_var = 0;   // index reserved for t inside the ambient ring
    std::vector<MPoly> coeffs;  // r_0 .. r_m, r_m nonzero

    int m() const { return int(coeffs.size()) - 1; }
    /// Degree p^m as a plain integer.
    int64_t degree() const;
    const MPoly& constant_coefficient() const { return coeffs.front(); }  // r_0
    /// Materialize sum r_i t^(p^i) in the ambient ring.
    MPoly as_mpoly() const;

    /// Validates the shape (r_m nonzero, coefficients free of t).
    static AdditivePoly make(FieldPtr field, int nvars, int t_var, std::vector<MPoly> coeffs);
};

/// Determinant of the Moore matrix with entry (i, j) = vals_i^(p^j),
/// j = 0..|vals|-1.  The characteristic-p analogue of the Vandermonde
/// determinant.
MPoly moore_determinant(const std::vector<MPoly>& vals);

/// The additive template for (p, m): polynomials T_0..T_m in the elementary
/// symmetric variables s_1..s_m (an m-variable ring over F_p) such that for
/// monic P = t^m + c_{m-1} t^{m-1} + ... + c_0 the canonical additive
/// multiple is sum_i T_i(c_{m-1}, ..., c_0) t^(p^i);  T_m = 1.  The template
/// is the span product over all F_p-combinations of m symbolic roots,
/// rewritten in the elementary symmetric functions by leading-term
/// reduction, and is cached per (p, m).
const std::vector<MPoly>& additive_template(int64_t p, int m);

/// Cap on p^m for the canonical construction.
inline constexpr int64_t additive_degree_cap = 256;

/// Canonical additive multiple of P (viewed as univariate in its main
/// variable with coefficients in the remaining ones).  The leading
/// coefficient must be a nonzero constant; the result is the canonical Q of
/// the monic normalization: monic of degree p^m, divisible by P (verified by
/// exact division), homogeneous whenever P is.
AdditivePoly additive_multiple(const UPolyView& P, const FieldPtr& field, int nvars);

/// Second construction strategy: an R-linear dependence among the residues
/// t^(p^i) mod P, with coefficients cleared to R by Cramer minors.  Agrees
/// with the canonical Q up to a nonzero factor in R whenever the residues
/// t^(p^0)..t^(p^(m-1)) are independent; returns nullopt in the degenerate
/// case (e.g. repeated or zero roots collapse the Frobenius orbit early).
std::optional<AdditivePoly> additive_multiple_lindep(const UPolyView& P, const FieldPtr& field, int nvars);

/// Brute-force oracle over a field: find the roots of monic P in a splitting
/// extension by exhaustive search, then expand the product of x + (every
/// F_p-combination of the roots).  Equals the canonical additive multiple.
MPoly span_product_multiple(const MPoly& P_univariate);

/// True iff every t-exponent is a power of p (p^0 = 1 included, bare
/// constants excluded); for small polynomials the defining identity
/// Q(t+u) = Q(t) + Q(u) is also checked symbolically.
bool is_additive(const MPoly& Q, int t_var);

/// Rank test for the F_p-coordinate vectors of elements of one field.
bool fp_linearly_independent(const std::vector<Fq>& vals);

struct MobiusWitness {
    Fq a, b, c, d;       // tau(x) = (a + b x) / (c + d x), coefficients in the requested field
    uint64_t trial = 0;  // index of the successful candidate
};

/// Searches for a linear fractional transformation defined at every input
/// value whose images are F_p-linearly independent.  Candidates are drawn
/// from the coefficient field: exhaustively (in tuple order) when the whole
/// 4-tuple space fits within max_trials, else uniformly at random from the
/// seed.  Degenerate candidates (ad = bc) count as failed trials.  Throws
/// ExhaustedError when no candidate works, which signals the caller to
/// extend the base field.
MobiusWitness mobius_search(const std::vector<Fq>& vals, const std::optional<Fq>& extra,
                            const FieldPtr& coeff_field, uint64_t seed, uint64_t max_trials = 10000);

}  // namespace onepoint

#endif
