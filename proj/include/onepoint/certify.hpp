#ifndef ONEPOINT_CERTIFY_HPP
#define ONEPOINT_CERTIFY_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "onepoint/chain.hpp"
#include "onepoint/maps.hpp"

namespace onepoint {

/// Outcome of a single verification step.  Every record names its method;
/// point-sampling results are flagged probabilistic and carry their sample
/// count, so a certificate is never silently weaker than it looks.
struct CheckRecord {
    std::string name;
    std::string method;
    bool passed = false;
    bool probabilistic = false;
    int64_t samples = 0;
    std::string detail;
};

struct FiberStats {
    int ext_degree = 1;
    int targets = 0;
    bool geometric = false;          // true when counts are distinct closure points (n = 1)
    std::map<int, int> size_counts;  // fiber size -> number of sampled targets
};

struct Certificate {
    std::vector<CheckRecord> records;
    std::optional<FiberStats> fiber;
    bool pass = false;
    std::string first_failure;
    bool sampling_used = false;
    int composite_degree = 0;

    std::string to_text() const;
    std::string to_json_string() const;
};

/// Does the divisor V(F) land inside the hyperplane at infinity?  Tests
/// V(F) against the vanishing locus of the map's last coordinate g by the
/// exact radical-containment criterion "F divides g^(deg F)" (each
/// irreducible factor of F occurs at most deg F times).  Falls back to
/// sampling points of V(F) along univariate slices when the power is over
/// the degree cap, and says so in the record.
CheckRecord check_divisor_into_H(const MPoly& F, const ProjMap& f);

/// Is the image of x outside the hyperplane at infinity?
CheckRecord check_point_off_H(const ProjMap& f, const std::vector<Fq>& x);

/// Is the map etale at every source point over the complement of H?  Forms
/// the affine coordinates w_j / w_n on the chart z_n = 1, clears the common
/// denominator from the Jacobian determinant, and requires the numerator's
/// zero locus to sit inside V(w_n restricted to the chart).  Throws
/// DegenerateJacobianError when the numerator vanishes identically (the map
/// is nowhere etale, e.g. Frobenius).
CheckRecord check_etale_off_H(const ProjMap& f);

/// Per-step variant: the non-etale locus of an additive step sits inside the
/// zero locus of z_n times the constant coefficient of its additive multiple.
CheckRecord check_step_nonetale_locus(const ProjMap& f, const MPoly& r0);

/// Samples targets off H over the degree-ext_degree extension and reports
/// the multiset of fiber sizes.  For n = 1 the count is the exact number of
/// geometric points: the distinct roots of the dehomogenized fiber
/// polynomial, computed through gcd(h, X^(q^m) - X) degree by degree.  For
/// n >= 2 rational points of the extension are counted by enumeration.
FiberStats fiber_sample(const ProjMap& f, int targets, int ext_degree, uint64_t seed);

struct FiberSpec {
    int targets = 32;
    int ext_degree = 2;
    uint64_t seed = 0;
};

/// Re-derives every claim of a stored chain from scratch: triple validity,
/// per-step conditions and containments, recomposition of the composite, the
/// three theorem conclusions, and optional fiber statistics.  Nothing in the
/// chain is trusted beyond the polynomials themselves.
Certificate certify_chain(const CoverChain& chain, const std::optional<FiberSpec>& fibers = std::nullopt);

}  // namespace onepoint

#endif
