#ifndef ONEPOINT_MAPS_HPP
#define ONEPOINT_MAPS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "onepoint/additive.hpp"
#include "onepoint/field.hpp"
#include "onepoint/poly.hpp"

namespace onepoint {

/// Self-map of P^n: n+1 homogeneous polynomials of one common degree with no
/// common projective zero.  Regularity is guaranteed structurally by the
/// constructors in this module; deserialized maps are re-checked by
/// exhaustive point search where enumeration is affordable.
struct ProjMap {
    int n = 0;
    FieldPtr field;
    std::vector<MPoly> coords;
    int degree = 0;

    static ProjMap make(FieldPtr field, std::vector<MPoly> coords, bool search_base_points = true);
    static ProjMap identity(const FieldPtr& f, int n);
    ProjMap embedded(const FieldPtr& target) const;
    const MPoly& last() const { return coords.back(); }
};

/// Exhaustive search for a common projective zero over the extension of the
/// map's field of degree ext_mult.  Returns a witness point or nullopt when
/// none exists; throws EnumerationCapExceededError when the search space is
/// too large to enumerate.
std::optional<std::vector<Fq>> find_base_point(const ProjMap& f, int ext_mult, int64_t point_cap = int64_t(1) << 16);

/// Evaluates the map at a projective point (coordinates may live in an
/// extension).  Throws BasePointHitError if every coordinate vanishes.
std::vector<Fq> apply_map(const ProjMap& f, const std::vector<Fq>& point);

/// Coordinatewise substitution outer(inner); degrees multiply.  Regularity is
/// inherited and re-verified by exhaustive search when the field is small.
ProjMap compose(const ProjMap& outer, const ProjMap& inner);

/// Projective equality of point tuples (agreement up to a scalar).
bool proj_equal(const std::vector<Fq>& x, const std::vector<Fq>& y);

/// The degree-(1+p+...+p^n) self-map built from sums of the monomials m_I
/// over (i+1)-element subsets I of the coordinates: etale exactly away from
/// the union of the n+1 coordinate hyperplanes, which it maps into the
/// hyperplane at infinity.  For n = 1 this is the classical Abhyankar cover
/// of the affine line by the affine line minus a point.
ProjMap abhyankar_map(int n, int64_t p, const FieldPtr& field);

/// Invertible change of homogeneous coordinates.  transform(f) is f(M z);
/// points move by the inverse so that evaluation pairs stay matched.
struct CoordChange {
    FieldPtr field;
    std::vector<std::vector<Fq>> mat;
    std::vector<std::vector<Fq>> inv;

    static std::optional<CoordChange> from_matrix(const FieldPtr& f, std::vector<std::vector<Fq>> rows);
    static CoordChange identity(const FieldPtr& f, int n);
    int n() const { return int(mat.size()) - 1; }
    bool is_identity() const;
    MPoly transform(const MPoly& f) const;
    std::vector<Fq> pullback_point(const std::vector<Fq>& x) const;
    /// The inverse matrix as a degree-1 self-map (rows of M^{-1} as linear
    /// forms); this is the point map x -> M^{-1} x used when composing a
    /// coordinate-adjusted step into a chain.
    ProjMap inverse_as_map() const;
    CoordChange embedded(const FieldPtr& target) const;
};

/// Inverts the coefficient matrix of n+1 independent linear forms, producing
/// the coordinate change that turns each form into the matching coordinate.
CoordChange normalize_hyperplanes(const std::vector<MPoly>& forms);

/// The moving triple of the construction: projective space of dimension n
/// with the divisor split into `index` coordinate hyperplanes z_0..z_{index-1}
/// plus the cone of a hypersurface in the trailing variables, and a marked
/// point off all of it (including the hyperplane at infinity z_n = 0).
struct GoodTriple {
    int n = 0;
    FieldPtr field;
    int index = 0;
    MPoly cone;
    std::vector<Fq> point;

    static GoodTriple make(int n, FieldPtr field, int index, MPoly cone, std::vector<Fq> point);
    GoodTriple embedded(const FieldPtr& target) const;
    /// True when the residual divisor is already a power of z_n (possibly a
    /// nonzero constant), so no further additive steps are needed.
    bool cone_is_hyperplane_power() const;
};

struct Step2Result {
    ProjMap map;         // (w_0 : ... : w_n)
    GoodTriple next;     // triple at index + 1
    AdditivePoly q;      // canonical additive multiple of the cone in z_index
    MPoly r0;            // its constant coefficient, the next cone
    int64_t step_degree; // d_i = p^m
};

/// One step of the divisor-collapsing chain: turns the cone equation into an
/// additive polynomial in z_index and maps its zero locus into the new
/// coordinate hyperplane {w_index = 0}.  The input triple must already be in
/// the prepared coordinates; conditions (a)-(d) are verified in order and a
/// failure throws ConditionFailedError tagged with the condition ('t' for a
/// next-triple violation), signalling the caller to resample coordinates.
Step2Result step2_map(const GoodTriple& t);

/// Applies the coordinate change, revalidates the triple, and runs the step.
Step2Result step2_map(const GoodTriple& t, const CoordChange& coords);

}  // namespace onepoint

#endif
