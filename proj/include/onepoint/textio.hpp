#ifndef ONEPOINT_TEXTIO_HPP
#define ONEPOINT_TEXTIO_HPP

#include <string>
#include <string_view>
#include <vector>

#include "onepoint/field.hpp"
#include "onepoint/poly.hpp"

namespace onepoint {

/// Variable alphabet for polynomial text: the projective coordinates z0..z9,
/// or a single univariate variable t.  The extension generator a is accepted
/// in both modes.
enum class VarMode { Z, T };

/// "p", "p^k", or "p^k;mod=<monic poly in t>".
FieldPtr parse_field_spec(std::string_view s);
/// Canonical spec: "p" for prime fields, "p^k;mod=..." otherwise, so the
/// exact modulus used is always pinned in serialized artifacts.
std::string field_spec_string(const FieldConfig& f);

Fq parse_element(std::string_view s, const FieldPtr& f);
std::string element_string(const Fq& a);

MPoly parse_poly(std::string_view s, const FieldPtr& f, int nvars, VarMode mode = VarMode::Z);
std::string poly_string(const MPoly& f, VarMode mode = VarMode::Z);

/// "(e0 : e1 : ... : en)".
std::vector<Fq> parse_point(std::string_view s, const FieldPtr& f);
std::string point_string(const std::vector<Fq>& point);

/// "[[e, e], [e, e]]", row major.
std::vector<std::vector<Fq>> parse_matrix(std::string_view s, const FieldPtr& f);
std::string matrix_string(const std::vector<std::vector<Fq>>& m);

}  // namespace onepoint

#endif
