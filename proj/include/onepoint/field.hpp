#ifndef ONEPOINT_FIELD_HPP
#define ONEPOINT_FIELD_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "onepoint/errors.hpp"

namespace onepoint {

class FieldConfig;
using FieldPtr = std::shared_ptr<const FieldConfig>;

/// Description of a finite field F_{p^k}: the characteristic, the extension
/// degree, and a monic irreducible modulus of degree k over F_p.  For k = 1
/// the modulus is the placeholder t.  Immutable after construction.
class FieldConfig {
  public:
    /// Builds a field, validating primality of p and irreducibility of the
    /// modulus.  When no modulus is given, the monic irreducible polynomial
    /// of degree k whose lower coefficients form the smallest base-p number
    /// (constant term least significant) is selected, so runs are
    /// reproducible without external polynomial tables.
    ///
    /// p is capped by p_limit and p^k by 2^20; everything downstream relies
    /// on full enumeration being cheap.
    static FieldPtr make(int64_t p, int k, std::optional<std::vector<int64_t>> modulus = std::nullopt,
                         int64_t p_limit = default_prime_limit);

    static constexpr int64_t default_prime_limit = 17;
    static constexpr int64_t max_order = int64_t(1) << 20;

    int64_t p() const { return p_; }
    int k() const { return k_; }
    int64_t order() const { return order_; }  // p^k
    /// Monic modulus, length k+1, coefficients reduced into [0, p).
    const std::vector<int64_t>& modulus() const { return modulus_; }
    /// Canonical identity string "p^k;mod=..." used for structural equality
    /// and cache keys.
    const std::string& key() const { return key_; }

    bool same(const FieldConfig& other) const { return key_ == other.key_; }

  private:
    FieldConfig(int64_t p, int k, std::vector<int64_t> modulus);

    int64_t p_;
    int k_;
    int64_t order_;
    std::vector<int64_t> modulus_;
    std::string key_;
};

/// An element of F_{p^k}: a polynomial of degree < k in the generator of the
/// extension, coefficients reduced into [0, p).  Immutable value type; all
/// arithmetic is exact.
class Fq {
  public:
    using Coeffs = boost::container::small_vector<int64_t, 4>;

    Fq() = default;  // detached element; only assignment is valid
    static Fq zero(const FieldPtr& f);
    static Fq one(const FieldPtr& f);
    /// The image of the integer v (so v mod p as a constant).
    static Fq from_int(const FieldPtr& f, int64_t v);
    /// Element with the given generator-power coefficients (reduced mod p).
    static Fq from_coeffs(const FieldPtr& f, const std::vector<int64_t>& c);

    const FieldPtr& field() const { return field_; }
    const Coeffs& coeffs() const { return c_; }
    bool is_zero() const;
    bool is_one() const;

    /// Position of this element in enumeration order: sum c_i p^i.
    int64_t index() const;

    Fq operator+(const Fq& o) const;
    Fq operator-(const Fq& o) const;
    Fq operator*(const Fq& o) const;
    Fq operator/(const Fq& o) const;
    Fq operator-() const;
    Fq inv() const;
    /// Repeated squaring; exponent 0 gives 1 (also for the zero element).
    Fq pow(uint64_t e) const;
    /// a^(p^iterations).  iterations may be any non-negative integer;
    /// the order of Frobenius divides k.
    Fq frobenius(uint64_t iterations) const;

    bool operator==(const Fq& o) const;
    bool operator!=(const Fq& o) const { return !(*this == o); }

  private:
    Fq(FieldPtr f, Coeffs c) : field_(std::move(f)), c_(std::move(c)) {}
    void require_same_field(const Fq& o) const;

    FieldPtr field_;
    Coeffs c_;  // length k once attached to a field
};

/// The element at the given enumeration index (base-p digits, constant term
/// least significant).  Index 0 is 0 and index 1 is 1.
Fq element_at(const FieldPtr& f, int64_t idx);

/// All p^k elements in enumeration order.
std::vector<Fq> enumerate_field(const FieldPtr& f);

/// Image of a under the fixed embedding into the target field.  Requires the
/// same characteristic and k(source) | k(target).  The embedding sends the
/// source generator to the first root (in enumeration order) of the source
/// modulus in the target; the choice is cached per (source, target) pair, so
/// embeddings are stable within and across runs.
Fq embed(const Fq& a, const FieldPtr& target);

/// The smaller of the two fields if one embeds in the other, otherwise the
/// default field of degree lcm(k1, k2) over the common prime field.
FieldPtr common_field(const FieldPtr& a, const FieldPtr& b);

bool is_prime(int64_t n);

}  // namespace onepoint

#endif
