#ifndef ONEPOINT_TEST_HELPERS_HPP
#define ONEPOINT_TEST_HELPERS_HPP

#include <cstdint>
#include <vector>

#include "onepoint/field.hpp"
#include "onepoint/poly.hpp"

namespace onepoint::testing {

// Deterministic xorshift-style generator, independent of the library's own
// sampling utilities.
struct TestRng {
    uint64_t state;
    explicit TestRng(uint64_t seed) : state(seed ^ 0x9e3779b97f4a7c15ull) {}
    uint64_t next() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    }
    uint64_t below(uint64_t n) { return next() % n; }
};

inline Fq random_element(TestRng& rng, const FieldPtr& f) {
    return element_at(f, int64_t(rng.below(uint64_t(f->order()))));
}

inline MPoly random_poly(TestRng& rng, const FieldPtr& f, int nvars, int max_terms, int max_exp) {
    MPoly acc(f, nvars);
    const int nterms = 1 + int(rng.below(uint64_t(max_terms)));
    for (int t = 0; t < nterms; ++t) {
        auto m = Monomial(size_t(nvars));
        for (int v = 0; v < nvars; ++v) m.e[size_t(v)] = int32_t(rng.below(uint64_t(max_exp) + 1));
        acc.add_term(m, random_element(rng, f));
    }
    return acc;
}

}  // namespace onepoint::testing

#endif
