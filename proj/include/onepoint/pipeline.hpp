#ifndef ONEPOINT_PIPELINE_HPP
#define ONEPOINT_PIPELINE_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "onepoint/certify.hpp"
#include "onepoint/chain.hpp"

namespace onepoint {

struct SearchPolicy {
    uint64_t max_trials = 400;  // coordinate samples per field
    int max_extensions = 2;     // quadratic escalations before giving up
};

/// Entry point of the construction: the triple at index 0.  When the marked
/// point lies on the hyperplane at infinity, a coordinate swap moving a
/// nonzero coordinate into the last slot is applied first and reported in
/// swapped_var.
struct TripleInput {
    GoodTriple triple;
    std::optional<int> swapped_var;
};

TripleInput make_triple(int n, const FieldPtr& field, const MPoly& cone, const std::vector<Fq>& point);

struct SearchOutcome {
    CoordChange coord;
    Step2Result step;
    GoodTriple triple_used;             // input triple, possibly re-embedded upward
    std::vector<FieldPtr> escalations;  // fields adjoined during this search
    uint64_t trials_used = 0;
    std::array<uint64_t, 5> tally{};    // failures of (a), (b), (c), (d), next-triple
};

/// Rejection-samples coordinate changes from the block stabilizer that fixes
/// the already-split hyperplanes (diagonal there, arbitrary invertible on the
/// trailing coordinates) until the additive step goes through.  When the
/// trial budget is exhausted the base field is replaced by its quadratic
/// extension and the search restarts, up to the policy's extension budget;
/// only then does it fail, reporting which condition blocked most often.
SearchOutcome coordinate_search(const GoodTriple& t, uint64_t seed, const SearchPolicy& policy = {});

struct RunResult {
    CoverChain chain;
    Certificate certificate;
};

/// Runs the whole construction: additive steps until the residual divisor is
/// a power of z_n (skipping ahead when it degenerates early), a shear moving
/// the marked point off the coordinate hyperplanes, the closing map, the
/// composite, and a full independent certification of the result.
RunResult run_pipeline(const TripleInput& input, uint64_t seed, const SearchPolicy& policy = {},
                       const std::optional<FiberSpec>& fibers = std::nullopt);
RunResult run_pipeline(const GoodTriple& input, uint64_t seed, const SearchPolicy& policy = {},
                       const std::optional<FiberSpec>& fibers = std::nullopt);

// --- file formats (versioned with a leading "onepoint-format: 1" line) ---

TripleInput read_triple(std::istream& in);
std::string triple_file_string(const GoodTriple& t);

std::string chain_file_string(const CoverChain& chain);
CoverChain read_chain(std::istream& in);

}  // namespace onepoint

#endif
