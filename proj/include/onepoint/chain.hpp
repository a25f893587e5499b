#ifndef ONEPOINT_CHAIN_HPP
#define ONEPOINT_CHAIN_HPP

#include <cstdint>
#include <vector>

#include "onepoint/maps.hpp"

namespace onepoint {

/// One executed step of the construction: the sampled coordinate change, the
/// additive step map built in those coordinates, and the image triple.
/// Everything is stored over the chain's final working field.
struct ChainStep {
    CoordChange coord;
    ProjMap map;
    GoodTriple next;
    MPoly r0;
    int64_t step_degree = 0;
};

/// The full witness produced by a pipeline run.  When fewer than n steps are
/// present the residual cone degenerated to a power of z_n early and the
/// remaining steps were skipped.  The composite factors as
///   abhyankar . final_normalization^(-1) . (step map . coord^(-1)) ...
/// read right to left, and is stored expanded for independent re-checking.
struct CoverChain {
    int n = 0;
    int64_t p = 0;
    uint64_t seed = 0;
    GoodTriple input;                 // over the original input field
    std::optional<int> input_swap;    // variable swapped with z_n before the run
    FieldPtr field;                   // final working field
    std::vector<FieldPtr> field_history;
    std::vector<ChainStep> steps;
    CoordChange final_normalization;
    ProjMap abhyankar;
    ProjMap composite;
};

}  // namespace onepoint

#endif
