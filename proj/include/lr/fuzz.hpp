#pragma once

#include "lr/space.hpp"

#include <random>
#include <string>
#include <vector>

namespace lr {

struct FuzzOptions {
    Degree degree;
    int histories = 200;
    int insertionsPerHistory = 4;
    std::uint64_t seed = 20240915;  // overridden by LRSPLINE_SEED where the CLI drives this
    bool checkCollections = true;   // partition of unity + circuit-size bounds
};

struct FuzzOutcome {
    int histories = 0;
    long long insertions = 0;
    int msDependent = 0;  // histories whose MS collection carried a dependence
    int lrDependent = 0;
    std::vector<std::string> failures;  // empty = all properties held
};

/// Open-boundary tensor start plus `insertions` random LR-rule-respecting
/// multiplicity-1 insertions. Deterministic for a given generator state.
LRMesh randomLrMesh(std::mt19937_64& rng, Degree degree, int insertions);

/// Runs seeded random refinement histories and checks, exactly:
///  - the dimension-increment identity at every step,
///  - weighted LR partition of unity at 30 random rational points,
///  - MS circuits have >= 6 members, LR circuits >= 8,
///  - degree (0,0) collections are always independent.
/// Histories run in parallel; results are deterministic for a given seed.
FuzzOutcome runFuzz(const FuzzOptions& options);

}  // namespace lr
