#pragma once

#include "lr/space.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace lr {

/// Exact global coordinates of a collection: one row per (element, Bernstein
/// index) pair over the union of supports, one column per B-spline; entries
/// are Bernstein coefficients of the unweighted B-splines.
struct ElementMatrix {
    RatMatrix m;
    std::vector<Element> elements;             // row blocks, in order
    std::vector<TensorBSpline> columns;        // collection members, in order
    Degree degree;
};

ElementMatrix assembleElementMatrix(const SplineCollection& coll);

struct ConditionCheck {
    bool pass = true;
    std::vector<std::string> witnesses;  // failures, or notable confirmations
};

struct CircuitDiagnostics {
    ConditionCheck nestedness;      // corner nesting (unique smallest member, nested into a larger one)
    ConditionCheck meshlineShare;   // every relevant meshline in >= 2 members' splits
    ConditionCheck tvertexShare;    // every relevant (effective) T-vertex shared as knot pair
};

struct Circuit {
    std::vector<std::size_t> members;  // indices into the collection
    RatVector coefficients;            // same order as members; all nonzero
};

struct DependenceReport {
    Eigen::Index rank = 0;
    Eigen::Index nullity = 0;
    std::vector<RatVector> nullBasis;
    std::set<std::size_t> activeSet;   // union of null-vector supports
    std::optional<Circuit> circuit;
    std::optional<CircuitDiagnostics> diagnostics;
};

DependenceReport findActiveDependence(const SplineCollection& coll);

struct OverloadReport {
    std::vector<Element> elements;
    std::vector<int> coverCount;              // per element, by the whole collection
    std::set<std::size_t> overloadedElements;
    std::set<std::size_t> overloadedBsplines;
    std::vector<int> overloadedCover;         // per element, counting overloaded members only
};

OverloadReport overloadCounts(const SplineCollection& coll);

struct PeelReport {
    std::set<std::size_t> overloadedElements;
    std::set<std::size_t> overloadedBsplines;
    std::vector<std::vector<std::size_t>> rounds;  // removed member indices per iteration
    enum class Verdict { Independent, Inconclusive } verdict = Verdict::Independent;
    bool improvedUsed = false;
};

/// The peeling algorithm; with `improved`, members owning an unshared T-vertex
/// as a pair of knots are peeled as well.
PeelReport peel(const SplineCollection& coll, bool improved);

/// Checks the necessary conditions on an actively dependent circuit: corner
/// nestedness, meshline sharing, and T-vertex sharing. The coefficients must
/// witness an exact dependence (all nonzero, sum vanishing on every element).
CircuitDiagnostics verifyDependenceConditions(const std::vector<TensorBSpline>& circuit,
                                              const RatVector& coefficients, const LRMesh& mesh);

}  // namespace lr
