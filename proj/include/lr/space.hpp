#pragma once

#include "lr/bspline.hpp"

#include <vector>

namespace lr {

/// max{sum of multiplicities - (p+1), 0}.
int dimUnivariate(const std::vector<std::pair<Rational, int>>& knots, int p);

/// Dimension of the spline space on an LR-mesh via the homological count over
/// vertices, meshlines and elements. Requires the LR-rules to hold.
int dimLr(const LRMesh& mesh);

/// Same count without the LR-rule gate (used internally and by diagnostics);
/// only meaningful when the rules hold.
int dimLrUnchecked(const LRMesh& mesh);

/// Dimension increment r of inserting `split`: dim S(mesh+split) = dim S(mesh) + r,
/// read off the expanded split's knots. Requires r >= 1.
int dimIncrement(const LRMesh& before, const SplitSpec& split);

enum class CollectionKind { MS, LR };

inline const char* collectionKindName(CollectionKind k) { return k == CollectionKind::MS ? "MS" : "LR"; }

/// An MS or LR collection over a mesh. Members are deduplicated by knot vectors
/// and kept sorted; LR members carry accumulated weights.
struct SplineCollection {
    CollectionKind kind = CollectionKind::MS;
    LRMesh mesh;
    std::vector<TensorBSpline> bsplines;

    std::size_t size() const { return bsplines.size(); }
};

/// All tensor B-splines of the mesh's bidegree with minimal support, found by
/// scanning knot windows over maximal-split coordinates.
SplineCollection enumerateMs(const LRMesh& mesh);

/// Replays the LR B-spline generation algorithm over the mesh's construction
/// history: split every member lacking minimal support by knot insertion,
/// accumulating weights, until all members have minimal support.
/// Non-minimal members are processed first-in-first-out.
SplineCollection deriveLr(const LRMesh& mesh);

namespace detail {
/// Same algorithm with last-in-first-out processing; the final collection must
/// not depend on the order, which tests exercise by comparing against deriveLr.
SplineCollection deriveLrLifo(const LRMesh& mesh);
}  // namespace detail

/// Weighted value of the collection at a point, with half-open elements closed
/// along the domain's upper edges.
Rational collectionValueAt(const SplineCollection& coll, const Rational& x, const Rational& y);

struct HandInHandReport {
    SplitSpec expanded;
    int r = 0;                 // dimension increment
    int restrictedCount = 0;   // |B(expanded)|
    int restrictedRank = 0;    // rank of the restrictions in the Curry-Schoenberg basis
    bool goesHandInHand = false;
};

/// The spanning test across one insertion: rank of the restrictions of the
/// new-mesh B-splines traversed by the expanded split, compared against r.
/// The spanning hypothesis on `before` is the caller's assertion.
HandInHandReport handInHand(const LRMesh& before, const SplitSpec& split, CollectionKind kind);

/// Coordinates of B[kv] in the Curry-Schoenberg basis of the (flattened) knot
/// vector `full`, obtained by repeated knot insertion. kv's knots must be
/// drawn from full's values.
RatVector currySchoenbergCoordinates(const KnotVector& kv, int p, const std::vector<Rational>& full);

}  // namespace lr
