#pragma once

#include "lr/rational.hpp"

#include <stdexcept>
#include <string>

namespace lr {

/// 1-meshlines are vertical (constant x), 2-meshlines horizontal (constant y).
enum class Axis : int { Vertical = 1, Horizontal = 2 };

inline Axis orthogonal(Axis a) { return a == Axis::Vertical ? Axis::Horizontal : Axis::Vertical; }
inline const char* axisName(Axis a) { return a == Axis::Vertical ? "v" : "h"; }

/// Closed interval [lo, hi].
struct Interval {
    Rational lo, hi;

    Interval() = default;
    Interval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {}

    bool trivial() const { return lo == hi; }
    Rational length() const { return hi - lo; }
    bool contains(const Rational& t) const { return lo <= t && t <= hi; }
    bool strictlyContains(const Rational& t) const { return lo < t && t < hi; }
    bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
    bool overlapsInterior(const Interval& o) const { return lo < o.hi && o.lo < hi; }

    friend bool operator==(const Interval& a, const Interval& b) { return a.lo == b.lo && a.hi == b.hi; }
    friend bool operator<(const Interval& a, const Interval& b) {
        if (!(a.lo == b.lo)) return a.lo < b.lo;
        return a.hi < b.hi;
    }
};

/// Axis-aligned rectangle [x.lo, x.hi] x [y.lo, y.hi].
struct Rect {
    Interval x, y;

    bool contains(const Rational& px, const Rational& py) const { return x.contains(px) && y.contains(py); }
    bool contains(const Rect& o) const { return x.contains(o.x) && y.contains(o.y); }
    bool overlapsInterior(const Rect& o) const { return x.overlapsInterior(o.x) && y.overlapsInterior(o.y); }
    Rational area() const { return x.length() * y.length(); }

    const Interval& along(Axis a) const { return a == Axis::Vertical ? x : y; }

    friend bool operator==(const Rect& a, const Rect& b) { return a.x == b.x && a.y == b.y; }
};

/// Bidegree (p1, p2): p1 bounds smoothness across vertical lines, p2 across horizontal ones.
struct Degree {
    int p1 = 0, p2 = 0;

    /// Degree governing continuity across a k-meshline: p1 for vertical, p2 for horizontal.
    int across(Axis a) const { return a == Axis::Vertical ? p1 : p2; }
    /// Degree of restrictions along a k-split (the orthogonal direction).
    int along(Axis a) const { return a == Axis::Vertical ? p2 : p1; }

    friend bool operator==(const Degree&, const Degree&) = default;
};

enum class ErrorCode {
    NonIncreasingKnots,
    MultiplicityExceedsDegreePlusOne,
    DanglingSplit,
    NonConstantSplitResult,
    MultiplicityOverflow,
    SplitNotInMesh,
    BadKnotCount,
    KnotOutOfInterior,
    SplitDoesNotTraverse,
    ElementStraddlesSupportBoundaryImproperly,
    LRRulesViolated,
    ExpandedSplitTooShort,
    NotADependence,
    UnknownScenario,
    ParseError,
    SemanticError,
};

const char* errorCodeName(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(errorCodeName(code)) + ": " + what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

}  // namespace lr
