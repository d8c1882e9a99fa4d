#pragma once

#include "lr/linalg.hpp"
#include "lr/mesh.hpp"

#include <optional>
#include <vector>

namespace lr {

/// Nondecreasing knot sequence. For a single B-spline of degree p it has p+2 entries.
struct KnotVector {
    std::vector<Rational> t;

    KnotVector() = default;
    explicit KnotVector(std::vector<Rational> knots);
    static KnotVector fromPairs(const std::vector<std::pair<Rational, int>>& valueMult);

    std::size_t size() const { return t.size(); }
    const Rational& front() const { return t.front(); }
    const Rational& back() const { return t.back(); }
    const Rational& operator[](std::size_t i) const { return t[i]; }

    int multiplicityOf(const Rational& v) const;
    std::vector<std::pair<Rational, int>> distinctWithMult() const;

    friend bool operator==(const KnotVector& a, const KnotVector& b) { return a.t == b.t; }
    friend bool operator<(const KnotVector& a, const KnotVector& b) { return a.t < b.t; }
};

std::string str(const KnotVector& kv);

/// Tensor-product B-spline B[x, y] with a carried scaling weight.
/// Identity is by (degree, xknots, yknots); the weight is metadata.
struct TensorBSpline {
    Degree degree;
    KnotVector x, y;
    Rational weight{1};

    TensorBSpline() = default;
    TensorBSpline(Degree deg, KnotVector xk, KnotVector yk, Rational w = Rational(1));

    Rect support() const { return Rect{Interval{x.front(), x.back()}, Interval{y.front(), y.back()}}; }
    const KnotVector& along(Axis a) const { return a == Axis::Vertical ? x : y; }

    friend bool operator==(const TensorBSpline& a, const TensorBSpline& b) {
        return a.degree == b.degree && a.x == b.x && a.y == b.y;
    }
    friend bool operator<(const TensorBSpline& a, const TensorBSpline& b) {
        if (!(a.x == b.x)) return a.x < b.x;
        return a.y < b.y;
    }
};

enum class SupportStatusKind { NoSupport, SupportNotMinimal, MinimalSupport };

struct SupportStatus {
    SupportStatusKind kind = SupportStatusKind::MinimalSupport;
    std::optional<SplitSpec> witness;  // offending split (see spec of each kind)
};

/// Cox-de Boor value with the half-open element convention [t_i, t_{i+1});
/// zero outside [t_1, t_{p+2}].
Rational evalUnivariate(const KnotVector& kv, int p, const Rational& t);

/// Value at t as the limit from the left: the polynomial of the last
/// nontrivial element is used when t is the right end of the support.
Rational evalUnivariateLeftLimit(const KnotVector& kv, int p, const Rational& t);

struct KnotInsertion {
    KnotVector left;
    Rational alpha1;
    KnotVector right;
    Rational alpha2;
};

/// Splits B[kv] into alpha1*B[left] + alpha2*B[right] by inserting tHat.
KnotInsertion insertKnot(const KnotVector& kv, int p, const Rational& tHat);

Rational evalTensor(const TensorBSpline& b, const Rational& x, const Rational& y);

/// Tensor evaluation with the spline-space boundary convention: elements are
/// half-open except along the domain's upper edges, which are closed.
Rational evalTensorInDomain(const TensorBSpline& b, const Rational& x, const Rational& y, const Rect& domain);

/// The splits of B[x, y]: one per distinct knot, spanning the orthogonal support
/// extent, with the knot's multiplicity.
std::vector<SplitSpec> splitsOf(const TensorBSpline& b);

SupportStatus supportStatus(const TensorBSpline& b, const LRMesh& mesh);

/// Restriction of B onto a traversing split: B[x] for horizontal splits, B[y] for
/// vertical ones. Returns the knot vector and its degree.
std::pair<KnotVector, int> restrictionToSplit(const TensorBSpline& b, const SplitSpec& split);

bool traversesSupport(const SplitSpec& split, const TensorBSpline& b);

/// Bernstein coefficients of B restricted to el, on el's tensor Bernstein basis;
/// entry (i, j) multiplies u^i-type x-factors and u^j-type y-factors. Weight included.
/// All-zero when el is disjoint from the support.
RatMatrix bernsteinOnElement(const TensorBSpline& b, const Element& el);

/// Per-axis Bernstein extraction with memoization (keyed by knot vector and element edge pair).
class BernsteinCache {
public:
    const RatVector& coefficients(const KnotVector& kv, int p, const Rational& lo, const Rational& hi);
    RatMatrix onElement(const TensorBSpline& b, const Element& el);

private:
    std::map<std::pair<KnotVector, Interval>, RatVector> cache_;
};

}  // namespace lr

namespace lr::detail {
/// Unmemoized single-axis extraction; exposed for the cache and for tests.
RatVector bernstein1d(const KnotVector& kv, int p, const Rational& lo, const Rational& hi);
}  // namespace lr::detail
