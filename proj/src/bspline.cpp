#include "lr/bspline.hpp"

#include <algorithm>
#include <sstream>

namespace lr {

KnotVector::KnotVector(std::vector<Rational> knots) : t(std::move(knots)) {
    for (std::size_t i = 1; i < t.size(); ++i)
        if (t[i] < t[i - 1]) throw Error(ErrorCode::NonIncreasingKnots, "knot vector must be nondecreasing");
}

KnotVector KnotVector::fromPairs(const std::vector<std::pair<Rational, int>>& valueMult) {
    std::vector<Rational> knots;
    for (const auto& [v, m] : valueMult)
        for (int i = 0; i < m; ++i) knots.push_back(v);
    return KnotVector(std::move(knots));
}

int KnotVector::multiplicityOf(const Rational& v) const {
    return static_cast<int>(std::count(t.begin(), t.end(), v));
}

std::vector<std::pair<Rational, int>> KnotVector::distinctWithMult() const {
    std::vector<std::pair<Rational, int>> out;
    for (const Rational& v : t) {
        if (!out.empty() && out.back().first == v)
            ++out.back().second;
        else
            out.emplace_back(v, 1);
    }
    return out;
}

std::string str(const KnotVector& kv) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < kv.size(); ++i) {
        if (i) os << ", ";
        os << kv[i];
    }
    os << ")";
    return os.str();
}

TensorBSpline::TensorBSpline(Degree deg, KnotVector xk, KnotVector yk, Rational w)
    : degree(deg), x(std::move(xk)), y(std::move(yk)), weight(std::move(w)) {
    if (x.size() != static_cast<std::size_t>(degree.p1 + 2) ||
        y.size() != static_cast<std::size_t>(degree.p2 + 2))
        throw Error(ErrorCode::BadKnotCount, "tensor B-spline needs p+2 knots per axis");
    if (!(x.front() < x.back()) || !(y.front() < y.back()))
        throw Error(ErrorCode::BadKnotCount, "tensor B-spline support must be nonempty");
    if (!(weight > Rational(0)))
        throw Error(ErrorCode::BadKnotCount, "tensor B-spline weight must be positive");
}

namespace {

// Recursion over knot windows t[i..i+q+1]; fractions with zero denominator are
// dropped. The base indicator decides the evaluation convention.
template <typename Base>
Rational coxDeBoor(const std::vector<Rational>& t, std::size_t i, int q, const Rational& x, const Base& base) {
    if (q == 0) return base(t[i], t[i + 1], x) ? Rational(1) : Rational(0);
    Rational acc(0);
    const Rational d1 = t[i + static_cast<std::size_t>(q)] - t[i];
    if (!d1.isZero()) acc += (x - t[i]) / d1 * coxDeBoor(t, i, q - 1, x, base);
    const Rational d2 = t[i + static_cast<std::size_t>(q) + 1] - t[i + 1];
    if (!d2.isZero()) acc += (t[i + static_cast<std::size_t>(q) + 1] - x) / d2 * coxDeBoor(t, i + 1, q - 1, x, base);
    return acc;
}

void checkSingleBspline(const KnotVector& kv, int p) {
    if (p < 0 || kv.size() != static_cast<std::size_t>(p + 2))
        throw Error(ErrorCode::BadKnotCount,
                    "expected " + std::to_string(p + 2) + " knots, got " + std::to_string(kv.size()));
}

}  // namespace

Rational evalUnivariate(const KnotVector& kv, int p, const Rational& t) {
    checkSingleBspline(kv, p);
    if (t < kv.front() || t >= kv.back()) return Rational(0);
    return coxDeBoor(kv.t, 0, p, t,
                     [](const Rational& a, const Rational& b, const Rational& x) { return a <= x && x < b; });
}

Rational evalUnivariateLeftLimit(const KnotVector& kv, int p, const Rational& t) {
    checkSingleBspline(kv, p);
    if (t <= kv.front() || t > kv.back()) return Rational(0);
    return coxDeBoor(kv.t, 0, p, t,
                     [](const Rational& a, const Rational& b, const Rational& x) { return a < x && x <= b; });
}

KnotInsertion insertKnot(const KnotVector& kv, int p, const Rational& tHat) {
    checkSingleBspline(kv, p);
    if (!(kv.front() < tHat && tHat < kv.back()))
        throw Error(ErrorCode::KnotOutOfInterior, "inserted knot must lie strictly inside the support");
    std::vector<Rational> merged = kv.t;
    merged.insert(std::upper_bound(merged.begin(), merged.end(), tHat), tHat);

    KnotInsertion out;
    out.left = KnotVector(std::vector<Rational>(merged.begin(), merged.end() - 1));
    out.right = KnotVector(std::vector<Rational>(merged.begin() + 1, merged.end()));
    const std::size_t pi = static_cast<std::size_t>(p);  // 0-based index of t_{p+1}
    out.alpha1 = tHat < kv.t[pi] ? (tHat - kv.front()) / (kv.t[pi] - kv.front()) : Rational(1);
    out.alpha2 = tHat > kv.t[1] ? (kv.back() - tHat) / (kv.back() - kv.t[1]) : Rational(1);
    return out;
}

Rational evalTensor(const TensorBSpline& b, const Rational& x, const Rational& y) {
    Rational fx = evalUnivariate(b.x, b.degree.p1, x);
    if (fx.isZero()) return Rational(0);
    return b.weight * fx * evalUnivariate(b.y, b.degree.p2, y);
}

Rational evalTensorInDomain(const TensorBSpline& b, const Rational& x, const Rational& y, const Rect& domain) {
    Rational fx = x == domain.x.hi ? evalUnivariateLeftLimit(b.x, b.degree.p1, x) : evalUnivariate(b.x, b.degree.p1, x);
    if (fx.isZero()) return Rational(0);
    Rational fy = y == domain.y.hi ? evalUnivariateLeftLimit(b.y, b.degree.p2, y) : evalUnivariate(b.y, b.degree.p2, y);
    return b.weight * fx * fy;
}

std::vector<SplitSpec> splitsOf(const TensorBSpline& b) {
    std::vector<SplitSpec> out;
    const Interval ySpan{b.y.front(), b.y.back()};
    for (const auto& [v, m] : b.x.distinctWithMult()) out.push_back(SplitSpec{Axis::Vertical, v, ySpan, m});
    const Interval xSpan{b.x.front(), b.x.back()};
    for (const auto& [v, m] : b.y.distinctWithMult()) out.push_back(SplitSpec{Axis::Horizontal, v, xSpan, m});
    return out;
}

bool traversesSupport(const SplitSpec& split, const TensorBSpline& b) {
    const Rect supp = b.support();
    const Axis o = orthogonal(split.axis);
    return supp.along(split.axis).strictlyContains(split.fixed) && split.span.contains(supp.along(o));
}

SupportStatus supportStatus(const TensorBSpline& b, const LRMesh& mesh) {
    for (const SplitSpec& s : splitsOf(b)) {
        if (!mesh.covers(s.axis, s.fixed, s.span, s.mult))
            return SupportStatus{SupportStatusKind::NoSupport, s};
    }
    for (Axis a : {Axis::Vertical, Axis::Horizontal}) {
        for (const SplitSpec& g : maximalSplits(mesh, a)) {
            if (!traversesSupport(g, b)) continue;
            if (b.along(a).multiplicityOf(g.fixed) < g.mult)
                return SupportStatus{SupportStatusKind::SupportNotMinimal, g};
        }
    }
    return SupportStatus{SupportStatusKind::MinimalSupport, std::nullopt};
}

std::pair<KnotVector, int> restrictionToSplit(const TensorBSpline& b, const SplitSpec& split) {
    if (!traversesSupport(split, b))
        throw Error(ErrorCode::SplitDoesNotTraverse, "split does not traverse the B-spline's support");
    if (split.axis == Axis::Vertical) return {b.y, b.degree.p2};
    return {b.x, b.degree.p1};
}

namespace lr_detail_impl {

void expand(const KnotVector& kv, int p, const Rational& lo, const Rational& hi, const Rational& w, RatVector& out) {
    if (kv.back() <= lo || kv.front() >= hi) return;
    if (kv.front() < lo) {
        KnotInsertion ins = insertKnot(kv, p, lo);
        expand(ins.left, p, lo, hi, w * ins.alpha1, out);
        expand(ins.right, p, lo, hi, w * ins.alpha2, out);
        return;
    }
    if (kv.back() > hi) {
        KnotInsertion ins = insertKnot(kv, p, hi);
        expand(ins.left, p, lo, hi, w * ins.alpha1, out);
        expand(ins.right, p, lo, hi, w * ins.alpha2, out);
        return;
    }
    for (const Rational& v : kv.t)
        if (lo < v && v < hi)
            throw Error(ErrorCode::ElementStraddlesSupportBoundaryImproperly,
                        "element interior meets a knot line of the B-spline");
    out(kv.multiplicityOf(hi) - 1) += w;
}

}  // namespace lr_detail_impl

const RatVector& BernsteinCache::coefficients(const KnotVector& kv, int p, const Rational& lo, const Rational& hi) {
    auto key = std::make_pair(kv, Interval{lo, hi});
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    RatVector c = detail::bernstein1d(kv, p, lo, hi);
    return cache_.emplace(std::move(key), std::move(c)).first->second;
}

RatMatrix BernsteinCache::onElement(const TensorBSpline& b, const Element& el) {
    const int p1 = b.degree.p1, p2 = b.degree.p2;
    RatMatrix m = RatMatrix::Constant(p1 + 1, p2 + 1, Rational(0));
    const Rect supp = b.support();
    if (!supp.overlapsInterior(el.rect)) return m;
    if (!supp.contains(el.rect))
        throw Error(ErrorCode::ElementStraddlesSupportBoundaryImproperly,
                    "element straddles the support boundary");
    const RatVector& cx = coefficients(b.x, p1, el.rect.x.lo, el.rect.x.hi);
    const RatVector& cy = coefficients(b.y, p2, el.rect.y.lo, el.rect.y.hi);
    for (int i = 0; i <= p1; ++i) {
        if (cx(i).isZero()) continue;
        for (int j = 0; j <= p2; ++j) m(i, j) = b.weight * cx(i) * cy(j);
    }
    return m;
}

RatMatrix bernsteinOnElement(const TensorBSpline& b, const Element& el) {
    BernsteinCache cache;
    return cache.onElement(b, el);
}

namespace detail {

RatVector bernstein1d(const KnotVector& kv, int p, const Rational& lo, const Rational& hi) {
    RatVector out = RatVector::Constant(p + 1, Rational(0));
    lr_detail_impl::expand(kv, p, lo, hi, Rational(1), out);
    return out;
}

}  // namespace detail

}  // namespace lr
