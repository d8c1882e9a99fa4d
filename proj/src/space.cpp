#include "lr/space.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace lr {

int dimUnivariate(const std::vector<std::pair<Rational, int>>& knots, int p) {
    int s = 0;
    for (const auto& [pos, m] : knots) {
        (void)pos;
        if (m < 1 || m > p + 1)
            throw Error(ErrorCode::MultiplicityExceedsDegreePlusOne, "knot multiplicity outside [1, p+1]");
        s += m;
    }
    return std::max(s - (p + 1), 0);
}

int dimLrUnchecked(const LRMesh& mesh) {
    const int p1 = mesh.degree().p1, p2 = mesh.degree().p2;
    long long dim = 0;
    for (const Vertex& v : classifyVertices(mesh)) dim += static_cast<long long>(p1 - v.mu1 + 1) * (p2 - v.mu2 + 1);
    for (const Meshline& l : meshlines(mesh)) {
        if (l.axis == Axis::Vertical)
            dim -= static_cast<long long>(p2 + 1) * (p1 - l.mult + 1);
        else
            dim -= static_cast<long long>(p1 + 1) * (p2 - l.mult + 1);
    }
    dim += static_cast<long long>(elements(mesh).size()) * (p1 + 1) * (p2 + 1);
    return static_cast<int>(dim);
}

int dimLr(const LRMesh& mesh) {
    std::vector<RuleViolation> violations = validateLrRules(mesh);
    if (!violations.empty())
        throw Error(ErrorCode::LRRulesViolated,
                    "mesh violates the LR-rules (" + std::to_string(violations.size()) + " violation(s)); first: " +
                        violations.front().what);
    return dimLrUnchecked(mesh);
}

int dimIncrement(const LRMesh& before, const SplitSpec& split) {
    const LRMesh after = insertSplit(before, split);
    const Axis a = split.axis;
    const int p = before.degree().along(a);

    // Knots on the new split itself, in the refined mesh.
    KnotsOnSplit onGamma = knotVectorOnSplit(after, split);

    // Junctions: endpoints continuing a pre-existing colinear split.
    auto oldPartsIt = before.lines(a).find(split.fixed);
    bool overlapsOld = false;
    int junctions = 0;
    int junctionMult = 0;
    if (oldPartsIt != before.lines(a).end()) {
        for (const auto& part : oldPartsIt->second) {
            if (part.span.overlapsInterior(split.span)) overlapsOld = true;
            if (part.span.hi == split.span.lo || part.span.lo == split.span.hi) {
                ++junctions;
                const Rational& j = part.span.hi == split.span.lo ? split.span.lo : split.span.hi;
                for (const auto& [pos, m] : onGamma.knots)
                    if (pos == j) junctionMult += m;
            }
        }
    }

    int r;
    if (overlapsOld) {
        // Multiplicity-raising insertion over existing meshlines: the expanded-split
        // reading does not apply; fall back to the exact dimension difference.
        r = dimLrUnchecked(after) - dimLrUnchecked(before);
    } else {
        // r = (new-knot count on the split) + (p+1)(junctions - 1), scaled by the
        // split's own multiplicity.
        r = split.mult * (onGamma.length - junctionMult + (p + 1) * (junctions - 1));
    }
    if (r < 1)
        throw Error(ErrorCode::ExpandedSplitTooShort,
                    "expanded split too short: dimension increment " + std::to_string(r) + " < 1");
    return r;
}

namespace {

void sortAndDedup(std::vector<TensorBSpline>& bs) {
    std::sort(bs.begin(), bs.end());
    bs.erase(std::unique(bs.begin(), bs.end()), bs.end());
}

/// Nondecreasing windows of length `len` from candidate (value, maxMult) pairs.
void windows(const std::vector<std::pair<Rational, int>>& cand, int len, std::size_t from,
             std::vector<Rational>& acc, const std::function<void(const std::vector<Rational>&)>& emit) {
    if (static_cast<int>(acc.size()) == len) {
        if (acc.front() < acc.back()) emit(acc);
        return;
    }
    for (std::size_t i = from; i < cand.size(); ++i) {
        const int room = len - static_cast<int>(acc.size());
        for (int m = 1; m <= std::min(cand[i].second, room); ++m) {
            for (int k = 0; k < m; ++k) acc.push_back(cand[i].first);
            windows(cand, len, i + 1, acc, emit);
            for (int k = 0; k < m; ++k) acc.pop_back();
        }
    }
}

std::vector<std::pair<Rational, int>> lineCandidates(const LRMesh& mesh, Axis a, int cap) {
    std::vector<std::pair<Rational, int>> cand;
    for (const auto& [fixed, parts] : mesh.lines(a)) {
        int m = 0;
        for (const auto& p : parts) m = std::max(m, p.mult);
        cand.emplace_back(fixed, std::min(m, cap));
    }
    return cand;
}

}  // namespace

SplineCollection enumerateMs(const LRMesh& mesh) {
    const Degree deg = mesh.degree();
    SplineCollection coll{CollectionKind::MS, mesh, {}};
    const auto xc = lineCandidates(mesh, Axis::Vertical, deg.p1 + 1);
    const auto yc = lineCandidates(mesh, Axis::Horizontal, deg.p2 + 1);

    // Splits spanning the whole orthogonal extent traverse every candidate
    // support strictly containing them; windows that under-supply such a line
    // can never have minimal support, whatever the other axis looks like.
    auto fullLines = [&](Axis a) {
        std::vector<std::pair<Rational, int>> out;
        const Interval& orth = mesh.domain().along(orthogonal(a));
        for (const auto& [fixed, parts] : mesh.lines(a))
            for (const auto& p : parts)
                if (p.span.contains(orth)) out.emplace_back(fixed, p.mult);
        return out;
    };
    auto admissible = [](const std::vector<std::pair<Rational, int>>& full, const KnotVector& w) {
        for (const auto& [fixed, mult] : full)
            if (w.front() < fixed && fixed < w.back() && w.multiplicityOf(fixed) != mult) return false;
        return true;
    };
    const auto xfull = fullLines(Axis::Vertical);
    const auto yfull = fullLines(Axis::Horizontal);

    std::vector<KnotVector> xwins, ywins;
    std::vector<Rational> acc;
    windows(xc, deg.p1 + 2, 0, acc, [&](const std::vector<Rational>& w) {
        KnotVector kv(w);
        if (admissible(xfull, kv)) xwins.push_back(std::move(kv));
    });
    acc.clear();
    windows(yc, deg.p2 + 2, 0, acc, [&](const std::vector<Rational>& w) {
        KnotVector kv(w);
        if (admissible(yfull, kv)) ywins.push_back(std::move(kv));
    });

    for (const KnotVector& xw : xwins) {
        for (const KnotVector& yw : ywins) {
            TensorBSpline b(deg, xw, yw);
            if (supportStatus(b, mesh).kind == SupportStatusKind::MinimalSupport)
                coll.bsplines.push_back(std::move(b));
        }
    }
    sortAndDedup(coll.bsplines);
    return coll;
}

namespace {

/// One pass of the LR algorithm: refine members without minimal support on
/// `mesh` via knot insertion until the set is stable, merging duplicates by
/// adding weights. Processing order is FIFO by default; the final set does not
/// depend on it, which the LIFO variant lets tests confirm.
void refineToMinimalSupport(std::map<std::pair<KnotVector, KnotVector>, TensorBSpline>& set, const LRMesh& mesh,
                            bool lifo) {
    std::deque<std::pair<KnotVector, KnotVector>> queue;
    for (const auto& [key, b] : set) {
        (void)b;
        queue.push_back(key);
    }
    auto addOrMerge = [&](TensorBSpline nb) {
        auto key = std::make_pair(nb.x, nb.y);
        auto it = set.find(key);
        if (it == set.end()) {
            set.emplace(key, std::move(nb));
            queue.push_back(std::move(key));
        } else {
            it->second.weight += nb.weight;
        }
    };
    while (!queue.empty()) {
        auto key = lifo ? queue.back() : queue.front();
        if (lifo)
            queue.pop_back();
        else
            queue.pop_front();
        auto it = set.find(key);
        if (it == set.end()) continue;  // already replaced
        const TensorBSpline& b = it->second;
        SupportStatus st = supportStatus(b, mesh);
        if (st.kind == SupportStatusKind::MinimalSupport) continue;
        if (st.kind == SupportStatusKind::NoSupport || !st.witness)
            throw std::logic_error("collection member lost support during refinement");
        const SplitSpec w = *st.witness;
        // Insert the witness's coordinate into the matching axis.
        TensorBSpline cur = b;
        set.erase(it);
        if (w.axis == Axis::Vertical) {
            KnotInsertion ins = insertKnot(cur.x, cur.degree.p1, w.fixed);
            addOrMerge(TensorBSpline(cur.degree, ins.left, cur.y, cur.weight * ins.alpha1));
            addOrMerge(TensorBSpline(cur.degree, ins.right, cur.y, cur.weight * ins.alpha2));
        } else {
            KnotInsertion ins = insertKnot(cur.y, cur.degree.p2, w.fixed);
            addOrMerge(TensorBSpline(cur.degree, cur.x, ins.left, cur.weight * ins.alpha1));
            addOrMerge(TensorBSpline(cur.degree, cur.x, ins.right, cur.weight * ins.alpha2));
        }
    }
}

SplineCollection deriveLrImpl(const LRMesh& mesh, bool lifo) {
    std::vector<RuleViolation> violations = validateLrRules(mesh);
    if (!violations.empty())
        throw Error(ErrorCode::LRRulesViolated,
                    "mesh violates the LR-rules; first: " + violations.front().what);

    const Degree deg = mesh.degree();
    LRMesh cur = newTensorMesh(mesh.tensorKnots(Axis::Vertical), mesh.tensorKnots(Axis::Horizontal), deg);

    std::map<std::pair<KnotVector, KnotVector>, TensorBSpline> set;
    const auto& xk = mesh.tensorKnots(Axis::Vertical);
    const auto& yk = mesh.tensorKnots(Axis::Horizontal);
    KnotVector xall = KnotVector::fromPairs(xk), yall = KnotVector::fromPairs(yk);
    for (std::size_t i = 0; i + deg.p1 + 1 < xall.size(); ++i) {
        KnotVector xw(std::vector<Rational>(xall.t.begin() + i, xall.t.begin() + i + deg.p1 + 2));
        if (!(xw.front() < xw.back())) continue;
        for (std::size_t j = 0; j + deg.p2 + 1 < yall.size(); ++j) {
            KnotVector yw(std::vector<Rational>(yall.t.begin() + j, yall.t.begin() + j + deg.p2 + 2));
            if (!(yw.front() < yw.back())) continue;
            TensorBSpline b(deg, xw, yw);
            set.emplace(std::make_pair(b.x, b.y), std::move(b));
        }
    }

    for (const SplitSpec& s : mesh.history()) {
        cur = insertSplit(cur, s);
        refineToMinimalSupport(set, cur, lifo);
    }

    SplineCollection coll{CollectionKind::LR, mesh, {}};
    for (auto& [key, b] : set) {
        (void)key;
        coll.bsplines.push_back(std::move(b));
    }
    std::sort(coll.bsplines.begin(), coll.bsplines.end());
    return coll;
}

}  // namespace

SplineCollection deriveLr(const LRMesh& mesh) { return deriveLrImpl(mesh, false); }

namespace detail {
SplineCollection deriveLrLifo(const LRMesh& mesh) { return deriveLrImpl(mesh, true); }
}  // namespace detail

Rational collectionValueAt(const SplineCollection& coll, const Rational& x, const Rational& y) {
    Rational s(0);
    for (const TensorBSpline& b : coll.bsplines) s += evalTensorInDomain(b, x, y, coll.mesh.domain());
    return s;
}

RatVector currySchoenbergCoordinates(const KnotVector& kv, int p, const std::vector<Rational>& full) {
    const int n = static_cast<int>(full.size()) - (p + 1);
    if (n < 1) throw std::logic_error("currySchoenbergCoordinates: knot vector too short");
    RatVector out = RatVector::Constant(n, Rational(0));

    auto countIn = [](const std::vector<Rational>& v, const Rational& x) {
        return static_cast<int>(std::count(v.begin(), v.end(), x));
    };

    std::vector<std::pair<KnotVector, Rational>> stack{{kv, Rational(1)}};
    while (!stack.empty()) {
        auto [k, w] = stack.back();
        stack.pop_back();
        // A knot present in `full` strictly inside the window but undersupplied in k?
        std::optional<Rational> missing;
        for (const Rational& u : full) {
            if (!(k.front() < u && u < k.back())) continue;
            if (k.multiplicityOf(u) < countIn(full, u)) {
                missing = u;
                break;
            }
        }
        if (missing) {
            KnotInsertion ins = insertKnot(k, p, *missing);
            stack.emplace_back(ins.left, w * ins.alpha1);
            stack.emplace_back(ins.right, w * ins.alpha2);
            continue;
        }
        // k must now be a consecutive window of `full`.
        bool placed = false;
        for (int i = 0; i + p + 1 < static_cast<int>(full.size()); ++i) {
            bool match = true;
            for (int q = 0; q <= p + 1; ++q)
                if (!(full[static_cast<std::size_t>(i + q)] == k[static_cast<std::size_t>(q)])) {
                    match = false;
                    break;
                }
            if (match) {
                out(i) += w;
                placed = true;
                break;
            }
        }
        if (!placed)
            throw std::logic_error("restriction knot vector is not drawn from the split's knots");
    }
    return out;
}

HandInHandReport handInHand(const LRMesh& before, const SplitSpec& split, CollectionKind kind) {
    HandInHandReport rep;
    rep.r = dimIncrement(before, split);
    const LRMesh after = insertSplit(before, split);
    rep.expanded = expandedSplit(after, split);

    const SplineCollection coll = kind == CollectionKind::MS ? enumerateMs(after) : deriveLr(after);

    const int p = after.degree().along(split.axis);
    KnotsOnSplit onExpanded = knotVectorOnSplit(after, rep.expanded);
    std::vector<Rational> full;
    for (const auto& [v, m] : onExpanded.knots)
        for (int i = 0; i < m; ++i) full.push_back(v);

    std::vector<RatVector> rows;
    for (const TensorBSpline& b : coll.bsplines) {
        if (!traversesSupport(rep.expanded, b)) continue;
        ++rep.restrictedCount;
        auto [kv, deg] = restrictionToSplit(b, rep.expanded);
        rows.push_back(currySchoenbergCoordinates(kv, deg, full));
    }
    if (!rows.empty()) {
        RatMatrix m(static_cast<Eigen::Index>(rows.size()), rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
        rep.restrictedRank = static_cast<int>(rankOf(m));
    }
    rep.goesHandInHand = rep.restrictedRank == rep.r;
    return rep;
}

}  // namespace lr
