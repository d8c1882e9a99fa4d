#include "lr/mesh.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace lr {

const char* errorCodeName(ErrorCode c) {
    switch (c) {
        case ErrorCode::NonIncreasingKnots: return "NonIncreasingKnots";
        case ErrorCode::MultiplicityExceedsDegreePlusOne: return "MultiplicityExceedsDegreePlusOne";
        case ErrorCode::DanglingSplit: return "DanglingSplit";
        case ErrorCode::NonConstantSplitResult: return "NonConstantSplitResult";
        case ErrorCode::MultiplicityOverflow: return "MultiplicityOverflow";
        case ErrorCode::SplitNotInMesh: return "SplitNotInMesh";
        case ErrorCode::BadKnotCount: return "BadKnotCount";
        case ErrorCode::KnotOutOfInterior: return "KnotOutOfInterior";
        case ErrorCode::SplitDoesNotTraverse: return "SplitDoesNotTraverse";
        case ErrorCode::ElementStraddlesSupportBoundaryImproperly: return "ElementStraddlesSupportBoundaryImproperly";
        case ErrorCode::LRRulesViolated: return "LRRulesViolated";
        case ErrorCode::ExpandedSplitTooShort: return "ExpandedSplitTooShort";
        case ErrorCode::NotADependence: return "NotADependence";
        case ErrorCode::UnknownScenario: return "UnknownScenario";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::SemanticError: return "SemanticError";
    }
    return "Error";
}

const char* vertexKindName(VertexKind k) {
    switch (k) {
        case VertexKind::Cross: return "cross";
        case VertexKind::TDown: return "T-down";
        case VertexKind::TUp: return "T-up";
        case VertexKind::TLeft: return "T-left";
        case VertexKind::TRight: return "T-right";
        case VertexKind::Boundary: return "boundary";
        case VertexKind::Corner: return "corner";
    }
    return "?";
}

int LRMesh::lineMaxMult(Axis a, const Rational& fixed) const {
    const LineMap& lm = lines(a);
    auto it = lm.find(fixed);
    if (it == lm.end()) return 0;
    int m = 0;
    for (const Part& p : it->second) m = std::max(m, p.mult);
    return m;
}

int LRMesh::multAt(Axis a, const Rational& fixed, const Rational& t) const {
    const LineMap& lm = lines(a);
    auto it = lm.find(fixed);
    if (it == lm.end()) return 0;
    int m = 0;
    for (const Part& p : it->second)
        if (p.span.contains(t)) m = std::max(m, p.mult);
    return m;
}

bool LRMesh::covers(Axis a, const Rational& fixed, const Interval& span, int mult) const {
    const LineMap& lm = lines(a);
    auto it = lm.find(fixed);
    if (it == lm.end()) return false;
    if (span.trivial()) {
        for (const Part& p : it->second)
            if (p.mult >= mult && p.span.contains(span.lo)) return true;
        return false;
    }
    Rational cursor = span.lo;  // parts are sorted by lower end
    for (const Part& p : it->second) {
        if (p.mult < mult) continue;
        if (p.span.hi <= cursor) continue;
        if (p.span.lo > cursor) return false;  // gap
        cursor = std::min(p.span.hi, span.hi);
        if (cursor == span.hi) return true;
    }
    return false;
}

namespace {

void checkKnotList(const LRMesh::KnotList& knots, int cap, const char* axisLabel) {
    if (knots.size() < 2)
        throw Error(ErrorCode::NonIncreasingKnots, std::string(axisLabel) + ": need at least two knot positions");
    for (std::size_t i = 0; i < knots.size(); ++i) {
        if (i > 0 && !(knots[i - 1].first < knots[i].first))
            throw Error(ErrorCode::NonIncreasingKnots,
                        std::string(axisLabel) + ": positions must be strictly increasing");
        if (knots[i].second < 1 || knots[i].second > cap)
            throw Error(ErrorCode::MultiplicityExceedsDegreePlusOne,
                        std::string(axisLabel) + ": multiplicity " + std::to_string(knots[i].second) +
                            " outside [1, " + std::to_string(cap) + "]");
    }
}

}  // namespace

LRMesh newTensorMesh(const LRMesh::KnotList& xknots, const LRMesh::KnotList& yknots, Degree degree) {
    if (degree.p1 < 0 || degree.p2 < 0)
        throw Error(ErrorCode::BadKnotCount, "degree components must be nonnegative");
    checkKnotList(xknots, degree.p1 + 1, "x");
    checkKnotList(yknots, degree.p2 + 1, "y");

    LRMesh m;
    m.degree_ = degree;
    m.domain_ = Rect{Interval{xknots.front().first, xknots.back().first},
                     Interval{yknots.front().first, yknots.back().first}};
    m.xknots0_ = xknots;
    m.yknots0_ = yknots;
    for (const auto& [x, mult] : xknots) m.vlines_[x] = {LRMesh::Part{m.domain_.y, mult}};
    for (const auto& [y, mult] : yknots) m.hlines_[y] = {LRMesh::Part{m.domain_.x, mult}};
    return m;
}

LRMesh insertSplit(const LRMesh& mesh, const SplitSpec& split) {
    const Axis a = split.axis;
    const Axis o = orthogonal(a);
    if (split.mult < 1) throw Error(ErrorCode::MultiplicityOverflow, "split multiplicity must be >= 1");
    if (!(split.span.lo < split.span.hi)) throw Error(ErrorCode::DanglingSplit, "split span is trivial");

    const Interval& fixedRange = mesh.domain().along(a);
    const Interval& varRange = mesh.domain().along(o);
    if (!fixedRange.contains(split.fixed) || !varRange.contains(split.span.lo) ||
        !varRange.contains(split.span.hi))
        throw Error(ErrorCode::DanglingSplit, "split lies outside the domain");

    auto endpointOk = [&](const Rational& e) {
        if (e == varRange.lo || e == varRange.hi) return true;
        return mesh.multAt(o, e, split.fixed) > 0;
    };
    if (!endpointOk(split.span.lo) || !endpointOk(split.span.hi))
        throw Error(ErrorCode::DanglingSplit, "split endpoint does not meet an orthogonal split or the boundary");

    LRMesh out = mesh;
    auto& lm = out.linesMut(a);
    std::vector<LRMesh::Part> old;
    if (auto it = lm.find(split.fixed); it != lm.end()) old = it->second;

    // Cut the line into atomic pieces at part boundaries and split endpoints,
    // apply the multiplicity update rule, then re-merge.
    std::set<Rational> cuts{split.span.lo, split.span.hi};
    for (const auto& p : old) {
        cuts.insert(p.span.lo);
        cuts.insert(p.span.hi);
    }
    std::vector<Rational> cs(cuts.begin(), cuts.end());
    const int cap = mesh.degree().across(a) + 1;
    std::vector<LRMesh::Part> pieces;
    for (std::size_t i = 0; i + 1 < cs.size(); ++i) {
        Interval piece{cs[i], cs[i + 1]};
        Rational mid = midpoint(piece.lo, piece.hi);
        int oldMult = 0;
        for (const auto& p : old)
            if (p.span.contains(mid)) oldMult = std::max(oldMult, p.mult);
        int add = split.span.lo <= piece.lo && piece.hi <= split.span.hi ? split.mult : 0;
        int mult = oldMult + add;
        if (mult == 0) continue;
        if (mult > cap)
            throw Error(ErrorCode::MultiplicityOverflow,
                        "meshline multiplicity " + std::to_string(mult) + " exceeds degree+1 = " +
                            std::to_string(cap));
        pieces.push_back(LRMesh::Part{piece, mult});
    }

    std::vector<LRMesh::Part> merged;
    for (const auto& p : pieces) {
        if (!merged.empty() && merged.back().span.hi == p.span.lo) {
            if (merged.back().mult != p.mult)
                throw Error(ErrorCode::NonConstantSplitResult,
                            "resulting maximal split would not have constant multiplicity");
            merged.back().span.hi = p.span.hi;
        } else {
            merged.push_back(p);
        }
    }
    lm[split.fixed] = std::move(merged);
    out.history_.push_back(split);
    return out;
}

LRMesh replayHistory(const LRMesh& mesh) {
    LRMesh m = newTensorMesh(mesh.tensorKnots(Axis::Vertical), mesh.tensorKnots(Axis::Horizontal), mesh.degree());
    for (const SplitSpec& s : mesh.history()) m = insertSplit(m, s);
    return m;
}

namespace {

struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int i) { return parent[i] == i ? i : parent[i] = find(parent[i]); }
    void unite(int i, int j) { parent[find(i)] = find(j); }
};

std::vector<Rational> lineCoords(const LRMesh& mesh, Axis a) {
    std::set<Rational> s{mesh.domain().along(a).lo, mesh.domain().along(a).hi};
    for (const auto& [fixed, parts] : mesh.lines(a)) {
        (void)parts;
        s.insert(fixed);
    }
    return {s.begin(), s.end()};
}

}  // namespace

std::vector<Element> elements(const LRMesh& mesh) {
    const std::vector<Rational> X = lineCoords(mesh, Axis::Vertical);
    const std::vector<Rational> Y = lineCoords(mesh, Axis::Horizontal);
    const int nx = static_cast<int>(X.size()) - 1;
    const int ny = static_cast<int>(Y.size()) - 1;
    Dsu dsu(nx * ny);
    auto id = [nx](int i, int j) { return j * nx + i; };
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i + 1 < nx; ++i)
            if (!mesh.covers(Axis::Vertical, X[i + 1], Interval{Y[j], Y[j + 1]}, 1)) dsu.unite(id(i, j), id(i + 1, j));
    }
    for (int j = 0; j + 1 < ny; ++j) {
        for (int i = 0; i < nx; ++i)
            if (!mesh.covers(Axis::Horizontal, Y[j + 1], Interval{X[i], X[i + 1]}, 1)) dsu.unite(id(i, j), id(i, j + 1));
    }
    std::map<int, std::pair<Rect, int>> groups;  // root -> (bbox, cell count)
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            int r = dsu.find(id(i, j));
            Rect cell{Interval{X[i], X[i + 1]}, Interval{Y[j], Y[j + 1]}};
            auto it = groups.find(r);
            if (it == groups.end()) {
                groups[r] = {cell, 1};
            } else {
                Rect& b = it->second.first;
                b.x.lo = std::min(b.x.lo, cell.x.lo);
                b.x.hi = std::max(b.x.hi, cell.x.hi);
                b.y.lo = std::min(b.y.lo, cell.y.lo);
                b.y.hi = std::max(b.y.hi, cell.y.hi);
                ++it->second.second;
            }
        }
    }
    std::vector<Element> out;
    out.reserve(groups.size());
    for (auto& [root, g] : groups) {
        (void)root;
        out.push_back(Element{g.first});
    }
    std::sort(out.begin(), out.end(), [](const Element& a, const Element& b) {
        if (a.rect.y.lo != b.rect.y.lo) return a.rect.y.lo < b.rect.y.lo;
        return a.rect.x.lo < b.rect.x.lo;
    });
    return out;
}

std::vector<Vertex> classifyVertices(const LRMesh& mesh) {
    std::vector<Vertex> out;
    const Rect& dom = mesh.domain();
    for (const auto& [vx, vparts] : mesh.lines(Axis::Vertical)) {
        for (const auto& [hy, hparts] : mesh.lines(Axis::Horizontal)) {
            bool vHit = false, hHit = false;
            int mu1 = 0, mu2 = 0;
            bool up = false, down = false, left = false, right = false;
            for (const auto& p : vparts) {
                if (!p.span.contains(hy)) continue;
                vHit = true;
                mu1 = std::max(mu1, p.mult);
                if (p.span.lo <= hy && hy < p.span.hi) up = true;
                if (p.span.lo < hy && hy <= p.span.hi) down = true;
            }
            for (const auto& p : hparts) {
                if (!p.span.contains(vx)) continue;
                hHit = true;
                mu2 = std::max(mu2, p.mult);
                if (p.span.lo <= vx && vx < p.span.hi) right = true;
                if (p.span.lo < vx && vx <= p.span.hi) left = true;
            }
            if (!vHit || !hHit) continue;
            Vertex v;
            v.x = vx;
            v.y = hy;
            v.mu1 = mu1;
            v.mu2 = mu2;
            const bool onXEdge = vx == dom.x.lo || vx == dom.x.hi;
            const bool onYEdge = hy == dom.y.lo || hy == dom.y.hi;
            if (onXEdge && onYEdge) {
                v.kind = VertexKind::Corner;
            } else if (onXEdge || onYEdge) {
                v.kind = VertexKind::Boundary;
            } else {
                int arms = int(up) + int(down) + int(left) + int(right);
                if (arms == 4) {
                    v.kind = VertexKind::Cross;
                } else if (arms == 3) {
                    if (left && right)
                        v.kind = down ? VertexKind::TDown : VertexKind::TUp;
                    else
                        v.kind = left ? VertexKind::TLeft : VertexKind::TRight;
                } else {
                    throw std::logic_error("interior vertex with fewer than 3 arms");
                }
            }
            out.push_back(std::move(v));
        }
    }
    std::sort(out.begin(), out.end(), [](const Vertex& a, const Vertex& b) {
        if (a.y != b.y) return a.y < b.y;
        return a.x < b.x;
    });
    return out;
}

std::vector<SplitSpec> maximalSplits(const LRMesh& mesh, Axis axis) {
    std::vector<SplitSpec> out;
    for (const auto& [fixed, parts] : mesh.lines(axis))
        for (const auto& p : parts) out.push_back(SplitSpec{axis, fixed, p.span, p.mult});
    return out;
}

std::vector<SplitSpec> maximalSplits(const LRMesh& mesh) {
    std::vector<SplitSpec> out = maximalSplits(mesh, Axis::Vertical);
    std::vector<SplitSpec> h = maximalSplits(mesh, Axis::Horizontal);
    out.insert(out.end(), h.begin(), h.end());
    return out;
}

std::vector<Meshline> meshlines(const LRMesh& mesh) {
    std::vector<Meshline> out;
    for (Axis a : {Axis::Vertical, Axis::Horizontal}) {
        const Axis o = orthogonal(a);
        for (const auto& [fixed, parts] : mesh.lines(a)) {
            for (const auto& p : parts) {
                std::set<Rational> cuts{p.span.lo, p.span.hi};
                for (const auto& [ofixed, oparts] : mesh.lines(o)) {
                    if (!p.span.contains(ofixed)) continue;
                    for (const auto& op : oparts)
                        if (op.span.contains(fixed)) cuts.insert(ofixed);
                }
                std::vector<Rational> cs(cuts.begin(), cuts.end());
                for (std::size_t i = 0; i + 1 < cs.size(); ++i)
                    out.push_back(Meshline{a, fixed, Interval{cs[i], cs[i + 1]}, p.mult});
            }
        }
    }
    return out;
}

KnotsOnSplit knotVectorOnSplit(const LRMesh& mesh, const SplitSpec& split) {
    if (!mesh.covers(split.axis, split.fixed, split.span, 1))
        throw Error(ErrorCode::SplitNotInMesh, "split is not contained in the mesh's meshlines");
    const Axis o = orthogonal(split.axis);
    KnotsOnSplit res;
    for (const auto& [ofixed, oparts] : mesh.lines(o)) {
        if (!split.span.contains(ofixed)) continue;
        int mu = 0;
        for (const auto& op : oparts)
            if (op.span.contains(split.fixed)) mu = std::max(mu, op.mult);
        if (mu > 0) {
            res.knots.emplace_back(ofixed, mu);
            res.length += mu;
        }
    }
    return res;
}

SplitSpec expandedSplit(const LRMesh& meshAfter, const SplitSpec& split) {
    if (meshAfter.history().empty() || !(meshAfter.history().back() == split))
        throw std::logic_error("expandedSplit: split must be the mesh's most recent insertion");
    LRMesh before = newTensorMesh(meshAfter.tensorKnots(Axis::Vertical), meshAfter.tensorKnots(Axis::Horizontal),
                                  meshAfter.degree());
    for (std::size_t i = 0; i + 1 < meshAfter.history().size(); ++i) before = insertSplit(before, meshAfter.history()[i]);

    const Axis a = split.axis;
    const int borrow = meshAfter.degree().along(a) + 1;
    Interval span = split.span;

    auto oldParts = [&]() -> std::vector<LRMesh::Part> {
        auto it = before.lines(a).find(split.fixed);
        if (it == before.lines(a).end()) return {};
        return it->second;
    }();

    auto verticesOn = [&](const Interval& s) {
        std::set<Rational> vs{s.lo, s.hi};
        const Axis o = orthogonal(a);
        for (const auto& [ofixed, oparts] : before.lines(o)) {
            if (!s.contains(ofixed)) continue;
            for (const auto& op : oparts)
                if (op.span.contains(split.fixed)) vs.insert(ofixed);
        }
        return std::vector<Rational>(vs.begin(), vs.end());
    };

    for (const auto& p : oldParts) {
        if (p.span.hi == split.span.lo) {  // old split below/left of the new one
            std::vector<Rational> vs = verticesOn(p.span);
            int idx = static_cast<int>(vs.size()) - 1;  // junction
            int target = std::max(0, idx - borrow);
            span.lo = vs[static_cast<std::size_t>(target)];
        }
        if (p.span.lo == split.span.hi) {  // old split above/right of the new one
            std::vector<Rational> vs = verticesOn(p.span);
            int target = std::min(static_cast<int>(vs.size()) - 1, borrow);
            span.hi = vs[static_cast<std::size_t>(target)];
        }
    }
    return SplitSpec{a, split.fixed, span, split.mult};
}

std::vector<RuleViolation> validateLrRules(const LRMesh& mesh) {
    std::vector<RuleViolation> out;
    const Degree deg = mesh.degree();
    auto sumMult = [](const LRMesh::KnotList& k) {
        int s = 0;
        for (const auto& [pos, m] : k) {
            (void)pos;
            s += m;
        }
        return s;
    };
    int sx = sumMult(mesh.tensorKnots(Axis::Vertical));
    int sy = sumMult(mesh.tensorKnots(Axis::Horizontal));
    if (sx < deg.p1 + 2)
        out.push_back(RuleViolation{-1, 1,
                                    "initial tensor mesh has " + std::to_string(sx) +
                                        " vertical splits counting multiplicities, needs " +
                                        std::to_string(deg.p1 + 2)});
    if (sy < deg.p2 + 2)
        out.push_back(RuleViolation{-1, 1,
                                    "initial tensor mesh has " + std::to_string(sy) +
                                        " horizontal splits counting multiplicities, needs " +
                                        std::to_string(deg.p2 + 2)});

    LRMesh m = newTensorMesh(mesh.tensorKnots(Axis::Vertical), mesh.tensorKnots(Axis::Horizontal), deg);
    auto checkStep = [&](const LRMesh& cur, int step) {
        for (Axis a : {Axis::Vertical, Axis::Horizontal}) {
            const int need = cur.degree().along(a) + 2;
            for (const SplitSpec& s : maximalSplits(cur, a)) {
                int len = knotVectorOnSplit(cur, s).length;
                if (len < need) {
                    std::ostringstream os;
                    os << "maximal " << axisName(a) << "-split at " << s.fixed << " over [" << s.span.lo << ", "
                       << s.span.hi << "] has length " << len << ", needs " << need;
                    out.push_back(RuleViolation{step, 2, os.str()});
                }
            }
        }
    };
    checkStep(m, -1);
    for (std::size_t i = 0; i < mesh.history().size(); ++i) {
        m = insertSplit(m, mesh.history()[i]);
        checkStep(m, static_cast<int>(i));
    }
    return out;
}

RawMeshBuilder::RawMeshBuilder(Rect domain, Degree degree) {
    mesh_.domain_ = std::move(domain);
    mesh_.degree_ = degree;
}

RawMeshBuilder& RawMeshBuilder::addLine(Axis axis, const Rational& fixed, const Interval& span, int mult) {
    mesh_.linesMut(axis)[fixed].push_back(LRMesh::Part{span, mult});
    return *this;
}

LRMesh RawMeshBuilder::build() const {
    LRMesh m = mesh_;
    for (auto* lm : {&m.vlines_, &m.hlines_}) {
        for (auto& [fixed, parts] : *lm) {
            (void)fixed;
            std::sort(parts.begin(), parts.end(),
                      [](const LRMesh::Part& a, const LRMesh::Part& b) { return a.span.lo < b.span.lo; });
        }
    }
    return m;
}

}  // namespace lr
