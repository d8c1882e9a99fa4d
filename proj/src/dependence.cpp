#include "lr/dependence.hpp"

#include <algorithm>
#include <sstream>

namespace lr {

namespace {

bool memberCoversElement(const TensorBSpline& b, const Element& el) {
    return b.support().overlapsInterior(el.rect);
}

TensorBSpline unweighted(const TensorBSpline& b) { return TensorBSpline(b.degree, b.x, b.y); }

std::string pointStr(const Rational& x, const Rational& y) {
    return "(" + x.str() + ", " + y.str() + ")";
}

}  // namespace

ElementMatrix assembleElementMatrix(const SplineCollection& coll) {
    ElementMatrix em;
    em.degree = coll.mesh.degree();
    em.columns = coll.bsplines;

    std::vector<Element> all = elements(coll.mesh);
    for (const Element& el : all) {
        bool covered = false;
        for (const TensorBSpline& b : coll.bsplines)
            if (memberCoversElement(b, el)) {
                covered = true;
                break;
            }
        if (covered) em.elements.push_back(el);
    }

    const int blk = (em.degree.p1 + 1) * (em.degree.p2 + 1);
    em.m = RatMatrix::Constant(static_cast<Eigen::Index>(em.elements.size()) * blk,
                               static_cast<Eigen::Index>(em.columns.size()), Rational(0));
    BernsteinCache cache;
    for (std::size_t c = 0; c < em.columns.size(); ++c) {
        const TensorBSpline b = unweighted(em.columns[c]);
        for (std::size_t e = 0; e < em.elements.size(); ++e) {
            if (!memberCoversElement(b, em.elements[e])) continue;
            RatMatrix coeffs = cache.onElement(b, em.elements[e]);
            Eigen::Index row = static_cast<Eigen::Index>(e) * blk;
            for (int i = 0; i <= em.degree.p1; ++i)
                for (int j = 0; j <= em.degree.p2; ++j)
                    em.m(row + i * (em.degree.p2 + 1) + j, static_cast<Eigen::Index>(c)) = coeffs(i, j);
        }
    }
    return em;
}

namespace {

Eigen::Index subNullity(const ElementMatrix& em, const std::vector<std::size_t>& cols) {
    RatMatrix sub(em.m.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t i = 0; i < cols.size(); ++i) sub.col(static_cast<Eigen::Index>(i)) = em.m.col(static_cast<Eigen::Index>(cols[i]));
    return static_cast<Eigen::Index>(cols.size()) - rankOf(sub);
}

}  // namespace

DependenceReport findActiveDependence(const SplineCollection& coll) {
    DependenceReport rep;
    ElementMatrix em = assembleElementMatrix(coll);
    if (em.columns.empty()) return rep;
    rep.nullBasis = nullSpace(em.m);
    rep.rank = static_cast<Eigen::Index>(em.columns.size()) - static_cast<Eigen::Index>(rep.nullBasis.size());
    rep.nullity = static_cast<Eigen::Index>(rep.nullBasis.size());
    if (rep.nullity == 0) return rep;

    for (const RatVector& v : rep.nullBasis)
        for (Eigen::Index i = 0; i < v.size(); ++i)
            if (!v(i).isZero()) rep.activeSet.insert(static_cast<std::size_t>(i));

    // Greedy circuit extraction: drop columns while a dependence survives.
    std::vector<std::size_t> keep(rep.activeSet.begin(), rep.activeSet.end());
    for (std::size_t probe = 0; probe < keep.size();) {
        std::vector<std::size_t> trial = keep;
        trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(probe));
        if (trial.size() >= 2 && subNullity(em, trial) >= 1) {
            keep = std::move(trial);  // same index now refers to the next candidate
        } else {
            ++probe;
        }
    }
    RatMatrix sub(em.m.rows(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t i = 0; i < keep.size(); ++i) sub.col(static_cast<Eigen::Index>(i)) = em.m.col(static_cast<Eigen::Index>(keep[i]));
    std::vector<RatVector> ns = nullSpace(sub);
    if (ns.size() != 1) throw std::logic_error("circuit extraction did not reach a single dependence");
    Circuit circuit;
    circuit.members = keep;
    circuit.coefficients = ns.front();
    for (Eigen::Index i = 0; i < circuit.coefficients.size(); ++i)
        if (circuit.coefficients(i).isZero()) throw std::logic_error("circuit coefficient vanished");
    rep.circuit = circuit;

    std::vector<TensorBSpline> members;
    for (std::size_t i : keep) members.push_back(coll.bsplines[i]);
    rep.diagnostics = verifyDependenceConditions(members, circuit.coefficients, coll.mesh);
    return rep;
}

OverloadReport overloadCounts(const SplineCollection& coll) {
    OverloadReport rep;
    rep.elements = elements(coll.mesh);
    const int need = (coll.mesh.degree().p1 + 1) * (coll.mesh.degree().p2 + 1);
    rep.coverCount.assign(rep.elements.size(), 0);
    for (std::size_t e = 0; e < rep.elements.size(); ++e)
        for (const TensorBSpline& b : coll.bsplines)
            if (memberCoversElement(b, rep.elements[e])) ++rep.coverCount[e];
    for (std::size_t e = 0; e < rep.elements.size(); ++e)
        if (rep.coverCount[e] > need) rep.overloadedElements.insert(e);
    for (std::size_t i = 0; i < coll.bsplines.size(); ++i) {
        bool all = true;
        for (std::size_t e = 0; e < rep.elements.size(); ++e) {
            if (!memberCoversElement(coll.bsplines[i], rep.elements[e])) continue;
            if (!rep.overloadedElements.count(e)) {
                all = false;
                break;
            }
        }
        if (all) rep.overloadedBsplines.insert(i);
    }
    rep.overloadedCover.assign(rep.elements.size(), 0);
    for (std::size_t e = 0; e < rep.elements.size(); ++e)
        for (std::size_t i : rep.overloadedBsplines)
            if (memberCoversElement(coll.bsplines[i], rep.elements[e])) ++rep.overloadedCover[e];
    return rep;
}

PeelReport peel(const SplineCollection& coll, bool improved) {
    OverloadReport ov = overloadCounts(coll);
    PeelReport rep;
    rep.overloadedElements = ov.overloadedElements;
    rep.overloadedBsplines = ov.overloadedBsplines;

    std::vector<Vertex> tvertices;
    if (improved) {
        for (const Vertex& v : classifyVertices(coll.mesh))
            if (v.kind == VertexKind::TDown || v.kind == VertexKind::TUp || v.kind == VertexKind::TLeft ||
                v.kind == VertexKind::TRight)
                tvertices.push_back(v);
    }

    std::set<std::size_t> remaining = ov.overloadedBsplines;
    while (true) {
        std::set<std::size_t> toRemove;
        // Elements of E^O covered by exactly one remaining overloaded member.
        for (std::size_t e = 0; e < ov.elements.size(); ++e) {
            std::size_t sole = 0;
            int count = 0;
            for (std::size_t i : remaining) {
                if (memberCoversElement(coll.bsplines[i], ov.elements[e])) {
                    sole = i;
                    if (++count > 1) break;
                }
            }
            if (count == 1) toRemove.insert(sole);
        }
        if (improved) {
            for (const Vertex& v : tvertices) {
                std::size_t owner = 0;
                int count = 0;
                for (std::size_t i : remaining) {
                    const TensorBSpline& b = coll.bsplines[i];
                    if (b.x.multiplicityOf(v.x) > 0 && b.y.multiplicityOf(v.y) > 0) {
                        owner = i;
                        if (++count > 1) break;
                    }
                }
                if (count == 1) {
                    if (!toRemove.count(owner)) rep.improvedUsed = true;
                    toRemove.insert(owner);
                }
            }
        }
        bool removesAll = true;
        for (std::size_t i : remaining)
            if (!toRemove.count(i)) {
                removesAll = false;
                break;
            }
        if (removesAll) {
            if (!remaining.empty()) rep.rounds.push_back({toRemove.begin(), toRemove.end()});
            rep.verdict = PeelReport::Verdict::Independent;
            return rep;
        }
        if (toRemove.empty()) {
            rep.verdict = PeelReport::Verdict::Inconclusive;
            return rep;
        }
        rep.rounds.push_back({toRemove.begin(), toRemove.end()});
        for (std::size_t i : toRemove) remaining.erase(i);
    }
}

namespace {

struct CoverGrid {
    std::vector<Rational> xs, ys;                 // grid coordinates
    std::vector<std::vector<bool>> covered;       // [i][j]: cell (xs[i],xs[i+1])x(ys[j],ys[j+1]) inside R

    bool cellCovered(int i, int j) const {
        if (i < 0 || j < 0 || i + 1 >= static_cast<int>(xs.size()) || j + 1 >= static_cast<int>(ys.size()))
            return false;
        return covered[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
};

CoverGrid buildCoverGrid(const std::vector<TensorBSpline>& members, const LRMesh& mesh) {
    CoverGrid g;
    std::set<Rational> xs, ys;
    for (const TensorBSpline& b : members) {
        xs.insert(b.x.front());
        xs.insert(b.x.back());
        ys.insert(b.y.front());
        ys.insert(b.y.back());
    }
    for (const auto& [x, parts] : mesh.lines(Axis::Vertical)) {
        (void)parts;
        if (x >= *xs.begin() && x <= *xs.rbegin()) xs.insert(x);
    }
    for (const auto& [y, parts] : mesh.lines(Axis::Horizontal)) {
        (void)parts;
        if (y >= *ys.begin() && y <= *ys.rbegin()) ys.insert(y);
    }
    g.xs.assign(xs.begin(), xs.end());
    g.ys.assign(ys.begin(), ys.end());
    g.covered.assign(g.xs.size() - 1, std::vector<bool>(g.ys.size() - 1, false));
    for (std::size_t i = 0; i + 1 < g.xs.size(); ++i) {
        for (std::size_t j = 0; j + 1 < g.ys.size(); ++j) {
            Rect cell{Interval{g.xs[i], g.xs[i + 1]}, Interval{g.ys[j], g.ys[j + 1]}};
            for (const TensorBSpline& b : members)
                if (b.support().contains(cell)) {
                    g.covered[i][j] = true;
                    break;
                }
        }
    }
    return g;
}

bool isKnotPair(const TensorBSpline& b, const Rational& x, const Rational& y) {
    return b.x.multiplicityOf(x) > 0 && b.y.multiplicityOf(y) > 0;
}

}  // namespace

CircuitDiagnostics verifyDependenceConditions(const std::vector<TensorBSpline>& circuit,
                                              const RatVector& coefficients, const LRMesh& mesh) {
    if (static_cast<std::size_t>(coefficients.size()) != circuit.size())
        throw Error(ErrorCode::NotADependence, "coefficient count does not match the circuit");
    for (Eigen::Index i = 0; i < coefficients.size(); ++i)
        if (coefficients(i).isZero())
            throw Error(ErrorCode::NotADependence, "active dependence requires all coefficients nonzero");

    // Exactness: the weighted Bernstein coefficients must cancel on every element.
    {
        BernsteinCache cache;
        const Degree deg = mesh.degree();
        for (const Element& el : elements(mesh)) {
            RatMatrix acc = RatMatrix::Constant(deg.p1 + 1, deg.p2 + 1, Rational(0));
            for (std::size_t i = 0; i < circuit.size(); ++i) {
                if (!circuit[i].support().overlapsInterior(el.rect)) continue;
                acc += coefficients(static_cast<Eigen::Index>(i)) * cache.onElement(unweighted(circuit[i]), el);
            }
            for (int i = 0; i <= deg.p1; ++i)
                for (int j = 0; j <= deg.p2; ++j)
                    if (!acc(i, j).isZero())
                        throw Error(ErrorCode::NotADependence,
                                    "combination does not vanish on element with corner " +
                                        pointStr(el.rect.x.lo, el.rect.y.lo));
        }
    }

    CircuitDiagnostics diag;
    CoverGrid grid = buildCoverGrid(circuit, mesh);

    // (a) Nestedness at every convex corner of R.
    for (std::size_t gi = 0; gi < grid.xs.size(); ++gi) {
        for (std::size_t gj = 0; gj < grid.ys.size(); ++gj) {
            const int i = static_cast<int>(gi), j = static_cast<int>(gj);
            const bool ne = grid.cellCovered(i, j);
            const bool nw = grid.cellCovered(i - 1, j);
            const bool se = grid.cellCovered(i, j - 1);
            const bool sw = grid.cellCovered(i - 1, j - 1);
            if (int(ne) + int(nw) + int(se) + int(sw) != 1) continue;  // not a convex corner of R
            const Rational& cx = grid.xs[gi];
            const Rational& cy = grid.ys[gj];
            const int sx = (ne || se) ? +1 : -1;
            const int sy = (ne || nw) ? +1 : -1;

            std::vector<const TensorBSpline*> atCorner;
            for (const TensorBSpline& b : circuit) {
                const bool cxOk = sx > 0 ? b.x.front() == cx : b.x.back() == cx;
                const bool cyOk = sy > 0 ? b.y.front() == cy : b.y.back() == cy;
                if (cxOk && cyOk && isKnotPair(b, cx, cy)) atCorner.push_back(&b);
            }
            if (atCorner.empty()) {
                diag.nestedness.pass = false;
                diag.nestedness.witnesses.push_back("no circuit member has corner " + pointStr(cx, cy) +
                                                    " as a pair of knots");
                continue;
            }
            auto extent = [&](const TensorBSpline* b) {
                Rational ex = sx > 0 ? b->x.back() - cx : cx - b->x.front();
                Rational ey = sy > 0 ? b->y.back() - cy : cy - b->y.front();
                return std::make_pair(ex, ey);
            };
            Rational minx = extent(atCorner.front()).first, miny = extent(atCorner.front()).second;
            for (const TensorBSpline* b : atCorner) {
                auto [ex, ey] = extent(b);
                minx = std::min(minx, ex);
                miny = std::min(miny, ey);
            }
            std::vector<const TensorBSpline*> smallest;
            for (const TensorBSpline* b : atCorner) {
                auto [ex, ey] = extent(b);
                if (ex == minx && ey == miny) smallest.push_back(b);
            }
            if (smallest.size() != 1) {
                diag.nestedness.pass = false;
                diag.nestedness.witnesses.push_back("corner " + pointStr(cx, cy) +
                                                    ": smallest-support member is not unique");
                continue;
            }
            bool nested = false;
            for (const TensorBSpline* b : atCorner) {
                auto [ex, ey] = extent(b);
                if (ex > minx && ey > miny) {
                    nested = true;
                    break;
                }
            }
            if (!nested) {
                diag.nestedness.pass = false;
                diag.nestedness.witnesses.push_back("corner " + pointStr(cx, cy) +
                                                    ": smallest member is not nested into a larger one");
            } else {
                diag.nestedness.witnesses.push_back("corner " + pointStr(cx, cy) + ": nested");
            }
        }
    }

    // (b) Every relevant meshline lies in splits of at least two members.
    for (const Meshline& l : meshlines(mesh)) {
        int owners = 0;
        for (const TensorBSpline& b : circuit) {
            const KnotVector& fixedKnots = l.axis == Axis::Vertical ? b.x : b.y;
            const KnotVector& spanKnots = l.axis == Axis::Vertical ? b.y : b.x;
            if (fixedKnots.multiplicityOf(l.fixed) > 0 && spanKnots.front() <= l.span.lo &&
                l.span.hi <= spanKnots.back())
                ++owners;
        }
        if (owners == 1) {
            diag.meshlineShare.pass = false;
            std::ostringstream os;
            os << "relevant " << axisName(l.axis) << "-meshline at " << l.fixed << " over [" << l.span.lo << ", "
               << l.span.hi << "] belongs to the splits of only one member";
            diag.meshlineShare.witnesses.push_back(os.str());
        }
    }

    // (c) Every relevant T-vertex (including circuit-effective ones) in the
    // interior of R is a pair of knots of at least two members.
    for (const Vertex& v : classifyVertices(mesh)) {
        // Interior of R: all four incident grid cells covered.
        auto xi = std::find(grid.xs.begin(), grid.xs.end(), v.x);
        auto yi = std::find(grid.ys.begin(), grid.ys.end(), v.y);
        if (xi == grid.xs.end() || yi == grid.ys.end()) continue;
        const int i = static_cast<int>(xi - grid.xs.begin());
        const int j = static_cast<int>(yi - grid.ys.begin());
        if (!(grid.cellCovered(i, j) && grid.cellCovered(i - 1, j) && grid.cellCovered(i, j - 1) &&
              grid.cellCovered(i - 1, j - 1)))
            continue;

        int sharers = 0;
        for (const TensorBSpline& b : circuit)
            if (isKnotPair(b, v.x, v.y)) ++sharers;
        if (sharers == 0) continue;  // not relevant

        bool effectiveT = v.kind == VertexKind::TDown || v.kind == VertexKind::TUp ||
                          v.kind == VertexKind::TLeft || v.kind == VertexKind::TRight;
        if (!effectiveT && v.kind == VertexKind::Cross) {
            // A cross-vertex with a non-relevant arm behaves as a T-vertex for the circuit.
            auto armRelevant = [&](Axis axis, const Interval& span) {
                for (const TensorBSpline& b : circuit) {
                    const KnotVector& fixedKnots = axis == Axis::Vertical ? b.x : b.y;
                    const KnotVector& spanKnots = axis == Axis::Vertical ? b.y : b.x;
                    const Rational& fx = axis == Axis::Vertical ? v.x : v.y;
                    if (fixedKnots.multiplicityOf(fx) > 0 && spanKnots.front() <= span.lo &&
                        span.hi <= spanKnots.back())
                        return true;
                }
                return false;
            };
            // Arm stubs reach to the next grid coordinate in each direction.
            if (i > 0 && !armRelevant(Axis::Horizontal, Interval{grid.xs[static_cast<std::size_t>(i - 1)], v.x}))
                effectiveT = true;
            if (i + 1 < static_cast<int>(grid.xs.size()) &&
                !armRelevant(Axis::Horizontal, Interval{v.x, grid.xs[static_cast<std::size_t>(i + 1)]}))
                effectiveT = true;
            if (j > 0 && !armRelevant(Axis::Vertical, Interval{grid.ys[static_cast<std::size_t>(j - 1)], v.y}))
                effectiveT = true;
            if (j + 1 < static_cast<int>(grid.ys.size()) &&
                !armRelevant(Axis::Vertical, Interval{v.y, grid.ys[static_cast<std::size_t>(j + 1)]}))
                effectiveT = true;
        }
        if (effectiveT && sharers < 2) {
            diag.tvertexShare.pass = false;
            diag.tvertexShare.witnesses.push_back("relevant T-vertex " + pointStr(v.x, v.y) +
                                                  " is a knot pair of only one member");
        }
    }
    return diag;
}

}  // namespace lr
