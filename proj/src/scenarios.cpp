#include "lr/scenarios.hpp"

#include <functional>
#include <map>

namespace lr {

namespace {

Rational rat(const char* s) { return Rational::fromString(s); }

LRMesh::KnotList simpleKnots(std::initializer_list<const char*> values) {
    LRMesh::KnotList out;
    for (const char* v : values) out.emplace_back(rat(v), 1);
    return out;
}

SplitSpec vsplit(const char* fixed, const char* lo, const char* hi, int mult = 1) {
    return SplitSpec{Axis::Vertical, rat(fixed), Interval{rat(lo), rat(hi)}, mult};
}

SplitSpec hsplit(const char* fixed, const char* lo, const char* hi, int mult = 1) {
    return SplitSpec{Axis::Horizontal, rat(fixed), Interval{rat(lo), rat(hi)}, mult};
}

LRMesh buildMesh(LRMesh::KnotList xknots, LRMesh::KnotList yknots, Degree deg,
                 std::initializer_list<SplitSpec> inserts) {
    LRMesh m = newTensorMesh(xknots, yknots, deg);
    for (const SplitSpec& s : inserts) m = insertSplit(m, s);
    return m;
}

// The pinwheel mesh whose biquadratic MS set carries the six-member dependence:
// two full-width bands refined by two horizontal and two vertical insertions.
LRMesh fig7a() {
    return buildMesh(simpleKnots({"0", "1/4", "1/2", "3/4", "1", "5/4"}), simpleKnots({"0", "1/3", "2/3", "1"}),
                     Degree{2, 2},
                     {hsplit("11/20", "0", "3/4"), hsplit("9/20", "1/2", "5/4"), vsplit("7/12", "0", "2/3"),
                      vsplit("2/3", "1/3", "1")});
}

// fig7a-type mesh refined by one more length-5 vertical split; the LR set of
// twelve members carries the eight-member dependence.
LRMesh fig8lr() {
    return buildMesh(simpleKnots({"0", "1/4", "1/2", "3/4", "1", "5/4"}), simpleKnots({"0", "1/3", "2/3", "1"}),
                     Degree{2, 2},
                     {hsplit("11/20", "0", "3/4"), hsplit("9/20", "1/2", "5/4"), vsplit("5/8", "0", "2/3"),
                      vsplit("11/16", "1/3", "1"), vsplit("9/16", "1/3", "1")});
}

// Region mesh carrying exactly six MS B-splines; deliberately not LR-rule
// conformant relative to its own tensor start (it is a zoom of a larger mesh).
LRMesh fig15a() {
    return buildMesh(simpleKnots({"0", "1/3", "2/3", "1"}), simpleKnots({"0", "1/3", "2/3", "1"}), Degree{2, 2},
                     {vsplit("4/9", "0", "2/3"), vsplit("5/9", "1/3", "1"), hsplit("5/9", "0", "2/3"),
                      hsplit("4/9", "1/3", "1"), vsplit("1/6", "0", "5/9"), hsplit("5/6", "5/9", "1"),
                      vsplit("5/6", "0", "4/9"), hsplit("1/6", "5/6", "1")});
}

// Stacked local refinements over an open-knot grid whose overloaded members
// defeat the classic peel (every overloaded element is shared) but fall to the
// T-vertex improvement; the collection is in fact independent.
LRMesh figpe() {
    LRMesh::KnotList xk = {{rat("0"), 3}, {rat("1"), 1}, {rat("2"), 1}, {rat("3"), 1}, {rat("4"), 3}};
    LRMesh::KnotList yk = {{rat("0"), 3}, {rat("1"), 1}, {rat("2"), 1}, {rat("3"), 3}};
    LRMesh m = newTensorMesh(xk, yk, Degree{2, 2});
    for (const SplitSpec& s :
         {vsplit("5/2", "2", "3"), vsplit("3/2", "1", "3"), hsplit("3/2", "1", "3"), vsplit("7/2", "2", "3"),
          vsplit("9/4", "0", "2"), vsplit("7/4", "0", "1")})
        m = insertSplit(m, s);
    return m;
}

// Pinwheel-of-four configuration on a 5x5 grid, exactly as the peeling figure
// draws it. Illustrates the count pattern of the five pinwheel supports; on
// this literal mesh none of them is overloaded (the blanket member always
// covers an unrefined central element of cover (p1+1)(p2+1)).
LRMesh figpeSketch() {
    return buildMesh(simpleKnots({"0", "1/5", "2/5", "3/5", "4/5", "1"}),
                     simpleKnots({"0", "1/5", "2/5", "3/5", "4/5", "1"}), Degree{2, 2},
                     {hsplit("7/10", "0", "3/5"), vsplit("3/10", "0", "7/10"), hsplit("3/10", "3/10", "1"),
                      vsplit("7/10", "3/10", "1"), hsplit("7/10", "3/5", "7/10")});
}

LRMesh hh1Base() {
    return buildMesh(simpleKnots({"0", "1/4", "1/2", "3/4", "1", "5/4"}), simpleKnots({"0", "1/3", "2/3", "1"}),
                     Degree{2, 2}, {hsplit("4/5", "0", "3/4"), hsplit("9/20", "1/2", "5/4")});
}

LRMesh hh1b() { return insertSplit(hh1Base(), hsplit("4/5", "3/4", "1")); }
LRMesh hh1c() { return insertSplit(hh1b(), hsplit("4/5", "1", "5/4")); }
LRMesh hh1d() { return insertSplit(hh1b(), hsplit("9/20", "1/4", "1/2")); }

// Mesh for the rank-deficient length-7 insertion: five traversed members with
// only three independent restrictions.
LRMesh hh5() {
    return buildMesh(simpleKnots({"-1/4", "0", "1/4", "1/2", "3/4", "1"}),
                     simpleKnots({"0", "1/4", "1/2", "3/4", "1"}), Degree{2, 2},
                     {vsplit("1/8", "1/4", "1"), hsplit("7/16", "1/4", "1"), hsplit("5/16", "1/4", "1"),
                      vsplit("1/3", "1/4", "1/2"), vsplit("5/12", "1/4", "1/2")});
}

// Box-partition demo: six elements, one T-vertex pattern.
LRMesh fig2a() {
    return buildMesh(simpleKnots({"0", "1/2", "3/2"}), simpleKnots({"0", "2/3", "1"}), Degree{0, 0},
                     {vsplit("1", "0", "2/3"), hsplit("1/3", "1/2", "1")});
}

// The fig7a arrangement transported to other bidegrees.
LRMesh deg34_33() {
    return buildMesh(simpleKnots({"0", "1/4", "1/2", "3/4", "1", "5/4", "3/2"}),
                     simpleKnots({"0", "1/4", "1/2", "3/4", "1"}), Degree{3, 3},
                     {hsplit("5/8", "0", "1"), hsplit("3/8", "1/2", "3/2"), vsplit("5/8", "1/4", "1"),
                      vsplit("7/8", "0", "3/4")});
}

LRMesh deg34_44() {
    return buildMesh(simpleKnots({"0", "1/5", "2/5", "3/5", "4/5", "1", "6/5", "7/5"}),
                     simpleKnots({"0", "1/5", "2/5", "3/5", "4/5", "1"}), Degree{4, 4},
                     {hsplit("7/10", "0", "1"), hsplit("3/10", "2/5", "7/5"), vsplit("1/2", "1/5", "1"),
                      vsplit("9/10", "0", "4/5")});
}

LRMesh deg34_11() {
    return buildMesh(simpleKnots({"0", "1/5", "2/5", "3/5", "4/5"}), simpleKnots({"0", "3/10", "3/5"}), Degree{1, 1},
                     {hsplit("9/20", "0", "2/5"), vsplit("3/10", "0", "9/20"), hsplit("3/20", "3/10", "4/5"),
                      vsplit("1/2", "3/20", "3/5"), hsplit("9/20", "2/5", "1/2")});
}

LRMesh deg34_10() {
    return buildMesh(simpleKnots({"0", "1/5", "2/5", "3/5", "4/5"}), simpleKnots({"0", "3/5"}), Degree{1, 0},
                     {hsplit("9/20", "0", "2/5"), vsplit("3/10", "0", "9/20"), hsplit("3/20", "3/10", "4/5"),
                      vsplit("1/2", "3/20", "3/5"), hsplit("9/20", "2/5", "1/2")});
}

LRMesh deg34_31() {
    return buildMesh(simpleKnots({"0", "1/4", "1/2", "3/4", "1", "5/4", "3/2"}), simpleKnots({"0", "1/2", "1"}),
                     Degree{3, 1},
                     {hsplit("3/4", "0", "1"), hsplit("1/4", "1/2", "3/2"), vsplit("5/8", "1/4", "1"),
                      vsplit("7/8", "0", "3/4")});
}

// The fig8lr arrangement transported to other bidegrees.
LRMesh deg34lr_33() {
    return buildMesh(simpleKnots({"0", "1/4", "1/2", "3/4", "1", "5/4", "3/2"}),
                     simpleKnots({"0", "1/4", "1/2", "3/4", "1"}), Degree{3, 3},
                     {hsplit("5/8", "0", "1"), hsplit("3/8", "1/2", "3/2"), vsplit("5/8", "1/4", "1"),
                      vsplit("5/6", "0", "3/4"), vsplit("11/12", "1/4", "1")});
}

LRMesh deg34lr_44() {
    return buildMesh(simpleKnots({"0", "1/5", "2/5", "3/5", "4/5", "1", "6/5", "7/5"}),
                     simpleKnots({"0", "1/5", "2/5", "3/5", "4/5", "1"}), Degree{4, 4},
                     {hsplit("7/10", "0", "1"), hsplit("3/10", "2/5", "7/5"), vsplit("1/2", "1/5", "1"),
                      vsplit("9/10", "0", "4/5"), vsplit("7/10", "1/5", "1")});
}

LRMesh deg34lr_31() {
    return buildMesh(simpleKnots({"0", "1/4", "1/2", "3/4", "1", "5/4", "3/2"}), simpleKnots({"0", "1/2", "1"}),
                     Degree{3, 1},
                     {hsplit("3/4", "0", "1"), hsplit("1/4", "1/2", "3/2"), vsplit("5/8", "1/4", "1"),
                      vsplit("5/6", "0", "3/4"), vsplit("11/12", "1/4", "1")});
}

LRMesh deg34lr_20() {
    return buildMesh(simpleKnots({"0", "1/4", "1/2", "3/4", "1", "5/4"}), simpleKnots({"0", "4/5"}), Degree{2, 0},
                     {hsplit("3/5", "0", "3/4"), hsplit("1/5", "1/2", "5/4"), vsplit("9/16", "1/5", "4/5"),
                      vsplit("5/8", "0", "3/5"), vsplit("11/16", "1/5", "4/5")});
}

struct Entry {
    std::function<LRMesh()> build;
    const char* summary;
};

const std::map<std::string, Entry>& registry() {
    static const std::map<std::string, Entry> reg = {
        {"fig2a", {fig2a, "box-partition demo: 6 elements, degree (0,0)"}},
        {"fig7a", {fig7a, "degree (2,2): dim 9, 10 MS vs 9 LR, six-member MS dependence"}},
        {"fig8lr", {fig8lr, "degree (2,2): dim 11, 12 LR, eight-member LR dependence"}},
        {"fig15a", {fig15a, "region mesh, degree (2,2): exactly six MS B-splines (LR-rules violated)"}},
        {"figpe", {figpe, "degree (2,2): classic peel stalls on the overloaded set, improved peel concludes"}},
        {"figpe-sketch", {figpeSketch, "degree (2,2): the pinwheel drawing behind the peeling example"}},
        {"hh1a", {hh1Base, "degree (2,2) base mesh for the spanning examples"}},
        {"hh1b", {hh1b, "hh1a with the upper split extended by one meshline"}},
        {"hh1c", {hh1c, "hh1a with the upper split extended by two meshlines"}},
        {"hh1d", {hh1d, "hh1a with both partial splits extended by one meshline"}},
        {"hh1e", {hh1Base, "same mesh as hh1a; pair it with the longer length-5 insertion"}},
        {"hh5", {hh5, "degree (2,2): length-7 insertion with only 3 independent restrictions"}},
        {"deg34-33", {deg34_33, "fig7a arrangement at degree (3,3): dim 9, 10 MS"}},
        {"deg34-44", {deg34_44, "fig7a arrangement at degree (4,4): dim 9, 10 MS"}},
        {"deg34-11", {deg34_11, "fig7a arrangement at degree (1,1), via two extensions: dim 9, 10 MS"}},
        {"deg34-10", {deg34_10, "fig7a arrangement at degree (1,0), via two extensions: dim 9, 10 MS"}},
        {"deg34-31", {deg34_31, "fig7a arrangement at degree (3,1): dim 9, 10 MS"}},
        {"deg34lr-33", {deg34lr_33, "fig8lr arrangement at degree (3,3): dim 11, 12 LR"}},
        {"deg34lr-44", {deg34lr_44, "fig8lr arrangement at degree (4,4): dim 11, 12 LR"}},
        {"deg34lr-31", {deg34lr_31, "fig8lr arrangement at degree (3,1): dim 11, 12 LR"}},
        {"deg34lr-20", {deg34lr_20, "fig8lr arrangement at degree (2,0): dim 11, 12 LR"}},
    };
    return reg;
}

}  // namespace

std::vector<ScenarioInfo> scenarioList() {
    std::vector<ScenarioInfo> out;
    for (const auto& [name, e] : registry()) out.push_back(ScenarioInfo{name, e.summary});
    return out;
}

LRMesh builtinScenario(const std::string& name) {
    auto it = registry().find(name);
    if (it == registry().end()) throw Error(ErrorCode::UnknownScenario, "no scenario named '" + name + "'");
    return it->second.build();
}

}  // namespace lr
