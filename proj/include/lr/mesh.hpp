#pragma once

#include "lr/geometry.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace lr {

/// Minimal vertex-to-vertex segment of the box-mesh, with a multiplicity.
struct Meshline {
    Axis axis;
    Rational fixed;   // the constant coordinate
    Interval span;    // the varying coordinate
    int mult = 1;

    friend bool operator==(const Meshline& a, const Meshline& b) {
        return a.axis == b.axis && a.fixed == b.fixed && a.span == b.span && a.mult == b.mult;
    }
};

/// A (to-be-inserted or queried) split: contiguous colinear segments on one line.
struct SplitSpec {
    Axis axis;
    Rational fixed;
    Interval span;
    int mult = 1;

    friend bool operator==(const SplitSpec& a, const SplitSpec& b) {
        return a.axis == b.axis && a.fixed == b.fixed && a.span == b.span && a.mult == b.mult;
    }
};

struct Element {
    Rect rect;
    friend bool operator==(const Element& a, const Element& b) { return a.rect == b.rect; }
};

enum class VertexKind { Cross, TDown, TUp, TLeft, TRight, Boundary, Corner };

const char* vertexKindName(VertexKind k);

struct Vertex {
    Rational x, y;
    int mu1 = 0;  // max multiplicity over vertical meshlines through the vertex
    int mu2 = 0;  // max multiplicity over horizontal meshlines through the vertex
    VertexKind kind = VertexKind::Cross;
};

struct KnotsOnSplit {
    std::vector<std::pair<Rational, int>> knots;  // increasing, with vertex multiplicities
    int length = 0;                               // sum of multiplicities (the split's length)
};

struct RuleViolation {
    int step;          // -1: initial tensor mesh (rule 1), otherwise history index (rule 2)
    int rule;          // 1 or 2
    std::string what;
};

/// Exact LR-mesh: a box-partition of an axis-aligned rectangle, together with
/// multiplicity-tagged meshlines and the split-insertion history that produced
/// it. Immutable value; insertSplit returns a new mesh.
class LRMesh {
public:
    using KnotList = std::vector<std::pair<Rational, int>>;  // (position, multiplicity)

    const Rect& domain() const { return domain_; }
    const Degree& degree() const { return degree_; }
    const std::vector<SplitSpec>& history() const { return history_; }
    const KnotList& tensorKnots(Axis a) const { return a == Axis::Vertical ? xknots0_ : yknots0_; }

    /// Contiguous constant-multiplicity runs per line; these are exactly the maximal splits.
    struct Part {
        Interval span;
        int mult;
    };
    using LineMap = std::map<Rational, std::vector<Part>>;
    const LineMap& lines(Axis a) const { return a == Axis::Vertical ? vlines_ : hlines_; }

    /// Maximal multiplicity of any part on the given line (0 if line absent).
    int lineMaxMult(Axis a, const Rational& fixed) const;
    /// Multiplicity of the part covering coordinate t on the given line (0 if none).
    int multAt(Axis a, const Rational& fixed, const Rational& t) const;
    /// True when [span] is covered by parts of multiplicity >= mult on the given line.
    bool covers(Axis a, const Rational& fixed, const Interval& span, int mult) const;

    friend LRMesh newTensorMesh(const KnotList& xknots, const KnotList& yknots, Degree degree);
    friend LRMesh insertSplit(const LRMesh& mesh, const SplitSpec& split);
    friend class RawMeshBuilder;

private:
    Rect domain_;
    Degree degree_;
    LineMap vlines_, hlines_;
    std::vector<SplitSpec> history_;
    KnotList xknots0_, yknots0_;

    LineMap& linesMut(Axis a) { return a == Axis::Vertical ? vlines_ : hlines_; }
};

LRMesh newTensorMesh(const LRMesh::KnotList& xknots, const LRMesh::KnotList& yknots, Degree degree);
LRMesh insertSplit(const LRMesh& mesh, const SplitSpec& split);

/// Rebuilds the mesh from its initial tensor knots and history; the mesh is a
/// pure function of those, so this must reproduce it exactly.
LRMesh replayHistory(const LRMesh& mesh);

/// Box-partition elements in lexicographic (y_lo, x_lo) order.
std::vector<Element> elements(const LRMesh& mesh);

/// Every vertex of the box-partition with multiplicities and classification.
std::vector<Vertex> classifyVertices(const LRMesh& mesh);

std::vector<SplitSpec> maximalSplits(const LRMesh& mesh, Axis axis);
std::vector<SplitSpec> maximalSplits(const LRMesh& mesh);

/// Vertex-to-vertex meshline atoms.
std::vector<Meshline> meshlines(const LRMesh& mesh);

/// Knot vector on a split: orthogonal-crossing coordinates with the vertices'
/// orthogonal multiplicities; length is their sum.
KnotsOnSplit knotVectorOnSplit(const LRMesh& mesh, const SplitSpec& split);

/// The expanded split of a just-inserted split: extended by p_{3-k}+1 contiguous
/// meshlines into each pre-existing colinear split it prolongs.
SplitSpec expandedSplit(const LRMesh& meshAfter, const SplitSpec& split);

std::vector<RuleViolation> validateLrRules(const LRMesh& mesh);

/// Test/raw construction of meshes that are not reachable through insertSplit
/// (non-constant maximal splits, as in plain mu-extended box-meshes).
class RawMeshBuilder {
public:
    RawMeshBuilder(Rect domain, Degree degree);
    RawMeshBuilder& addLine(Axis axis, const Rational& fixed, const Interval& span, int mult);
    LRMesh build() const;

private:
    LRMesh mesh_;
};

}  // namespace lr
