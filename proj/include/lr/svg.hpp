#pragma once

#include "lr/bspline.hpp"

#include <string>
#include <vector>

namespace lr {

struct SvgOverlays {
    std::vector<Rect> supports;       // shaded B-spline supports
    std::vector<Rect> circuit;        // highlighted circuit supports (stronger shade)
    bool vertexMarks = false;         // draw T-/cross-vertex markers
};

/// Deterministic static SVG of the mesh: meshlines stroked with width
/// proportional to multiplicity; optional support shading and vertex marks.
/// Byte-identical output for identical input.
std::string renderSvg(const LRMesh& mesh, const SvgOverlays& overlays = {});

}  // namespace lr
