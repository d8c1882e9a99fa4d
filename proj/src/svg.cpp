#include "lr/svg.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace lr {

namespace {

// Fixed-point decimal rendering of exact coordinates; deterministic.
std::string coord(double v) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(3) << v;
    std::string s = os.str();
    if (s == "-0.000") s = "0.000";
    return s;
}

struct Mapper {
    double x0, y0, sx, sy, height;
    double mapX(const Rational& x) const { return (x.approx() - x0) * sx; }
    double mapY(const Rational& y) const { return height - (y.approx() - y0) * sy; }
};

}  // namespace

std::string renderSvg(const LRMesh& mesh, const SvgOverlays& overlays) {
    const Rect& dom = mesh.domain();
    const double margin = 20.0;
    const double scale = 360.0 / std::max(dom.x.length().approx(), dom.y.length().approx());
    Mapper map{dom.x.lo.approx(), dom.y.lo.approx(), scale, scale, dom.y.length().approx() * scale};
    const double width = dom.x.length().approx() * scale + 2 * margin;
    const double height = map.height + 2 * margin;

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << coord(width) << "\" height=\"" << coord(height)
       << "\" viewBox=\"0 0 " << coord(width) << " " << coord(height) << "\">\n";
    os << "<g transform=\"translate(" << coord(margin) << "," << coord(margin) << ")\">\n";

    auto rect = [&](const Rect& r, const char* fill, const char* opacity) {
        os << "<rect x=\"" << coord(map.mapX(r.x.lo)) << "\" y=\"" << coord(map.mapY(r.y.hi)) << "\" width=\""
           << coord((r.x.length().approx()) * scale) << "\" height=\"" << coord(r.y.length().approx() * scale)
           << "\" fill=\"" << fill << "\" fill-opacity=\"" << opacity << "\"/>\n";
    };
    for (const Rect& r : overlays.supports) rect(r, "#d33", "0.25");
    for (const Rect& r : overlays.circuit) rect(r, "#36c", "0.35");

    for (const Meshline& l : meshlines(mesh)) {
        double x1, y1, x2, y2;
        if (l.axis == Axis::Vertical) {
            x1 = x2 = map.mapX(l.fixed);
            y1 = map.mapY(l.span.lo);
            y2 = map.mapY(l.span.hi);
        } else {
            y1 = y2 = map.mapY(l.fixed);
            x1 = map.mapX(l.span.lo);
            x2 = map.mapX(l.span.hi);
        }
        os << "<line x1=\"" << coord(x1) << "\" y1=\"" << coord(y1) << "\" x2=\"" << coord(x2) << "\" y2=\""
           << coord(y2) << "\" stroke=\"black\" stroke-width=\"" << coord(1.0 + 1.2 * (l.mult - 1)) << "\"/>\n";
    }

    if (overlays.vertexMarks) {
        for (const Vertex& v : classifyVertices(mesh)) {
            const char* fill = nullptr;
            switch (v.kind) {
                case VertexKind::TDown:
                case VertexKind::TUp:
                case VertexKind::TLeft:
                case VertexKind::TRight: fill = "#e80"; break;
                case VertexKind::Cross: fill = "#888"; break;
                default: break;
            }
            if (!fill) continue;
            os << "<circle cx=\"" << coord(map.mapX(v.x)) << "\" cy=\"" << coord(map.mapY(v.y))
               << "\" r=\"3.200\" fill=\"" << fill << "\"><title>" << vertexKindName(v.kind) << " mu1=" << v.mu1
               << " mu2=" << v.mu2 << "</title></circle>\n";
        }
    }

    os << "</g>\n</svg>\n";
    return os.str();
}

}  // namespace lr
