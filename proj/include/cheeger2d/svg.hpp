#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "arc_region.hpp"
#include "csv.hpp"
#include "errors.hpp"
#include "polygon.hpp"

namespace cheeger2d {

// Minimal scene model for the figures the CLI can render: the domain outline,
// closed arc-region boundaries, standalone level arcs, streamline polylines,
// and filled contour cells (drawn first, everything else on top).
struct SvgScene {
    std::optional<Domain> domain;
    std::vector<ArcRegion> regions;
    std::vector<ChainArc> arcs;
    std::vector<std::vector<Vec2>> polylines;
    struct Cell {
        Vec2 lo, hi;
        int level = 0; // 0..9 contour band
    };
    std::vector<Cell> cells;

    bool empty() const {
        return !domain && regions.empty() && arcs.empty() && polylines.empty() && cells.empty();
    }
};

namespace detail {

class SvgMapper {
public:
    SvgMapper(const BBox& bb) {
        double span = std::max(bb.width(), bb.height());
        if (span <= 0.0) span = 1.0;
        scale_ = 720.0 / span; // 800 canvas with a 5% margin each side
        cx_ = 0.5 * (bb.lo.x + bb.hi.x);
        cy_ = 0.5 * (bb.lo.y + bb.hi.y);
    }

    double x(double wx) const { return 400.0 + (wx - cx_) * scale_; }
    double y(double wy) const { return 400.0 - (wy - cy_) * scale_; }
    double len(double w) const { return w * scale_; }

private:
    double scale_ = 1.0, cx_ = 0.0, cy_ = 0.0;
};

inline std::string point_pair(const SvgMapper& m, const Vec2& p) {
    return fmt9(m.x(p.x)) + " " + fmt9(m.y(p.y));
}

// World-CCW arcs appear counter-clockwise on screen, hence sweep-flag 0.
inline void append_chain_path(std::ostringstream& os, const SvgMapper& m,
                              const std::vector<ChainElement>& elems) {
    os << "M " << point_pair(m, element_start(elems.front()));
    for (const ChainElement& e : elems) {
        if (const auto* s = std::get_if<ChainSegment>(&e)) {
            os << " L " << point_pair(m, s->p1);
        } else {
            const ChainArc& a = std::get<ChainArc>(e);
            os << " A " << fmt9(m.len(a.radius)) << " " << fmt9(m.len(a.radius))
               << " 0 0 0 " << point_pair(m, a.end());
        }
    }
    os << " Z";
}

inline std::string domain_path(const SvgMapper& m, const Domain& d) {
    std::ostringstream os;
    if (const auto* p = std::get_if<ConvexPolygon>(&d)) {
        os << "M " << point_pair(m, (*p)[0]);
        for (std::size_t i = 1; i < p->size(); ++i) os << " L " << point_pair(m, (*p)[i]);
        os << " Z";
    } else {
        const Disk& b = std::get<Disk>(d);
        append_chain_path(os, m, ArcRegion::full_disk(b.center, b.radius).elements());
    }
    return os.str();
}

} // namespace detail

inline std::string render_svg(const SvgScene& scene) {
    if (scene.empty()) throw io_error("refusing to render an empty scene");
    BBox bb;
    bool have_bb = false;
    auto grow = [&](const BBox& other) {
        if (!have_bb) {
            bb = other;
            have_bb = true;
            return;
        }
        bb.lo.x = std::min(bb.lo.x, other.lo.x);
        bb.lo.y = std::min(bb.lo.y, other.lo.y);
        bb.hi.x = std::max(bb.hi.x, other.hi.x);
        bb.hi.y = std::max(bb.hi.y, other.hi.y);
    };
    if (scene.domain) grow(domain_bounding_box(*scene.domain));
    for (const ArcRegion& r : scene.regions) grow(r.bounding_box());
    for (const auto& pl : scene.polylines)
        for (const Vec2& p : pl) grow({p, p});
    for (const auto& c : scene.cells) grow({c.lo, c.hi});
    detail::SvgMapper m(bb);

    static const char* kBand[10] = {"#f7fbff", "#e1edf8", "#cbdff1", "#a8cfe5", "#82badb",
                                    "#5ba3d0", "#3b8bc2", "#2171b5", "#0b58a2", "#08306b"};
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 800 800\">\n";
    for (const auto& c : scene.cells) {
        int lvl = std::clamp(c.level, 0, 9);
        os << "<rect x=\"" << fmt9(m.x(c.lo.x)) << "\" y=\"" << fmt9(m.y(c.hi.y))
           << "\" width=\"" << fmt9(m.len(c.hi.x - c.lo.x)) << "\" height=\""
           << fmt9(m.len(c.hi.y - c.lo.y)) << "\" fill=\"" << kBand[lvl]
           << "\" stroke=\"none\"/>\n";
    }
    if (scene.domain) {
        os << "<path d=\"" << detail::domain_path(m, *scene.domain)
           << "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"2\"/>\n";
    }
    static const char* kRegion[4] = {"#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
    int ri = 0;
    for (const ArcRegion& r : scene.regions) {
        std::ostringstream path;
        detail::append_chain_path(path, m, r.elements());
        os << "<path d=\"" << path.str() << "\" fill=\"none\" stroke=\"" << kRegion[ri++ % 4]
           << "\" stroke-width=\"1.5\"/>\n";
    }
    for (const ChainArc& a : scene.arcs) {
        os << "<path d=\"M " << detail::point_pair(m, a.start()) << " A "
           << fmt9(m.len(a.radius)) << " " << fmt9(m.len(a.radius)) << " 0 0 0 "
           << detail::point_pair(m, a.end())
           << "\" fill=\"none\" stroke=\"#17becf\" stroke-width=\"1\"/>\n";
    }
    for (const auto& pl : scene.polylines) {
        if (pl.size() < 2) continue;
        os << "<polyline fill=\"none\" stroke=\"#555555\" stroke-width=\"0.8\" points=\"";
        for (std::size_t i = 0; i < pl.size(); ++i) {
            if (i) os << " ";
            os << fmt9(m.x(pl[i].x)) << "," << fmt9(m.y(pl[i].y));
        }
        os << "\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

inline void write_svg(const std::string& path, const SvgScene& scene) {
    write_text_atomic(path, render_svg(scene));
}

} // namespace cheeger2d
