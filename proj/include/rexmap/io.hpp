/*
   Copyright 2026 The rexmap Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

/**
 * @file io.hpp
 * @brief JSON and SVG emission, and JSON loading for partitions.
 *
 * Field elements serialize as exact coefficient strings plus the defining polynomial; the "approx" member is an
 * annotation and is ignored when loading.
 */

#ifndef REXMAP_IO_HPP
#define REXMAP_IO_HPP

#include <array>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "rexmap/cutproject.hpp"
#include "rexmap/demgeneral.hpp"
#include "rexmap/numberfield.hpp"
#include "rexmap/rectgeo.hpp"
#include "rexmap/rem.hpp"
#include "rexmap/renorm.hpp"

namespace rexmap {

using json = nlohmann::ordered_json;

inline json poly_to_json(const CubicPoly& p) { return json::array({p.c0.get_str(), p.c1.get_str(), p.c2.get_str()}); }

inline CubicPoly poly_from_json(const json& j) {
    if (!j.is_array() || j.size() != 3) throw ParseError("polynomial must be an array of three integers");
    auto get = [&](std::size_t i) {
        Integer v;
        if (j[i].is_string()) {
            if (v.set_str(j[i].get<std::string>(), 10) != 0) throw ParseError("bad integer in polynomial");
        } else if (j[i].is_number_integer()) {
            v = static_cast<long>(j[i].get<long long>());
        } else {
            throw ParseError("bad integer in polynomial");
        }
        return v;
    };
    return CubicPoly{get(0), get(1), get(2)};
}

inline json fe_to_json(const FieldElement& e, int root) {
    json j;
    j["poly"] = poly_to_json(e.field()->poly());
    j["value"] = json::array({e.coeff(0).get_str(), e.coeff(1).get_str(), e.coeff(2).get_str()});
    j["approx"] = decimal_at(e, root);
    j["root"] = root;
    return j;
}

inline FieldElement fe_from_json(const json& j, const FieldPtr& field) {
    if (!j.contains("value") || !j["value"].is_array() || j["value"].size() != 3) throw ParseError("field element needs a value triple");
    if (j.contains("poly") && !(poly_from_json(j["poly"]) == field->poly())) throw MixedFields("field element from another field");
    return FieldElement(field, parse_rational(j["value"][0].get<std::string>()), parse_rational(j["value"][1].get<std::string>()),
                        parse_rational(j["value"][2].get<std::string>()));
}

inline json rect_to_json(const ExactRect& r) {
    return json{{"x0", fe_to_json(r.x0, kRootX)}, {"x1", fe_to_json(r.x1, kRootX)},
                {"y0", fe_to_json(r.y0, kRootY)}, {"y1", fe_to_json(r.y1, kRootY)}};
}

inline json region_to_json(const RectRegion& r) {
    json a = json::array();
    for (const auto& rect : r.rects()) a.push_back(rect_to_json(rect));
    return a;
}

inline RectRegion region_from_json(const json& j, const FieldPtr& f) {
    if (!j.is_array()) throw ParseError("region must be an array of rectangles");
    std::vector<ExactRect> rects;
    for (const auto& r : j)
        rects.push_back(ExactRect::make(fe_from_json(r.at("x0"), f), fe_from_json(r.at("x1"), f), fe_from_json(r.at("y0"), f),
                                        fe_from_json(r.at("y1"), f)));
    return RectRegion(rects);
}

inline json vector_to_json(const ExactVec2& v) { return json::array({fe_to_json(v.x, kRootX), fe_to_json(v.y, kRootY)}); }

inline json partition_to_json(const REMPartition& rem, const std::vector<long>& word) {
    json j;
    j["word"] = word;
    j["poly"] = poly_to_json(rem.field()->poly());
    j["x"] = fe_to_json(rem.x, kRootX);
    j["xp"] = fe_to_json(rem.xp, kRootX);
    j["y"] = fe_to_json(rem.y, kRootY);
    j["yp"] = fe_to_json(rem.yp, kRootY);
    j["tiles"] = json::array();
    for (std::size_t k = 0; k < kTiles; ++k)
        j["tiles"].push_back(json{{"index", k}, {"region", region_to_json(rem.tiles[k])}, {"vector", vector_to_json(rem.vectors[k])}});
    return j;
}

inline REMPartition partition_from_json(const json& j) {
    FieldPtr f = make_field(poly_from_json(j.at("poly")));
    REMPartition rem{fe_from_json(j.at("x"), f), fe_from_json(j.at("xp"), f), fe_from_json(j.at("y"), f),
                     fe_from_json(j.at("yp"), f), {}, {}};
    const json& tiles = j.at("tiles");
    if (!tiles.is_array() || tiles.size() != kTiles) throw ParseError("partition must list seven tiles");
    for (const auto& t : tiles) {
        auto k = t.at("index").get<std::size_t>();
        if (k >= kTiles) throw ParseError("tile index out of range");
        rem.tiles[k] = region_from_json(t.at("region"), f);
        rem.vectors[k] = {fe_from_json(t.at("vector").at(0), f), fe_from_json(t.at("vector").at(1), f)};
    }
    return rem;
}

/// "coding region-json vector-json", one line per cell.
inline std::string golden_lines(const ReturnPartition& ret) {
    std::string out;
    for (const auto& c : ret.cells)
        out += c.coding + " " + region_to_json(c.region).dump() + " " + vector_to_json(c.return_vector).dump() + "\n";
    return out;
}

/// {"point":[a,b,c],"z":"...","step_index":i}; step_index is -1 for the final point.
inline std::string walk_line(const Basis& xi, const LatticePoint& p, int step_index) {
    json j;
    j["point"] = json::array({p.a, p.b, p.c});
    j["z"] = decimal_at(lattice_value(xi, p), 3);
    j["step_index"] = step_index;
    return j.dump();
}

inline std::string walk_dump(const Basis& xi, const StepSet& steps, const LatticePoint& start, std::size_t count) {
    std::string out;
    LatticePoint p = start;
    for (std::size_t i = 0; i < count; ++i) {
        LatticePoint q = walk_next(p, steps, xi);
        int idx = -1;
        for (std::size_t s = 0; s < steps.size(); ++s)
            if (steps[s] == q - p) idx = static_cast<int>(s);
        out += walk_line(xi, p, idx) + "\n";
        p = q;
    }
    out += walk_line(xi, p, -1) + "\n";
    return out;
}

// ---------------------------------------------------------------------------------------------------------- SVG

/// Tile k is always drawn in kTileColors[k].
inline constexpr std::array<const char*, kTiles> kTileColors = {"#e41a1c", "#377eb8", "#4daf4a", "#984ea3",
                                                                 "#ff7f00", "#ffd92f", "#a65628"};

inline const char* tile_color(int k) { return k >= 0 && k < kTiles ? kTileColors[static_cast<std::size_t>(k)] : "#999999"; }

class SvgCanvas {
   public:
    SvgCanvas(double width, double height) : w_(width), h_(height) {}

    void rect(double x, double y, double w, double h, const std::string& fill, const std::string& stroke = "#000000",
              double stroke_width = 0.5) {
        body_ << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(w) << "\" height=\"" << num(h)
              << "\" fill=\"" << fill << "\" stroke=\"" << stroke << "\" stroke-width=\"" << num(stroke_width) << "\"/>\n";
    }

    void circle(double cx, double cy, double r, const std::string& fill) {
        body_ << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" r=\"" << num(r) << "\" fill=\"" << fill << "\"/>\n";
    }

    void text(double x, double y, const std::string& s, double size = 12) {
        body_ << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" font-family=\"sans-serif\" font-size=\"" << num(size)
              << "\">" << escape(s) << "</text>\n";
    }

    std::string str() const {
        std::ostringstream os;
        os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
           << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w_) << "\" height=\"" << num(h_) << "\" viewBox=\"0 0 "
           << num(w_) << " " << num(h_) << "\">\n"
           << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n"
           << body_.str() << "</svg>\n";
        return os.str();
    }

   private:
    static std::string num(double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.4f", v);
        return buf;
    }

    static std::string escape(const std::string& s) {
        std::string out;
        for (char c : s) {
            if (c == '<') out += "&lt;";
            else if (c == '>') out += "&gt;";
            else if (c == '&') out += "&amp;";
            else out += c;
        }
        return out;
    }

    double w_, h_;
    std::ostringstream body_;
};

namespace detail {

inline constexpr double kPanel = 320, kPad = 30;

/// Draws a region into the square panel at (ox, oy); y grows upwards in the picture.
inline void draw_region(SvgCanvas& svg, const RectRegion& r, double ox, double oy, const std::string& fill) {
    for (const auto& rect : r.rects()) {
        double x0 = static_cast<double>(rect.x0.approx(kRootX)), x1 = static_cast<double>(rect.x1.approx(kRootX));
        double y0 = static_cast<double>(rect.y0.approx(kRootY)), y1 = static_cast<double>(rect.y1.approx(kRootY));
        svg.rect(ox + x0 * kPanel, oy + (1 - y1) * kPanel, (x1 - x0) * kPanel, (y1 - y0) * kPanel, fill);
    }
}

}  // namespace detail

/// One row per stage: the tiles A_k on the left, their images A_k + v_k on the right.
inline std::string partition_svg(const std::vector<REMPartition>& stages, const std::vector<std::string>& labels) {
    using namespace detail;
    const double width = 2 * kPanel + 3 * kPad, row = kPanel + 2 * kPad;
    SvgCanvas svg(width, row * static_cast<double>(stages.size()));
    for (std::size_t s = 0; s < stages.size(); ++s) {
        double oy = static_cast<double>(s) * row + kPad;
        auto images = stages[s].image_tiles();
        for (int k = 0; k < kTiles; ++k) {
            draw_region(svg, stages[s].tiles[static_cast<std::size_t>(k)], kPad, oy, tile_color(k));
            draw_region(svg, images[static_cast<std::size_t>(k)], 2 * kPad + kPanel, oy, tile_color(k));
        }
        svg.text(kPad, oy - 8, s < labels.size() ? labels[s] : "");
    }
    return svg.str();
}

/// First-return cells inside the unit square, coloured by the target tile of each cell.
inline std::string first_return_svg(const ReturnPartition& ret, const std::vector<int>& target_tile, const std::string& label) {
    using namespace detail;
    SvgCanvas svg(kPanel + 2 * kPad, kPanel + 2 * kPad);
    svg.rect(kPad, kPad, kPanel, kPanel, "#ffffff");
    for (std::size_t i = 0; i < ret.cells.size(); ++i)
        draw_region(svg, ret.cells[i].region, kPad, kPad, tile_color(i < target_tile.size() ? target_tile[i] : -1));
    svg.text(kPad, kPad - 8, label);
    return svg.str();
}

/// Orbit scatter in the unit square.
inline std::string orbit_svg(const std::vector<std::pair<double, double>>& pts, const std::string& label) {
    using namespace detail;
    SvgCanvas svg(kPanel + 2 * kPad, kPanel + 2 * kPad);
    svg.rect(kPad, kPad, kPanel, kPanel, "#ffffff");
    for (const auto& [x, y] : pts) svg.circle(kPad + x * kPanel, kPad + (1 - y) * kPanel, 0.6, "#000000");
    svg.text(kPad, kPad - 8, label);
    return svg.str();
}

/// Two panels: point-sampled tile classification on the left, an orbit on the right.
inline std::string general_dem_svg(const GeneralDEM& dem, const std::vector<GeneralOrbitPoint>& orbit, int samples = 160) {
    using namespace detail;
    SvgCanvas svg(2 * kPanel + 3 * kPad, kPanel + 2 * kPad);
    long double x0, x1, y0, y1;
    dem.window.bounding_box(x0, x1, y0, y1);
    const double sx = kPanel / static_cast<double>(x1 - x0), sy = kPanel / static_cast<double>(y1 - y0);
    const double cell = kPanel / samples;
    for (int i = 0; i < samples; ++i)
        for (int j = 0; j < samples; ++j) {
            long double px = x0 + (i + 0.5L) * (x1 - x0) / samples, py = y0 + (j + 0.5L) * (y1 - y0) / samples;
            if (!dem.window.contains(px, py)) continue;
            Classification c = classify(dem, px, py);
            svg.rect(kPad + i * cell, kPad + (samples - 1 - j) * cell, cell, cell, tile_color(c.index), "none", 0);
        }
    for (const auto& p : orbit)
        svg.circle(2 * kPad + kPanel + static_cast<double>(p.x - x0) * sx, kPad + static_cast<double>(y1 - p.y) * sy, 0.6,
                   p.unreliable ? "#e41a1c" : "#000000");
    svg.text(kPad, kPad - 8, dem.banner + ", " + dem.window.describe() + ", n = " + std::to_string(dem.n));
    return svg.str();
}

}  // namespace rexmap

#endif
