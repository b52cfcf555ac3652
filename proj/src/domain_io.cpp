#include <fstream>
#include <sstream>
#include <stdexcept>

#include "hotspots/domains.hpp"
#include "json.hpp"

namespace hotspots {

namespace {

using nlohmann::json;

Point2 to_point(const json &j) {
    if (!j.is_array() || j.size() != 2) throw std::invalid_argument("domain spec: points must be [x, y] pairs");
    return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<Point2> to_points(const json &j) {
    std::vector<Point2> pts;
    for (const auto &p : j.at("points")) pts.push_back(to_point(p));
    return pts;
}

BoundaryCurve to_curve(const json &pieces) {
    if (!pieces.is_array() || pieces.empty()) throw std::invalid_argument("domain spec: a curve needs pieces");
    BoundaryCurve curve;
    for (const auto &piece : pieces) {
        const std::string kind = piece.at("kind").get<std::string>();
        if (kind == "ellipse_arc") {
            curve.pieces.push_back(ellipse_arc(piece.at("cx"), piece.at("cy"), piece.at("a"), piece.at("b"),
                                               piece.at("t1"), piece.at("t2")));
        } else if (kind == "polyline") {
            const auto pts = to_points(piece);
            if (pts.size() < 2) throw std::invalid_argument("domain spec: polyline needs two points");
            for (std::size_t i = 0; i + 1 < pts.size(); ++i) curve.pieces.push_back(line_segment(pts[i], pts[i + 1]));
        } else if (kind == "equipotential") {
            if (pieces.size() != 1) throw std::invalid_argument("domain spec: equipotential must be a whole curve");
            const auto pts = to_points(piece);
            return equipotential_curve(pts, piece.at("c").get<double>());
        } else {
            throw std::invalid_argument("domain spec: unknown piece kind '" + kind + "'");
        }
    }
    // A lone polyline may omit the closing vertex.
    const Point2 gap = curve.pieces.back().finish() - curve.pieces.front().start();
    if (norm(gap) > curve.closure_tol && pieces.size() == 1 && pieces[0].at("kind") == "polyline")
        curve.pieces.push_back(line_segment(curve.pieces.back().finish(), curve.pieces.front().start()));
    return curve;
}

}  // namespace

DomainSpec domain_from_json(const std::string &text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        throw std::invalid_argument(std::string("domain spec: ") + e.what());
    }
    try {
        if (doc.contains("name") && !doc.contains("pieces")) {
            ParamMap params;
            if (doc.contains("params"))
                for (const auto &[key, value] : doc.at("params").items()) params[key] = value.get<double>();
            return domain_registry(doc.at("name").get<std::string>(), params);
        }
        BoundaryCurve outer = to_curve(doc.at("pieces"));
        std::vector<BoundaryCurve> holes;
        if (doc.contains("holes"))
            for (const auto &h : doc.at("holes")) holes.push_back(to_curve(h));
        return DomainSpec(doc.value("name", std::string("custom")), std::move(outer), std::move(holes));
    } catch (const json::exception &e) {
        throw std::invalid_argument(std::string("domain spec: ") + e.what());
    }
}

DomainSpec domain_from_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open domain spec '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return domain_from_json(buffer.str());
}

}  // namespace hotspots
