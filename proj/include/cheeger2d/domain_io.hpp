#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "errors.hpp"
#include "polygon.hpp"

namespace cheeger2d {

// Domain schema:
//   {"type":"polygon","vertices":[[x,y],...]}   vertices CCW
//   {"type":"disk","center":[x,y],"radius":r}
inline Domain parse_domain(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("type"))
        throw io_error("domain JSON needs a \"type\" field");
    std::string type = j.at("type").get<std::string>();
    if (type == "polygon") {
        if (!j.contains("vertices") || !j.at("vertices").is_array())
            throw io_error("polygon domain needs a \"vertices\" array");
        std::vector<Vec2> v;
        for (const auto& p : j.at("vertices")) {
            if (!p.is_array() || p.size() != 2) throw io_error("vertex must be [x, y]");
            v.push_back({p[0].get<double>(), p[1].get<double>()});
        }
        try {
            return ConvexPolygon(std::move(v));
        } catch (const invalid_region& e) {
            throw io_error(std::string("invalid polygon domain: ") + e.what());
        }
    }
    if (type == "disk") {
        if (!j.contains("center") || !j.contains("radius"))
            throw io_error("disk domain needs \"center\" and \"radius\"");
        const auto& c = j.at("center");
        if (!c.is_array() || c.size() != 2) throw io_error("center must be [x, y]");
        double r = j.at("radius").get<double>();
        try {
            return Disk({c[0].get<double>(), c[1].get<double>()}, r);
        } catch (const invalid_region& e) {
            throw io_error(std::string("invalid disk domain: ") + e.what());
        }
    }
    throw io_error("domain type must be \"polygon\" or \"disk\"");
}

inline nlohmann::json domain_to_json(const Domain& d) {
    nlohmann::json j;
    if (const auto* p = std::get_if<ConvexPolygon>(&d)) {
        j["type"] = "polygon";
        auto arr = nlohmann::json::array();
        for (const Vec2& v : p->vertices()) arr.push_back({v.x, v.y});
        j["vertices"] = std::move(arr);
    } else {
        const Disk& b = std::get<Disk>(d);
        j["type"] = "disk";
        j["center"] = {b.center.x, b.center.y};
        j["radius"] = b.radius;
    }
    return j;
}

inline Domain load_domain(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open domain file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw io_error("cannot parse domain file " + path + ": " + e.what());
    }
    return parse_domain(j);
}

} // namespace cheeger2d
