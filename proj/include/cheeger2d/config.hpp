#pragma once

#include <cstdint>
#include <fstream>
#include <string>

#include "json.hpp"

#include "calibration.hpp"
#include "errors.hpp"

namespace cheeger2d {

// Run configuration: a JSON file overridable by flags (flags win). The
// effective config is echoed into every report for reproducibility.
struct Config {
    double bisect_tol = 1e-11;
    double band = 1e-2;
    double fd_step = 1e-5;
    int grid = 400;
    int competitors = 100;
    std::uint64_t seed = 0;
    double tol_norm = 1e-10;
    double tol_divergence = 1e-3;
    double tol_trace = 1e-8;
    double tol_boundary = 1e-6;
    double tol_duality = 2e-2;
    double tol_primal = 1e-9;

    VerifyTolerances tolerances() const {
        return {tol_norm, tol_divergence, tol_trace, tol_boundary,
                tol_duality, tol_primal, band, fd_step};
    }

    void validate() const {
        auto positive = [](double v, const char* name) {
            if (!(v > 0.0)) throw io_error(std::string("config: ") + name + " must be positive");
        };
        positive(bisect_tol, "bisect_tol");
        positive(band, "band");
        positive(fd_step, "fd_step");
        positive(tol_norm, "tol_norm");
        positive(tol_divergence, "tol_divergence");
        positive(tol_trace, "tol_trace");
        positive(tol_boundary, "tol_boundary");
        positive(tol_duality, "tol_duality");
        positive(tol_primal, "tol_primal");
        if (grid < 2) throw io_error("config: grid must be at least 2");
        if (competitors < 0) throw io_error("config: competitors must be non-negative");
    }
};

inline nlohmann::json config_to_json(const Config& c) {
    return {
        {"bisect_tol", c.bisect_tol},
        {"band", c.band},
        {"fd_step", c.fd_step},
        {"grid", c.grid},
        {"competitors", c.competitors},
        {"seed", c.seed},
        {"tol_norm", c.tol_norm},
        {"tol_divergence", c.tol_divergence},
        {"tol_trace", c.tol_trace},
        {"tol_boundary", c.tol_boundary},
        {"tol_duality", c.tol_duality},
        {"tol_primal", c.tol_primal},
    };
}

inline Config config_from_json(const nlohmann::json& j, Config base = {}) {
    auto take = [&](const char* key, auto& field) {
        if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    take("bisect_tol", base.bisect_tol);
    take("band", base.band);
    take("fd_step", base.fd_step);
    take("grid", base.grid);
    take("competitors", base.competitors);
    take("seed", base.seed);
    take("tol_norm", base.tol_norm);
    take("tol_divergence", base.tol_divergence);
    take("tol_trace", base.tol_trace);
    take("tol_boundary", base.tol_boundary);
    take("tol_duality", base.tol_duality);
    take("tol_primal", base.tol_primal);
    base.validate();
    return base;
}

inline Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw io_error("cannot parse config file " + path + ": " + e.what());
    }
    return config_from_json(j);
}

} // namespace cheeger2d
