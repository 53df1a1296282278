#pragma once

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cheeger2d.hpp"

namespace cheeger2d::cli {

inline double round9(double v) {
    return std::atof(fmt9(v).c_str());
}

inline std::string fmt_or_inf(double v) {
    return std::isinf(v) ? std::string("inf") : fmt9(v);
}

inline nlohmann::json check_to_json(const CheckResult& c) {
    return {{"name", c.name}, {"value", round9(c.value)}, {"tolerance", c.tolerance},
            {"pass", c.pass}};
}

inline nlohmann::json report_to_json(const VerificationReport& r, const std::string& domain_file,
                                     const Config& cfg) {
    nlohmann::json checks = nlohmann::json::array();
    int n_pass = 0;
    for (const CheckResult& c : r.checks) {
        checks.push_back(check_to_json(c));
        if (c.pass) ++n_pass;
    }
    return {
        {"inputs",
         {{"domain", domain_file},
          {"lambda", r.lambda},
          {"grid", r.grid_n},
          {"competitors", r.competitors},
          {"seed", r.seed}}},
        {"config", config_to_json(cfg)},
        {"checks", std::move(checks)},
        {"summary",
         {{"pass", r.pass},
          {"n_pass", n_pass},
          {"n_fail", static_cast<int>(r.checks.size()) - n_pass},
          {"quadrature_value", round9(r.quadrature_value)},
          {"geometric_value", round9(r.geometric_value)}}},
    };
}

inline void print_report_lines(const VerificationReport& r, std::ostream& os) {
    for (const CheckResult& c : r.checks) {
        os << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << " value=" << fmt9(c.value)
           << " tolerance=" << fmt9(c.tolerance) << "\n";
    }
}

inline SvgScene calibrate_scene(const CalibrationField& field) {
    SvgScene scene;
    scene.domain = field.domain();
    scene.regions.push_back(field.omega());
    scene.regions.push_back(field.cheeger_set());
    const auto* poly = std::get_if<ConvexPolygon>(&field.domain());
    for (const KiteCell& k : field.kites()) {
        double a0 = angle_of(k.fan.nu_minus);
        scene.arcs.push_back(ChainArc{k.fan.vertex, k.delta, a0, a0 + 2.0 * k.fan.half_angle});
        for (const Vec2& dir : {k.fan.nu_minus, k.fan.nu_plus}) {
            double tmax = std::numeric_limits<double>::infinity();
            double c = dot(k.fan.nu_minus, k.fan.nu_plus);
            if (c > 1e-12) tmax = k.delta / c;
            if (poly) {
                for (std::size_t i = 0; i < poly->size(); ++i) {
                    double dn = dot(poly->edge_normal(i), dir);
                    if (dn > 1e-12)
                        tmax = std::min(tmax, (poly->edge_offset(i) -
                                               dot(poly->edge_normal(i), k.fan.vertex)) / dn);
                }
            }
            if (tmax > k.delta + 1e-9)
                scene.polylines.push_back({k.fan.vertex + k.delta * dir, k.fan.vertex + tmax * dir});
        }
    }
    for (auto& line : field_streamlines(field, 24)) scene.polylines.push_back(std::move(line));
    return scene;
}

inline SvgScene potential_scene(const Domain& domain, const std::vector<RhoSample>& samples,
                                int n, double inradius) {
    SvgScene scene;
    scene.domain = domain;
    auto at = [&](int i, int j) -> const RhoSample& {
        return samples[static_cast<std::size_t>(j) * n + i];
    };
    for (int j = 0; j + 1 < n; ++j) {
        for (int i = 0; i + 1 < n; ++i) {
            double sum = 0.0;
            int cnt = 0;
            for (auto [di, dj] : {std::pair{0, 0}, {1, 0}, {0, 1}, {1, 1}}) {
                const RhoSample& s = at(i + di, j + dj);
                if (s.inside) {
                    sum += s.rho;
                    ++cnt;
                }
            }
            if (cnt == 0) continue;
            int level = std::clamp(static_cast<int>(10.0 * (sum / cnt) / inradius), 0, 9);
            scene.cells.push_back({at(i, j).p, at(i + 1, j + 1).p, level});
        }
    }
    return scene;
}

// Dispatcher for all subcommands. Exit codes: 0 success, 1 when any
// verification tolerance is exceeded, 2 on input errors (including unknown
// flags, which print usage on standard error).
inline int run(const std::vector<std::string>& args) {
    Config cfg;
    // --config is honored before everything else so that flag defaults come
    // from the file and explicit flags win.
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            cfg = load_config(args[i + 1]);
        } else if (args[i].rfind("--config=", 0) == 0) {
            cfg = load_config(args[i].substr(9));
        }
    }

    CLI::App app{"Cheeger sets, cut-locus potentials and calibration fields on convex planar domains"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "JSON config file (flags win over its values)");

    std::function<int()> action;

    // cheeger
    {
        auto* sub = app.add_subcommand("cheeger", "Cheeger constant and Cheeger set");
        auto domain_file = std::make_shared<std::string>();
        auto as_json = std::make_shared<bool>(false);
        auto as_csv = std::make_shared<bool>(false);
        sub->add_option("--domain", *domain_file, "domain JSON file")->required();
        sub->add_flag("--json", *as_json, "JSON output");
        sub->add_flag("--csv", *as_csv, "CSV output");
        sub->callback([&action, domain_file, as_json, as_csv] {
            action = [=] {
                Domain dom = load_domain(*domain_file);
                CheegerResult r = solve_cheeger(dom);
                auto [a, p] = area_perimeter(r.cheeger_set);
                if (*as_json) {
                    nlohmann::json j{{"delta_star", round9(r.delta_star)},
                                     {"h", round9(r.h)},
                                     {"lambda_D", round9(r.lambda_D)},
                                     {"cheeger_area", round9(a)},
                                     {"cheeger_perimeter", round9(p)}};
                    if (std::isinf(r.theta_D)) j["theta_D"] = "inf";
                    else j["theta_D"] = round9(r.theta_D);
                    std::cout << j.dump(2) << "\n";
                } else if (*as_csv) {
                    std::cout << "delta_star,h,lambda_D,theta_D,cheeger_area,cheeger_perimeter\n"
                              << fmt9(r.delta_star) << "," << fmt9(r.h) << ","
                              << fmt9(r.lambda_D) << "," << fmt_or_inf(r.theta_D) << ","
                              << fmt9(a) << "," << fmt9(p) << "\n";
                } else {
                    std::cout << "delta_star = " << fmt9(r.delta_star) << "\n"
                              << "h_D = " << fmt9(r.h) << "\n"
                              << "lambda_D = " << fmt9(r.lambda_D) << "\n"
                              << "theta_D = " << fmt_or_inf(r.theta_D) << "\n"
                              << "cheeger_area = " << fmt9(a) << "\n"
                              << "cheeger_perimeter = " << fmt9(p) << "\n";
                }
                return 0;
            };
        });
    }

    // potential
    {
        auto* sub = app.add_subcommand("potential", "cut-locus potential on a grid");
        auto domain_file = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>();
        auto svg = std::make_shared<std::string>();
        auto grid = std::make_shared<int>(101);
        sub->add_option("--domain", *domain_file, "domain JSON file")->required();
        sub->add_option("--grid", *grid, "samples per side");
        sub->add_option("--out", *out, "output CSV path")->required();
        sub->add_option("--svg", *svg, "optional SVG path (10 contour bands)");
        sub->callback([&action, &cfg, domain_file, out, svg, grid] {
            action = [=, &cfg] {
                Domain dom = load_domain(*domain_file);
                CutLocusSolver solver(dom, cfg.bisect_tol);
                auto samples = solver.sample_rho_grid(*grid);
                std::ostringstream csv;
                csv << "x,y,rho\n";
                for (const RhoSample& s : samples) {
                    if (!s.inside) continue;
                    csv << fmt9(s.p.x) << "," << fmt9(s.p.y) << "," << fmt9(s.rho) << "\n";
                }
                write_text_atomic(*out, csv.str());
                if (!svg->empty())
                    write_svg(*svg, potential_scene(dom, samples, *grid, solver.inradius()));
                return 0;
            };
        });
    }

    // omega
    {
        auto* sub = app.add_subcommand("omega", "inner ball union and m(lambda, D)");
        auto domain_file = std::make_shared<std::string>();
        auto lambda = std::make_shared<double>(0.0);
        auto as_json = std::make_shared<bool>(false);
        auto svg = std::make_shared<std::string>();
        sub->add_option("--domain", *domain_file, "domain JSON file")->required();
        sub->add_option("--lambda", *lambda, "parameter lambda >= 1/R_D")->required();
        sub->add_flag("--json", *as_json, "JSON output");
        sub->add_option("--svg", *svg, "optional SVG path");
        sub->callback([&action, domain_file, lambda, as_json, svg] {
            action = [=] {
                Domain dom = load_domain(*domain_file);
                ArcRegion omega = omega_lambda(dom, *lambda);
                MReport m = m_lambda(dom, *lambda);
                auto [a, p] = area_perimeter(omega);
                if (*as_json) {
                    nlohmann::json j{{"lambda", *lambda},
                                     {"area", round9(a)},
                                     {"perimeter", round9(p)},
                                     {"m", round9(m.value)},
                                     {"optimal_set_empty", !m.optimal_set.has_value()}};
                    std::cout << j.dump(2) << "\n";
                } else {
                    std::cout << "area = " << fmt9(a) << "\n"
                              << "perimeter = " << fmt9(p) << "\n"
                              << "m = " << fmt9(m.value) << "\n";
                }
                if (!svg->empty()) {
                    SvgScene scene;
                    scene.domain = dom;
                    scene.regions.push_back(omega);
                    write_svg(*svg, scene);
                }
                return 0;
            };
        });
    }

    // calibrate
    {
        auto* sub = app.add_subcommand("calibrate", "build and verify the calibration field");
        auto domain_file = std::make_shared<std::string>();
        auto lambda = std::make_shared<double>(0.0);
        auto grid = std::make_shared<int>(cfg.grid);
        auto competitors = std::make_shared<int>(cfg.competitors);
        auto seed = std::make_shared<std::uint64_t>(cfg.seed);
        auto report_path = std::make_shared<std::string>();
        auto svg = std::make_shared<std::string>();
        auto csv_path = std::make_shared<std::string>();
        sub->add_option("--domain", *domain_file, "domain JSON file")->required();
        sub->add_option("--lambda", *lambda, "parameter lambda > h_D")->required();
        sub->add_option("--grid", *grid, "verification grid per side");
        sub->add_option("--competitors", *competitors, "random primal competitors");
        sub->add_option("--seed", *seed, "RNG seed");
        sub->add_option("--report", *report_path, "verification report JSON path");
        sub->add_option("--svg", *svg, "optional SVG of the construction");
        sub->add_option("--samples", *csv_path, "optional CSV of field samples on the grid");
        sub->callback([&action, &cfg, domain_file, lambda, grid, competitors, seed, report_path,
                       svg, csv_path] {
            action = [=, &cfg] {
                Domain dom = load_domain(*domain_file);
                CalibrationField field(dom, *lambda, cfg.bisect_tol);
                VerificationReport rep = verify(field, *grid, *competitors, *seed,
                                                cfg.tolerances());
                print_report_lines(rep, std::cout);
                if (!report_path->empty()) {
                    Config echoed = cfg;
                    echoed.grid = *grid;
                    echoed.competitors = *competitors;
                    echoed.seed = *seed;
                    write_text_atomic(*report_path,
                                      report_to_json(rep, *domain_file, echoed).dump(2) + "\n");
                }
                if (!svg->empty()) write_svg(*svg, calibrate_scene(field));
                if (!csv_path->empty()) {
                    std::ostringstream csv;
                    csv << "x,y,qx,qy,div,region\n";
                    for (const FieldSample& s : export_field_samples(field, *grid)) {
                        csv << fmt9(s.p.x) << "," << fmt9(s.p.y) << ",";
                        if (s.has_field) csv << fmt9(s.q.x) << "," << fmt9(s.q.y);
                        else csv << ",";
                        csv << "," << fmt9(s.div) << "," << to_string(s.tag) << "\n";
                    }
                    write_text_atomic(*csv_path, csv.str());
                }
                return rep.pass ? 0 : 1;
            };
        });
    }

    // radial
    {
        auto* sub = app.add_subcommand("radial", "radial disk sweep over lambda");
        auto R = std::make_shared<double>(0.0);
        auto lmin = std::make_shared<double>(0.0);
        auto lmax = std::make_shared<double>(0.0);
        auto steps = std::make_shared<int>(0);
        auto out = std::make_shared<std::string>();
        sub->add_option("--R", *R, "disk radius")->required();
        sub->add_option("--lambda-min", *lmin)->required();
        sub->add_option("--lambda-max", *lmax)->required();
        sub->add_option("--steps", *steps, "rows in the sweep (>= 2)")->required();
        sub->add_option("--out", *out, "output CSV path")->required();
        sub->callback([&action, R, lmin, lmax, steps, out] {
            action = [=] {
                if (*steps < 2) throw out_of_domain("--steps must be at least 2");
                std::ostringstream csv;
                csv << "lambda,beta,beta0,rhoBar,jump,branch\n";
                for (int i = 0; i < *steps; ++i) {
                    double l = *lmin + (*lmax - *lmin) * i / (*steps - 1);
                    RadialSolution s = solve_beta_disk(l, *R);
                    csv << fmt9(l) << "," << fmt9(s.beta) << "," << fmt9(beta0_disk(l, *R))
                        << "," << fmt9(s.rho_bar) << "," << fmt9(s.jump) << ","
                        << to_string(s.branch) << "\n";
                }
                write_text_atomic(*out, csv.str());
                return 0;
            };
        });
    }

    // radial-criticals
    {
        auto* sub = app.add_subcommand("radial-criticals", "critical lambdas of the disk vs R");
        auto rmin = std::make_shared<double>(0.0);
        auto rmax = std::make_shared<double>(0.0);
        auto steps = std::make_shared<int>(0);
        auto out = std::make_shared<std::string>();
        sub->add_option("--R-min", *rmin)->required();
        sub->add_option("--R-max", *rmax)->required();
        sub->add_option("--steps", *steps, "rows in the sweep (>= 2)")->required();
        sub->add_option("--out", *out, "output CSV path")->required();
        sub->callback([&action, rmin, rmax, steps, out] {
            action = [=] {
                if (*steps < 2) throw out_of_domain("--steps must be at least 2");
                std::ostringstream csv;
                csv << "R,lambda0,lambda1,lambda0_star,h,lambda1_lo,lambda1_hi,"
                       "lambda1_suggested\n";
                for (int i = 0; i < *steps; ++i) {
                    double R = *rmin + (*rmax - *rmin) * i / (*steps - 1);
                    auto [l0, l1] = critical_lambdas_disk(R);
                    double h = 2.0 / R;
                    csv << fmt9(R) << "," << fmt9(l0) << "," << fmt9(l1) << ","
                        << fmt9(lambda0_lower_bound(h)) << "," << fmt9(h) << "," << fmt9(h)
                        << "," << fmt9(h + 1.0) << ","
                        << fmt9(std::max(2.0 / R, 1.0 + 1.0 / R)) << "\n";
                }
                write_text_atomic(*out, csv.str());
                return 0;
            };
        });
    }

    // oned
    {
        auto* sub = app.add_subcommand("oned", "closed-form interval solution");
        auto R = std::make_shared<double>(0.0);
        auto lambda = std::make_shared<double>(0.0);
        sub->add_option("--R", *R, "half-width of the interval")->required();
        sub->add_option("--lambda", *lambda)->required();
        sub->callback([&action, R, lambda] {
            action = [=] {
                OneDSolution s = beta_1d(*lambda, *R);
                nlohmann::json j{{"lambda", s.lambda},
                                 {"R", s.R},
                                 {"alphaC", round9(s.alpha_c)},
                                 {"beta", round9(s.beta)},
                                 {"branch", to_string(s.branch)}};
                std::cout << j.dump(2) << "\n";
                return 0;
            };
        });
    }

    // verify-all
    {
        auto* sub = app.add_subcommand("verify-all", "run every field check for one domain");
        auto domain_file = std::make_shared<std::string>();
        auto lambdas = std::make_shared<std::vector<double>>();
        auto grid = std::make_shared<int>(cfg.grid);
        auto competitors = std::make_shared<int>(cfg.competitors);
        auto seed = std::make_shared<std::uint64_t>(cfg.seed);
        auto report_path = std::make_shared<std::string>();
        sub->add_option("--domain", *domain_file, "domain JSON file")->required();
        sub->add_option("--lambda", *lambdas, "lambda values (default 1.5 h_D and 3 h_D)");
        sub->add_option("--grid", *grid);
        sub->add_option("--competitors", *competitors);
        sub->add_option("--seed", *seed);
        sub->add_option("--report", *report_path, "combined report JSON path");
        sub->callback([&action, &cfg, domain_file, lambdas, grid, competitors, seed,
                       report_path] {
            action = [=, &cfg] {
                Domain dom = load_domain(*domain_file);
                CheegerResult ch = solve_cheeger(dom);
                std::vector<double> ls = *lambdas;
                if (ls.empty()) ls = {1.5 * ch.h, 3.0 * ch.h};
                bool all_pass = true;
                nlohmann::json reports = nlohmann::json::array();
                for (double l : ls) {
                    std::cout << "lambda = " << fmt9(l) << "\n";
                    CalibrationField field(dom, l, cfg.bisect_tol);
                    VerificationReport rep =
                        verify(field, *grid, *competitors, *seed, cfg.tolerances());
                    print_report_lines(rep, std::cout);
                    Config echoed = cfg;
                    echoed.grid = *grid;
                    echoed.competitors = *competitors;
                    echoed.seed = *seed;
                    reports.push_back(report_to_json(rep, *domain_file, echoed));
                    all_pass = all_pass && rep.pass;
                }
                if (!report_path->empty())
                    write_text_atomic(*report_path, reports.dump(2) + "\n");
                std::cout << (all_pass ? "ALL PASS" : "FAILED") << "\n";
                return all_pass ? 0 : 1;
            };
        });
    }

    // let --config appear after the subcommand name
    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    std::vector<const char*> argv;
    argv.push_back("cheeger2d");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") {
            std::cout << app.help();
            return 0;
        }
        std::cerr << e.what() << "\n" << app.help();
        return 2;
    }
    try {
        return action ? action() : 2;
    } catch (const cheeger2d::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace cheeger2d::cli
