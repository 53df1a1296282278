#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cheeger2d/cli.hpp"
#include "support.hpp"

using namespace cheeger2d;
using testsupport::unit_square;
using Catch::Approx;

namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
    fs::path dir = fs::temp_directory_path() / "cheeger2d_test";
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path write_square_json() {
    fs::path p = temp_dir() / "square.json";
    write_text_atomic(p, domain_to_json(Domain{unit_square()}).dump());
    return p;
}

int count_occurrences(const std::string& hay, const std::string& needle) {
    int n = 0;
    for (std::size_t pos = hay.find(needle); pos != std::string::npos;
         pos = hay.find(needle, pos + needle.size()))
        ++n;
    return n;
}

} // namespace

TEST_CASE("domain JSON round-trips bit-identically") {
    std::vector<Vec2> awkward{{0.1, -0.7}, {0.953462353, -0.2}, {1.0 / 3.0, 0.8},
                              {-0.1234567890123456, 0.1}};
    Domain dom{ConvexPolygon(awkward)};
    nlohmann::json j = domain_to_json(dom);
    Domain parsed = parse_domain(nlohmann::json::parse(j.dump()));
    const auto& p0 = std::get<ConvexPolygon>(dom).vertices();
    const auto& p1 = std::get<ConvexPolygon>(parsed).vertices();
    REQUIRE(p0.size() == p1.size());
    for (std::size_t i = 0; i < p0.size(); ++i) {
        CHECK(p0[i].x == p1[i].x);
        CHECK(p0[i].y == p1[i].y);
    }

    Domain disk{Disk({0.1, 1.0 / 7.0}, 2.0 / 3.0)};
    Domain disk2 = parse_domain(nlohmann::json::parse(domain_to_json(disk).dump()));
    CHECK(std::get<Disk>(disk2).radius == 2.0 / 3.0);
    CHECK(std::get<Disk>(disk2).center.y == 1.0 / 7.0);

    CHECK_THROWS_AS(parse_domain(nlohmann::json{{"type", "triangle"}}), io_error);
    CHECK_THROWS_AS(parse_domain(nlohmann::json{{"type", "disk"}, {"radius", -1.0}}), io_error);
}

TEST_CASE("numbers survive the 9-digit CSV format") {
    Rng rng(77);
    for (int i = 0; i < 500; ++i) {
        double v = (rng.uniform01() - 0.5) * std::pow(10.0, rng.uniform(-6, 6));
        double back = std::strtod(fmt9(v).c_str(), nullptr);
        CHECK(back == Approx(v).epsilon(5e-9));
    }
    CHECK(fmt9(2.0 + std::sqrt(kPi)) == "3.77245385");
}

TEST_CASE("atomic writes leave no temp files and fail loudly") {
    fs::path p = temp_dir() / "out.txt";
    write_text_atomic(p, "hello\n");
    CHECK(slurp(p) == "hello\n");
    CHECK_FALSE(fs::exists(p.string() + ".tmp"));
    CHECK_THROWS_AS(write_text_atomic("/nonexistent_dir_zz/x.csv", "data"), io_error);
}

TEST_CASE("config parsing, validation, and flag precedence") {
    Config base;
    Config fromj = config_from_json(nlohmann::json{{"seed", 9}, {"grid", 140}}, base);
    CHECK(fromj.seed == 9);
    CHECK(fromj.grid == 140);
    CHECK(fromj.bisect_tol == base.bisect_tol);
    CHECK_THROWS_AS(config_from_json(nlohmann::json{{"band", -1.0}}), io_error);
    CHECK_THROWS_AS(config_from_json(nlohmann::json{{"grid", 1}}), io_error);

    // flags win over the config file
    fs::path cfg = temp_dir() / "cfg.json";
    write_text_atomic(cfg, nlohmann::json{{"seed", 7}, {"grid", 64}}.dump());
    fs::path report = temp_dir() / "report.json";
    fs::path square = write_square_json();
    int code = cli::run({"calibrate", "--config", cfg.string(), "--domain", square.string(),
                         "--lambda", "4", "--grid", "100", "--competitors", "10", "--report",
                         report.string()});
    CHECK(code == 0);
    nlohmann::json rep = nlohmann::json::parse(slurp(report));
    CHECK(rep.at("inputs").at("grid") == 100);   // flag wins
    CHECK(rep.at("inputs").at("seed") == 7);     // config supplies the default
    CHECK(rep.at("config").at("grid") == 100);
    REQUIRE(rep.at("checks").size() == 6);
    CHECK(rep.at("summary").at("pass") == true);
}

TEST_CASE("subcommand exit codes") {
    fs::path square = write_square_json();
    CHECK(cli::run({"cheeger", "--domain", square.string()}) == 0);
    CHECK(cli::run({"cheeger", "--domain", square.string(), "--json"}) == 0);
    CHECK(cli::run({"oned", "--R", "2", "--lambda", "0.5"}) == 0);
    CHECK(cli::run({"cheeger", "--domain", "/no/such/file.json"}) == 2);
    CHECK(cli::run({"calibrate", "--domain", square.string(), "--lambda", "3"}) == 2);
    CHECK(cli::run({"cheeger", "--bogus-flag"}) == 2);
    CHECK(cli::run({"nonsense"}) == 2);
    CHECK(cli::run({}) == 2);
}

TEST_CASE("potential subcommand writes a parseable CSV and an SVG") {
    fs::path square = write_square_json();
    fs::path csv = temp_dir() / "rho.csv";
    fs::path svg = temp_dir() / "rho.svg";
    int code = cli::run({"potential", "--domain", square.string(), "--grid", "21", "--out",
                         csv.string(), "--svg", svg.string()});
    REQUIRE(code == 0);
    std::string text = slurp(csv);
    CHECK(text.rfind("x,y,rho\n", 0) == 0);
    CHECK(count_occurrences(text, "\n") == 21 * 21 + 1); // header + all inside rows
    std::string svgtext = slurp(svg);
    CHECK(svgtext.find("<svg") != std::string::npos);
    CHECK(svgtext.find("<rect") != std::string::npos);
}

TEST_CASE("radial sweeps write the expected columns") {
    fs::path csv = temp_dir() / "sweep.csv";
    REQUIRE(cli::run({"radial", "--R", "2", "--lambda-min", "0.5", "--lambda-max", "1.6",
                      "--steps", "12", "--out", csv.string()}) == 0);
    std::string text = slurp(csv);
    CHECK(text.rfind("lambda,beta,beta0,rhoBar,jump,branch\n", 0) == 0);
    CHECK(count_occurrences(text, "\n") == 13);
    CHECK(text.find("Profile") != std::string::npos);
    CHECK(text.find("AllOne") != std::string::npos);

    fs::path crit = temp_dir() / "crit.csv";
    REQUIRE(cli::run({"radial-criticals", "--R-min", "0.5", "--R-max", "2", "--steps", "4",
                      "--out", crit.string()}) == 0);
    std::string ctext = slurp(crit);
    CHECK(ctext.rfind("R,lambda0,lambda1,lambda0_star,h,", 0) == 0);
    CHECK(count_occurrences(ctext, "\n") == 5);
}

TEST_CASE("omega subcommand reports the measures") {
    fs::path square = write_square_json();
    CHECK(cli::run({"omega", "--domain", square.string(), "--lambda", "4", "--json"}) == 0);
    CHECK(cli::run({"omega", "--domain", square.string(), "--lambda", "1"}) == 2);
}

TEST_CASE("SVG scenes have the documented structure") {
    SvgScene only_domain;
    only_domain.domain = Domain{unit_square()};
    std::string svg1 = render_svg(only_domain);
    CHECK(count_occurrences(svg1, "<path") == 1);
    CHECK(svg1.find("viewBox=\"0 0 800 800\"") != std::string::npos);

    SvgScene with_region = only_domain;
    with_region.regions.push_back(omega_lambda(Domain{unit_square()}, 4.0));
    std::string svg2 = render_svg(with_region);
    CHECK(count_occurrences(svg2, "<path") == 2);
    // the inner path carries 4 line and 4 arc commands
    std::size_t second = svg2.find("<path", svg2.find("<path") + 1);
    std::size_t end = svg2.find("/>", second);
    std::string inner = svg2.substr(second, end - second);
    CHECK(count_occurrences(inner, " L ") == 4);
    CHECK(count_occurrences(inner, " A ") == 4);

    SvgScene empty;
    CHECK_THROWS_AS(render_svg(empty), io_error);
}

TEST_CASE("field scene streamlines end on the boundary") {
    CalibrationField field(Domain{unit_square()}, 4.0);
    SvgScene scene = cli::calibrate_scene(field);
    CHECK(scene.regions.size() == 2);
    CHECK(scene.arcs.size() == 4);
    bool any_line = false;
    for (const auto& line : scene.polylines) {
        if (line.size() < 3) continue; // kite cone edges are two-point segments
        any_line = true;
        CHECK(depth_inside(Domain{unit_square()}, line.back()) <= 1e-2);
    }
    CHECK(any_line);
}

TEST_CASE("verify-all aggregates the per-lambda reports") {
    fs::path square = write_square_json();
    fs::path report = temp_dir() / "all.json";
    int code = cli::run({"verify-all", "--domain", square.string(), "--lambda", "4",
                         "--lambda", "6", "--grid", "80", "--competitors", "10", "--report",
                         report.string()});
    CHECK(code == 0);
    nlohmann::json arr = nlohmann::json::parse(slurp(report));
    REQUIRE(arr.is_array());
    REQUIRE(arr.size() == 2);
    CHECK(arr[0].at("inputs").at("lambda") == 4.0);
    CHECK(arr[1].at("inputs").at("lambda") == 6.0);
}
