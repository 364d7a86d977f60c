#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "heliox/io/config.hpp"
#include "heliox/io/csv.hpp"
#include "heliox/io/run.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace heliox;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag)
        : path(fs::temp_directory_path() / ("heliox_test_" + tag)) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

} // namespace

TEST_CASE("config resolution fills defaults and echoes them") {
    auto resolved = io::resolve_config("cavity", io::json(nullptr), {});
    for (const auto& [key, spec] : io::schema_for("cavity")) {
        REQUIRE(resolved.contains(key));
        CHECK(resolved.at(key) == spec.default_value);
    }
}

TEST_CASE("unknown keys are rejected by name") {
    io::json cfg = {{"presure_bar", 25.0}};
    CHECK_THROWS_WITH_AS((void)io::resolve_config("bubble", cfg, {}),
                         doctest::Contains("presure_bar"), ValidationError);
    CHECK_THROWS_WITH_AS((void)io::resolve_config("bubble", io::json(nullptr),
                                                  {{"presure-bar", "25"}}),
                         doctest::Contains("presure-bar"), ValidationError);
}

TEST_CASE("type and sweep validation") {
    CHECK_THROWS_AS((void)io::resolve_config("bubble", io::json{{"pressure_bar", "x"}}, {}),
                    ValidationError);
    // sweeps allowed only on sweepable keys
    io::json sweep = {{"start", 0.0}, {"stop", 50.0}, {"count", 11}};
    CHECK_NOTHROW((void)io::resolve_config("bubble", io::json{{"pressure_bar", sweep}}, {}));
    CHECK_THROWS_AS(
        (void)io::resolve_config("bubble", io::json{{"grid_rmax_nm", sweep}}, {}),
        ValidationError);
    auto pts = io::parse_sweep(sweep).points();
    REQUIRE(pts.size() == 11);
    CHECK(pts.front() == 0.0);
    CHECK(pts.back() == 50.0);
    CHECK(pts[1] == doctest::Approx(5.0));
}

TEST_CASE("empty or malformed config files fail validation") {
    TempDir tmp("cfg");
    const auto path = tmp.path / "empty.json";
    std::ofstream(path) << "";
    CHECK_THROWS_AS((void)io::load_config_file(path.string()), ValidationError);
    CHECK_THROWS_AS((void)io::load_config_file("/nonexistent/nope.json"), ValidationError);
}

TEST_CASE("figure contracts") {
    CHECK(io::figure_columns("fig4c") ==
          std::vector<std::string>{"t_ps", "pop_photon_in_cavity", "pop_photon_in_bubble"});
    CHECK(io::figure_columns("fig5a") ==
          std::vector<std::string>{"t_ns", "pop_SE", "pop_AE", "concurrence"});
    CHECK(io::figure_columns("fig1c") ==
          std::vector<std::string>{"pressure_bar", "R_nm", "U_eV"});
    CHECK_THROWS_AS((void)io::figure_columns("fig9z"), ValidationError);

    TempDir tmp("fig");
    io::Table t{{"pressure_bar", "R_nm"}, {}}; // wrong width for fig1c
    CHECK_THROWS_AS(io::emit_figure_data(tmp.path.string(), "fig1c", t), ValidationError);
}

TEST_CASE("defaults file round trip") {
    TempDir tmp("defaults");
    const auto p = io::load_params(0.104);
    const auto path = (tmp.path / "params.defaults.json").string();
    io::write_defaults_file(path, p);
    const auto q = io::params_from_json(io::load_config_file(path));
    CHECK(q.g2 == doctest::Approx(p.g2).epsilon(1e-12));
    CHECK(q.g3 == doctest::Approx(p.g3).epsilon(1e-12));
    CHECK(q.g4 == doctest::Approx(p.g4).epsilon(1e-12));
    CHECK(q.w == doctest::Approx(p.w).epsilon(1e-12));
    CHECK(q.scattering_length_nm == p.scattering_length_nm);
}

TEST_CASE("shipped defaults match a fresh calibration") {
    // the repository copy is the versioned record of the calibration
    const fs::path shipped = fs::path(HELIOX_SOURCE_DIR) / "data/params.defaults.json";
    REQUIRE(fs::exists(shipped));
    const auto file = io::params_from_json(io::load_config_file(shipped.string()));
    const auto fresh =
        dft::calibrate_params(dft::standard_helium_targets(), file.scattering_length_nm);
    CHECK(file.g2 == doctest::Approx(fresh.g2).epsilon(1e-10));
    CHECK(file.g3 == doctest::Approx(fresh.g3).epsilon(1e-10));
    CHECK(file.g4 == doctest::Approx(fresh.g4).epsilon(1e-10));
    CHECK(file.w == doctest::Approx(fresh.w).epsilon(1e-8));
}

TEST_CASE("eos run writes figure data and an echoing summary") {
    TempDir tmp("eos");
    io::json sweep = {{"start", 0.0}, {"stop", 50.0}, {"count", 6}};
    auto resolved = io::resolve_config("eos", io::json{{"pressure_bar", sweep}}, {});
    auto summary = io::run_scenario("eos", resolved, tmp.path.string(), 2);
    CHECK(summary.at("status") == "ok");
    CHECK(summary.at("config").contains("scattering_length_nm")); // defaults echoed
    CHECK(fs::exists(tmp.path / "eos.csv"));
    CHECK(fs::exists(tmp.path / "summary.json"));
    CHECK(fs::exists(tmp.path / "params.defaults.json"));

    const std::string csv = slurp(tmp.path / "eos.csv");
    CHECK(csv.rfind("pressure_bar,n_bulk_nm3,mu_eV,U_eV\n", 0) == 0);
    // six sweep rows plus the header
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);
}

TEST_CASE("identical resolved configs produce byte-identical CSVs") {
    TempDir a("det_a"), b("det_b");
    auto resolved = io::resolve_config(
        "entangle", io::json{{"t_end_ns", 0.2}, {"kappa_GHz", 10.0}}, {});
    (void)io::run_scenario("entangle", resolved, a.path.string(), 1);
    (void)io::run_scenario("entangle", resolved, b.path.string(), 1);
    CHECK(slurp(a.path / "fig5a.csv") == slurp(b.path / "fig5a.csv"));
    CHECK(!slurp(a.path / "fig5a.csv").empty());
}

TEST_CASE("HELIOX_DEFAULTS points at an alternate coefficient file") {
    TempDir tmp("envdef");
    dft::DftParams custom = io::load_params(0.104);
    custom.g2 *= 1.5; // visibly different coefficients
    const auto path = (tmp.path / "alt.json").string();
    io::write_defaults_file(path, custom);
    setenv("HELIOX_DEFAULTS", path.c_str(), 1);
    const auto via_env = io::load_params(0.104);
    unsetenv("HELIOX_DEFAULTS");
    CHECK(via_env.g2 == doctest::Approx(custom.g2).epsilon(1e-12));
    // explicit path takes precedence over calibration too
    const auto via_arg = io::load_params(0.104, path);
    CHECK(via_arg.g2 == doctest::Approx(custom.g2).epsilon(1e-12));
}

#ifdef HELIOX_CLI
TEST_CASE("binary exit-code contract") {
    TempDir tmp("exitcodes");
    const std::string cli = HELIOX_CLI;
    const std::string outdir = (tmp.path / "run").string();

    // validation failure: empty config, exit 2, no output files
    const auto empty_cfg = (tmp.path / "empty.json").string();
    std::ofstream(empty_cfg) << "";
    int rc = std::system(
        (cli + " eos --config " + empty_cfg + " --out " + outdir + " 2>/dev/null").c_str());
    CHECK(WEXITSTATUS(rc) == 2);
    CHECK_FALSE(fs::exists(outdir));

    // solver non-convergence: exit 3 and an error summary with the reason
    rc = std::system((cli + " bubble --pressure-bar 25 --grid-points 512 --max-iterations 3 --out " +
                      outdir + " 2>/dev/null")
                         .c_str());
    CHECK(WEXITSTATUS(rc) == 3);
    REQUIRE(fs::exists(fs::path(outdir) / "summary.json"));
    const auto summary = io::load_config_file((fs::path(outdir) / "summary.json").string());
    CHECK(summary.at("status") == "error");
    CHECK(summary.at("reason").get<std::string>().find("residuals") != std::string::npos);

    // success: exit 0, summary + figure data, byte-identical on a rerun
    const std::string okdir = (tmp.path / "ok").string();
    const std::string okdir2 = (tmp.path / "ok2").string();
    const std::string cmd_tail = " eos --pressure-bar 25 2>/dev/null";
    rc = std::system((cli + " --help > /dev/null 2>&1").c_str());
    CHECK(WEXITSTATUS(rc) == 0);
    rc = std::system((cli + cmd_tail + " --out " + okdir).c_str());
    CHECK(WEXITSTATUS(rc) == 0);
    rc = std::system((cli + cmd_tail + " --out " + okdir2).c_str());
    CHECK(WEXITSTATUS(rc) == 0);
    CHECK(slurp(fs::path(okdir) / "eos.csv") == slurp(fs::path(okdir2) / "eos.csv"));
}
#endif

TEST_CASE("bubble run reports the 25 bar radius") {
    TempDir tmp("bubble");
    auto resolved = io::resolve_config(
        "bubble", io::json{{"pressure_bar", 25.0}, {"grid_points", 1024}}, {});
    auto summary = io::run_scenario("bubble", resolved, tmp.path.string(), 1);
    CHECK(summary.at("results").at("R_nm").get<double>() ==
          doctest::Approx(1.14).epsilon(0.10));
    CHECK(fs::exists(tmp.path / "fig1c.csv"));
}
