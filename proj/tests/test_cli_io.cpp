#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "o2hopf/cli_io.hpp"
#include "o2hopf/normal_form.hpp"

using namespace o2hopf;

namespace {

std::string run_to_string(const RunConfig& cfg, int expected_code) {
    std::ostringstream out, err;
    const int code = run(cfg, out, err);
    INFO("stderr: ", err.str());
    CHECK(code == expected_code);
    return out.str();
}

}  // namespace

TEST_SUITE("cli_io") {

TEST_CASE("minimal config accepted with defaults") {
    const RunConfig cfg = parse_config_json(R"({"law":[0,1,1],"k0":1,"a_c":0.0})");
    CHECK(cfg.k0 == 1);
    CHECK(cfg.law_coeffs == std::vector<double>{0.0, 1.0, 1.0});
    CHECK(cfg.modes == 64);
    CHECK(cfg.seed == 12345);
}

TEST_CASE("validation errors carry the offending field") {
    CHECK_THROWS_WITH_AS(parse_config_json(R"({"k0":0})"),
                         doctest::Contains("k0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_json(R"({"dt":-0.1})"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_config_json(R"({"frobnicate":1})"),
                         doctest::Contains("frobnicate"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_json("not json"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_json(R"({"law":"spline:1,2"})"), std::invalid_argument);
}

TEST_CASE("config round trip") {
    RunConfig cfg = parse_config_json(
        R"({"law":[0,2,1],"k0":2,"a_c":0.05,"mu2":0.01,"modes":48,"seed":99,
            "theta_grid":[0.01,0.02],"out":"somewhere","jobs":3,"dealias":false})");
    const RunConfig back = parse_config_json(serialize_config(cfg));
    CHECK(back.law_coeffs == cfg.law_coeffs);
    CHECK(back.k0 == cfg.k0);
    CHECK(back.a_c == cfg.a_c);
    CHECK(back.mu2 == cfg.mu2);
    CHECK(back.modes == cfg.modes);
    CHECK(back.seed == cfg.seed);
    CHECK(back.theta_grid == cfg.theta_grid);
    CHECK(back.out_dir == cfg.out_dir);
    CHECK(back.jobs == cfg.jobs);
    CHECK(back.dealias == cfg.dealias);

    // yao builtin round trip
    RunConfig yao = parse_config_json(R"({"law":{"yao":1.5}})");
    const RunConfig yao_back = parse_config_json(serialize_config(yao));
    REQUIRE(yao_back.yao_c.has_value());
    CHECK(*yao_back.yao_c == 1.5);
    CHECK(make_law(yao_back).sp1() == doctest::Approx(2.25));
}

TEST_CASE("law specs") {
    RunConfig cfg;
    apply_law_spec(cfg, "poly:0,1,1");
    CHECK(cfg.law_coeffs == std::vector<double>{0.0, 1.0, 1.0});
    apply_law_spec(cfg, "yao:2");
    REQUIRE(cfg.yao_c.has_value());
    CHECK(make_law(cfg).sp1() == doctest::Approx(4.0));
    CHECK_THROWS_AS(apply_law_spec(cfg, "table:1"), std::invalid_argument);
}

TEST_CASE("coeffs subcommand emits the reference coefficients") {
    RunConfig cfg = parse_config_json(R"({"law":[0,1,1],"k0":1,"a_c":0.0})");
    cfg.subcommand = "coeffs";
    cfg.out_dir = (std::filesystem::temp_directory_path() / "o2hopf_test_coeffs").string();
    const std::string text = run_to_string(cfg, 0);
    CHECK(text.find("-0.1666666666666") != std::string::npos);
    CHECK(std::filesystem::exists(std::filesystem::path(cfg.out_dir) / "coeffs.json"));
}

TEST_CASE("admissible subcommand exit codes") {
    RunConfig cfg = parse_config_json(R"({"law":[0,1,1],"k0":1,"a_c":2.0})");
    cfg.subcommand = "admissible";
    std::ostringstream out, err;
    CHECK(run(cfg, out, err) == 1);
    CHECK(out.str().find("sp1_below_critical") != std::string::npos);
    CHECK(err.str().find("validation") != std::string::npos);

    cfg.a_c = 0.0;
    std::ostringstream out2, err2;
    CHECK(run(cfg, out2, err2) == 0);
    CHECK(out2.str().find("\"accepted\": true") != std::string::npos);
}

TEST_CASE("unknown subcommand fails validation") {
    RunConfig cfg = parse_config_json(R"({"law":[0,1,1]})");
    cfg.subcommand = "frobnicate";
    std::ostringstream out, err;
    CHECK(run(cfg, out, err) == 1);
}

TEST_CASE("reduced-flow subcommand writes a center track") {
    RunConfig cfg = parse_config_json(R"({"law":[0,1,1],"k0":1,"a_c":0.0,"mu2":0.01})");
    cfg.subcommand = "reduced-flow";
    cfg.t_end = 5.0;
    cfg.out_dir = (std::filesystem::temp_directory_path() / "o2hopf_test_reduced").string();
    run_to_string(cfg, 0);
    std::ifstream in(std::filesystem::path(cfg.out_dir) / "center.csv");
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header == "t,re_z1,im_z1,re_z2,im_z2");
}

TEST_CASE("simulate subcommand writes trajectory and center files") {
    RunConfig cfg = parse_config_json(
        R"({"law":[0,1,1],"k0":1,"a_c":0.0,"mu2":0.012,"modes":16,"T":2.0,"a0":0.02})");
    cfg.subcommand = "simulate";
    cfg.out_dir = (std::filesystem::temp_directory_path() / "o2hopf_test_sim").string();
    run_to_string(cfg, 0);
    std::ifstream traj(std::filesystem::path(cfg.out_dir) / "trajectory.csv");
    REQUIRE(traj.good());
    std::string header;
    std::getline(traj, header);
    CHECK(header == "t,k,re_tau,im_tau,re_u,im_u");
    std::ifstream center(std::filesystem::path(cfg.out_dir) / "center.csv");
    REQUIRE(center.good());
}

TEST_CASE("deterministic output bytes for a fixed seed") {
    auto run_sim = [](const std::string& dir) {
        RunConfig cfg = parse_config_json(
            R"({"law":[0,1,1],"k0":1,"a_c":0.0,"mu2":0.012,"modes":16,"T":1.0,"seed":7})");
        cfg.subcommand = "simulate";
        cfg.out_dir = dir;
        std::ostringstream out, err;
        REQUIRE(run(cfg, out, err) == 0);
        std::ifstream in(std::filesystem::path(dir) / "center.csv");
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    const std::string base = (std::filesystem::temp_directory_path() / "o2hopf_det").string();
    CHECK(run_sim(base + "_1") == run_sim(base + "_2"));
}

TEST_CASE("center basis debug dump") {
    const CriticalConfig cfg = check_admissible(1, 0.0, 1.0, 64).config();
    const std::string text = center_basis_json(build_center_basis(cfg));
    CHECK(text.find("\"xi0\"") != std::string::npos);
    CHECK(text.find("\"eta1\"") != std::string::npos);
    CHECK(text.find("\"biorth\"") != std::string::npos);
}

TEST_CASE("spectrum subcommand round trip") {
    RunConfig cfg = parse_config_json(R"({"law":[0,1,1],"k0":1,"a_c":0.0,"K":8})");
    cfg.subcommand = "spectrum";
    cfg.out_dir = (std::filesystem::temp_directory_path() / "o2hopf_test_spec").string();
    run_to_string(cfg, 0);
    std::ifstream in(std::filesystem::path(cfg.out_dir) / "spectrum.json");
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str().find("\"omega_c\"") != std::string::npos);
    CHECK(ss.str().find("\"gap\"") != std::string::npos);
}

}  // TEST_SUITE
