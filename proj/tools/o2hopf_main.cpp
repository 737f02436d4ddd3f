// Command-line front end: spectra, admissibility, normal-form coefficients,
// reduced-flow and full Galerkin integration, amplitude sweeps and the
// validation suite for the O(2) Hopf analysis of the viscous system
//   tau_t - u_x = -a tau_xxxx,  u_t - sigma(tau)_x = -delta u_xx - u_xxxx.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "o2hopf/cli_io.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Equivariant Hopf bifurcation toolkit for fourth-order viscous "
                 "conservation laws"};
    app.require_subcommand(1);

    std::optional<std::string> config_path;
    std::optional<std::string> law_spec;
    std::optional<int> k0, modes, record_stride, K, jobs;
    std::optional<double> a_c, mu1, mu2, dt, t_end, a0, radius;
    std::optional<uint64_t> seed;
    std::optional<std::string> out_dir;
    std::optional<std::vector<double>> theta_grid;

    app.add_option("--config", config_path, "JSON config file (flags override it)");
    app.add_option("--law", law_spec, "pressure law, 'poly:c0,c1,...' or 'yao:c'");
    app.add_option("--k0", k0, "critical wave number (nonzero integer)");
    app.add_option("--a-c", a_c, "fourth-order diffusion coefficient a_c");
    app.add_option("--mu1", mu1, "parameter offset a - a_c");
    app.add_option("--mu2", mu2, "parameter offset delta - delta_c");
    app.add_option("--modes", modes, "retained positive Fourier modes N");
    app.add_option("--dt", dt, "time step (0 = default)");
    app.add_option("--T", t_end, "integration horizon");
    app.add_option("--record-stride", record_stride, "recording cadence in steps");
    app.add_option("--K", K, "admissibility / spectrum scan limit");
    app.add_option("--a0", a0, "initial center amplitude");
    app.add_option("--validity-radius", radius, "trusted |tau| range of the law");
    app.add_option("--theta-grid", theta_grid, "sweep theta values")->expected(-1);
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--seed", seed, "RNG seed for stochastic experiments");
    app.add_option("--jobs", jobs, "max concurrent sweep points");

    for (const char* name : {"spectrum", "admissible", "coeffs", "reduced-flow", "simulate",
                             "sweep", "validate"}) {
        app.add_subcommand(name)->fallthrough();
    }

    CLI11_PARSE(app, argc, argv);

    try {
        o2hopf::RunConfig cfg;
        if (config_path) cfg = o2hopf::parse_config_file(*config_path);
        cfg.subcommand = app.get_subcommands().front()->get_name();

        if (law_spec) o2hopf::apply_law_spec(cfg, *law_spec);
        if (k0) cfg.k0 = *k0;
        if (a_c) cfg.a_c = *a_c;
        if (mu1) cfg.mu1 = *mu1;
        if (mu2) cfg.mu2 = *mu2;
        if (modes) cfg.modes = *modes;
        if (dt) cfg.dt = *dt;
        if (t_end) cfg.t_end = *t_end;
        if (record_stride) cfg.record_stride = *record_stride;
        if (K) cfg.K = *K;
        if (a0) cfg.a0 = *a0;
        if (radius) cfg.validity_radius = *radius;
        if (theta_grid) cfg.theta_grid = *theta_grid;
        if (out_dir) cfg.out_dir = *out_dir;
        if (seed) cfg.seed = *seed;
        if (jobs) cfg.jobs = *jobs;

        if (cfg.k0 == 0) throw std::invalid_argument("k0 must be nonzero");
        if (cfg.modes < 1) throw std::invalid_argument("modes must be >= 1");

        return o2hopf::run(cfg, std::cout, std::cerr);
    } catch (const std::invalid_argument& e) {
        std::cerr << "{\"error\":\"validation\",\"message\":\"" << e.what() << "\"}\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "{\"error\":\"numerical\",\"message\":\"" << e.what() << "\"}\n";
        return 2;
    }
}
