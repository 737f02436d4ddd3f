#include "o2hopf/cli_io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "o2hopf/errors.hpp"
#include "o2hopf/normal_form.hpp"
#include "o2hopf/validation.hpp"

namespace o2hopf {

namespace {

using nlohmann::json;

constexpr double kTwoPi = 2.0 * 3.14159265358979323846;

void require(bool cond, const std::string& message) {
    if (!cond) throw std::invalid_argument(message);
}

double finite(const json& j, const std::string& key) {
    const double v = j.get<double>();
    require(std::isfinite(v), "config field '" + key + "' must be finite");
    return v;
}

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

json complex_json(const cplx& z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json psi_json(const PsiCoefficient& psi) {
    // single-mode field: locate its nonzero mode
    int mode = psi.field.max_mode();
    for (int k = -psi.field.max_mode(); k <= psi.field.max_mode(); ++k) {
        if (k != 0 && (psi.field.tau(k) != cplx(0.0) || psi.field.u(k) != cplx(0.0))) mode = k;
    }
    return json{{"mode", mode},
                {"tau", complex_json(psi.field.tau(mode))},
                {"u", complex_json(psi.field.u(mode))}};
}

}  // namespace

void apply_law_spec(RunConfig& cfg, const std::string& spec) {
    if (spec.rfind("poly:", 0) == 0) {
        std::vector<double> coeffs;
        std::stringstream ss(spec.substr(5));
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            require(!tok.empty(), "law spec: empty coefficient");
            coeffs.push_back(std::stod(tok));
        }
        require(!coeffs.empty(), "law spec: no coefficients");
        cfg.law_coeffs = std::move(coeffs);
        cfg.yao_c.reset();
    } else if (spec.rfind("yao:", 0) == 0) {
        cfg.yao_c = std::stod(spec.substr(4));
    } else {
        throw std::invalid_argument("law spec must start with 'poly:' or 'yao:'");
    }
}

RunConfig parse_config_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config parse error: ") + e.what());
    }
    require(j.is_object(), "config root must be a JSON object");

    RunConfig cfg;
    for (const auto& [key, value] : j.items()) {
        if (key == "law") {
            if (value.is_array()) {
                cfg.law_coeffs.clear();
                for (const auto& c : value) cfg.law_coeffs.push_back(finite(c, "law"));
                cfg.yao_c.reset();
            } else if (value.is_object() && value.contains("yao") && value.size() == 1) {
                cfg.yao_c = finite(value["yao"], "law.yao");
            } else if (value.is_string()) {
                apply_law_spec(cfg, value.get<std::string>());
            } else {
                throw std::invalid_argument("config field 'law' must be a coefficient list, "
                                            "{\"yao\": c}, or a spec string");
            }
        } else if (key == "validity_radius") {
            cfg.validity_radius = finite(value, key);
            require(cfg.validity_radius > 0.0, "validity_radius must be positive");
        } else if (key == "k0") {
            require(value.is_number_integer(), "k0 must be an integer");
            cfg.k0 = value.get<int>();
            require(cfg.k0 != 0, "k0 must be nonzero");
        } else if (key == "a_c") {
            cfg.a_c = finite(value, key);
        } else if (key == "mu1") {
            cfg.mu1 = finite(value, key);
        } else if (key == "mu2") {
            cfg.mu2 = finite(value, key);
        } else if (key == "modes") {
            require(value.is_number_integer(), "modes must be an integer");
            cfg.modes = value.get<int>();
            require(cfg.modes >= 1, "modes must be >= 1");
        } else if (key == "dt") {
            cfg.dt = finite(value, key);
            require(cfg.dt >= 0.0, "dt must be positive (or 0 for the default)");
        } else if (key == "T") {
            cfg.t_end = finite(value, key);
            require(cfg.t_end >= 0.0, "T must be nonnegative");
        } else if (key == "record_stride") {
            require(value.is_number_integer(), "record_stride must be an integer");
            cfg.record_stride = value.get<int>();
            require(cfg.record_stride >= 0, "record_stride must be >= 0");
        } else if (key == "K") {
            require(value.is_number_integer(), "K must be an integer");
            cfg.K = value.get<int>();
            require(cfg.K >= 0, "K must be >= 0");
        } else if (key == "dealias") {
            require(value.is_boolean(), "dealias must be a boolean");
            cfg.dealias = value.get<bool>();
        } else if (key == "a0") {
            cfg.a0 = finite(value, key);
            require(cfg.a0 > 0.0, "a0 must be positive");
        } else if (key == "tail_fraction") {
            cfg.tail_fraction = finite(value, key);
            require(cfg.tail_fraction > 0.0 && cfg.tail_fraction <= 1.0,
                    "tail_fraction must be in (0, 1]");
        } else if (key == "theta_grid") {
            require(value.is_array() && !value.empty(), "theta_grid must be a nonempty array");
            cfg.theta_grid.clear();
            for (const auto& t : value) cfg.theta_grid.push_back(finite(t, "theta_grid"));
        } else if (key == "out") {
            cfg.out_dir = value.get<std::string>();
        } else if (key == "seed") {
            require(value.is_number_integer(), "seed must be an integer");
            cfg.seed = value.get<uint64_t>();
        } else if (key == "jobs") {
            require(value.is_number_integer(), "jobs must be an integer");
            cfg.jobs = value.get<int>();
            require(cfg.jobs >= 1, "jobs must be >= 1");
        } else if (key == "subcommand") {
            cfg.subcommand = value.get<std::string>();
        } else {
            throw std::invalid_argument("unknown config key '" + key + "'");
        }
    }
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_json(ss.str());
}

std::string serialize_config(const RunConfig& cfg) {
    json j;
    if (!cfg.subcommand.empty()) j["subcommand"] = cfg.subcommand;
    if (cfg.yao_c) {
        j["law"] = json{{"yao", *cfg.yao_c}};
    } else {
        j["law"] = cfg.law_coeffs;
    }
    j["validity_radius"] = cfg.validity_radius;
    j["k0"] = cfg.k0;
    j["a_c"] = cfg.a_c;
    j["mu1"] = cfg.mu1;
    j["mu2"] = cfg.mu2;
    j["modes"] = cfg.modes;
    j["dt"] = cfg.dt;
    j["T"] = cfg.t_end;
    j["record_stride"] = cfg.record_stride;
    j["K"] = cfg.K;
    j["dealias"] = cfg.dealias;
    j["a0"] = cfg.a0;
    j["tail_fraction"] = cfg.tail_fraction;
    j["theta_grid"] = cfg.theta_grid;
    j["out"] = cfg.out_dir;
    j["seed"] = cfg.seed;
    j["jobs"] = cfg.jobs;
    return j.dump(2);
}

PressureLaw make_law(const RunConfig& cfg) {
    if (cfg.yao_c) return PressureLaw::yao(*cfg.yao_c, cfg.validity_radius);
    return PressureLaw::polynomial(cfg.law_coeffs, cfg.validity_radius);
}

std::string spectrum_report_json(const SpectrumReport& rep) {
    json j;
    j["k0"] = rep.cfg.k0;
    j["a_c"] = rep.cfg.a_c;
    j["delta_c"] = rep.cfg.delta_c;
    j["omega_c"] = rep.cfg.omega_c;
    j["gap"] = rep.gap;
    j["center_modes"] = rep.center_modes;
    j["modes"] = json::array();
    for (const auto& m : rep.modes) {
        j["modes"].push_back(json{{"k", m.k},
                                  {"re1", m.lambda1.real()},
                                  {"im1", m.lambda1.imag()},
                                  {"re2", m.lambda2.real()},
                                  {"im2", m.lambda2.imag()}});
    }
    return j.dump(2);
}

std::string coeffs_json(const NormalForm& nf) {
    const double k2 = static_cast<double>(nf.cfg.k0) * nf.cfg.k0;
    json j;
    j["a_r_per_theta"] = 0.5 * k2;
    // Coefficient of Im a in (mu1 k0^2 + mu2); equals Im a / theta on the
    // mu1 = 0 axis.
    j["a_i_per_theta"] = -nf.cfg.a_c * k2 * k2 * k2 / (2.0 * nf.cfg.omega_c);
    j["b0"] = complex_json(nf.b0);
    j["c0"] = complex_json(nf.c0);
    j["alpha"] = nf.alpha;
    j["psi200000"] = psi_json(nf.psi200000);
    j["psi100100"] = psi_json(nf.psi100100);
    j["omega_c"] = nf.cfg.omega_c;
    j["delta_c"] = nf.cfg.delta_c;
    return j.dump(2);
}

std::string center_basis_json(const CenterBasis& basis) {
    auto field_json = [](const FourierField& f) {
        json modes = json::array();
        for (int k = -f.max_mode(); k <= f.max_mode(); ++k) {
            if (k == 0 || (f.tau(k) == cplx(0.0) && f.u(k) == cplx(0.0))) continue;
            modes.push_back(json{{"k", k},
                                 {"tau", complex_json(f.tau(k))},
                                 {"u", complex_json(f.u(k))}});
        }
        return modes;
    };
    json j;
    j["k0"] = basis.cfg.k0;
    j["omega_c"] = basis.cfg.omega_c;
    j["xi0"] = field_json(basis.xi0);
    j["xi1"] = field_json(basis.xi1);
    j["eta0"] = field_json(basis.eta0);
    j["eta1"] = field_json(basis.eta1);
    json gram = json::array();
    for (const auto& row : basis.biorth) {
        json r = json::array();
        for (const auto& entry : row) r.push_back(complex_json(entry));
        gram.push_back(r);
    }
    j["biorth"] = gram;
    return j.dump(2);
}

std::string checks_json(const std::vector<CheckResult>& checks, uint64_t seed) {
    json j;
    j["seed"] = seed;
    bool all = true;
    j["checks"] = json::array();
    for (const auto& c : checks) {
        all = all && c.pass;
        j["checks"].push_back(json{{"name", c.name},
                                   {"pass", c.pass},
                                   {"measured", c.measured},
                                   {"tolerance", c.tolerance},
                                   {"seconds", c.seconds},
                                   {"detail", c.detail}});
    }
    j["all_pass"] = all;
    return j.dump(2);
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
    os << "t,k,re_tau,im_tau,re_u,im_u\n";
    os << std::setprecision(17);
    for (size_t i = 0; i < traj.states.size(); ++i) {
        const FourierField& f = traj.states[i];
        for (int k = -f.max_mode(); k <= f.max_mode(); ++k) {
            if (k == 0) continue;
            os << traj.state_times[i] << ',' << k << ',' << f.tau(k).real() << ','
               << f.tau(k).imag() << ',' << f.u(k).real() << ',' << f.u(k).imag() << '\n';
        }
    }
}

void write_center_csv(std::ostream& os, const Trajectory& traj) {
    os << "t,re_z1,im_z1,re_z2,im_z2\n";
    os << std::setprecision(17);
    for (size_t i = 0; i < traj.center_track.size(); ++i) {
        const auto& [z1, z2] = traj.center_track[i];
        os << traj.times[i] << ',' << z1.real() << ',' << z1.imag() << ',' << z2.real() << ','
           << z2.imag() << '\n';
    }
}

void write_reduced_csv(std::ostream& os, const ReducedTrack& track) {
    os << "t,re_z1,im_z1,re_z2,im_z2\n";
    os << std::setprecision(17);
    for (size_t i = 0; i < track.times.size(); ++i) {
        os << track.times[i] << ',' << track.z1[i].real() << ',' << track.z1[i].imag() << ','
           << track.z2[i].real() << ',' << track.z2[i].imag() << '\n';
    }
}

void write_sweep_csv(std::ostream& os, const SweepResult& sweep) {
    os << "mu1,mu2,theta,amplitude,r_star,omega,omega_pred,family,converged\n";
    os << std::setprecision(17);
    for (const auto& r : sweep.rows) {
        os << r.mu1 << ',' << r.mu2 << ',' << r.theta << ',' << r.amplitude << ',' << r.r_star
           << ',' << r.omega << ',' << r.omega_pred << ',' << to_string(r.family) << ','
           << (r.converged ? "true" : "false") << '\n';
    }
}

namespace {

void write_file(const std::string& dir, const std::string& name, const std::string& text) {
    std::filesystem::create_directories(dir);
    std::ofstream out(std::filesystem::path(dir) / name);
    if (!out) throw std::runtime_error("cannot write output file '" + name + "'");
    out << text;
}

template <typename Writer>
void write_csv_file(const std::string& dir, const std::string& name, Writer&& w) {
    std::filesystem::create_directories(dir);
    std::ofstream out(std::filesystem::path(dir) / name);
    if (!out) throw std::runtime_error("cannot write output file '" + name + "'");
    w(out);
}

CriticalConfig admissible_or_throw(const RunConfig& cfg, const PressureLaw& law) {
    const int K = cfg.K > 0 ? cfg.K : default_scan_limit(cfg.k0);
    const AdmissibilityResult res = check_admissible(cfg.k0, cfg.a_c, law.sp1(), K);
    if (!res.accepted()) {
        throw std::invalid_argument("inadmissible configuration: " + res.rejection().message);
    }
    return res.config();
}

int dispatch(const RunConfig& cfg, std::ostream& out) {
    const PressureLaw law = make_law(cfg);

    if (cfg.subcommand == "admissible") {
        const int K = cfg.K > 0 ? cfg.K : default_scan_limit(cfg.k0);
        const AdmissibilityResult res = check_admissible(cfg.k0, cfg.a_c, law.sp1(), K);
        json j;
        if (res.accepted()) {
            const CriticalConfig& c = res.config();
            j = {{"accepted", true},      {"k0", c.k0},
                 {"a_c", c.a_c},          {"delta_c", c.delta_c},
                 {"omega_c", c.omega_c},  {"sp1", c.sp1},
                 {"K", c.nonresonance_checked_up_to}, {"tail_certified", c.tail_certified}};
            out << j.dump(2) << '\n';
            return 0;
        }
        const auto& r = res.rejection();
        j = {{"accepted", false}, {"clause", r.clause}, {"offending_k", r.offending_k},
             {"reason", r.message}};
        out << j.dump(2) << '\n';
        throw std::invalid_argument(r.message);
    }

    const CriticalConfig crit = admissible_or_throw(cfg, law);
    const double dt = cfg.dt > 0.0 ? cfg.dt : 1e-3 * (kTwoPi / crit.omega_c);

    if (cfg.subcommand == "spectrum") {
        const int K = cfg.K > 0 ? cfg.K : default_scan_limit(cfg.k0);
        write_file(cfg.out_dir, "spectrum.json", spectrum_report_json(spectrum_report(crit, K)));
        out << "wrote spectrum.json (K = " << K << ")\n";
        return 0;
    }

    if (cfg.subcommand == "coeffs") {
        const NormalForm nf = build_normal_form(crit, law);
        const std::string text = coeffs_json(nf);
        write_file(cfg.out_dir, "coeffs.json", text);
        out << text << '\n';
        return 0;
    }

    if (cfg.subcommand == "reduced-flow") {
        const NormalForm nf = build_normal_form(crit, law);
        const double t_end = cfg.t_end > 0.0 ? cfg.t_end : 20.0 / crit.omega_c;
        const int stride = cfg.record_stride > 0 ? cfg.record_stride : 10;
        const ReducedTrack track =
            integrate_reduced(nf, cfg.mu1, cfg.mu2, cfg.a0, cfg.a0, t_end, dt, stride);
        write_csv_file(cfg.out_dir, "center.csv",
                       [&](std::ostream& os) { write_reduced_csv(os, track); });
        out << "wrote center.csv (" << track.times.size() << " samples)\n";
        return 0;
    }

    if (cfg.subcommand == "simulate") {
        const CenterBasis basis = build_center_basis(crit);
        SimConfig sim;
        sim.n_modes = cfg.modes;
        sim.dt = dt;
        sim.t_end = cfg.t_end > 0.0 ? cfg.t_end : 100.0 / crit.omega_c;
        sim.a = crit.a_c + cfg.mu1;
        sim.delta = crit.delta_c + cfg.mu2;
        sim.law = law;
        sim.dealias = cfg.dealias;
        sim.record_stride = cfg.record_stride > 0 ? cfg.record_stride : 16;
        sim.field_stride = 8 * sim.record_stride;
        FourierField U0(cfg.modes);
        U0 += (basis.xi0 + basis.xi0.conjugate() + basis.xi1 + basis.xi1.conjugate())
                  .resized(cfg.modes) * cplx(cfg.a0);
        GalerkinSimulator simulator(sim);
        const Trajectory traj = simulator.integrate(U0, &basis);
        write_csv_file(cfg.out_dir, "trajectory.csv",
                       [&](std::ostream& os) { write_trajectory_csv(os, traj); });
        write_csv_file(cfg.out_dir, "center.csv",
                       [&](std::ostream& os) { write_center_csv(os, traj); });
        out << "wrote trajectory.csv and center.csv (" << traj.times.size() << " samples)\n";
        return 0;
    }

    if (cfg.subcommand == "sweep") {
        std::vector<std::pair<double, double>> points;
        for (const double theta : cfg.theta_grid) points.push_back({0.0, theta});
        SweepSettings settings;
        settings.n_modes = cfg.modes;
        settings.dt = cfg.dt;
        settings.record_stride = cfg.record_stride;
        settings.tail_fraction = cfg.tail_fraction;
        settings.seed = cfg.seed;
        settings.jobs = cfg.jobs;
        const SweepResult sweep = amplitude_scaling_sweep(crit, law, points, settings);
        write_csv_file(cfg.out_dir, "sweep.csv",
                       [&](std::ostream& os) { write_sweep_csv(os, sweep); });
        out << "wrote sweep.csv; slope = " << fmt(sweep.slope) << ", seed = " << cfg.seed << '\n';
        bool converged = true;
        for (const auto& r : sweep.rows) converged = converged && r.converged;
        if (!converged) throw NumericalError("sweep: at least one point did not converge");
        return 0;
    }

    if (cfg.subcommand == "validate") {
        const std::vector<CheckResult> checks =
            validation::run_all(cfg.jobs, cfg.seed, /*include_extras=*/true);
        const std::string text = checks_json(checks, cfg.seed);
        write_file(cfg.out_dir, "validate.json", text);
        bool all = true;
        for (const auto& c : checks) {
            out << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << "  measured "
                << fmt(c.measured) << "  tol " << fmt(c.tolerance) << '\n';
            all = all && c.pass;
        }
        if (!all) throw NumericalError("validate: at least one check failed");
        return 0;
    }

    throw std::invalid_argument("unknown subcommand '" + cfg.subcommand + "'");
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        return dispatch(cfg, out);
    } catch (const std::invalid_argument& e) {
        err << json{{"error", "validation"}, {"message", e.what()}}.dump() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << json{{"error", "numerical"}, {"message", e.what()}}.dump() << '\n';
        return 2;
    }
}

}  // namespace o2hopf
