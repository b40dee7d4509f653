// Command-line front end over the C API.
#include "irqed/irqed.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

using nlohmann::json;

namespace {

enum Exit { ok = 0, verify_failed = 1, config_error = 2, numerical_error = 3 };

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ApiError : std::runtime_error {
    ApiError(irqed_status s, const std::string& m) : std::runtime_error(m), status(s) {}
    irqed_status status;
};

void check(irqed_status s) {
    if (s != IRQED_OK) throw ApiError(s, irqed_last_error());
}

struct Overrides {
    std::optional<double> lambda, Lambda;
    std::optional<std::uint64_t> seed;
    std::string out;
};

using FormFactorPtr = std::unique_ptr<irqed_form_factor, decltype(&irqed_form_factor_free)>;
using KinematicsPtr = std::unique_ptr<irqed_kinematics, decltype(&irqed_kinematics_free)>;

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

std::array<double, 3> vec3(const json& j, const char* key) {
    if (!j.contains(key)) throw ConfigError(std::string("missing ") + key);
    const auto v = j.at(key).get<std::vector<double>>();
    if (v.size() != 3) throw ConfigError(std::string(key) + " must have three components");
    return {v[0], v[1], v[2]};
}

struct Run {
    json cfg;
    Overrides ov;

    std::string model() const { return cfg.value("model", std::string("bn")); }

    std::vector<irqed_gauge> gauges() const {
        const json g = cfg.value("gauge", json("both"));
        std::vector<std::string> names;
        if (g.is_array())
            names = g.get<std::vector<std::string>>();
        else if (g.get<std::string>() == "both")
            names = {"fgb", "coulomb"};
        else
            names = {g.get<std::string>()};
        std::vector<irqed_gauge> out;
        for (const auto& n : names) {
            if (n == "fgb")
                out.push_back(IRQED_GAUGE_FGB);
            else if (n == "coulomb")
                out.push_back(IRQED_GAUGE_COULOMB);
            else
                throw ConfigError("unknown gauge " + n);
        }
        if (out.empty()) throw ConfigError("no gauge selected");
        return out;
    }

    irqed_window window() const {
        const json w = cfg.value("window", json::object());
        irqed_window out{w.value("lambda", 0.1), w.value("Lambda", 1.0)};
        if (ov.lambda) out.lambda = *ov.lambda;
        if (ov.Lambda) out.Lambda = *ov.Lambda;
        return out;
    }

    irqed_tolerances tolerances() const {
        const json t = cfg.value("tolerances", json::object());
        return {t.value("abs", 0.0), t.value("rel", 0.0)};
    }

    double charge() const { return cfg.value("kinematics", json::object()).value("charge", 0.3); }

    std::uint64_t seed() const { return ov.seed ? *ov.seed : cfg.value("seed", std::uint64_t(1)); }

    FormFactorPtr form_factor(const irqed_window& w) const {
        const json f = cfg.value("form_factor", json{{"kind", "sharp"}});
        const std::string kind = f.value("kind", std::string("sharp"));
        const json p = f.value("params", json::object());
        irqed_form_factor* ff = nullptr;
        if (kind == "sharp") {
            check(irqed_form_factor_sharp(p.value("lo", w.lambda), p.value("hi", w.Lambda), &ff));
        } else if (kind == "gaussian") {
            check(irqed_form_factor_gaussian(p.value("sigma", 1.0), &ff));
        } else if (kind == "tabulated") {
            const auto k = p.at("k").get<std::vector<double>>();
            const auto v = p.at("values").get<std::vector<double>>();
            if (k.size() != v.size()) throw ConfigError("tabulated k and values differ in length");
            const std::string rule = p.value("rule", std::string("linear"));
            if (rule != "linear" && rule != "pchip") throw ConfigError("unknown interpolation rule " + rule);
            check(irqed_form_factor_tabulated(k.data(), v.data(), k.size(),
                                              rule == "pchip" ? IRQED_INTERP_PCHIP : IRQED_INTERP_LINEAR, &ff));
        } else {
            throw ConfigError("unknown form factor kind " + kind);
        }
        return FormFactorPtr(ff, irqed_form_factor_free);
    }

    KinematicsPtr kinematics() const {
        if (!cfg.contains("kinematics")) throw ConfigError("missing kinematics");
        const json k = cfg.at("kinematics");
        irqed_kinematics* kin = nullptr;
        const std::string m = model();
        if (m == "bn") {
            const auto a = vec3(k, "u_in"), b = vec3(k, "u_out");
            check(irqed_kinematics_bn(a.data(), b.data(), charge(), &kin));
        } else if (m == "dipole") {
            const auto a = vec3(k, "p_in"), b = vec3(k, "p_out");
            check(irqed_kinematics_dipole(a.data(), b.data(), k.value("mass", 1.0), charge(), &kin));
        } else {
            throw ConfigError("unknown model " + m);
        }
        return KinematicsPtr(kin, irqed_kinematics_free);
    }

    std::string output_path() const {
        if (!ov.out.empty()) return ov.out;
        return cfg.value("output", json::object()).value("path", std::string());
    }

    std::string format(const std::string& fallback) const {
        const std::string f = cfg.value("output", json::object()).value("format", fallback);
        if (f != "json" && f != "csv") throw ConfigError("unknown output format " + f);
        return f;
    }
};

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path);
    out << text;
}

std::string num(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json complex_json(double re, double im) { return json{{"re", re}, {"im", im}}; }

json exponent_json(const irqed_exponent& e) {
    return json{{"total", complex_json(e.total_re, e.total_im)},
                {"gamma_cross", e.gamma_cross},
                {"b_ir_in", e.b_ir_in},
                {"b_ir_out", e.b_ir_out},
                {"error", e.error}};
}

const char* gauge_name(irqed_gauge g) { return g == IRQED_GAUGE_FGB ? "fgb" : "coulomb"; }

int cmd_corrections(const Run& run) {
    const auto w = run.window();
    const auto tol = run.tolerances();
    const auto ff = run.form_factor(w);
    const auto kin = run.kinematics();
    const std::string fmt = run.format("json");
    json reports = json::array();
    std::string csv = "model,gauge,lambda,Lambda,total,gamma_cross,b_ir_in,b_ir_out,vacuum_amplitude\n";
    for (irqed_gauge g : run.gauges()) {
        irqed_emission_report r{};
        check(irqed_emission(kin.get(), g, ff.get(), &w, &tol, nullptr, 0, 0, nullptr, &r));
        reports.push_back(json{{"model", run.model()},
                               {"gauge", gauge_name(g)},
                               {"window", {{"lambda", w.lambda}, {"Lambda", w.Lambda}}},
                               {"exponent", exponent_json(r.exponent)},
                               {"vacuum_amplitude", complex_json(r.vacuum_re, r.vacuum_im)},
                               {"emission_factors", json::array()},
                               {"total", complex_json(r.total_re, r.total_im)}});
        csv += run.model() + "," + gauge_name(g) + "," + num(w.lambda) + "," + num(w.Lambda) + "," +
               num(r.exponent.total_re) + "," + num(r.exponent.gamma_cross) + "," + num(r.exponent.b_ir_in) +
               "," + num(r.exponent.b_ir_out) + "," + num(r.vacuum_re) + "\n";
    }
    json doc{{"reports", reports}};
    if (reports.size() == 2) {
        const double a = reports[0]["exponent"]["total"]["re"], b = reports[1]["exponent"]["total"]["re"];
        doc["log_ratio"] = (a == 0.0 || b == 0.0) ? json(nullptr) : json(a / b);
    }
    if (run.cfg.contains("epsilon_ladder") && run.model() == "bn") {
        const auto eps = run.cfg.at("epsilon_ladder").get<std::vector<double>>();
        const auto u = vec3(run.cfg.at("kinematics"), "u_out");
        std::vector<irqed_ledger_row> rows(eps.size());
        irqed_ledger_summary sum{};
        check(irqed_renormalization_ledger(u.data(), run.charge(), eps.data(), eps.size(), ff.get(), &w, &tol,
                                           rows.data(), &sum));
        json jr = json::array();
        for (const auto& r : rows)
            jr.push_back(json{{"eps", r.eps},
                              {"unren", complex_json(r.unren_re, r.unren_im)},
                              {"counterterm", complex_json(r.counterterm_re, r.counterterm_im)},
                              {"sum", complex_json(r.sum_re, r.sum_im)}});
        doc["renormalization"] = json{{"rows", jr},
                                      {"extrapolated", complex_json(sum.extrapolated_re, sum.extrapolated_im)},
                                      {"target", sum.target}};
    }
    write_output(run.output_path(), fmt == "json" ? doc.dump(2) + "\n" : csv);
    return ok;
}

// Photon list: explicit samples or gaussian bumps on a product grid.
struct PhotonData {
    std::vector<double> nodes, weights, values;
};

std::vector<PhotonData> load_photons(const json& doc, const irqed_window& w) {
    std::vector<PhotonData> out;
    if (!doc.contains("photons") || !doc.at("photons").is_array()) throw ConfigError("photon file needs a photons array");
    for (const auto& p : doc.at("photons")) {
        PhotonData d;
        if (p.contains("nodes")) {
            const auto nodes = p.at("nodes").get<std::vector<std::vector<double>>>();
            d.weights = p.at("weights").get<std::vector<double>>();
            const auto vals = p.at("values").get<std::vector<std::vector<std::vector<double>>>>();
            if (nodes.size() != d.weights.size() || nodes.size() != vals.size())
                throw ConfigError("photon nodes, weights and values differ in length");
            for (std::size_t i = 0; i < nodes.size(); ++i) {
                if (nodes[i].size() != 3 || vals[i].size() != 4) throw ConfigError("bad photon sample shape");
                d.nodes.insert(d.nodes.end(), nodes[i].begin(), nodes[i].end());
                for (const auto& c : vals[i]) {
                    if (c.size() != 2) throw ConfigError("photon values are [re, im] pairs");
                    d.values.push_back(c[0]);
                    d.values.push_back(c[1]);
                }
            }
        } else if (p.contains("bump")) {
            const json b = p.at("bump");
            const auto c = vec3(b, "center");
            const double width = b.value("width", 0.1), amp = b.value("amplitude", 1.0);
            if (!(width > 0.0)) throw ConfigError("bump width must be positive");
            const auto grid = b.value("grid", std::vector<int>{8, 8, 8});
            if (grid.size() != 3) throw ConfigError("bump grid is [radial, polar, azimuth]");
            const bool pure_gauge = b.contains("polarization") && b.at("polarization").is_string() &&
                                    b.at("polarization").get<std::string>() == "kbar";
            std::vector<double> pol{0, 1, 0, 0};
            if (b.contains("polarization") && !pure_gauge) pol = b.at("polarization").get<std::vector<double>>();
            if (pol.size() != 4) throw ConfigError("polarization is a four-vector or \"kbar\"");
            if (grid[0] < 1 || grid[1] < 1 || grid[2] < 1) throw ConfigError("bump grid sizes must be >= 1");
            const std::size_t n = std::size_t(grid[0]) * grid[1] * grid[2];
            d.nodes.resize(3 * n);
            d.weights.resize(n);
            check(irqed_product_grid(&w, grid[0], grid[1], grid[2], d.nodes.data(), d.weights.data()));
            for (std::size_t i = 0; i < n; ++i) {
                const double* k = &d.nodes[3 * i];
                const double dx = k[0] - c[0], dy = k[1] - c[1], dz = k[2] - c[2];
                const double g = amp * std::exp(-(dx * dx + dy * dy + dz * dz) / (2.0 * width * width));
                const double kn = std::sqrt(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
                const double v[4] = {pure_gauge ? kn : pol[0], pure_gauge ? k[0] : pol[1],
                                     pure_gauge ? k[1] : pol[2], pure_gauge ? k[2] : pol[3]};
                for (double x : v) {
                    d.values.push_back(g * x);
                    d.values.push_back(0.0);
                }
            }
        } else {
            throw ConfigError("photon needs nodes or bump");
        }
        out.push_back(std::move(d));
    }
    return out;
}

int cmd_emission(const Run& run, const std::string& photon_file) {
    const auto w = run.window();
    const auto tol = run.tolerances();
    const auto ff = run.form_factor(w);
    const auto kin = run.kinematics();
    const json pdoc = photon_file.empty() ? json{{"photons", json::array()}} : load_json(photon_file);
    const auto photons = load_photons(pdoc, w);
    std::vector<irqed_photon> ph;
    for (const auto& p : photons) ph.push_back({p.weights.size(), p.nodes.data(), p.weights.data(), p.values.data()});
    const int cap = pdoc.value("oracle_cap", 0);
    const double oracle_tol = pdoc.value("oracle_tolerance", 1e-6);
    bool failed = false;
    json reports = json::array();
    for (irqed_gauge g : run.gauges()) {
        std::vector<double> factors(2 * ph.size());
        irqed_emission_report r{};
        check(irqed_emission(kin.get(), g, ff.get(), &w, &tol, ph.data(), ph.size(), cap, factors.data(), &r));
        json fj = json::array();
        for (std::size_t i = 0; i < ph.size(); ++i) fj.push_back(complex_json(factors[2 * i], factors[2 * i + 1]));
        json rep{{"model", run.model()},
                 {"gauge", gauge_name(g)},
                 {"window", {{"lambda", w.lambda}, {"Lambda", w.Lambda}}},
                 {"exponent", exponent_json(r.exponent)},
                 {"vacuum_amplitude", complex_json(r.vacuum_re, r.vacuum_im)},
                 {"emission_factors", fj},
                 {"total", complex_json(r.total_re, r.total_im)}};
        if (r.has_oracle) {
            const double dev = std::hypot(r.oracle_re - r.grid_product_re, r.oracle_im - r.grid_product_im);
            const bool agree = dev <= oracle_tol * std::max(1.0, std::hypot(r.grid_product_re, r.grid_product_im));
            failed = failed || !agree;
            rep["oracle"] = json{{"value", complex_json(r.oracle_re, r.oracle_im)},
                                 {"grid_product", complex_json(r.grid_product_re, r.grid_product_im)},
                                 {"deviation", dev},
                                 {"agreement", agree},
                                 {"truncation_estimate", r.oracle_truncation},
                                 {"cap", cap},
                                 {"dim", r.oracle_dim}};
        }
        reports.push_back(rep);
    }
    write_output(run.output_path(), json{{"reports", reports}}.dump(2) + "\n");
    return failed ? verify_failed : ok;
}

int cmd_gauge_check(const Run& run) {
    const auto tol = run.tolerances();
    const auto kin = run.kinematics();
    std::vector<double> sweep;
    if (run.cfg.contains("lambda_sweep")) sweep = run.cfg.at("lambda_sweep").get<std::vector<double>>();
    if (run.ov.lambda) sweep = {*run.ov.lambda};
    if (sweep.empty()) throw ConfigError("empty lambda sweep");
    const std::string fmt = run.format("csv");
    std::string csv = "lambda,m_fgb,m_coul,log_ratio,conservation_residual\n";
    json rows = json::array();
    for (double lam : sweep) {
        irqed_window w = run.window();
        w.lambda = lam;
        const auto ff = run.form_factor(w);
        irqed_gauge_report r{};
        check(irqed_gauge_compare(kin.get(), ff.get(), &w, &tol, &r));
        csv += num(lam) + "," + num(r.fgb) + "," + num(r.coulomb) + "," + num(r.log_ratio) + "," +
               num(r.conservation_residual) + "\n";
        rows.push_back(json{{"lambda", lam},
                            {"m_fgb", r.fgb},
                            {"m_coul", r.coulomb},
                            {"log_ratio", r.undefined ? json(nullptr) : json(r.log_ratio)},
                            {"undefined", bool(r.undefined)},
                            {"conservation_residual", r.conservation_residual}});
    }
    write_output(run.output_path(), fmt == "csv" ? csv : json{{"rows", rows}}.dump(2) + "\n");
    return ok;
}

int cmd_fock_verify(const Run& run) {
    const json f = run.cfg.value("fock", json::object());
    irqed_fock_config c{f.value("cap", 14), f.value("nodes", 3), f.value("charge", run.charge()), run.seed()};
    irqed_fock_report r{};
    check(irqed_fock_verify(&c, &r));
    json checks = json::array();
    for (std::size_t i = 0; i < r.n_checks; ++i)
        checks.push_back(json{{"name", r.checks[i].name},
                              {"deviation", r.checks[i].deviation},
                              {"tolerance", r.checks[i].tolerance},
                              {"passed", bool(r.checks[i].passed)}});
    json conv = json::array();
    for (std::size_t i = 0; i < r.n_convergence; ++i)
        conv.push_back(json{{"cap", r.convergence_cap[i]}, {"deviation", r.convergence_deviation[i]}});
    const json doc{{"cap", c.cap}, {"nodes", c.nodes}, {"seed", c.seed},
                   {"checks", checks}, {"convergence", conv}, {"passed", bool(r.passed)}};
    write_output(run.output_path(), doc.dump(2) + "\n");
    return r.passed ? ok : verify_failed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Infrared QED radiative corrections and Fock-space checks"};
    app.require_subcommand(1);
    std::string config, photons;
    Overrides ov;
    double lambda = 0, Lambda = 0;
    std::uint64_t seed = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("config", config, "JSON run configuration")->required();
        sub->add_option("--lambda", lambda, "infrared cutoff override");
        sub->add_option("--Lambda", Lambda, "soft scale override");
        sub->add_option("--seed", seed, "seed override");
        sub->add_option("--out", ov.out, "output path");
    };
    auto* corr = app.add_subcommand("corrections", "exponents and vacuum amplitudes");
    auto* emis = app.add_subcommand("emission", "emission amplitudes");
    auto* gchk = app.add_subcommand("gauge-check", "FGB versus Coulomb over a lambda sweep");
    auto* fock = app.add_subcommand("fock-verify", "truncated Fock space suite");
    for (auto* s : {corr, emis, gchk, fock}) add_common(s);
    emis->add_option("--photons", photons, "photon description file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? ok : config_error;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        if (sub->count("--lambda")) ov.lambda = lambda;
        if (sub->count("--Lambda")) ov.Lambda = Lambda;
        if (sub->count("--seed")) ov.seed = seed;
        Run run{load_json(config), ov};
        if (!run.cfg.is_object()) throw ConfigError("configuration must be a JSON object");
        if (sub == corr) return cmd_corrections(run);
        if (sub == emis) return cmd_emission(run, photons);
        if (sub == gchk) return cmd_gauge_check(run);
        return cmd_fock_verify(run);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return config_error;
    } catch (const json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return config_error;
    } catch (const ApiError& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.status) {
            case IRQED_ERR_INVALID_ARGUMENT:
            case IRQED_ERR_DOMAIN:
            case IRQED_ERR_BUDGET: return config_error;
            default: return numerical_error;
        }
    }
}
