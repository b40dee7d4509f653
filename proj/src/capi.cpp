#include "irqed/irqed.h"

#include "irqed/smatrix.hpp"
#include "irqed/verify.hpp"

#include <cmath>
#include <cstring>
#include <new>
#include <string>

struct irqed_form_factor {
    irqed::FormFactor ff;
};

struct irqed_kinematics {
    irqed::Kinematics kin;
};

namespace {

thread_local std::string g_last_error;

irqed_status status_of(irqed::ErrorKind k) {
    switch (k) {
        case irqed::ErrorKind::invalid_argument: return IRQED_ERR_INVALID_ARGUMENT;
        case irqed::ErrorKind::domain: return IRQED_ERR_DOMAIN;
        case irqed::ErrorKind::nonconvergence: return IRQED_ERR_NONCONVERGENCE;
        case irqed::ErrorKind::truncation: return IRQED_ERR_TRUNCATION;
        case irqed::ErrorKind::budget: return IRQED_ERR_BUDGET;
    }
    return IRQED_ERR_INTERNAL;
}

template <class F>
irqed_status guarded(F&& f) {
    try {
        f();
        g_last_error.clear();
        return IRQED_OK;
    } catch (const irqed::Error& e) {
        g_last_error = e.what();
        return status_of(e.kind());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return IRQED_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return IRQED_ERR_INTERNAL;
    }
}

void require(const void* p, const char* what) {
    if (!p) throw irqed::Error(irqed::ErrorKind::invalid_argument, std::string("null ") + what);
}

irqed::Vec3 vec3(const double* v) { return {v[0], v[1], v[2]}; }

irqed::Gauge gauge_of(irqed_gauge g) {
    if (g == IRQED_GAUGE_FGB) return irqed::Gauge::fgb;
    if (g == IRQED_GAUGE_COULOMB) return irqed::Gauge::coulomb;
    throw irqed::Error(irqed::ErrorKind::invalid_argument, "unknown gauge");
}

irqed::CutoffWindow window_of(const irqed_window* w) {
    require(w, "window");
    return irqed::CutoffWindow(w->lambda, w->Lambda);
}

irqed::QuadOptions options_of(const irqed_tolerances* t) {
    irqed::QuadOptions o;
    if (t) {
        if (t->abs_tol < 0.0 || t->rel_tol < 0.0)
            throw irqed::Error(irqed::ErrorKind::invalid_argument, "tolerances must be >= 0");
        if (t->abs_tol > 0.0) o.abs_tol = t->abs_tol;
        if (t->rel_tol > 0.0) o.rel_tol = t->rel_tol;
    }
    return o;
}

void fill(const irqed::CorrectionExponent& c, irqed_exponent* out) {
    out->total_re = c.total.real();
    out->total_im = c.total.imag();
    out->gamma_cross = c.gamma_cross;
    out->b_ir_in = c.b_ir_in;
    out->b_ir_out = c.b_ir_out;
    out->error = c.error;
}

}  // namespace

extern "C" {

const char* irqed_last_error(void) { return g_last_error.c_str(); }

const char* irqed_version(void) { return "1.0.0"; }

irqed_status irqed_form_factor_gaussian(double sigma, irqed_form_factor** out) {
    return guarded([&] {
        require(out, "output");
        *out = new irqed_form_factor{irqed::FormFactor::gaussian(sigma)};
    });
}

irqed_status irqed_form_factor_sharp(double lo, double hi, irqed_form_factor** out) {
    return guarded([&] {
        require(out, "output");
        *out = new irqed_form_factor{irqed::FormFactor::sharp(lo, hi)};
    });
}

irqed_status irqed_form_factor_tabulated(const double* k, const double* values, size_t n,
                                         irqed_interp rule, irqed_form_factor** out) {
    return guarded([&] {
        require(out, "output");
        require(k, "abscissae");
        require(values, "values");
        const auto r = rule == IRQED_INTERP_PCHIP ? irqed::FormFactor::Rule::pchip : irqed::FormFactor::Rule::linear;
        *out = new irqed_form_factor{irqed::FormFactor::tabulated(std::vector<double>(k, k + n),
                                                                  std::vector<double>(values, values + n), r)};
    });
}

void irqed_form_factor_free(irqed_form_factor* ff) { delete ff; }

irqed_status irqed_kinematics_bn(const double u_in[3], const double u_out[3], double charge,
                                 irqed_kinematics** out) {
    return guarded([&] {
        require(out, "output");
        require(u_in, "u_in");
        require(u_out, "u_out");
        *out = new irqed_kinematics{
            irqed::Kinematics::bn(irqed::FourVelocity(vec3(u_in)), irqed::FourVelocity(vec3(u_out)), charge)};
    });
}

irqed_status irqed_kinematics_dipole(const double p_in[3], const double p_out[3], double mass, double charge,
                                     irqed_kinematics** out) {
    return guarded([&] {
        require(out, "output");
        require(p_in, "p_in");
        require(p_out, "p_out");
        *out = new irqed_kinematics{irqed::Kinematics::dipole(vec3(p_in), vec3(p_out), mass, charge)};
    });
}

void irqed_kinematics_free(irqed_kinematics* kin) { delete kin; }

irqed_status irqed_counterterms_eval(const irqed_form_factor* ff, const irqed_window* w, const double u[3],
                                     const irqed_tolerances* tol, irqed_counterterms* out) {
    return guarded([&] {
        require(ff, "form factor");
        require(u, "velocity");
        require(out, "output");
        const auto win = window_of(w);
        const auto opt = options_of(tol);
        const irqed::FourVelocity v(vec3(u));
        out->z = irqed::counterterm_z(ff->ff, win, opt);
        out->z_tilde = irqed::counterterm_z_tilde(ff->ff, win, opt);
        out->z1 = irqed::counterterm_z1(v, ff->ff, win, opt);
        out->z2 = irqed::counterterm_z2(v, ff->ff, win, opt);
        out->b_ir = irqed::b_ir(v, ff->ff, win, opt);
    });
}

irqed_status irqed_m_exponent(const irqed_kinematics* kin, irqed_gauge gauge, const irqed_form_factor* ff,
                              const irqed_window* w, const irqed_tolerances* tol, irqed_exponent* out) {
    return guarded([&] {
        require(kin, "kinematics");
        require(ff, "form factor");
        require(out, "output");
        fill(irqed::m_exponent(kin->kin, gauge_of(gauge), ff->ff, window_of(w), options_of(tol)), out);
    });
}

irqed_status irqed_gauge_compare(const irqed_kinematics* kin, const irqed_form_factor* ff,
                                 const irqed_window* w, const irqed_tolerances* tol, irqed_gauge_report* out) {
    return guarded([&] {
        require(kin, "kinematics");
        require(ff, "form factor");
        require(out, "output");
        const auto g = irqed::gauge_compare(kin->kin, ff->ff, window_of(w), options_of(tol));
        out->fgb = g.fgb.real();
        out->coulomb = g.coulomb.real();
        out->fgb_error = g.fgb_error;
        out->coulomb_error = g.coulomb_error;
        out->log_ratio = g.log_ratio;
        out->undefined = g.undefined ? 1 : 0;
        out->conservation_residual = g.conservation_residual;
    });
}

irqed_status irqed_renormalization_ledger(const double u[3], double charge, const double* eps, size_t n_eps,
                                          const irqed_form_factor* ff, const irqed_window* w,
                                          const irqed_tolerances* tol, irqed_ledger_row* rows,
                                          irqed_ledger_summary* summary) {
    return guarded([&] {
        require(u, "velocity");
        require(eps, "eps ladder");
        require(ff, "form factor");
        require(rows, "rows");
        require(summary, "summary");
        const auto L = irqed::renormalization_ledger(irqed::FourVelocity(vec3(u)), charge,
                                                     std::vector<double>(eps, eps + n_eps), ff->ff,
                                                     window_of(w), options_of(tol));
        for (std::size_t i = 0; i < L.rows.size(); ++i) {
            const auto& r = L.rows[i];
            rows[i] = {r.eps, r.unren.real(), r.unren.imag(), r.counterterm.real(), r.counterterm.imag(),
                       r.sum.real(), r.sum.imag()};
        }
        summary->extrapolated_re = L.extrapolated.real();
        summary->extrapolated_im = L.extrapolated.imag();
        summary->target = L.target;
    });
}

irqed_status irqed_emission(const irqed_kinematics* kin, irqed_gauge gauge, const irqed_form_factor* ff,
                            const irqed_window* w, const irqed_tolerances* tol, const irqed_photon* photons,
                            size_t n_photons, int oracle_cap, double* factors, irqed_emission_report* out) {
    return guarded([&] {
        require(kin, "kinematics");
        require(ff, "form factor");
        require(out, "output");
        if (n_photons > 0) {
            require(photons, "photons");
            require(factors, "factors");
        }
        const irqed::Gauge g = gauge_of(gauge);
        std::vector<irqed::PhotonSmearing> ph;
        for (std::size_t p = 0; p < n_photons; ++p) {
            const irqed_photon& src = photons[p];
            require(src.nodes, "photon nodes");
            require(src.weights, "photon weights");
            require(src.values, "photon values");
            irqed::PhotonSmearing s;
            s.space = g;
            for (std::size_t i = 0; i < src.n; ++i) {
                s.nodes.push_back(vec3(src.nodes + 3 * i));
                s.weights.push_back(src.weights[i]);
                const double* v = src.values + 8 * i;
                irqed::CVec4 c;
                for (int a = 0; a < 4; ++a) c[a] = irqed::cplx(v[2 * a], v[2 * a + 1]);
                if (g == irqed::Gauge::coulomb) c[0] = 0.0;
                s.values.push_back(c);
            }
            s.validate();
            ph.push_back(std::move(s));
        }
        const auto r = irqed::full_amplitude(kin->kin, g, ff->ff, window_of(w), ph, options_of(tol), oracle_cap);
        out->vacuum_re = r.vacuum_amplitude.real();
        out->vacuum_im = r.vacuum_amplitude.imag();
        fill(r.exponent, &out->exponent);
        out->total_re = r.total.real();
        out->total_im = r.total.imag();
        for (std::size_t p = 0; p < n_photons; ++p) {
            factors[2 * p] = r.emission_factors[p].real();
            factors[2 * p + 1] = r.emission_factors[p].imag();
        }
        out->has_oracle = r.oracle ? 1 : 0;
        out->oracle_re = r.oracle ? r.oracle->value.real() : 0.0;
        out->oracle_im = r.oracle ? r.oracle->value.imag() : 0.0;
        out->grid_product_re = r.oracle ? r.oracle->grid_product.real() : 0.0;
        out->grid_product_im = r.oracle ? r.oracle->grid_product.imag() : 0.0;
        out->oracle_truncation = r.oracle ? r.oracle->truncation_estimate : 0.0;
        out->oracle_dim = r.oracle ? r.oracle->dim : 0;
    });
}

irqed_status irqed_product_grid(const irqed_window* w, int n_radial, int n_polar, int n_azimuth,
                                double* nodes, double* weights) {
    return guarded([&] {
        require(nodes, "nodes");
        require(weights, "weights");
        const auto g = irqed::product_grid(window_of(w), n_radial, n_polar, n_azimuth);
        for (std::size_t i = 0; i < g.nodes.size(); ++i) {
            for (int a = 0; a < 3; ++a) nodes[3 * i + a] = g.nodes[i][a];
            weights[i] = g.weights[i];
        }
    });
}

irqed_status irqed_fock_verify(const irqed_fock_config* cfg, irqed_fock_report* out) {
    return guarded([&] {
        require(cfg, "config");
        require(out, "output");
        irqed::FockSuiteConfig c;
        c.cap = cfg->cap;
        c.nodes = cfg->nodes;
        c.charge = cfg->charge;
        c.seed = cfg->seed;
        const auto r = irqed::run_fock_suite(c);
        std::memset(out, 0, sizeof(*out));
        out->n_checks = std::min<std::size_t>(r.checks.size(), IRQED_MAX_CHECKS);
        for (std::size_t i = 0; i < out->n_checks; ++i) {
            auto& d = out->checks[i];
            std::strncpy(d.name, r.checks[i].name.c_str(), sizeof(d.name) - 1);
            d.deviation = r.checks[i].deviation;
            d.tolerance = r.checks[i].tolerance;
            d.passed = r.checks[i].passed ? 1 : 0;
        }
        out->n_convergence = std::min<std::size_t>(r.convergence.size(), IRQED_MAX_CONVERGENCE);
        for (std::size_t i = 0; i < out->n_convergence; ++i) {
            out->convergence_cap[i] = r.convergence[i].cap;
            out->convergence_deviation[i] = r.convergence[i].deviation;
        }
        out->passed = r.passed() ? 1 : 0;
    });
}

}  // extern "C"
