#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "irqed/irqed.h"
#include "oracles.hpp"

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

TEST_SUITE("capi") {

TEST_CASE("handles and errors") {
    irqed_form_factor* ff = nullptr;
    CHECK(irqed_form_factor_sharp(0.1, 1.0, &ff) == IRQED_OK);
    CHECK(ff != nullptr);
    irqed_form_factor* bad = nullptr;
    CHECK(irqed_form_factor_gaussian(-1.0, &bad) == IRQED_ERR_INVALID_ARGUMENT);
    CHECK(bad == nullptr);
    CHECK(std::strlen(irqed_last_error()) > 0);
    CHECK(irqed_form_factor_sharp(0.1, 1.0, nullptr) == IRQED_ERR_INVALID_ARGUMENT);

    const double rest[3] = {0, 0, 0}, fast[3] = {0.6, 0.8, 0.0};
    irqed_kinematics* kin = nullptr;
    CHECK(irqed_kinematics_bn(rest, fast, 0.3, &kin) == IRQED_ERR_DOMAIN);
    CHECK(kin == nullptr);
    CHECK(std::string(irqed_version()).size() > 0);
    irqed_form_factor_free(ff);
    irqed_form_factor_free(nullptr);
    irqed_kinematics_free(nullptr);
}

TEST_CASE("tabulated form factor") {
    const double k[3] = {0.0, 1.0, 2.0}, v[3] = {1.0, 0.5, 0.0};
    irqed_form_factor* ff = nullptr;
    CHECK(irqed_form_factor_tabulated(k, v, 3, IRQED_INTERP_PCHIP, &ff) == IRQED_OK);
    irqed_form_factor_free(ff);
    CHECK(irqed_form_factor_tabulated(k, v, 1, IRQED_INTERP_LINEAR, &ff) == IRQED_ERR_INVALID_ARGUMENT);
}

TEST_CASE("counterterms and exponents") {
    irqed_form_factor* ff = nullptr;
    irqed_form_factor_sharp(0.1, 1.0, &ff);
    const irqed_window w{0.1, 1.0};
    const double u[3] = {0.0, 0.0, 0.5};
    irqed_counterterms c{};
    CHECK(irqed_counterterms_eval(ff, &w, u, nullptr, &c) == IRQED_OK);
    CHECK(std::abs(c.z_tilde / c.z - 1.5) < 1e-14);
    CHECK(std::abs(c.z2 / c.z1 - 1.5) < 1e-14);
    CHECK(std::abs(c.z1 - oracle::z1(0.9, 0.5)) < 1e-8 * c.z1);
    CHECK(std::abs(c.b_ir - oracle::b_ir(std::log(10.0))) < 1e-8 * std::abs(c.b_ir));

    const double p0[3] = {0, 0, 0}, p1[3] = {0, 0, 0.1};
    irqed_kinematics* dp = nullptr;
    CHECK(irqed_kinematics_dipole(p0, p1, 1.0, 0.3, &dp) == IRQED_OK);
    irqed_exponent e{};
    CHECK(irqed_m_exponent(dp, IRQED_GAUGE_COULOMB, ff, &w, nullptr, &e) == IRQED_OK);
    CHECK(std::abs(e.total_re - oracle::dipole_coulomb(0.3, 0.1, std::log(10.0))) < 1e-8 * std::abs(e.total_re));
    irqed_gauge_report g{};
    CHECK(irqed_gauge_compare(dp, ff, &w, nullptr, &g) == IRQED_OK);
    CHECK(std::abs(g.log_ratio - 1.5) < 1e-8);
    CHECK(g.conservation_residual > 0.0);
    CHECK(irqed_m_exponent(nullptr, IRQED_GAUGE_FGB, ff, &w, nullptr, &e) == IRQED_ERR_INVALID_ARGUMENT);
    const irqed_window bw{1.0, 0.1};
    CHECK(irqed_m_exponent(dp, IRQED_GAUGE_FGB, ff, &bw, nullptr, &e) == IRQED_ERR_INVALID_ARGUMENT);
    irqed_kinematics_free(dp);
    irqed_form_factor_free(ff);
}

TEST_CASE("ledger") {
    irqed_form_factor* ff = nullptr;
    irqed_form_factor_sharp(0.1, 1.0, &ff);
    const irqed_window w{0.1, 1.0};
    const double u[3] = {0, 0, 0};
    const double eps[2] = {0.1, 0.05};
    irqed_ledger_row rows[2];
    irqed_ledger_summary s{};
    CHECK(irqed_renormalization_ledger(u, 0.3, eps, 2, ff, &w, nullptr, rows, &s) == IRQED_OK);
    CHECK(rows[1].eps == 0.05);
    CHECK(rows[0].counterterm_re == 0.0);
    CHECK(std::abs(s.target + 0.09 * oracle::b_ir(std::log(10.0)) / 2) < 1e-12);
    const double up[2] = {0.05, 0.1};
    CHECK(irqed_renormalization_ledger(u, 0.3, up, 2, ff, &w, nullptr, rows, &s) == IRQED_ERR_INVALID_ARGUMENT);
    irqed_form_factor_free(ff);
}

TEST_CASE("emission and product grid") {
    irqed_form_factor* ff = nullptr;
    irqed_form_factor_sharp(0.1, 1.0, &ff);
    const irqed_window w{0.1, 1.0};
    const double a[3] = {0, 0, 0}, b[3] = {0.4, 0, 0};
    irqed_kinematics* kin = nullptr;
    irqed_kinematics_bn(a, b, 0.3, &kin);
    std::vector<double> nodes(3 * 8), weights(8);
    CHECK(irqed_product_grid(&w, 2, 2, 2, nodes.data(), weights.data()) == IRQED_OK);
    std::vector<double> values(8 * 8, 0.0);
    for (int i = 0; i < 8; ++i) values[8 * i + 4] = 1.0;  // y component
    const irqed_photon p{8, nodes.data(), weights.data(), values.data()};
    double factors[2];
    irqed_emission_report r{};
    CHECK(irqed_emission(kin, IRQED_GAUGE_FGB, ff, &w, nullptr, &p, 1, 0, factors, &r) == IRQED_OK);
    CHECK(r.has_oracle == 0);
    CHECK(std::abs(r.total_re - (r.vacuum_re * factors[0] - r.vacuum_im * factors[1])) < 1e-15);
    CHECK(irqed_product_grid(&w, 0, 2, 2, nodes.data(), weights.data()) == IRQED_ERR_INVALID_ARGUMENT);
    irqed_kinematics_free(kin);
    irqed_form_factor_free(ff);
}

TEST_CASE("fock verification") {
    irqed_fock_config cfg{6, 2, 0.3, 5};
    irqed_fock_report r{};
    CHECK(irqed_fock_verify(&cfg, &r) == IRQED_OK);
    CHECK(r.n_checks > 5);
    cfg.cap = 1;
    CHECK(irqed_fock_verify(&cfg, &r) == IRQED_ERR_INVALID_ARGUMENT);
    cfg.cap = 14;
    cfg.nodes = 6;
    CHECK(irqed_fock_verify(&cfg, &r) == IRQED_ERR_BUDGET);
}

}
