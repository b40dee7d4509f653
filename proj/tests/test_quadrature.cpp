#include <doctest.h>

#include "irqed/quadrature.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace irqed;

namespace {

QuadOptions tight() {
    QuadOptions o;
    o.abs_tol = 1e-14;
    o.rel_tol = 1e-13;
    return o;
}

bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::abs(b); }

}  // namespace

TEST_SUITE("quadrature") {

TEST_CASE("gauss legendre nodes") {
    for (int n : {1, 2, 5, 10, 31}) {
        const auto& g = gauss_legendre(n);
        double s = 0.0;
        for (double w : g.w) s += w;
        CHECK(s == doctest::Approx(2.0).epsilon(1e-14));
        // exact for x^(2n-2)
        double m = 0.0;
        for (int i = 0; i < n; ++i) m += g.w[i] * std::pow(g.x[i], 2 * n - 2);
        CHECK(m == doctest::Approx(2.0 / (2 * n - 1)).epsilon(1e-13));
    }
    CHECK_THROWS_AS(gauss_legendre(0), Error);
}

TEST_CASE("adaptive integration") {
    const auto r = integrate([](double x) { return std::exp(-x) * std::sin(5 * x); }, 0.0, 4.0, tight());
    const double exact = (5.0 - std::exp(-4.0) * (std::sin(20.0) + 5.0 * std::cos(20.0))) / 26.0;
    CHECK(std::abs(r.value - exact) < 1e-13);
    CHECK(r.error < 1e-12);
    // integrable kink handled by a cut
    const auto k = integrate([](double x) { return std::abs(x - 0.3); }, {0.0, 0.3, 1.0}, tight());
    CHECK(std::abs(k.value - (0.045 + 0.245)) < 1e-14);
    // complex integrands
    const auto c = integrate([](double x) { return std::exp(cplx(0, x)); }, 0.0, M_PI, tight());
    CHECK(std::abs(c.value - cplx(0.0, 2.0)) < 1e-13);
}

TEST_CASE("nonconvergence is reported") {
    QuadOptions o;
    o.abs_tol = 1e-300;
    o.rel_tol = 1e-300;
    o.max_panels = 8;
    try {
        integrate([](double x) { return std::sqrt(x); }, 0.0, 1.0, o);
        FAIL("expected nonconvergence");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::nonconvergence);
    }
}

TEST_CASE("sphere integral") {
    const Vec3 u(0.0, 0.3, 0.4);
    const auto a = sphere_integral([&](const Vec3& n) { return 1.0 / (1.0 - u.dot(n)); },
                                   PolarFrame::aligned(u), true, tight());
    CHECK(rel_close(a.value, oracle::shell_one(0.5), 1e-13));
    const auto b = sphere_integral([](const Vec3& n) { return n[0] * n[0]; }, PolarFrame::aligned(Vec3(0, 0, 1)),
                                   false, tight());
    CHECK(rel_close(b.value, 4.0 * M_PI / 3.0, 1e-13));
}

TEST_CASE("counterterm z against closed forms") {
    const CutoffWindow w(0.1, 1.0);
    const double z = counterterm_z(FormFactor::sharp(0.1, 1.0), w, tight());
    CHECK(rel_close(z, oracle::z(oracle::sharp_r0(0.1, 1.0)), 1e-12));
    CHECK(z == doctest::Approx(1.5198e-2).epsilon(1e-4));
    CHECK(rel_close(counterterm_z_tilde(FormFactor::sharp(0.1, 1.0), w, tight()), 1.5 * z, 1e-14));

    const CutoffWindow wg(0.1, 5.0);
    const double zg = counterterm_z(FormFactor::gaussian(1.0), wg, tight());
    CHECK(rel_close(zg, oracle::z(oracle::gaussian_r0(1.0, 0.1, 5.0)), 1e-12));

    // empty range
    CHECK(counterterm_z(FormFactor::sharp(0.1, 1.0), CutoffWindow(0.5, 0.5 + 1e-14), tight()) < 1e-15);
}

TEST_CASE("counterterm z1 per-shell closed form") {
    const FormFactor ff = FormFactor::sharp(0.1, 1.0);
    const CutoffWindow w(0.1, 1.0);
    const FourVelocity rest;
    CHECK(rel_close(counterterm_z1(rest, ff, w, tight()), counterterm_z(ff, w, tight()), 1e-10));
    for (double beta : {0.1, 0.5, 0.9}) {
        const FourVelocity u(Vec3(0.0, 0.0, beta));
        const double z1 = counterterm_z1(u, ff, w, tight());
        CHECK(rel_close(z1, oracle::z1(0.9, beta), 1e-11));
        CHECK(rel_close(counterterm_z2(u, ff, w, tight()) / z1, 1.5, 1e-13));
    }
}

TEST_CASE("B_IR and Gamma") {
    const FormFactor ff = FormFactor::sharp(0.1, 1.0);
    const CutoffWindow w(0.1, 1.0);
    const double b = b_ir(FourVelocity(), ff, w, tight());
    CHECK(rel_close(b, oracle::b_ir(std::log(10.0)), 1e-12));
    CHECK(b == doctest::Approx(-5.8325e-2).epsilon(1e-4));
    // the self term does not depend on the velocity
    CHECK(rel_close(b_ir(FourVelocity(Vec3(0.3, -0.5, 0.6)), ff, w, tight()), b, 1e-10));
    // scaling the window leaves the rest value unchanged
    CHECK(rel_close(b_ir(FourVelocity(), FormFactor::sharp(0.3, 3.0), CutoffWindow(0.3, 3.0), tight()), b, 1e-12));
    // gaussian radial moment through the exponential integral
    const double bg = b_ir(FourVelocity(), FormFactor::gaussian(0.7), CutoffWindow(0.05, 3.0), tight());
    CHECK(rel_close(bg, oracle::b_ir(oracle::gaussian_r1(0.7, 0.05, 3.0)), 1e-11));

    for (double beta : {0.2, 0.8}) {
        const double g = gamma_cross(FourVelocity(), FourVelocity(Vec3(beta, 0, 0)), ff, w, tight());
        CHECK(rel_close(g, oracle::gamma_rest(std::log(10.0), beta), 1e-11));
    }
    const FourVelocity u(Vec3(0.1, 0.2, 0.3));
    CHECK(rel_close(gamma_cross(u, u, ff, w, tight()), b_ir(u, ff, w, tight()), 1e-10));
    // monotone in lambda
    CHECK(-b_ir(FourVelocity(), ff, CutoffWindow(0.2, 1.0), tight()) < -b);
}

TEST_CASE("correction exponent") {
    const FormFactor ff = FormFactor::sharp(0.1, 1.0);
    const CutoffWindow w(0.1, 1.0);
    const double r1 = std::log(10.0);
    const Kinematics dp = Kinematics::dipole(Vec3(0, 0, 0), Vec3(0, 0, 0.1), 1.0, 0.3);
    const auto f = m_exponent(dp, Gauge::fgb, ff, w, tight());
    const auto c = m_exponent(dp, Gauge::coulomb, ff, w, tight());
    CHECK(rel_close(f.total.real(), oracle::dipole_fgb(0.3, 0.1, r1), 1e-12));
    CHECK(rel_close(c.total.real(), oracle::dipole_coulomb(0.3, 0.1, r1), 1e-12));
    CHECK(c.total.real() == doctest::Approx(-1.7497e-5).epsilon(1e-4));
    CHECK(f.total.real() == doctest::Approx(-2.6246e-5).epsilon(1e-4));

    const Kinematics bn = Kinematics::bn(FourVelocity(), FourVelocity(Vec3(0, 0, 0.5)), 0.3);
    const auto a = m_exponent(bn, Gauge::fgb, ff, w, tight());
    const double expect = 0.09 * (oracle::gamma_rest(r1, 0.5) - oracle::b_ir(r1));
    CHECK(rel_close(a.total.real(), expect, 1e-11));
    CHECK(a.total.imag() == 0.0);
    CHECK(rel_close(a.gamma_cross, oracle::gamma_rest(r1, 0.5), 1e-11));
    const auto b = m_exponent(bn, Gauge::coulomb, ff, w, tight());
    CHECK(rel_close(b.total.real(), expect, 1e-11));

    const Kinematics same = Kinematics::bn(FourVelocity(Vec3(0.1, 0, 0)), FourVelocity(Vec3(0.1, 0, 0)), 0.3);
    CHECK(std::abs(m_exponent(same, Gauge::fgb, ff, w).total) == 0.0);
}

TEST_CASE("k0 residue integral against principal value") {
    for (double a : {0.0, 0.05, -0.3, 0.4}) {
        for (double K : {0.15, 0.5, 0.9}) {
            for (double eps : {0.1, 0.02}) {
                const cplx r = k0_residue_integral(a, K, eps);
                const cplx o = oracle::k0_integral(a, K, eps);
                CHECK(std::abs(r - o) <= 1e-9 * std::abs(o));
            }
        }
    }
}

TEST_CASE("unrenormalized exponent against a 4D oracle") {
    const FormFactor ff = FormFactor::sharp(0.1, 1.0);
    const CutoffWindow w(0.1, 1.0);
    const cplx u = unren_halfline_exponent(FourVelocity(), 0.1, 0.3, ff, w, tight());
    const cplx o = oracle::unren_rest(0.3, 0.1, [](double) { return 1.0; }, 0.1, 1.0);
    CHECK(std::abs(u - o) <= 1e-4 * std::abs(o));
    CHECK(unren_halfline_exponent(FourVelocity(), 0.1, 0.0, ff, w) == cplx(0.0, 0.0));
    CHECK_THROWS_AS(unren_halfline_exponent(FourVelocity(), 0.0, 0.3, ff, w), Error);
}

TEST_CASE("counterterm phase") {
    const FormFactor ff = FormFactor::sharp(0.1, 1.0);
    const CutoffWindow w(0.1, 1.0);
    const cplx c = counterterm_phase(FourVelocity(), 0.01, 0.3, ff, w, tight());
    CHECK(c.real() == 0.0);
    CHECK(std::abs(c.imag() + 0.09 * 1.5 * oracle::z(0.9) / 0.02) < 1e-12 * std::abs(c.imag()));
    CHECK(counterterm_phase(FourVelocity(), 0.01, 0.0, ff, w) == cplx(0.0, 0.0));
    CHECK_THROWS_AS(counterterm_phase(FourVelocity(), -1.0, 0.3, ff, w), Error);
    // the combined integrand matches the separate pieces
    const FourVelocity u(Vec3(0.0, 0.4, 0.0));
    const cplx sum = unren_halfline_exponent(u, 0.05, 0.3, ff, w, tight()) + counterterm_phase(u, 0.05, 0.3, ff, w, tight());
    const cplx ren = renormalized_halfline_exponent(u, 0.05, 0.3, ff, w, tight());
    CHECK(std::abs(sum - ren) < 1e-9 * std::abs(sum) + 1e-12);
}

}
