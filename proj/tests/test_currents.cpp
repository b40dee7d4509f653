#include <doctest.h>

#include "irqed/currents.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace irqed;

namespace {

const cplx I(0.0, 1.0);

cplx kbar_dot(const Vec3& k, const CVec4& j) { return k.norm() * j[0] - k[0] * j[1] - k[1] * j[2] - k[2] * j[3]; }

CurrentSpec bn_spec(Gauge g, double eps = 0.0) {
    return {Kinematics::bn(FourVelocity(Vec3(0.1, 0.2, -0.3)), FourVelocity(Vec3(-0.4, 0.0, 0.5)), 0.3), g,
            FormFactor::gaussian(0.8), CutoffWindow(0.1, 1.0), eps};
}

CurrentSpec dipole_spec(Gauge g, double eps = 0.0) {
    return {Kinematics::dipole(Vec3(0.05, 0.0, 0.1), Vec3(0.0, 0.2, -0.1), 1.5, 0.3), g, FormFactor::gaussian(0.8),
            CutoffWindow(0.1, 1.0), eps};
}

}  // namespace

TEST_SUITE("currents") {

TEST_CASE("mode normalization") {
    CHECK(mode_normalization(0.5) == doctest::Approx(std::pow(2 * M_PI, 1.5)));
}

TEST_CASE("BN current is conserved on shell") {
    const CurrentSpec s = bn_spec(Gauge::fgb);
    for (const Vec3& k : {Vec3(0.3, 0.1, 0.2), Vec3(-0.5, 0.4, 0.1), Vec3(0.0, 0.0, 0.9)}) {
        const CVec4 j = current_fourier(s, k, k.norm());
        CHECK(std::abs(kbar_dot(k, j)) < 1e-14 * j.norm());
        // the two legs in the direct formula
        const double r = s.ff(k.norm());
        const Vec4 vo = s.kin.leg_vector(Leg::out), vi = s.kin.leg_vector(Leg::in);
        const CVec4 ref = (I * r / (k.norm() - vo.tail<3>().dot(k))) * vo.cast<cplx>() -
                          (I * r / (k.norm() - vi.tail<3>().dot(k))) * vi.cast<cplx>();
        CHECK((j - ref).norm() < 1e-14 * ref.norm());
    }
}

TEST_CASE("dipole divergence in closed form") {
    const CurrentSpec s = dipole_spec(Gauge::fgb);
    const Vec3 dv = (s.kin.p(Leg::out) - s.kin.p(Leg::in)) / s.kin.mass();
    for (const Vec3& k : {Vec3(0.3, 0.1, 0.2), Vec3(-0.5, 0.4, 0.1), Vec3(0.0, 0.0, 0.9)}) {
        const double kn = k.norm();
        const CVec4 j = current_fourier(s, k, kn);
        // kbar.j = -i rho (k.dv)/|k|
        const cplx expect = -I * s.ff(kn) * k.dot(dv) / kn;
        CHECK(std::abs(kbar_dot(k, j) - expect) < 1e-15);
        CHECK(std::abs(expect) > 0.0);
    }
}

TEST_CASE("Coulomb currents are transverse") {
    for (const CurrentSpec& s : {bn_spec(Gauge::coulomb), dipole_spec(Gauge::coulomb)}) {
        const Vec3 k(0.2, -0.3, 0.4);
        const CVec4 j = current_fourier(s, k, k.norm());
        CHECK(j[0] == cplx(0.0));
        CHECK(std::abs(k[0] * j[1] + k[1] * j[2] + k[2] * j[3]) < 1e-15 * j.norm());
    }
}

TEST_CASE("current pole") {
    const CurrentSpec s = bn_spec(Gauge::fgb);
    const Vec3 k(0.0, 0.0, 1.0);
    CHECK_THROWS_AS(current_fourier(s, k, 0.5), Error);
    CHECK_NOTHROW(current_fourier(bn_spec(Gauge::fgb, 1e-3), k, 0.5));
}

TEST_CASE("divergence") {
    const Vec3 k(0.1, 0.2, 0.3);
    CHECK(current_divergence(bn_spec(Gauge::fgb), k, 1.0) == cplx(0.0));
    const CurrentSpec s = dipole_spec(Gauge::fgb);
    CHECK_THROWS_AS(current_divergence(s, k, 0.0), Error);
    const cplx out = current_divergence(s, k, 2.0), in = current_divergence(s, k, -2.0);
    CHECK(std::abs(out - I * s.ff(k.norm()) * k.dot(s.kin.p(Leg::out)) / 1.5) < 1e-16);
    CHECK(std::abs(in - I * s.ff(k.norm()) * k.dot(s.kin.p(Leg::in)) / 1.5) < 1e-16);
}

TEST_CASE("coherence functions") {
    const CurrentSpec s = bn_spec(Gauge::fgb);
    CHECK_THROWS_AS(coherence_asymptotic(s, Leg::out, Vec3(0.0, 0.0, 2.0)), Error);
    const Vec3 k(0.2, 0.3, -0.1);
    for (Leg l : {Leg::in, Leg::out}) {
        const CVec4 a = coherence_asymptotic(s, l, k);
        double prev = 1e300;
        for (double eps : {1e-2, 1e-3, 1e-4}) {
            // out leg: t -> +inf, in leg: t -> -inf with the sign carried by eps
            const double t = l == Leg::out ? 60.0 / eps : -60.0 / eps;
            const CVec4 r = coherence_regularized(s, l, k, t, eps);
            const double d = (r - a).norm();
            CHECK(d < prev);
            prev = d;
        }
        CHECK(prev < 1e-3 * a.norm());
    }
    CHECK(coherence_regularized(s, Leg::out, k, 0.0, 0.1).norm() == 0.0);
    CHECK_THROWS_AS(coherence_regularized(s, Leg::out, k, 1.0, -0.1), Error);
}

TEST_CASE("phase exponent at rest") {
    const FormFactor ff = FormFactor::sharp(0.1, 1.0);
    const CutoffWindow w(0.1, 1.0);
    for (double t : {0.5, 7.0, 40.0}) {
        const double eps = 0.05;
        const double d = phase_exponent_d(FourVelocity(), t, eps, ff, w);
        const double ref = -4.0 * M_PI / (8.0 * M_PI * M_PI * M_PI) *
                           oracle::fixed(
                               [&](double K) {
                                   const double br = std::exp(-eps * t) * std::sin(K * t) +
                                                     K / (2 * eps) * (std::exp(-2 * eps * t) - 1.0);
                                   return K * br / (K * K + eps * eps);
                               },
                               0.1, 1.0, 64, 20);
        CHECK(std::abs(d - ref) < 1e-8 * std::abs(ref));
    }
    CHECK(phase_exponent_d(FourVelocity(), 0.0, 0.1, ff, w) == 0.0);
    CHECK_THROWS_AS(phase_exponent_d(FourVelocity(), 1.0, 0.0, ff, w), Error);
}

TEST_CASE("phase exponent at late times") {
    const FormFactor ff = FormFactor::sharp(0.1, 1.0);
    const CutoffWindow w(0.1, 1.0);
    const FourVelocity u(Vec3(0.0, 0.3, 0.0));
    double prev = 0.0;
    for (double eps : {0.2, 0.1, 0.05}) {
        const double d = phase_exponent_d(u, 400.0 / eps, eps, ff, w);
        CHECK(d > prev);
        prev = d;
    }
}

}
