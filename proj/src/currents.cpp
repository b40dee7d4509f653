#include "irqed/currents.hpp"

#include "irqed/quadrature.hpp"

namespace irqed {

namespace {

const cplx I(0.0, 1.0);

CVec4 project(const CurrentSpec& s, const Vec3& k, const CVec4& v) {
    if (s.gauge == Gauge::fgb) return v;
    const CVec3 sp(v[1], v[2], v[3]);
    const CVec3 p = transverse_project(k, sp);
    return CVec4(0.0, p[0], p[1], p[2]);
}

// k0 - u.k with arbitrary k0, or k0 for the dipole.
double leg_denominator(const Kinematics& kin, Leg l, const Vec3& k, double k0) {
    if (kin.model() == Model::dipole) return k0;
    return k0 - kin.velocity(l).spatial().dot(k);
}

}  // namespace

double mode_normalization(double k) { return std::pow(2.0 * M_PI, 1.5) * std::sqrt(2.0 * k); }

CVec4 current_fourier(const CurrentSpec& s, const Vec3& k, double k0) {
    const double r = s.ff(k.norm());
    const cplx dout = leg_denominator(s.kin, Leg::out, k, k0) + I * s.eps;
    const cplx din = leg_denominator(s.kin, Leg::in, k, k0) - I * s.eps;
    if (dout == 0.0 || din == 0.0) throw Error(ErrorKind::domain, "current pole hit");
    const CVec4 vout = s.kin.leg_vector(Leg::out).cast<cplx>();
    const CVec4 vin = s.kin.leg_vector(Leg::in).cast<cplx>();
    const CVec4 j = (I * r / dout) * vout - (I * r / din) * vin;
    return project(s, k, j);
}

cplx current_divergence(const CurrentSpec& s, const Vec3& k, double t) {
    if (t == 0.0) throw Error(ErrorKind::invalid_argument, "t = 0 is excluded");
    if (s.kin.model() == Model::bn) return 0.0;
    const Vec3& p = s.kin.p(t > 0.0 ? Leg::out : Leg::in);
    return I * (k.dot(p) / s.kin.mass()) * s.ff(k.norm());
}

CVec4 coherence_asymptotic(const CurrentSpec& s, Leg leg, const Vec3& k) {
    const double kn = k.norm();
    if (!s.window.contains(kn)) throw Error(ErrorKind::domain, "k outside the cutoff window");
    const double d = s.kin.denominator(leg, k);
    const cplx c = s.ff(kn) / mode_normalization(kn) * I / d;
    return project(s, k, c * s.kin.leg_vector(leg).cast<cplx>());
}

CVec4 coherence_regularized(const CurrentSpec& s, Leg leg, const Vec3& k, double t, double eps) {
    const double kn = k.norm();
    if (!(kn > 0.0)) throw Error(ErrorKind::invalid_argument, "zero-length momentum");
    if (!(eps >= 0.0)) throw Error(ErrorKind::invalid_argument, "eps must be >= 0");
    const double d = s.kin.denominator(leg, k);
    const double e = leg == Leg::out ? -eps : eps;
    const cplx z = I * d + e;
    const cplx g = t == 0.0 ? cplx(0.0) : (std::exp(z * t) - 1.0) / z;
    const cplx c = s.ff(kn) / mode_normalization(kn) * g;
    return project(s, k, c * s.kin.leg_vector(leg).cast<cplx>());
}

double phase_exponent_d(const FourVelocity& u, double t, double eps, const FormFactor& ff,
                        const CutoffWindow& w) {
    if (!(eps > 0.0)) throw Error(ErrorKind::invalid_argument, "eps must be > 0");
    if (!(t >= 0.0)) throw Error(ErrorKind::invalid_argument, "t must be >= 0");
    if (t == 0.0) return 0.0;
    const double beta = u.speed();
    const double damp = std::exp(-eps * t), damp2 = std::expm1(-2.0 * eps * t);
    QuadOptions opt;
    auto cuts = cuts_with_breakpoints(w.lambda(), w.Lambda(), ff.breakpoints());
    // split the radial range so each panel sees a bounded number of oscillations
    const double period = 2.0 * M_PI / (t * (1.0 + beta));
    std::vector<double> fine{cuts.front()};
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const int n = std::max(1, int(std::ceil((cuts[i + 1] - cuts[i]) / period)));
        for (int j = 1; j <= n; ++j) fine.push_back(cuts[i] + (cuts[i + 1] - cuts[i]) * j / n);
    }
    QuadOptions inner = opt;
    inner.abs_tol = opt.abs_tol / (w.Lambda() - w.lambda());
    auto r = integrate(
        [&](double K) {
            const double rho = ff(K);
            if (rho == 0.0) return 0.0;
            auto a = integrate(
                [&](double c) {
                    const double uk = K * (1.0 - beta * c);
                    const double br = damp * std::sin(uk * t) + uk / (2.0 * eps) * damp2;
                    return br / (uk * uk + eps * eps);
                },
                -1.0, 1.0, inner);
            return 2.0 * M_PI * K * rho * rho * a.value;
        },
        fine, opt);
    return -r.value / (8.0 * M_PI * M_PI * M_PI);
}

}  // namespace irqed
