#include "irqed/quadrature.hpp"

#include <map>
#include <mutex>

namespace irqed {

namespace {

constexpr double kPi = M_PI;
const double kTwoPi3 = 8.0 * kPi * kPi * kPi;  // (2 pi)^3

GaussLegendre build_gl(int n) {
    GaussLegendre g;
    g.x.resize(n);
    g.w.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        g.x[n - 1 - i] = x;
        g.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return g;
}

Vec3 spatial(const Vec4& v) { return {v[1], v[2], v[3]}; }

bool collinear(const Vec3& a, const Vec3& b) {
    return a.cross(b).norm() <= 1e-15 * std::max(1.0, a.norm() * b.norm());
}

PolarFrame frame_for(const Vec3& primary, const Vec3& secondary) {
    if (primary.norm() > 0.0) return PolarFrame::aligned(primary);
    if (secondary.norm() > 0.0) return PolarFrame::aligned(secondary);
    return PolarFrame::aligned(Vec3::UnitZ());
}

void require_eps(double eps) {
    if (!(eps > 0.0) || !std::isfinite(eps))
        throw Error(ErrorKind::invalid_argument, "adiabatic parameter must be > 0");
}

}  // namespace

const GaussLegendre& gauss_legendre(int n) {
    if (n < 1 || n > 200) throw Error(ErrorKind::invalid_argument, "Gauss-Legendre order out of range");
    static std::mutex mu;
    static std::map<int, GaussLegendre> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_gl(n)).first;
    return it->second;
}

std::vector<double> cuts_with_breakpoints(double lo, double hi, const std::vector<double>& bp) {
    std::vector<double> cuts{lo};
    for (double b : bp)
        if (b > lo && b < hi) cuts.push_back(b);
    cuts.push_back(hi);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    return cuts;
}

PolarFrame PolarFrame::aligned(const Vec3& axis) {
    PolarFrame f;
    f.ez = axis.normalized();
    const auto pol = polarization_frame(f.ez);
    f.ex = pol[0];
    f.ey = pol[1];
    return f;
}

Vec3 PolarFrame::direction(double c, double phi) const {
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    return ez * c + (ex * std::cos(phi) + ey * std::sin(phi)) * s;
}

QuadResult<double> radial_moment(const FormFactor& ff, const CutoffWindow& w, int p,
                                 const QuadOptions& opt) {
    const auto cuts = cuts_with_breakpoints(w.lambda(), w.Lambda(), ff.breakpoints());
    return integrate(
        [&](double k) {
            const double r = ff(k);
            return r * r * std::pow(k, -p);
        },
        cuts, opt);
}

namespace {

// S = int d3k rho^2 / ((2pi)^3 k^2 d(khat)) with d = 1 - u.khat.
double shell_integral(const FourVelocity& u, const FormFactor& ff, const CutoffWindow& w,
                      const QuadOptions& opt) {
    const double r0 = radial_moment(ff, w, 0, opt).value;
    const Vec3 uv = u.spatial();
    const auto a = sphere_integral([&](const Vec3& kh) { return 1.0 / (1.0 - uv.dot(kh)); },
                                   frame_for(uv, uv), true, opt);
    return r0 * a.value / kTwoPi3;
}

}  // namespace

double counterterm_z(const FormFactor& ff, const CutoffWindow& w, const QuadOptions& opt) {
    const double s = radial_moment(ff, w, 0, opt).value * 4.0 * kPi / kTwoPi3;
    return s / 3.0;
}

double counterterm_z_tilde(const FormFactor& ff, const CutoffWindow& w, const QuadOptions& opt) {
    const double s = radial_moment(ff, w, 0, opt).value * 4.0 * kPi / kTwoPi3;
    return s / 2.0;
}

double counterterm_z1(const FourVelocity& u, const FormFactor& ff, const CutoffWindow& w,
                      const QuadOptions& opt) {
    return shell_integral(u, ff, w, opt) / 3.0;
}

double counterterm_z2(const FourVelocity& u, const FormFactor& ff, const CutoffWindow& w,
                      const QuadOptions& opt) {
    return shell_integral(u, ff, w, opt) / 2.0;
}

double b_ir(const FourVelocity& u, const FormFactor& ff, const CutoffWindow& w,
            const QuadOptions& opt) {
    return gamma_cross(u, u, ff, w, opt);
}

double gamma_cross(const FourVelocity& a, const FourVelocity& b, const FormFactor& ff,
                   const CutoffWindow& w, const QuadOptions& opt) {
    const double r1 = radial_moment(ff, w, 1, opt).value;
    const Vec3 av = a.spatial(), bv = b.spatial();
    const bool axi = collinear(av, bv);
    const PolarFrame fr = av.norm() >= bv.norm() ? frame_for(av, bv) : frame_for(bv, av);
    const auto ang = sphere_integral(
        [&](const Vec3& kh) { return 1.0 / ((1.0 - av.dot(kh)) * (1.0 - bv.dot(kh))); }, fr, axi,
        opt);
    return -mdot(a.four(), b.four()) * r1 * ang.value / (2.0 * kTwoPi3);
}

CorrectionExponent m_exponent(const Kinematics& kin, Gauge gauge, const FormFactor& ff,
                              const CutoffWindow& w, const QuadOptions& opt) {
    CorrectionExponent out;
    out.model = kin.model();
    out.gauge = gauge;
    out.lambda = w.lambda();
    out.Lambda = w.Lambda();

    const auto r1 = radial_moment(ff, w, 1, opt);
    const Vec4 vin = kin.leg_vector(Leg::in), vout = kin.leg_vector(Leg::out);
    const Vec3 sin = spatial(vin), sout = spatial(vout);
    const bool axi = collinear(sin, sout);
    const PolarFrame fr = frame_for(sout, sin);
    const double norm = 1.0 / (2.0 * kTwoPi3);  // int dmu = int dk k dOmega / (2 (2pi)^3)

    auto dhat = [&](Leg l, const Vec3& kh) { return kin.reduced_denominator(l, kh); };

    auto pair = [&](Leg la, Leg lb) {
        const Vec4 va = kin.leg_vector(la), vb = kin.leg_vector(lb);
        // a single leg is axisymmetric about its own velocity
        const bool self = la == lb;
        const PolarFrame fr = self ? frame_for(spatial(va), spatial(va)) : frame_for(sout, sin);
        const bool axi = self || collinear(sin, sout);
        if (gauge == Gauge::fgb) {
            const double vv = mdot(va, vb);
            return sphere_integral(
                [&](const Vec3& kh) { return -vv / (dhat(la, kh) * dhat(lb, kh)); }, fr, axi, opt);
        }
        const Vec3 sa = spatial(va), sb = spatial(vb);
        return sphere_integral(
            [&](const Vec3& kh) {
                const Vec3 pa = sa - kh * kh.dot(sa), pb = sb - kh * kh.dot(sb);
                return pa.dot(pb) / (dhat(la, kh) * dhat(lb, kh));
            },
            fr, axi, opt);
    };
    out.gamma_cross = r1.value * pair(Leg::out, Leg::in).value * norm;
    out.b_ir_in = r1.value * pair(Leg::in, Leg::in).value * norm;
    out.b_ir_out = r1.value * pair(Leg::out, Leg::out).value * norm;

    auto what = [&](const Vec3& kh) -> Vec4 {
        return vout / dhat(Leg::out, kh) - vin / dhat(Leg::in, kh);
    };
    QuadResult<double> ang;
    if (gauge == Gauge::fgb) {
        ang = sphere_integral(
            [&](const Vec3& kh) {
                const Vec4 v = what(kh);
                return mdot(v, v);
            },
            fr, axi, opt);
    } else {
        ang = sphere_integral(
            [&](const Vec3& kh) {
                const Vec4 v = what(kh);
                const Vec3 s = spatial(v);
                return -(s - kh * kh.dot(s)).squaredNorm();
            },
            fr, axi, opt);
    }
    const double e2 = kin.charge() * kin.charge();
    const double m = 0.5 * r1.value * ang.value * norm;
    out.total = cplx(e2 * m, 0.0);
    out.error = e2 * 0.5 * norm * (std::abs(r1.value) * ang.error + std::abs(ang.value) * r1.error);
    return out;
}

cplx k0_residue_integral(double a, double K, double eps) {
    const cplx ae(a, eps);
    return 1.0 / (2.0 * eps * (ae * ae - K * K)) - cplx(0.0, 1.0) / (2.0 * K * ((K + a) * (K + a) + eps * eps));
}

namespace {

// int d3k F(K, c) with c measured from u, over the window.
template <class F>
cplx axisymmetric_volume(F&& f, double c_lo, const FormFactor& ff, const CutoffWindow& w,
                         const QuadOptions& opt) {
    const auto cuts = cuts_with_breakpoints(w.lambda(), w.Lambda(), ff.breakpoints());
    QuadOptions inner = opt;
    inner.abs_tol = opt.abs_tol / (w.Lambda() - w.lambda()) / (w.Lambda() * w.Lambda());
    auto r = integrate(
        [&](double K) {
            auto s = integrate([&](double c) { return f(K, c); }, c_lo, 1.0, inner);
            return 2.0 * kPi * K * K * s.value;
        },
        cuts, opt);
    return r.value;
}

}  // namespace

cplx unren_halfline_exponent(const FourVelocity& u, double eps, double charge, const FormFactor& ff,
                             const CutoffWindow& w, const QuadOptions& opt) {
    require_eps(eps);
    const double e2u2 = charge * charge * u.square();
    if (e2u2 == 0.0) return {0.0, 0.0};
    const double beta = u.speed();
    const cplx pre(0.0, 0.5 * e2u2 / kTwoPi3);
    auto f = [&](double K, double c) {
        const double r = ff(K);
        return std::conj(pre * r * r * k0_residue_integral(K * beta * c, K, eps));
    };
    return axisymmetric_volume(f, -1.0, ff, w, opt);
}

cplx counterterm_phase(const FourVelocity& u, double eps, double charge, const FormFactor& ff,
                       const CutoffWindow& w, const QuadOptions& opt) {
    require_eps(eps);
    const double e2u2 = charge * charge * u.square();
    if (e2u2 == 0.0) return {0.0, 0.0};
    return cplx(0.0, -e2u2 * counterterm_z2(u, ff, w, opt) / (2.0 * eps));
}

cplx renormalized_halfline_exponent(const FourVelocity& u, double eps, double charge,
                                    const FormFactor& ff, const CutoffWindow& w,
                                    const QuadOptions& opt) {
    require_eps(eps);
    const double e2u2 = charge * charge * u.square();
    if (e2u2 == 0.0) return {0.0, 0.0};
    const double beta = u.speed();
    const cplx pre(0.0, 0.5 * e2u2 / kTwoPi3);
    const cplx ct(0.0, -e2u2 / (4.0 * eps * kTwoPi3));
    auto one = [&](double K, double c) {
        const double a = K * beta * c;
        return std::conj(pre * k0_residue_integral(a, K, eps)) + ct / (K * (K - a));
    };
    auto f = [&](double K, double c) {
        const double r = ff(K);
        return r * r * (one(K, c) + one(K, -c));
    };
    return axisymmetric_volume(f, 0.0, ff, w, opt);
}

}  // namespace irqed
