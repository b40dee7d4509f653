// Reference values computed without the library's quadrature engine.
#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

// Gauss-Legendre nodes by Newton iteration, kept separate from the library.
struct Rule {
    std::vector<double> x, w;
};

inline Rule legendre(int n) {
    Rule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
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
        r.x[i] = x;
        r.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

// Composite fixed-order rule on [a, b] with m equal panels.
template <class F>
auto fixed(F&& f, double a, double b, int m = 64, int n = 20) {
    static const Rule r = legendre(20);
    using T = decltype(f(a));
    T s = T(0);
    const double h = (b - a) / m;
    for (int p = 0; p < m; ++p) {
        const double lo = a + p * h, mid = lo + 0.5 * h;
        for (int i = 0; i < n && i < int(r.x.size()); ++i) s += T(0.5 * h * r.w[i]) * f(mid + 0.5 * h * r.x[i]);
    }
    return s;
}

// Radial moments for the sharp window: int dk and int dk / k.
inline double sharp_r0(double lo, double hi) { return hi - lo; }
inline double sharp_r1(double lo, double hi) { return std::log(hi / lo); }

// Gaussian rho = exp(-k^2 / (2 s^2)), so rho^2 = exp(-k^2 / s^2).
inline double gaussian_r0(double s, double lo, double hi) {
    return 0.5 * s * std::sqrt(pi) * (std::erf(hi / s) - std::erf(lo / s));
}
// int exp(-k^2/s^2)/k dk = (E1(lo^2/s^2) - E1(hi^2/s^2)) / 2, E1(x) = -Ei(-x)
inline double gaussian_r1(double s, double lo, double hi) {
    const double a = lo * lo / (s * s), b = hi * hi / (s * s);
    return 0.5 * (std::expint(-b) - std::expint(-a));
}

// int dOmega / (1 - beta cos)
inline double shell_one(double beta) {
    if (beta == 0.0) return 4.0 * pi;
    return 2.0 * pi / beta * std::log((1.0 + beta) / (1.0 - beta));
}

// z = r0 / (6 pi^2)
inline double z(double r0) { return r0 / (6.0 * pi * pi); }
// z1(u) = r0 * shell_one / (3 (2 pi)^3)
inline double z1(double r0, double beta) { return r0 * shell_one(beta) / (3.0 * 8.0 * pi * pi * pi); }
// B_IR does not depend on the velocity: -r1 / (4 pi^2)
inline double b_ir(double r1) { return -r1 / (4.0 * pi * pi); }
// Gamma(rest, u) = -r1 shell_one(beta) / (16 pi^3)
inline double gamma_rest(double r1, double beta) { return -r1 * shell_one(beta) / (16.0 * pi * pi * pi); }

// Dipole exponents with dv = |p_out - p_in| / m.
inline double dipole_fgb(double e, double dv, double r1) { return -e * e * dv * dv * r1 / (8.0 * pi * pi); }
inline double dipole_coulomb(double e, double dv, double r1) { return -e * e * dv * dv * r1 / (12.0 * pi * pi); }

// int dk0/(2 pi) g(k0) / (k0^2 - K^2 + i0), g = 1/((k0-a)^2 + eps^2).
// Principal value by folding around each pole, plus the delta terms.
inline cplx k0_integral(double a, double K, double eps) {
    auto g = [&](double x) { return 1.0 / ((x - a) * (x - a) + eps * eps); };
    // 1/(k0^2-K^2) = (1/(2K)) (1/(k0-K) - 1/(k0+K))
    auto pv_pole = [&](double p) {
        // PV int g(x)/(x-p) dx = int_0^inf (g(p+t) - g(p-t))/t dt, t = tan(th)
        return fixed(
            [&](double th) {
                if (th <= 0.0) return 0.0;
                const double t = std::tan(th), c = std::cos(th);
                return (g(p + t) - g(p - t)) / t / (c * c);
            },
            0.0, 0.5 * pi, 400, 20);
    };
    const double pv = (pv_pole(K) - pv_pole(-K)) / (2.0 * K);
    const double delta = -pi * (g(K) + g(-K)) / (2.0 * K);
    return cplx(pv, delta) / (2.0 * pi);
}

// Rest-frame unrenormalized half-line exponent with the k0 integral done
// numerically and the radial integral by fixed panels.
inline cplx unren_rest(double e, double eps, const std::function<double(double)>& rho, double lo,
                       double hi) {
    const cplx pre(0.0, 0.5 * e * e / (8.0 * pi * pi * pi));
    const cplx v = fixed(
        [&](double K) {
            const double r = rho(K);
            return cplx(4.0 * pi * K * K * r * r) * k0_integral(0.0, K, eps);
        },
        lo, hi, 16, 20);
    return std::conj(pre * v);
}

}  // namespace oracle
