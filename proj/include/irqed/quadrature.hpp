#pragma once

#include "irqed/core.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <queue>
#include <type_traits>
#include <vector>

namespace irqed {

struct QuadOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_panels = 4000;
    int order = 10;
};

template <class T>
struct QuadResult {
    T value{};
    double error = 0.0;
    int panels = 0;
};

struct GaussLegendre {
    std::vector<double> x, w;  // on [-1, 1]
};

// Cached rule of the given order, thread safe.
const GaussLegendre& gauss_legendre(int n);

// Neumaier-compensated running sum.
template <class T>
class CompensatedSum {
public:
    void add(const T& v) {
        if constexpr (std::is_same_v<T, double>) {
            add_real(s_, c_, v);
        } else {
            double re = s_.real(), cre = c_.real(), im = s_.imag(), cim = c_.imag();
            add_real(re, cre, v.real());
            add_real(im, cim, v.imag());
            s_ = T(re, im);
            c_ = T(cre, cim);
        }
    }
    T value() const { return s_ + c_; }

private:
    static void add_real(double& s, double& c, double v) {
        const double t = s + v;
        if (std::abs(s) >= std::abs(v))
            c += (s - t) + v;
        else
            c += (v - t) + s;
        s = t;
    }
    T s_{}, c_{};
};

namespace detail {

template <class T, class F>
T gl_panel(F& f, double a, double b, const GaussLegendre& g) {
    const double h = 0.5 * (b - a), m = 0.5 * (a + b);
    CompensatedSum<T> s;
    for (std::size_t i = 0; i < g.x.size(); ++i) s.add(T(g.w[i] * f(m + h * g.x[i])));
    return T(h * s.value());
}

template <class T>
struct Panel {
    double a, b;
    T coarse, left, right;
    double err;
};

}  // namespace detail

// Globally adaptive Gauss-Legendre on the panels delimited by `cuts`
// (sorted, at least two entries). Each panel compares its rule against the
// sum of the rule on its two halves and the worst panel is bisected until
// the summed estimate meets max(abs_tol, rel_tol*|I|). Panel values are
// summed in position order so the result does not depend on refinement
// history.
template <class F>
auto integrate(F&& f, const std::vector<double>& cuts, const QuadOptions& opt)
    -> QuadResult<std::decay_t<decltype(f(0.0))>> {
    using T = std::decay_t<decltype(f(0.0))>;
    QuadResult<T> out;
    if (cuts.size() < 2) return out;
    const GaussLegendre& g = gauss_legendre(opt.order);
    std::vector<detail::Panel<T>> panels;
    auto make = [&](double a, double b, std::optional<T> coarse) {
        detail::Panel<T> p;
        p.a = a;
        p.b = b;
        const double m = 0.5 * (a + b);
        p.coarse = coarse ? *coarse : detail::gl_panel<T>(f, a, b, g);
        p.left = detail::gl_panel<T>(f, a, m, g);
        p.right = detail::gl_panel<T>(f, m, b, g);
        p.err = std::abs(p.left + p.right - p.coarse);
        return p;
    };
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        if (cuts[i + 1] > cuts[i]) panels.push_back(make(cuts[i], cuts[i + 1], std::nullopt));

    auto cmp = [&](std::size_t i, std::size_t j) {
        if (panels[i].err != panels[j].err) return panels[i].err < panels[j].err;
        return panels[i].a > panels[j].a;
    };
    std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(cmp)> heap(cmp);
    for (std::size_t i = 0; i < panels.size(); ++i) heap.push(i);

    auto totals = [&](T& value, double& err) {
        std::vector<std::size_t> order(panels.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t i, std::size_t j) { return panels[i].a < panels[j].a; });
        CompensatedSum<T> s;
        CompensatedSum<double> e;
        for (std::size_t i : order) {
            s.add(panels[i].left + panels[i].right);
            e.add(panels[i].err);
        }
        value = s.value();
        err = e.value();
    };

    T value{};
    double err = 0.0;
    totals(value, err);
    while (err > std::max(opt.abs_tol, opt.rel_tol * std::abs(value))) {
        if (int(panels.size()) >= opt.max_panels)
            throw Error(ErrorKind::nonconvergence,
                        "adaptive quadrature did not converge (error " + std::to_string(err) + ")");
        const std::size_t i = heap.top();
        heap.pop();
        const detail::Panel<T> p = panels[i];
        const double m = 0.5 * (p.a + p.b);
        if (!(m > p.a && m < p.b))
            throw Error(ErrorKind::nonconvergence, "adaptive quadrature exhausted precision");
        panels[i] = make(p.a, m, p.left);
        panels.push_back(make(m, p.b, p.right));
        heap.push(i);
        heap.push(panels.size() - 1);
        const auto& l = panels[i];
        const auto& r = panels.back();
        value += (l.left + l.right + r.left + r.right) - (p.left + p.right);
        err += l.err + r.err - p.err;
        // The running totals drift; confirm convergence from a fresh sum.
        if (err <= std::max(opt.abs_tol, opt.rel_tol * std::abs(value))) totals(value, err);
    }
    out.value = value;
    out.error = err;
    out.panels = int(panels.size());
    return out;
}

template <class F>
auto integrate(F&& f, double a, double b, const QuadOptions& opt) {
    return integrate(std::forward<F>(f), std::vector<double>{a, b}, opt);
}

// Cuts for [lo, hi] split at any breakpoints lying strictly inside.
std::vector<double> cuts_with_breakpoints(double lo, double hi, const std::vector<double>& bp);

// Orthonormal frame whose third axis is a chosen direction.
struct PolarFrame {
    Vec3 ex, ey, ez;
    static PolarFrame aligned(const Vec3& axis);
    Vec3 direction(double c, double phi) const;
};

// Integral over the unit sphere of g(khat), with khat parametrized by
// (cos theta, phi) in `frame`. If `axisymmetric`, g is assumed independent
// of phi and the azimuth is done analytically.
template <class G>
auto sphere_integral(G&& g, const PolarFrame& frame, bool axisymmetric, const QuadOptions& opt)
    -> QuadResult<std::decay_t<decltype(g(Vec3()))>> {
    using T = std::decay_t<decltype(g(Vec3()))>;
    QuadResult<T> out;
    const double two_pi = 2.0 * M_PI;
    if (axisymmetric) {
        auto r = integrate([&](double c) { return g(frame.direction(c, 0.0)); }, -1.0, 1.0, opt);
        out.value = two_pi * r.value;
        out.error = two_pi * r.error;
        out.panels = r.panels;
        return out;
    }
    QuadOptions inner = opt;
    inner.abs_tol = opt.abs_tol / 4.0;
    double inner_err = 0.0;
    auto r = integrate(
        [&](double c) {
            auto s = integrate([&](double phi) { return g(frame.direction(c, phi)); }, 0.0, two_pi,
                               inner);
            inner_err = std::max(inner_err, s.error);
            return s.value;
        },
        -1.0, 1.0, opt);
    out.value = r.value;
    out.error = r.error + 2.0 * inner_err;
    out.panels = r.panels;
    return out;
}

// Radial moment int rho(k)^2 k^{-p} dk over the window.
QuadResult<double> radial_moment(const FormFactor& ff, const CutoffWindow& w, int p,
                                 const QuadOptions& opt = {});

// Counterterms and infrared integrals (all without the charge).
double counterterm_z(const FormFactor& ff, const CutoffWindow& w, const QuadOptions& opt = {});
double counterterm_z_tilde(const FormFactor& ff, const CutoffWindow& w, const QuadOptions& opt = {});
double counterterm_z1(const FourVelocity& u, const FormFactor& ff, const CutoffWindow& w,
                      const QuadOptions& opt = {});
double counterterm_z2(const FourVelocity& u, const FormFactor& ff, const CutoffWindow& w,
                      const QuadOptions& opt = {});
double b_ir(const FourVelocity& u, const FormFactor& ff, const CutoffWindow& w,
            const QuadOptions& opt = {});
double gamma_cross(const FourVelocity& a, const FourVelocity& b, const FormFactor& ff,
                   const CutoffWindow& w, const QuadOptions& opt = {});

struct CorrectionExponent {
    cplx total;  // e^2 M
    double gamma_cross = 0.0;
    double b_ir_in = 0.0;
    double b_ir_out = 0.0;
    std::optional<cplx> counterterm_phase;
    double error = 0.0;  // estimated absolute error of total
    Model model = Model::bn;
    Gauge gauge = Gauge::fgb;
    double lambda = 0.0, Lambda = 0.0;
};

// M = (1/2) int dmu rho^2 w.w (FGB) or -(1/2) int dmu rho^2 |P w|^2 (Coulomb),
// w = sum_r eta_r V_r / d_r; breakdown Gamma(out,in), B(in), B(out).
CorrectionExponent m_exponent(const Kinematics& kin, Gauge gauge, const FormFactor& ff,
                              const CutoffWindow& w, const QuadOptions& opt = {});

// Exponent of the unrenormalized adjoint outgoing Moller operator at
// adiabatic parameter eps, including the charge.
cplx unren_halfline_exponent(const FourVelocity& u, double eps, double charge, const FormFactor& ff,
                             const CutoffWindow& w, const QuadOptions& opt = {});
// -i e^2 u^2 z2(u) / (2 eps).
cplx counterterm_phase(const FourVelocity& u, double eps, double charge, const FormFactor& ff,
                       const CutoffWindow& w, const QuadOptions& opt = {});
// unren + counterterm, integrated as one integrand.
cplx renormalized_halfline_exponent(const FourVelocity& u, double eps, double charge,
                                    const FormFactor& ff, const CutoffWindow& w,
                                    const QuadOptions& opt = {});

// Residue result of int dk0/(2pi) 1/(((k0-a)^2+eps^2)(k0^2-K^2+i0)).
cplx k0_residue_integral(double a, double K, double eps);

}  // namespace irqed
