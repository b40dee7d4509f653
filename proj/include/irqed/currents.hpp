#pragma once

#include "irqed/core.hpp"

namespace irqed {

struct CurrentSpec {
    Kinematics kin;
    Gauge gauge = Gauge::fgb;
    FormFactor ff;
    CutoffWindow window;
    double eps = 0.0;
};

// (2 pi)^{3/2} sqrt(2k)
double mode_normalization(double k);

// j(k0, k) summed over both legs. Coulomb variants return (0, P j).
CVec4 current_fourier(const CurrentSpec& s, const Vec3& k, double k0);

// Spatial Fourier transform of d_mu j^mu at time t != 0.
cplx current_divergence(const CurrentSpec& s, const Vec3& k, double t);

// Limit t -> +-inf, eps -> 0 of the coherence function of one leg.
// Throws for k outside the window.
CVec4 coherence_asymptotic(const CurrentSpec& s, Leg leg, const Vec3& k);

// Finite (t, eps) coherence function; out leg damps like exp(-eps t),
// in leg like exp(+eps t).
CVec4 coherence_regularized(const CurrentSpec& s, Leg leg, const Vec3& k, double t, double eps);

// d(t) = -int d3k rho^2 / ((2pi)^3 k ((u.k)^2 + eps^2))
//        * [exp(-eps t) sin(u.k t) + (u.k/(2 eps)) (exp(-2 eps t) - 1)]
double phase_exponent_d(const FourVelocity& u, double t, double eps, const FormFactor& ff,
                        const CutoffWindow& w);

}  // namespace irqed
