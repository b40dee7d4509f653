#pragma once

#include "irqed/core.hpp"
#include "irqed/currents.hpp"

#include <vector>

namespace irqed {

// A photon function sampled on quadrature nodes. FGB values are complex
// four-vectors; Coulomb values are stored as (0, f) with f transverse.
struct PhotonSmearing {
    Gauge space = Gauge::fgb;
    std::vector<Vec3> nodes;
    std::vector<double> weights;
    std::vector<CVec4> values;

    std::size_t size() const { return nodes.size(); }
    void validate() const;
    // Same nodes and weights, new values.
    PhotonSmearing with_values(std::vector<CVec4> v) const;
};

// max_i |kbar . f(k_i)|
double gupta_residual(const PhotonSmearing& f);
bool is_physical(const PhotonSmearing& f, double tol = 0.0);

// f = kbar h on every node.
PhotonSmearing null_smearing(const std::vector<Vec3>& nodes, const std::vector<double>& weights,
                             const std::vector<cplx>& h);

// Spatial part of f - kbar f0 / k0, as a Coulomb smearing. Inputs with a
// Gupta residual above tol * max(|k| |f|) are rejected.
PhotonSmearing t_map(const PhotonSmearing& f, double tol = 1e-12);
std::vector<PhotonSmearing> t_map_state(const std::vector<PhotonSmearing>& photons,
                                        double tol = 1e-12);

// One-photon products: -sum w conj(f).g (FGB), sum w conj(f).g (Coulomb).
cplx smearing_inner(const PhotonSmearing& f, const PhotonSmearing& g);

// <a*(f1)..a*(fn) Psi0, a*(g1)..a*(gn) Psi0>: permanent of the one-photon
// products; zero when the photon numbers differ.
cplx product_state_inner(const std::vector<PhotonSmearing>& f, const std::vector<PhotonSmearing>& g);

struct GaugeFixedPairing {
    cplx full;          // sum w conj(f).j
    cplx gauge_fixed;   // same with j -> (0, P j) + kbar (k.j)/k^2
    cplx longitudinal;  // full - gauge_fixed = sum w conj(f0) (kbar.j)/k
    cplx xi_pairing;    // sum w conj(f0) i Xi/k, Xi the time transform of the divergence
};

// Current taken on shell (k0 = |k|) with s.eps.
GaugeFixedPairing gauge_fixed_pairing(const CurrentSpec& s, const PhotonSmearing& f);

}  // namespace irqed
