#pragma once

#include "irqed/core.hpp"
#include "irqed/fock.hpp"
#include "irqed/gauge.hpp"
#include "irqed/quadrature.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace irqed {

// exp(e^2 M) at eps = 0.
cplx vacuum_amplitude(const Kinematics& kin, Gauge gauge, const FormFactor& ff,
                      const CutoffWindow& w, const QuadOptions& opt = {});

// F = f_in - f_out sampled on the given nodes (asymptotic coherence functions).
PhotonSmearing displacement_smearing(const Kinematics& kin, Gauge gauge, const FormFactor& ff,
                                     const CutoffWindow& w, const std::vector<Vec3>& nodes,
                                     const std::vector<double>& weights);

// M on a grid: (1/2) sum w conj(F).F (FGB), -(1/2) sum w |F|^2 (Coulomb).
double m_exponent_grid(const PhotonSmearing& F);

// One-photon factor: FGB -sum w e rho sum_r eta_r (u_r . conj f)/(N (u_r.k)),
// Coulomb +sum w e rho sum_r eta_r (u_r . conj f)/(N (u_r.k)) with spatial dot.
cplx emission_factor(const Kinematics& kin, Gauge gauge, const FormFactor& ff,
                     const PhotonSmearing& photon);

struct ProductGrid {
    std::vector<Vec3> nodes;
    std::vector<double> weights;
};
// Gauss-Legendre in |k| and cos(theta), uniform in phi, over the window.
ProductGrid product_grid(const CutoffWindow& w, int n_radial, int n_polar, int n_azimuth);
PhotonSmearing sample_photon(Gauge space, const ProductGrid& g,
                             const std::function<CVec4(const Vec3&)>& f);

struct OracleValue {
    cplx value;           // Fock matrix element
    cplx grid_product;    // exp(e^2 M_grid) * prod of grid factors
    double truncation_estimate = 0.0;
    int cap = 0;
    std::size_t modes = 0, dim = 0;
};

struct AmplitudeReport {
    Model model = Model::bn;
    Gauge gauge = Gauge::fgb;
    double lambda = 0.0, Lambda = 0.0;
    cplx vacuum_amplitude;
    CorrectionExponent exponent;
    std::vector<cplx> emission_factors;
    cplx total;
    std::optional<OracleValue> oracle;
};

// Oracle runs only when oracle_cap > 0; it needs every photon on the same
// nodes and uses those nodes for F.
AmplitudeReport full_amplitude(const Kinematics& kin, Gauge gauge, const FormFactor& ff,
                               const CutoffWindow& w, const std::vector<PhotonSmearing>& photons,
                               const QuadOptions& opt = {}, int oracle_cap = 0);

// Brute-force Fock value of the amplitude on the photons' common grid.
OracleValue emission_oracle(const Kinematics& kin, Gauge gauge, const FormFactor& ff,
                            const CutoffWindow& w, const std::vector<PhotonSmearing>& photons,
                            int cap, double tol = 1e-8);

struct GaugeReport {
    cplx fgb, coulomb;  // e^2 M in each gauge
    double fgb_error = 0.0, coulomb_error = 0.0;
    double log_ratio = 0.0;  // fgb / coulomb
    bool undefined = false;  // both exponents vanish
    double conservation_residual = 0.0;  // max |kbar . j| on a fixed sample grid
};

GaugeReport gauge_compare(const Kinematics& kin, const FormFactor& ff, const CutoffWindow& w,
                          const QuadOptions& opt = {});

// max |kbar . j(k)| over a deterministic on-shell sample of the window.
double conservation_residual(const Kinematics& kin, const FormFactor& ff, const CutoffWindow& w);

struct LedgerRow {
    double eps;
    cplx unren, counterterm, sum;
};

struct RenormalizationLedger {
    std::vector<LedgerRow> rows;
    cplx extrapolated;  // real part in eps^2, imaginary part in eps
    double target = 0.0;  // -e^2 B_IR / 2
};

RenormalizationLedger renormalization_ledger(const FourVelocity& u, double charge,
                                             const std::vector<double>& eps_ladder,
                                             const FormFactor& ff, const CutoffWindow& w,
                                             const QuadOptions& opt = {});

// Polynomial through (x_i, y_i) evaluated at 0.
double neville_at_zero(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace irqed
