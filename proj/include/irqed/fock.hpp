#pragma once

#include "irqed/core.hpp"
#include "irqed/gauge.hpp"

#include <Eigen/Sparse>

#include <vector>

namespace irqed {

using SpMat = Eigen::SparseMatrix<cplx>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using GridValues = std::vector<CVec4>;

struct Channel {
    Vec4 dir;     // FGB: Krein-orthonormal four-vector; Coulomb: (0, e) with e transverse
    double sign;  // commutator sign [a, a*] = sign (temporal FGB channel: -1)
};

class ModeGrid {
public:
    // Full frames: FGB (1,0,0,0) and the three spatial axes, Coulomb the two
    // polarization vectors.
    static ModeGrid standard(Gauge space, std::vector<Vec3> nodes, std::vector<double> weights);
    // Per node only the directions spanned by the given functions: the
    // temporal axis and the spatial span (FGB), the transverse span (Coulomb).
    static ModeGrid spanning(Gauge space, std::vector<Vec3> nodes, std::vector<double> weights,
                             const std::vector<GridValues>& functions);

    Gauge space() const { return space_; }
    const std::vector<Vec3>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }
    std::size_t modes() const { return mode_node_.size(); }
    std::size_t node_of(std::size_t m) const { return mode_node_[m]; }
    const Channel& channel(std::size_t m) const { return mode_channel_[m]; }
    // sqrt(w) (e.f), Minkowski for FGB, Euclidean spatial for Coulomb.
    cplx amplitude(std::size_t m, const CVec4& f) const;

private:
    void add(std::size_t node, const Channel& c);
    Gauge space_ = Gauge::fgb;
    std::vector<Vec3> nodes_;
    std::vector<double> weights_;
    std::vector<std::size_t> mode_node_;
    std::vector<Channel> mode_channel_;
};

class TruncatedFockSpace {
public:
    // cap is the largest occupation per mode; the basis has (cap+1)^modes states.
    TruncatedFockSpace(ModeGrid grid, int cap, std::size_t budget = 5000);

    const ModeGrid& grid() const { return grid_; }
    int cap() const { return cap_; }
    std::size_t dim() const { return dim_; }
    std::size_t modes() const { return grid_.modes(); }
    int occupation(std::size_t state, std::size_t mode) const;
    bool below(std::size_t state, int limit) const;

    CVector amplitudes(const GridValues& f) const;
    const SpMat& ladder(std::size_t m) const { return ladder_[m]; }
    SpMat annihilator(const GridValues& f) const;  // a(conj f)
    SpMat creator(const GridValues& f) const;      // a*(f)
    // [a(conj g), a*(f)]
    cplx pair(const GridValues& g, const GridValues& f) const;
    // Product entering the Weyl relations: -pair, i.e. sum w conj(g).f for FGB.
    cplx weyl_product(const GridValues& g, const GridValues& f) const { return -pair(g, f); }

    const Eigen::VectorXd& metric() const { return eta_; }
    CVector vacuum() const;
    cplx inner(const CVector& x, const CVector& y) const;
    CMatrix krein_adjoint(const CMatrix& m) const;
    SpMat number_operator() const;
    SpMat identity() const;

private:
    ModeGrid grid_;
    int cap_;
    std::size_t dim_;
    std::vector<std::size_t> stride_;
    std::vector<SpMat> ladder_;
    Eigen::VectorXd eta_;
};

// exp(A) v by scaled Taylor steps.
CVector expm_action(const SpMat& a, const CVector& v);
// Dense exponential for small spaces.
CMatrix expm_dense(const SpMat& a);

struct TruncatedValue {
    cplx value;
    double truncation_estimate = 0.0;
};

// exp(sum |alpha|^2) * sum of Poisson tails beyond the cap, alpha = e * amplitude.
double truncation_estimate(const TruncatedFockSpace& s, const GridValues& f, double e, int extra = 0);

// ie [a*(F) + a(conj F)]
SpMat displacement_generator(const TruncatedFockSpace& s, const GridValues& f, double e);

// <Psi0, exp(ie[a*(F) + a(conj F)]) Psi0>
TruncatedValue displacement_vacuum_expectation(const TruncatedFockSpace& s, const GridValues& f,
                                               double e, double tol = 1e-8);
// exp(-(e^2/2) [a(conj F), a*(F)])
cplx displacement_closed_form(const TruncatedFockSpace& s, const GridValues& f, double e);

// W(g,h) = exp(-(i/sqrt 2)[a*(n) + a(conj n)]), n = g + ih, g and h real.
CMatrix weyl_operator(const TruncatedFockSpace& s, const GridValues& g, const GridValues& h);

// max |exp(A+B) - exp(A) exp(B) exp(-[A,B]/2)| over matrix elements between
// states with every occupation <= block, A = ie a*(f), B = ie a(conj g).
// block < 0 selects cap - 2.
double bch_check(const TruncatedFockSpace& s, const GridValues& f, const GridValues& g, double e,
                 int block = -1);

// <a*(g1)..a*(gn) Psi0, exp(ie[a*(F) + a(conj F)]) Psi0>
TruncatedValue emission_matrix_element(const TruncatedFockSpace& s,
                                       const std::vector<GridValues>& photons, const GridValues& f,
                                       double e, double tol = 1e-8);

// max |[a_m, a*_n] - sign_m delta_mn| on states with every occupation < cap.
double ccr_deviation(const TruncatedFockSpace& s);

}  // namespace irqed
