#include "irqed/fock.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>

namespace irqed {

namespace {

const cplx I(0.0, 1.0);

void check_grid(const std::vector<Vec3>& nodes, const std::vector<double>& weights) {
    if (nodes.size() != weights.size())
        throw Error(ErrorKind::invalid_argument, "grid nodes and weights differ in length");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (!(nodes[i].norm() > 0.0) || !nodes[i].allFinite())
            throw Error(ErrorKind::invalid_argument, "grid node must be finite and nonzero");
        if (!(weights[i] > 0.0) || !std::isfinite(weights[i]))
            throw Error(ErrorKind::invalid_argument, "grid weights must be positive");
        for (std::size_t j = 0; j < i; ++j)
            if (nodes[i] == nodes[j]) throw Error(ErrorKind::invalid_argument, "grid nodes must be distinct");
    }
}

// Gram-Schmidt of the real and imaginary parts, relative cutoff.
std::vector<Vec3> real_span(const std::vector<CVec3>& vs) {
    std::vector<Vec3> cand;
    double scale = 0.0;
    for (const auto& v : vs) {
        cand.push_back(v.real());
        cand.push_back(v.imag());
        scale = std::max({scale, v.real().norm(), v.imag().norm()});
    }
    std::vector<Vec3> basis;
    if (scale == 0.0) return basis;
    for (Vec3 c : cand) {
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : basis) c -= b * b.dot(c);
        if (c.norm() > 1e-10 * scale) basis.push_back(c.normalized());
        if (basis.size() == 3) break;
    }
    return basis;
}

double poisson_tail(double mu, int n) {
    // P(X > n) for X ~ Poisson(mu), summed from the tail side
    if (mu == 0.0) return 0.0;
    if (n < 0) return 1.0;
    double term = std::exp(-mu);
    for (int k = 1; k <= n + 1; ++k) term *= mu / k;
    double s = 0.0;
    for (int k = n + 1; k < n + 200; ++k) {
        s += term;
        term *= mu / (k + 1);
        if (term < 1e-300 || term < 1e-18 * s) break;
    }
    return s;
}

}  // namespace

void ModeGrid::add(std::size_t node, const Channel& c) {
    mode_node_.push_back(node);
    mode_channel_.push_back(c);
}

ModeGrid ModeGrid::standard(Gauge space, std::vector<Vec3> nodes, std::vector<double> weights) {
    check_grid(nodes, weights);
    ModeGrid g;
    g.space_ = space;
    g.nodes_ = std::move(nodes);
    g.weights_ = std::move(weights);
    for (std::size_t i = 0; i < g.nodes_.size(); ++i) {
        if (space == Gauge::fgb) {
            g.add(i, {Vec4(1, 0, 0, 0), -1.0});
            for (int a = 0; a < 3; ++a) g.add(i, {Vec4::Unit(a + 1), 1.0});
        } else {
            for (const auto& e : polarization_frame(g.nodes_[i])) g.add(i, {Vec4(0, e[0], e[1], e[2]), 1.0});
        }
    }
    return g;
}

ModeGrid ModeGrid::spanning(Gauge space, std::vector<Vec3> nodes, std::vector<double> weights,
                            const std::vector<GridValues>& functions) {
    check_grid(nodes, weights);
    for (const auto& f : functions)
        if (f.size() != nodes.size()) throw Error(ErrorKind::invalid_argument, "function not on the grid");
    ModeGrid g;
    g.space_ = space;
    g.nodes_ = std::move(nodes);
    g.weights_ = std::move(weights);
    for (std::size_t i = 0; i < g.nodes_.size(); ++i) {
        std::vector<CVec3> sp;
        bool temporal = false;
        for (const auto& f : functions) {
            CVec3 v(f[i][1], f[i][2], f[i][3]);
            if (space == Gauge::coulomb) v = transverse_project(g.nodes_[i], v);
            sp.push_back(v);
            if (f[i][0] != 0.0) temporal = true;
        }
        if (space == Gauge::fgb && temporal) g.add(i, {Vec4(1, 0, 0, 0), -1.0});
        for (const auto& e : real_span(sp)) g.add(i, {Vec4(0, e[0], e[1], e[2]), 1.0});
    }
    return g;
}

cplx ModeGrid::amplitude(std::size_t m, const CVec4& f) const {
    const Channel& c = mode_channel_[m];
    const double sw = std::sqrt(weights_[mode_node_[m]]);
    if (space_ == Gauge::fgb) return sw * (c.dir[0] * f[0] - c.dir[1] * f[1] - c.dir[2] * f[2] - c.dir[3] * f[3]);
    return sw * (c.dir[1] * f[1] + c.dir[2] * f[2] + c.dir[3] * f[3]);
}

TruncatedFockSpace::TruncatedFockSpace(ModeGrid grid, int cap, std::size_t budget)
    : grid_(std::move(grid)), cap_(cap) {
    if (cap < 1) throw Error(ErrorKind::invalid_argument, "occupation cap must be >= 1");
    const std::size_t m = grid_.modes();
    dim_ = 1;
    stride_.assign(m, 0);
    for (std::size_t i = m; i-- > 0;) {
        stride_[i] = dim_;
        if (dim_ > budget / std::size_t(cap + 1) + 1)
            throw Error(ErrorKind::budget, "Fock basis exceeds the dense oracle budget");
        dim_ *= std::size_t(cap + 1);
    }
    if (dim_ > budget) throw Error(ErrorKind::budget, "Fock basis exceeds the dense oracle budget");

    eta_.setOnes(dim_);
    for (std::size_t st = 0; st < dim_; ++st)
        for (std::size_t k = 0; k < m; ++k)
            if (grid_.channel(k).sign < 0.0 && occupation(st, k) % 2 == 1) eta_[st] = -eta_[st];

    for (std::size_t k = 0; k < m; ++k) {
        std::vector<Eigen::Triplet<cplx>> t;
        for (std::size_t st = 0; st < dim_; ++st) {
            const int n = occupation(st, k);
            if (n > 0) t.emplace_back(st - stride_[k], st, std::sqrt(double(n)));
        }
        SpMat b(dim_, dim_);
        b.setFromTriplets(t.begin(), t.end());
        ladder_.push_back(std::move(b));
    }
}

int TruncatedFockSpace::occupation(std::size_t state, std::size_t mode) const {
    return int((state / stride_[mode]) % std::size_t(cap_ + 1));
}

bool TruncatedFockSpace::below(std::size_t state, int limit) const {
    for (std::size_t k = 0; k < modes(); ++k)
        if (occupation(state, k) > limit) return false;
    return true;
}

CVector TruncatedFockSpace::amplitudes(const GridValues& f) const {
    if (f.size() != grid_.nodes().size()) throw Error(ErrorKind::invalid_argument, "function not on the grid");
    CVector a(modes());
    for (std::size_t k = 0; k < modes(); ++k) a[k] = grid_.amplitude(k, f[grid_.node_of(k)]);
    return a;
}

SpMat TruncatedFockSpace::annihilator(const GridValues& f) const {
    const CVector a = amplitudes(f);
    SpMat out(dim_, dim_);
    for (std::size_t k = 0; k < modes(); ++k)
        if (a[k] != 0.0) out += std::conj(a[k]) * ladder_[k];
    return out;
}

SpMat TruncatedFockSpace::creator(const GridValues& f) const {
    const CVector a = amplitudes(f);
    SpMat out(dim_, dim_);
    for (std::size_t k = 0; k < modes(); ++k)
        if (a[k] != 0.0) out += (a[k] * grid_.channel(k).sign) * SpMat(ladder_[k].adjoint());
    return out;
}

cplx TruncatedFockSpace::pair(const GridValues& g, const GridValues& f) const {
    const CVector ag = amplitudes(g), af = amplitudes(f);
    cplx s = 0.0;
    for (std::size_t k = 0; k < modes(); ++k) s += std::conj(ag[k]) * af[k] * grid_.channel(k).sign;
    return s;
}

CVector TruncatedFockSpace::vacuum() const {
    CVector v = CVector::Zero(dim_);
    v[0] = 1.0;
    return v;
}

cplx TruncatedFockSpace::inner(const CVector& x, const CVector& y) const {
    return x.dot(eta_.cast<cplx>().cwiseProduct(y));
}

CMatrix TruncatedFockSpace::krein_adjoint(const CMatrix& m) const {
    const Eigen::VectorXcd e = eta_.cast<cplx>();
    return e.asDiagonal() * m.adjoint() * e.asDiagonal();
}

SpMat TruncatedFockSpace::number_operator() const {
    SpMat n(dim_, dim_);
    for (const auto& b : ladder_) n += SpMat(b.adjoint()) * b;
    return n;
}

SpMat TruncatedFockSpace::identity() const {
    SpMat id(dim_, dim_);
    id.setIdentity();
    return id;
}

CVector expm_action(const SpMat& a, const CVector& v) {
    double norm1 = 0.0;
    for (int c = 0; c < a.outerSize(); ++c) {
        double s = 0.0;
        for (SpMat::InnerIterator it(a, c); it; ++it) s += std::abs(it.value());
        norm1 = std::max(norm1, s);
    }
    const int steps = std::max(1, int(std::ceil(norm1)));
    CVector x = v;
    for (int st = 0; st < steps; ++st) {
        CVector term = x, sum = x;
        int small = 0;
        for (int j = 1; j < 200; ++j) {
            term = (a * term) / (double(steps) * j);
            sum += term;
            const double tn = term.cwiseAbs().maxCoeff(), sn = sum.cwiseAbs().maxCoeff();
            small = tn <= 1e-18 * sn ? small + 1 : 0;
            if (small == 2 || tn == 0.0) break;
        }
        x = sum;
    }
    return x;
}

CMatrix expm_dense(const SpMat& a) {
    if (a.rows() > 2000) throw Error(ErrorKind::budget, "dense exponential limited to 2000 states");
    return CMatrix(a).exp();
}

double truncation_estimate(const TruncatedFockSpace& s, const GridValues& f, double e, int extra) {
    const CVector a = s.amplitudes(f);
    double total = 0.0, tail = 0.0;
    for (std::size_t k = 0; k < s.modes(); ++k) {
        const double mu = e * e * std::norm(a[k]);
        total += mu;
        tail += poisson_tail(mu, s.cap() - extra);
    }
    return std::exp(total) * tail;
}

SpMat displacement_generator(const TruncatedFockSpace& s, const GridValues& f, double e) {
    return (I * e) * SpMat(s.creator(f) + s.annihilator(f));
}

TruncatedValue displacement_vacuum_expectation(const TruncatedFockSpace& s, const GridValues& f,
                                               double e, double tol) {
    TruncatedValue out;
    out.truncation_estimate = truncation_estimate(s, f, e);
    if (out.truncation_estimate > tol)
        throw Error(ErrorKind::truncation, "truncation estimate exceeds tolerance");
    const CVector v = expm_action(displacement_generator(s, f, e), s.vacuum());
    out.value = s.inner(s.vacuum(), v);
    return out;
}

cplx displacement_closed_form(const TruncatedFockSpace& s, const GridValues& f, double e) {
    return std::exp(-0.5 * e * e * s.pair(f, f));
}

CMatrix weyl_operator(const TruncatedFockSpace& s, const GridValues& g, const GridValues& h) {
    if (g.size() != h.size()) throw Error(ErrorKind::invalid_argument, "g and h on different grids");
    GridValues n(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g[i].imag().cwiseAbs().maxCoeff() != 0.0 || h[i].imag().cwiseAbs().maxCoeff() != 0.0)
            throw Error(ErrorKind::invalid_argument, "Weyl operator needs real g and h");
        n[i] = g[i] + I * h[i];
    }
    const SpMat x = (-I / std::sqrt(2.0)) * SpMat(s.creator(n) + s.annihilator(n));
    return expm_dense(x);
}

double bch_check(const TruncatedFockSpace& s, const GridValues& f, const GridValues& g, double e,
                 int block) {
    if (block < 0) block = s.cap() - 2;
    const SpMat a = (I * e) * s.creator(f);
    const SpMat b = (I * e) * s.annihilator(g);
    const cplx comm = e * e * s.pair(g, f);  // [A, B]
    const CMatrix lhs = expm_dense(SpMat(a + b));
    const CMatrix rhs = expm_dense(a) * expm_dense(b) * std::exp(-0.5 * comm);
    double dev = 0.0;
    for (std::size_t c = 0; c < s.dim(); ++c) {
        if (!s.below(c, block)) continue;
        for (std::size_t r = 0; r < s.dim(); ++r)
            if (s.below(r, block)) dev = std::max(dev, std::abs(lhs(r, c) - rhs(r, c)));
    }
    return dev;
}

TruncatedValue emission_matrix_element(const TruncatedFockSpace& s,
                                       const std::vector<GridValues>& photons, const GridValues& f,
                                       double e, double tol) {
    TruncatedValue out;
    const int n = int(photons.size());
    out.truncation_estimate = truncation_estimate(s, f, e, n);
    if (n > s.cap()) out.truncation_estimate = std::max(out.truncation_estimate, 1.0);
    if (out.truncation_estimate > tol)
        throw Error(ErrorKind::truncation, "truncation estimate exceeds tolerance");
    CVector psi = s.vacuum();
    for (const auto& g : photons) psi = s.creator(g) * psi;
    const CVector v = expm_action(displacement_generator(s, f, e), s.vacuum());
    out.value = s.inner(psi, v);
    return out;
}

double ccr_deviation(const TruncatedFockSpace& s) {
    double dev = 0.0;
    for (std::size_t m = 0; m < s.modes(); ++m) {
        const SpMat& am = s.ladder(m);
        for (std::size_t k = 0; k < s.modes(); ++k) {
            const SpMat ak = s.grid().channel(k).sign * SpMat(s.ladder(k).adjoint());
            SpMat c = am * ak - ak * am;
            if (m == k) c -= s.grid().channel(m).sign * s.identity();
            for (int col = 0; col < c.outerSize(); ++col) {
                if (!s.below(std::size_t(col), s.cap() - 1)) continue;
                for (SpMat::InnerIterator it(c, col); it; ++it)
                    dev = std::max(dev, std::abs(it.value()));
            }
        }
    }
    return dev;
}

}  // namespace irqed
