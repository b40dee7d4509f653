#include "irqed/gauge.hpp"

#include <algorithm>
#include <numeric>

namespace irqed {

namespace {

CVec3 spatial(const CVec4& v) { return {v[1], v[2], v[3]}; }

cplx kbar_dot(const Vec3& k, const CVec4& f) { return k.norm() * f[0] - k.cast<cplx>().dot(spatial(f)); }

}  // namespace

void PhotonSmearing::validate() const {
    if (weights.size() != nodes.size() || values.size() != nodes.size())
        throw Error(ErrorKind::invalid_argument, "smearing nodes, weights and values differ in length");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (!(nodes[i].norm() > 0.0) || !nodes[i].allFinite())
            throw Error(ErrorKind::invalid_argument, "smearing node must be finite and nonzero");
        if (!(weights[i] > 0.0) || !std::isfinite(weights[i]))
            throw Error(ErrorKind::invalid_argument, "smearing weights must be positive");
        if (!values[i].allFinite()) throw Error(ErrorKind::invalid_argument, "non-finite smearing value");
    }
}

PhotonSmearing PhotonSmearing::with_values(std::vector<CVec4> v) const {
    PhotonSmearing out{space, nodes, weights, std::move(v)};
    out.validate();
    return out;
}

double gupta_residual(const PhotonSmearing& f) {
    double r = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) r = std::max(r, std::abs(kbar_dot(f.nodes[i], f.values[i])));
    return r;
}

bool is_physical(const PhotonSmearing& f, double tol) { return gupta_residual(f) <= tol; }

PhotonSmearing null_smearing(const std::vector<Vec3>& nodes, const std::vector<double>& weights,
                             const std::vector<cplx>& h) {
    if (h.size() != nodes.size()) throw Error(ErrorKind::invalid_argument, "h has the wrong length");
    PhotonSmearing f{Gauge::fgb, nodes, weights, {}};
    for (std::size_t i = 0; i < nodes.size(); ++i)
        f.values.push_back(on_shell(nodes[i]).cast<cplx>() * h[i]);
    f.validate();
    return f;
}

PhotonSmearing t_map(const PhotonSmearing& f, double tol) {
    if (f.space != Gauge::fgb) throw Error(ErrorKind::invalid_argument, "t_map takes an FGB smearing");
    f.validate();
    double scale = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        scale = std::max(scale, f.nodes[i].norm() * f.values[i].cwiseAbs().maxCoeff());
    if (gupta_residual(f) > tol * scale)
        throw Error(ErrorKind::domain, "smearing violates the subsidiary condition");
    PhotonSmearing out{Gauge::coulomb, f.nodes, f.weights, {}};
    for (std::size_t i = 0; i < f.size(); ++i) {
        const Vec3& k = f.nodes[i];
        const double k0 = k.norm();
        const CVec3 g = spatial(f.values[i]) - k.cast<cplx>() * (f.values[i][0] / k0);
        out.values.emplace_back(0.0, g[0], g[1], g[2]);
    }
    return out;
}

std::vector<PhotonSmearing> t_map_state(const std::vector<PhotonSmearing>& photons, double tol) {
    std::vector<PhotonSmearing> out;
    for (const auto& p : photons) out.push_back(t_map(p, tol));
    return out;
}

cplx smearing_inner(const PhotonSmearing& f, const PhotonSmearing& g) {
    if (f.space != g.space) throw Error(ErrorKind::invalid_argument, "smearings live in different spaces");
    if (f.size() != g.size()) throw Error(ErrorKind::invalid_argument, "smearings live on different grids");
    cplx s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f.space == Gauge::fgb)
            s -= f.weights[i] * mpair(f.values[i], g.values[i]);
        else
            s += f.weights[i] * spatial(f.values[i]).dot(spatial(g.values[i]));
    }
    return s;
}

cplx product_state_inner(const std::vector<PhotonSmearing>& f, const std::vector<PhotonSmearing>& g) {
    if (f.size() != g.size()) return 0.0;
    const std::size_t n = f.size();
    if (n > 8) throw Error(ErrorKind::budget, "too many photons for a permanent");
    std::vector<std::vector<cplx>> m(n, std::vector<cplx>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i][j] = smearing_inner(f[i], g[j]);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    cplx total = 0.0;
    do {
        cplx p = 1.0;
        for (std::size_t i = 0; i < n; ++i) p *= m[i][perm[i]];
        total += p;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

GaugeFixedPairing gauge_fixed_pairing(const CurrentSpec& s, const PhotonSmearing& f) {
    f.validate();
    GaugeFixedPairing out{};
    const cplx I(0.0, 1.0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const Vec3& k = f.nodes[i];
        const double k0 = k.norm();
        const double w = f.weights[i];
        const CVec4 j = current_fourier(s, k, k0);
        const CVec3 js = spatial(j);
        const cplx kj = k.cast<cplx>().dot(js);
        const CVec3 pj = transverse_project(k, js);
        CVec4 jg;
        jg[0] = kj / k0;
        for (int a = 0; a < 3; ++a) jg[a + 1] = pj[a] + k[a] * kj / (k0 * k0);
        out.full += w * mpair(f.values[i], j);
        out.gauge_fixed += w * mpair(f.values[i], jg);
        out.longitudinal += w * std::conj(f.values[i][0]) * kbar_dot(k, j) / k0;

        // time transform of the divergence, legs switched at t = 0
        cplx xi = 0.0;
        if (s.kin.model() == Model::dipole) {
            const double r = s.ff(k0);
            const double vout = k.dot(s.kin.p(Leg::out)) / s.kin.mass();
            const double vin = k.dot(s.kin.p(Leg::in)) / s.kin.mass();
            xi = -r * (vout / (k0 + I * s.eps) - vin / (k0 - I * s.eps));
        }
        out.xi_pairing += w * std::conj(f.values[i][0]) * I * xi / k0;
    }
    return out;
}

}  // namespace irqed
