#include "irqed/smatrix.hpp"

#include "irqed/currents.hpp"

#include <cmath>
#include <limits>

namespace irqed {

namespace {

const cplx I(0.0, 1.0);

CurrentSpec spec_for(const Kinematics& kin, Gauge gauge, const FormFactor& ff, const CutoffWindow& w) {
    return CurrentSpec{kin, gauge, ff, w, 0.0};
}

}  // namespace

cplx vacuum_amplitude(const Kinematics& kin, Gauge gauge, const FormFactor& ff,
                      const CutoffWindow& w, const QuadOptions& opt) {
    return std::exp(m_exponent(kin, gauge, ff, w, opt).total);
}

PhotonSmearing displacement_smearing(const Kinematics& kin, Gauge gauge, const FormFactor& ff,
                                     const CutoffWindow& w, const std::vector<Vec3>& nodes,
                                     const std::vector<double>& weights) {
    const CurrentSpec s = spec_for(kin, gauge, ff, w);
    PhotonSmearing F{gauge, nodes, weights, {}};
    for (const auto& k : nodes)
        F.values.push_back(coherence_asymptotic(s, Leg::in, k) - coherence_asymptotic(s, Leg::out, k));
    F.validate();
    return F;
}

double m_exponent_grid(const PhotonSmearing& F) {
    double m = 0.0;
    for (std::size_t i = 0; i < F.size(); ++i) {
        const CVec4& v = F.values[i];
        if (F.space == Gauge::fgb)
            m += 0.5 * F.weights[i] * mpair(v, v).real();
        else
            m -= 0.5 * F.weights[i] * v.tail<3>().squaredNorm();
    }
    return m;
}

cplx emission_factor(const Kinematics& kin, Gauge gauge, const FormFactor& ff,
                     const PhotonSmearing& photon) {
    if (photon.space != gauge) throw Error(ErrorKind::invalid_argument, "photon and gauge do not match");
    photon.validate();
    const double e = kin.charge();
    cplx s = 0.0;
    for (std::size_t i = 0; i < photon.size(); ++i) {
        const Vec3& k = photon.nodes[i];
        const double kn = k.norm();
        const double r = ff(kn);
        if (r == 0.0) continue;
        const CVec4 fb = photon.values[i].conjugate();
        cplx legs = 0.0;
        for (Leg l : {Leg::in, Leg::out}) {
            const Vec4 v = kin.leg_vector(l);
            const double d = kin.denominator(l, k);
            if (gauge == Gauge::coulomb) {
                const Vec3 pv = transverse_project(k, Vec3(v[1], v[2], v[3]));
                legs += Kinematics::eta(l) * (pv[0] * fb[1] + pv[1] * fb[2] + pv[2] * fb[3]) / d;
            } else if (kin.model() == Model::bn) {
                // u.g/(u.k) = g0/k + u.(g0 k/|k| - g)/(u.k); the first term cancels
                // between the legs and the second vanishes for g along kbar
                const cplx g0k = fb[0] / kn;
                cplx t = 0.0;
                for (int a = 0; a < 3; ++a) t += v[a + 1] * (g0k * k[a] - fb[a + 1]);
                legs += Kinematics::eta(l) * (g0k + t / d);
            } else {
                legs += Kinematics::eta(l) * (v[0] * fb[0] - v[1] * fb[1] - v[2] * fb[2] - v[3] * fb[3]) / d;
            }
        }
        s += photon.weights[i] * e * r * legs / mode_normalization(kn);
    }
    return gauge == Gauge::fgb ? -s : s;
}

ProductGrid product_grid(const CutoffWindow& w, int n_radial, int n_polar, int n_azimuth) {
    if (n_radial < 1 || n_polar < 1 || n_azimuth < 1)
        throw Error(ErrorKind::invalid_argument, "product grid sizes must be >= 1");
    const auto& gr = gauss_legendre(n_radial);
    const auto& gc = gauss_legendre(n_polar);
    const double h = 0.5 * (w.Lambda() - w.lambda()), m = 0.5 * (w.Lambda() + w.lambda());
    ProductGrid g;
    for (int i = 0; i < n_radial; ++i) {
        const double k = m + h * gr.x[i];
        for (int j = 0; j < n_polar; ++j) {
            const double c = gc.x[j], sn = std::sqrt(1.0 - c * c);
            for (int l = 0; l < n_azimuth; ++l) {
                const double phi = 2.0 * M_PI * (l + 0.5) / n_azimuth;
                g.nodes.push_back(k * Vec3(sn * std::cos(phi), sn * std::sin(phi), c));
                g.weights.push_back(h * gr.w[i] * k * k * gc.w[j] * 2.0 * M_PI / n_azimuth);
            }
        }
    }
    return g;
}

PhotonSmearing sample_photon(Gauge space, const ProductGrid& g,
                             const std::function<CVec4(const Vec3&)>& f) {
    PhotonSmearing p{space, g.nodes, g.weights, {}};
    for (const auto& k : g.nodes) p.values.push_back(f(k));
    p.validate();
    return p;
}

OracleValue emission_oracle(const Kinematics& kin, Gauge gauge, const FormFactor& ff,
                            const CutoffWindow& w, const std::vector<PhotonSmearing>& photons,
                            int cap, double tol) {
    std::vector<Vec3> nodes;
    std::vector<double> weights;
    if (!photons.empty()) {
        nodes = photons.front().nodes;
        weights = photons.front().weights;
        for (const auto& p : photons)
            if (p.nodes != nodes || p.weights != weights)
                throw Error(ErrorKind::invalid_argument, "oracle needs every photon on the same grid");
    } else {
        // no photons: a single node still exercises the vacuum factor
        nodes = {Vec3(0.0, 0.0, 0.5 * (w.lambda() + w.Lambda()))};
        weights = {1.0};
    }
    const PhotonSmearing F = displacement_smearing(kin, gauge, ff, w, nodes, weights);
    std::vector<GridValues> fns{F.values};
    for (const auto& p : photons) fns.push_back(p.values);
    TruncatedFockSpace space(ModeGrid::spanning(gauge, nodes, weights, fns), cap);
    std::vector<GridValues> ph;
    for (const auto& p : photons) ph.push_back(p.values);
    const double e = kin.charge();
    const TruncatedValue tv = emission_matrix_element(space, ph, F.values, e, tol);

    OracleValue o;
    o.value = tv.value;
    o.truncation_estimate = tv.truncation_estimate;
    o.cap = cap;
    o.modes = space.modes();
    o.dim = space.dim();
    o.grid_product = std::exp(e * e * m_exponent_grid(F));
    for (const auto& p : photons) o.grid_product *= emission_factor(kin, gauge, ff, p);
    return o;
}

AmplitudeReport full_amplitude(const Kinematics& kin, Gauge gauge, const FormFactor& ff,
                               const CutoffWindow& w, const std::vector<PhotonSmearing>& photons,
                               const QuadOptions& opt, int oracle_cap) {
    AmplitudeReport r;
    r.model = kin.model();
    r.gauge = gauge;
    r.lambda = w.lambda();
    r.Lambda = w.Lambda();
    r.exponent = m_exponent(kin, gauge, ff, w, opt);
    r.vacuum_amplitude = std::exp(r.exponent.total);
    r.total = r.vacuum_amplitude;
    for (const auto& p : photons) {
        r.emission_factors.push_back(emission_factor(kin, gauge, ff, p));
        r.total *= r.emission_factors.back();
    }
    if (oracle_cap > 0) r.oracle = emission_oracle(kin, gauge, ff, w, photons, oracle_cap);
    return r;
}

double conservation_residual(const Kinematics& kin, const FormFactor& ff, const CutoffWindow& w) {
    const CurrentSpec s = spec_for(kin, Gauge::fgb, ff, w);
    const ProductGrid g = product_grid(w, 8, 8, 8);
    double r = 0.0;
    for (const auto& k : g.nodes) {
        const CVec4 j = current_fourier(s, k, k.norm());
        const cplx kj = k.norm() * j[0] - k[0] * j[1] - k[1] * j[2] - k[2] * j[3];
        r = std::max(r, std::abs(kj));
    }
    return r;
}

GaugeReport gauge_compare(const Kinematics& kin, const FormFactor& ff, const CutoffWindow& w,
                          const QuadOptions& opt) {
    GaugeReport g;
    const auto a = m_exponent(kin, Gauge::fgb, ff, w, opt);
    const auto b = m_exponent(kin, Gauge::coulomb, ff, w, opt);
    g.fgb = a.total;
    g.coulomb = b.total;
    g.fgb_error = a.error;
    g.coulomb_error = b.error;
    g.undefined = std::abs(b.total) == 0.0 || std::abs(a.total) == 0.0;
    g.log_ratio = g.undefined ? std::numeric_limits<double>::quiet_NaN() : (a.total / b.total).real();
    g.conservation_residual = conservation_residual(kin, ff, w);
    return g;
}

double neville_at_zero(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.empty() || x.size() != y.size()) throw Error(ErrorKind::invalid_argument, "bad extrapolation table");
    std::vector<double> p = y;
    const std::size_t n = x.size();
    for (std::size_t m = 1; m < n; ++m)
        for (std::size_t i = 0; i + m < n; ++i)
            p[i] = (-x[i + m] * p[i] + x[i] * p[i + 1]) / (x[i] - x[i + m]);
    return p[0];
}

RenormalizationLedger renormalization_ledger(const FourVelocity& u, double charge,
                                             const std::vector<double>& eps_ladder,
                                             const FormFactor& ff, const CutoffWindow& w,
                                             const QuadOptions& opt) {
    if (eps_ladder.empty()) throw Error(ErrorKind::invalid_argument, "empty eps ladder");
    for (std::size_t i = 0; i < eps_ladder.size(); ++i) {
        if (!(eps_ladder[i] > 0.0)) throw Error(ErrorKind::invalid_argument, "eps ladder must be positive");
        if (i > 0 && !(eps_ladder[i] < eps_ladder[i - 1]))
            throw Error(ErrorKind::invalid_argument, "eps ladder must decrease");
    }
    RenormalizationLedger L;
    std::vector<double> x2, x1, re, im;
    for (double eps : eps_ladder) {
        LedgerRow row{eps, unren_halfline_exponent(u, eps, charge, ff, w, opt),
                      counterterm_phase(u, eps, charge, ff, w, opt),
                      renormalized_halfline_exponent(u, eps, charge, ff, w, opt)};
        L.rows.push_back(row);
        x2.push_back(eps * eps);
        x1.push_back(eps);
        re.push_back(row.sum.real());
        im.push_back(row.sum.imag());
    }
    L.extrapolated = cplx(neville_at_zero(x2, re), neville_at_zero(x1, im));
    L.target = -charge * charge * b_ir(u, ff, w, opt) / 2.0;
    return L;
}

}  // namespace irqed
