#include "irqed/verify.hpp"

#include "irqed/gauge.hpp"

#include <cmath>
#include <limits>

namespace irqed {

namespace {

const cplx I(0.0, 1.0);

SuiteCheck check(std::string name, double dev, double tol) {
    return {std::move(name), dev, tol, dev <= tol};
}

// max |m(r,c)| over states below the block
double block_max(const TruncatedFockSpace& s, const CMatrix& m, int block) {
    double d = 0.0;
    for (std::size_t c = 0; c < s.dim(); ++c) {
        if (!s.below(c, block)) continue;
        for (std::size_t r = 0; r < s.dim(); ++r)
            if (s.below(r, block)) d = std::max(d, std::abs(m(r, c)));
    }
    return d;
}

cplx dyadic(Rng& rng) {
    return {std::round(rng.uniform(-1, 1) * 1024) / 1024, std::round(rng.uniform(-1, 1) * 1024) / 1024};
}

PhotonSmearing random_physical(Rng& rng, const std::vector<Vec3>& nodes, const std::vector<double>& w) {
    PhotonSmearing f{Gauge::fgb, nodes, w, {}};
    for (const auto& k : nodes) {
        const auto e = polarization_frame(k);
        const CVec3 t = (e[0] * cplx(rng.uniform(-1, 1), rng.uniform(-1, 1)) +
                         e[1] * cplx(rng.uniform(-1, 1), rng.uniform(-1, 1)))
                            .eval()
                            .cast<cplx>();
        const cplx h(rng.uniform(-1, 1), rng.uniform(-1, 1));
        const double k0 = k.norm();
        CVec4 v;
        v[0] = k0 * h;
        for (int a = 0; a < 3; ++a) v[a + 1] = t[a] + k[a] * h;
        f.values.push_back(v);
    }
    return f;
}

}  // namespace

Rng::Rng(std::uint64_t seed) : gen_(seed) {}

double Rng::uniform() { return double(gen_() >> 11) * 0x1.0p-53; }

Vec3 Rng::direction() {
    const double c = uniform(-1, 1), phi = uniform(0, 2 * M_PI);
    const double s = std::sqrt(1 - c * c);
    return {s * std::cos(phi), s * std::sin(phi), c};
}

bool FockSuiteReport::passed() const {
    for (const auto& c : checks)
        if (!c.passed) return false;
    return true;
}

FockSuiteReport run_fock_suite(const FockSuiteConfig& cfg) {
    if (cfg.cap < 2) throw Error(ErrorKind::invalid_argument, "cap must be >= 2");
    if (cfg.nodes < 1) throw Error(ErrorKind::invalid_argument, "need at least one node");
    if (!(cfg.charge > 0.0)) throw Error(ErrorKind::invalid_argument, "charge must be positive");
    Rng rng(cfg.seed);
    FockSuiteReport rep;
    const int cap = cfg.cap;
    const double e = cfg.charge;
    const Vec3 kz(0.0, 0.0, 0.5);

    // the displacement grid is built first so oversized grids fail early
    std::vector<Vec3> gnodes;
    std::vector<double> gw;
    GridValues F;
    {
        double total = 0.0;
        std::vector<double> share;
        for (int i = 0; i < cfg.nodes; ++i) {
            share.push_back(std::pow(0.5, i));
            total += share.back();
        }
        for (int i = 0; i < cfg.nodes; ++i) {
            gnodes.push_back(Vec3(0.0, 0.0, 0.25 + 0.125 * i));
            gw.push_back(0.5 + 0.25 * rng.uniform());
            // e^2 sum w |F|^2 = 0.5
            const double amp = std::sqrt(0.5 * share[i] / total / gw.back()) / e;
            const double phi = rng.uniform(0, 2 * M_PI);
            F.push_back(CVec4(0.0, amp * std::exp(I * phi), 0.0, 0.0));
        }
    }
    const ModeGrid grid = ModeGrid::spanning(Gauge::coulomb, gnodes, gw, {F});
    const TruncatedFockSpace gspace(grid, cap);

    // signed CCR on a full FGB frame and a full Coulomb frame
    {
        const TruncatedFockSpace f4(ModeGrid::standard(Gauge::fgb, {kz}, {0.7}), std::min(cap, 4));
        const TruncatedFockSpace c2(ModeGrid::standard(Gauge::coulomb, {kz}, {0.7}), std::min(cap, 20));
        rep.checks.push_back(check("ccr", std::max(ccr_deviation(f4), ccr_deviation(c2)), 1e-13));
    }

    // BCH on one spatial mode, e|f| = 0.01
    {
        const double w = 0.8;
        const GridValues f{CVec4(0.0, 0.01 / (e * std::sqrt(w)) * std::exp(I * rng.uniform(0, 6.0)), 0, 0)};
        const GridValues g{CVec4(0.0, 0.01 / (e * std::sqrt(w)) * std::exp(I * rng.uniform(0, 6.0)), 0, 0)};
        const TruncatedFockSpace s(ModeGrid::spanning(Gauge::coulomb, {kz}, {w}, {f, g}), cap);
        rep.checks.push_back(check("bch", bch_check(s, f, g, e), 1e-9));
    }

    // Weyl relations on a temporal + spatial FGB node
    {
        auto real_fn = [&](double scale) {
            return GridValues{CVec4(scale * rng.uniform(-1, 1), 0.0, 0.0, scale * rng.uniform(-1, 1))};
        };
        const GridValues g = real_fn(0.4), h = real_fn(0.4), l = real_fn(0.4), m = real_fn(0.4);
        const GridValues f{CVec4(cplx(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)), 0, 0,
                                 cplx(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)))};
        const TruncatedFockSpace s(ModeGrid::spanning(Gauge::fgb, {kz}, {1.0}, {g, h, l, m, f}), cap);
        const CMatrix W = weyl_operator(s, g, h);
        const CMatrix W2 = weyl_operator(s, l, m);
        const int block = cap / 2;

        const cplx expect = std::exp(0.25 * (s.weyl_product(g, g) + s.weyl_product(h, h)));
        rep.checks.push_back(check("weyl_vacuum", std::abs(W(0, 0) - expect), 1e-8));

        GridValues n{g[0] + I * h[0]};
        const CMatrix a = CMatrix(s.annihilator(f));
        const CMatrix comm = a * W - W * a - (I / std::sqrt(2.0)) * s.weyl_product(f, n) * W;
        rep.checks.push_back(check("weyl_commutator", block_max(s, comm, block), 1e-8));

        const cplx phase = std::exp(I * (s.weyl_product(g, m) - s.weyl_product(h, l)));
        const CMatrix ex = W * W2 - phase * W2 * W;
        rep.checks.push_back(check("weyl_exchange", block_max(s, ex, block), 1e-8));

        const CMatrix iso = s.krein_adjoint(W) * W - CMatrix::Identity(s.dim(), s.dim());
        rep.checks.push_back(check("weyl_isometry", block_max(s, iso, block), 1e-8));
    }

    // single-mode displacement closed forms, e^2 |f|^2 = 0.25
    {
        const GridValues fs{CVec4(0.0, 0.0, 0.0, 0.5 / e)};
        const TruncatedFockSpace s(ModeGrid::spanning(Gauge::fgb, {kz}, {1.0}, {fs}), cap);
        const auto v = displacement_vacuum_expectation(s, fs, e, std::numeric_limits<double>::infinity());
        rep.checks.push_back(check("displacement_spatial", std::abs(v.value - std::exp(-0.125)), 1e-8));
        const GridValues ft{CVec4(0.5 / e, 0.0, 0.0, 0.0)};
        const TruncatedFockSpace t(ModeGrid::spanning(Gauge::fgb, {kz}, {1.0}, {ft}), cap);
        const auto u = displacement_vacuum_expectation(t, ft, e, std::numeric_limits<double>::infinity());
        rep.checks.push_back(check("displacement_temporal", std::abs(u.value - std::exp(0.125)), 1e-8));
    }

    // grid displacement and the coherent-state number check
    {
        const auto v = displacement_vacuum_expectation(gspace, F, e, std::numeric_limits<double>::infinity());
        rep.checks.push_back(
            check("displacement_grid", std::abs(v.value - displacement_closed_form(gspace, F, e)), 1e-8));
        const CVector x = expm_action(displacement_generator(gspace, F, e), gspace.vacuum());
        const cplx n = gspace.inner(x, gspace.number_operator() * x);
        double norm = 0.0;
        for (std::size_t i = 0; i < F.size(); ++i) norm += gw[i] * F[i].squaredNorm();
        rep.checks.push_back(check("number_operator", std::abs(n - e * e * norm), 1e-8));
    }

    // T map isometry and null map
    {
        const std::vector<Vec3> nodes{Vec3(0.375, 0.0, 0.5), Vec3(0.0, 0.5, 0.375), Vec3(0.0, 0.0, 0.75)};
        const std::vector<double> w{0.5, 0.25, 0.375};
        double d1 = 0.0, d2 = 0.0;
        for (int rep_i = 0; rep_i < 8; ++rep_i) {
            const PhotonSmearing f = random_physical(rng, nodes, w), g = random_physical(rng, nodes, w);
            const PhotonSmearing p = random_physical(rng, nodes, w), q = random_physical(rng, nodes, w);
            d1 = std::max(d1, std::abs(smearing_inner(f, g) - smearing_inner(t_map(f), t_map(g))));
            const cplx lhs = product_state_inner({f, p}, {g, q});
            const cplx rhs = product_state_inner(t_map_state({f, p}), t_map_state({g, q}));
            d2 = std::max(d2, std::abs(lhs - rhs));
        }
        rep.checks.push_back(check("t_map_isometry_one", d1, 1e-12));
        rep.checks.push_back(check("t_map_isometry_two", d2, 1e-12));

        std::vector<cplx> h;
        for (std::size_t i = 0; i < nodes.size(); ++i) h.push_back(dyadic(rng));
        const PhotonSmearing nul = null_smearing(nodes, w, h);
        double dn = 0.0;
        for (const auto& v : t_map(nul).values) dn = std::max(dn, v.cwiseAbs().maxCoeff());
        // also t_map(f + null) = t_map(f)
        const PhotonSmearing f = random_physical(rng, nodes, w);
        std::vector<CVec4> sum;
        for (std::size_t i = 0; i < nodes.size(); ++i) sum.push_back(f.values[i] + nul.values[i]);
        const PhotonSmearing fs = f.with_values(sum);
        double dc = 0.0;
        const auto a = t_map(f), b = t_map(fs);
        for (std::size_t i = 0; i < nodes.size(); ++i) dc = std::max(dc, (a.values[i] - b.values[i]).cwiseAbs().maxCoeff());
        rep.checks.push_back(check("null_map", dn, 0.0));
        rep.checks.push_back(check("t_map_class", dc, 1e-14));
    }

    // deviation of the grid displacement against the cap
    for (int c = 2; c <= cap; c += 2) {
        const TruncatedFockSpace s(grid, c);
        const auto v = displacement_vacuum_expectation(s, F, e, std::numeric_limits<double>::infinity());
        rep.convergence.push_back({c, std::abs(v.value - displacement_closed_form(s, F, e))});
    }
    return rep;
}

}  // namespace irqed
