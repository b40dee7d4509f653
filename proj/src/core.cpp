#include "irqed/core.hpp"

#include <algorithm>
#include <cmath>

namespace irqed {

const char* to_string(Model m) { return m == Model::bn ? "bn" : "dipole"; }
const char* to_string(Gauge g) { return g == Gauge::fgb ? "fgb" : "coulomb"; }

double mdot(const Vec4& a, const Vec4& b) {
    return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
}

cplx mdot(const CVec4& a, const CVec4& b) {
    return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
}

cplx mpair(const CVec4& a, const CVec4& b) {
    return std::conj(a[0]) * b[0] - std::conj(a[1]) * b[1] - std::conj(a[2]) * b[2] -
           std::conj(a[3]) * b[3];
}

Vec4 on_shell(const Vec3& k) { return {k.norm(), k[0], k[1], k[2]}; }

FourVelocity::FourVelocity(const Vec3& spatial) : v_(spatial) {
    if (!spatial.allFinite())
        throw Error(ErrorKind::invalid_argument, "velocity has non-finite components");
    if (spatial.norm() >= 1.0)
        throw Error(ErrorKind::domain, "velocity must satisfy |u| < 1");
}

static void require_nonzero(const Vec3& k) {
    if (!(k.norm() > 0.0)) throw Error(ErrorKind::invalid_argument, "zero-length momentum");
}

double on_shell_dot(const FourVelocity& u, const Vec3& k) {
    require_nonzero(k);
    const double kn = k.norm();
    return kn * (1.0 - u.spatial().dot(k / kn));
}

Vec3 transverse_project(const Vec3& k, const Vec3& v) {
    require_nonzero(k);
    const Vec3 kh = k / k.norm();
    return v - kh * kh.dot(v);
}

CVec3 transverse_project(const Vec3& k, const CVec3& v) {
    require_nonzero(k);
    const Vec3 kh = k / k.norm();
    const CVec3 khc = kh.cast<cplx>();
    return v - khc * (khc.transpose() * v)(0);
}

FourVelocity velocity_from_momentum(const Vec3& p, double m) {
    if (!(m > 0.0)) throw Error(ErrorKind::invalid_argument, "mass must be positive");
    if (p.norm() >= m) throw Error(ErrorKind::domain, "|p| >= m leaves the non-relativistic domain");
    return FourVelocity(p / m);
}

std::array<Vec3, 2> polarization_frame(const Vec3& k) {
    require_nonzero(k);
    const Vec3 kh = k / k.norm();
    int axis = 0;
    for (int i = 1; i < 3; ++i)
        if (std::abs(kh[i]) < std::abs(kh[axis])) axis = i;
    Vec3 e = Vec3::Unit(axis);
    Vec3 e1 = e - kh * kh.dot(e);
    e1.normalize();
    Vec3 e2 = kh.cross(e1);
    return {e1, e2};
}

FormFactor FormFactor::gaussian(double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw Error(ErrorKind::invalid_argument, "gaussian width must be positive");
    FormFactor f;
    f.kind_ = Kind::gaussian;
    f.a_ = sigma;
    return f;
}

FormFactor FormFactor::sharp(double lo, double hi) {
    if (!(lo > 0.0) || !(hi > lo) || !std::isfinite(hi))
        throw Error(ErrorKind::invalid_argument, "sharp window needs 0 < lo < hi");
    FormFactor f;
    f.kind_ = Kind::sharp;
    f.a_ = lo;
    f.b_ = hi;
    return f;
}

FormFactor FormFactor::tabulated(std::vector<double> k, std::vector<double> values, Rule rule) {
    if (k.size() < 2 || k.size() != values.size())
        throw Error(ErrorKind::invalid_argument, "tabulated form factor needs >= 2 matched samples");
    for (std::size_t i = 0; i < k.size(); ++i) {
        if (!std::isfinite(k[i]) || !std::isfinite(values[i]) || values[i] < 0.0 || k[i] < 0.0)
            throw Error(ErrorKind::invalid_argument, "tabulated samples must be finite and non-negative");
        if (i > 0 && !(k[i] > k[i - 1]))
            throw Error(ErrorKind::invalid_argument, "tabulated abscissae must increase strictly");
    }
    FormFactor f;
    f.kind_ = Kind::tabulated;
    f.rule_ = rule;
    f.k_ = std::move(k);
    f.v_ = std::move(values);
    f.a_ = f.k_.front();
    f.b_ = f.k_.back();
    if (rule == Rule::pchip) {
        // Fritsch-Carlson slopes.
        const std::size_t n = f.k_.size();
        std::vector<double> h(n - 1), delta(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            h[i] = f.k_[i + 1] - f.k_[i];
            delta[i] = (f.v_[i + 1] - f.v_[i]) / h[i];
        }
        f.d_.assign(n, 0.0);
        f.d_[0] = delta[0];
        f.d_[n - 1] = delta[n - 2];
        for (std::size_t i = 1; i + 1 < n; ++i) {
            if (delta[i - 1] * delta[i] <= 0.0) continue;
            const double w1 = 2 * h[i] + h[i - 1], w2 = h[i] + 2 * h[i - 1];
            f.d_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (delta[i] == 0.0) {
                f.d_[i] = f.d_[i + 1] = 0.0;
                continue;
            }
            const double a = f.d_[i] / delta[i], b = f.d_[i + 1] / delta[i];
            if (a < 0.0) f.d_[i] = 0.0;
            if (b < 0.0) f.d_[i + 1] = 0.0;
            const double s = a * a + b * b;
            if (s > 9.0) {
                const double t = 3.0 / std::sqrt(s);
                f.d_[i] = t * a * delta[i];
                f.d_[i + 1] = t * b * delta[i];
            }
        }
    }
    return f;
}

double FormFactor::operator()(double k) const {
    if (k < 0.0) k = -k;
    switch (kind_) {
        case Kind::gaussian:
            return std::exp(-k * k / (2.0 * a_ * a_));
        case Kind::sharp:
            return (k >= a_ && k <= b_) ? 1.0 : 0.0;
        case Kind::tabulated: {
            if (k < k_.front() || k > k_.back()) return 0.0;
            auto it = std::upper_bound(k_.begin(), k_.end(), k);
            std::size_t i = it == k_.begin() ? 0 : std::size_t(it - k_.begin()) - 1;
            if (i + 1 >= k_.size()) return v_.back();
            const double h = k_[i + 1] - k_[i];
            const double t = (k - k_[i]) / h;
            if (rule_ == Rule::linear) return v_[i] + t * (v_[i + 1] - v_[i]);
            const double t2 = t * t, t3 = t2 * t;
            const double v = (2 * t3 - 3 * t2 + 1) * v_[i] + (t3 - 2 * t2 + t) * h * d_[i] +
                             (-2 * t3 + 3 * t2) * v_[i + 1] + (t3 - t2) * h * d_[i + 1];
            return std::max(v, 0.0);
        }
    }
    return 0.0;
}

std::vector<double> FormFactor::breakpoints() const {
    switch (kind_) {
        case Kind::gaussian: return {};
        case Kind::sharp: return {a_, b_};
        case Kind::tabulated: return k_;
    }
    return {};
}

CutoffWindow::CutoffWindow(double lambda, double Lambda, double epsilon)
    : lambda_(lambda), Lambda_(Lambda), epsilon_(epsilon) {
    if (!std::isfinite(lambda) || !std::isfinite(Lambda) || !(lambda > 0.0) || !(Lambda > lambda))
        throw Error(ErrorKind::invalid_argument, "cutoff window needs 0 < lambda < Lambda");
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon))
        throw Error(ErrorKind::invalid_argument, "epsilon must be finite and >= 0");
}

Kinematics Kinematics::bn(const FourVelocity& in, const FourVelocity& out, double charge) {
    if (!std::isfinite(charge)) throw Error(ErrorKind::invalid_argument, "charge must be finite");
    Kinematics k;
    k.model_ = Model::bn;
    k.in_ = in;
    k.out_ = out;
    k.charge_ = charge;
    return k;
}

Kinematics Kinematics::dipole(const Vec3& p_in, const Vec3& p_out, double mass, double charge) {
    if (!std::isfinite(charge)) throw Error(ErrorKind::invalid_argument, "charge must be finite");
    Kinematics k;
    k.model_ = Model::dipole;
    k.in_ = velocity_from_momentum(p_in, mass);
    k.out_ = velocity_from_momentum(p_out, mass);
    k.p_in_ = p_in;
    k.p_out_ = p_out;
    k.mass_ = mass;
    k.charge_ = charge;
    return k;
}

double Kinematics::denominator(Leg l, const Vec3& k) const {
    if (model_ == Model::dipole) {
        require_nonzero(k);
        return k.norm();
    }
    return on_shell_dot(velocity(l), k);
}

double Kinematics::reduced_denominator(Leg l, const Vec3& khat) const {
    if (model_ == Model::dipole) return 1.0;
    return 1.0 - velocity(l).spatial().dot(khat);
}

}  // namespace irqed
