#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace irqed {

using cplx = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using CVec3 = Eigen::Vector3cd;
using CVec4 = Eigen::Vector4cd;

enum class ErrorKind { invalid_argument, domain, nonconvergence, truncation, budget };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

enum class Model { bn, dipole };
enum class Gauge { fgb, coulomb };
enum class Leg { in, out };

const char* to_string(Model m);
const char* to_string(Gauge g);

// Minkowski products with metric diag(1,-1,-1,-1).
double mdot(const Vec4& a, const Vec4& b);
cplx mdot(const CVec4& a, const CVec4& b);
// Sesquilinear: conjugates the first argument.
cplx mpair(const CVec4& a, const CVec4& b);

Vec4 on_shell(const Vec3& k);  // (|k|, k)

class FourVelocity {
public:
    FourVelocity() = default;
    explicit FourVelocity(const Vec3& spatial);

    const Vec3& spatial() const { return v_; }
    Vec4 four() const { return {1.0, v_[0], v_[1], v_[2]}; }
    double square() const { return 1.0 - v_.squaredNorm(); }
    double speed() const { return v_.norm(); }

private:
    Vec3 v_ = Vec3::Zero();
};

// u.k with k0 = |k|.
double on_shell_dot(const FourVelocity& u, const Vec3& k);
Vec3 transverse_project(const Vec3& k, const Vec3& v);
CVec3 transverse_project(const Vec3& k, const CVec3& v);
FourVelocity velocity_from_momentum(const Vec3& p, double m);

// Two unit vectors orthogonal to k and to each other, built by Gram-Schmidt
// from the coordinate axis least aligned with k.
std::array<Vec3, 2> polarization_frame(const Vec3& k);

class FormFactor {
public:
    enum class Kind { gaussian, sharp, tabulated };
    enum class Rule { linear, pchip };

    static FormFactor gaussian(double sigma);
    static FormFactor sharp(double lo, double hi);
    static FormFactor tabulated(std::vector<double> k, std::vector<double> values, Rule rule);

    double operator()(double k) const;
    Kind kind() const { return kind_; }
    // Points where the radial profile is not smooth.
    std::vector<double> breakpoints() const;
    double sigma() const { return a_; }
    double lo() const { return a_; }
    double hi() const { return b_; }

private:
    FormFactor() = default;
    Kind kind_ = Kind::sharp;
    double a_ = 0.0, b_ = 0.0;
    Rule rule_ = Rule::linear;
    std::vector<double> k_, v_, d_;
};

class CutoffWindow {
public:
    CutoffWindow(double lambda, double Lambda, double epsilon = 0.0);
    double lambda() const { return lambda_; }
    double Lambda() const { return Lambda_; }
    double epsilon() const { return epsilon_; }
    bool contains(double k) const { return k >= lambda_ && k <= Lambda_; }

private:
    double lambda_, Lambda_, epsilon_;
};

class Kinematics {
public:
    static Kinematics bn(const FourVelocity& in, const FourVelocity& out, double charge);
    static Kinematics dipole(const Vec3& p_in, const Vec3& p_out, double mass, double charge);

    Model model() const { return model_; }
    double charge() const { return charge_; }
    double mass() const { return mass_; }
    const Vec3& p(Leg l) const { return l == Leg::in ? p_in_ : p_out_; }
    const FourVelocity& velocity(Leg l) const { return l == Leg::in ? in_ : out_; }
    // u (BN) or (1, p/m) (dipole).
    Vec4 leg_vector(Leg l) const { return velocity(l).four(); }
    // u.k (BN) or |k| (dipole).
    double denominator(Leg l, const Vec3& k) const;
    // denominator / |k|, a function of the direction only.
    double reduced_denominator(Leg l, const Vec3& khat) const;
    static double eta(Leg l) { return l == Leg::in ? -1.0 : 1.0; }

private:
    Model model_ = Model::bn;
    FourVelocity in_, out_;
    Vec3 p_in_ = Vec3::Zero(), p_out_ = Vec3::Zero();
    double mass_ = 1.0;
    double charge_ = 0.0;
};

}  // namespace irqed
