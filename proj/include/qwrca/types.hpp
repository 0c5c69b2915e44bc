#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qwrca {

/// Componentwise absolute tolerance used for equality of complex values
/// unless an operation states otherwise.
inline constexpr double kDefaultTol = 1e-12;

/// u*conj(v) + conj(u)*v, which is real for any complex u, v.
template <typename Scalar>
Scalar hermitian_sym(std::complex<Scalar> u, std::complex<Scalar> v) {
  return Scalar(2) * (u * std::conj(v)).real();
}

/// Coin angle restricted to [0, pi/2]. The evolution engines accept the
/// closed interval; spectral and classification operations additionally
/// require the open interior (sin(theta) and cos(theta) both nonzero).
template <typename Scalar>
class ThetaParam {
 public:
  explicit ThetaParam(Scalar radians) : theta_(radians) {
    if (!(radians >= Scalar(0) && radians <= half_pi())) {
      throw std::invalid_argument("theta must lie in [0, pi/2], got " +
                                  std::to_string(static_cast<double>(radians)));
    }
  }

  Scalar radians() const { return theta_; }
  Scalar cos() const { return std::cos(theta_); }
  Scalar sin() const { return std::sin(theta_); }

  bool interior() const { return theta_ > Scalar(0) && theta_ < half_pi(); }
  void require_interior(const char* who) const {
    if (!interior()) {
      throw std::invalid_argument(std::string(who) +
                                  " requires theta in (0, pi/2)");
    }
  }

  static constexpr Scalar half_pi() { return std::numbers::pi_v<Scalar> / 2; }

 private:
  Scalar theta_;
};

/// Residuals of the unitarity identities for a 2x2 matrix [[a,b],[c,d]]
/// with determinant delta = ad - bc:
///   |a|^2+|c|^2 = |b|^2+|d|^2 = 1,   a*conj(c) + b*conj(d) = 0,
///   c = -delta*conj(b),  d = delta*conj(a),   |delta| = 1.
template <typename Scalar>
struct UnitarityReport {
  Scalar column_norms;
  Scalar orthogonality;
  Scalar conjugation;
  Scalar det_modulus;

  Scalar max_residual() const {
    return std::max(std::max(column_norms, orthogonality),
                    std::max(conjugation, det_modulus));
  }
  bool ok(Scalar tol = Scalar(kDefaultTol)) const {
    return max_residual() <= tol;
  }
};

template <typename Scalar>
UnitarityReport<Scalar> unitarity_report(std::complex<Scalar> a,
                                         std::complex<Scalar> b,
                                         std::complex<Scalar> c,
                                         std::complex<Scalar> d) {
  const std::complex<Scalar> delta = a * d - b * c;
  UnitarityReport<Scalar> r;
  r.column_norms = std::max(std::abs(std::norm(a) + std::norm(c) - Scalar(1)),
                            std::abs(std::norm(b) + std::norm(d) - Scalar(1)));
  r.orthogonality = std::abs(a * std::conj(c) + b * std::conj(d));
  r.conjugation = std::max(std::abs(c + delta * std::conj(b)),
                           std::abs(d - delta * std::conj(a)));
  r.det_modulus = std::abs(std::abs(delta) - Scalar(1));
  return r;
}

/// 2x2 unitary coin. Construction validates the unitarity identities and
/// caches the determinant.
template <typename Scalar>
class UnitaryCoin {
 public:
  using Complex = std::complex<Scalar>;

  UnitaryCoin(Complex a, Complex b, Complex c, Complex d,
              Scalar tol = Scalar(kDefaultTol))
      : a_(a), b_(b), c_(c), d_(d), delta_(a * d - b * c) {
    if (!unitarity_report(a, b, c, d).ok(tol)) {
      throw std::invalid_argument("coin entries do not form a unitary matrix");
    }
  }

  Complex a() const { return a_; }
  Complex b() const { return b_; }
  Complex c() const { return c_; }
  Complex d() const { return d_; }
  Complex delta() const { return delta_; }

  Eigen::Matrix<Complex, 2, 2> matrix() const {
    Eigen::Matrix<Complex, 2, 2> m;
    m << a_, b_, c_, d_;
    return m;
  }

 private:
  Complex a_, b_, c_, d_;
  Complex delta_;
};

/// H(theta) = [[cos t, sin t], [sin t, -cos t]]; H(pi/4) is the Hadamard coin.
template <typename Scalar>
UnitaryCoin<Scalar> make_theta_coin(ThetaParam<Scalar> theta) {
  const Scalar c = theta.cos();
  const Scalar s = theta.sin();
  return UnitaryCoin<Scalar>({c, 0}, {s, 0}, {s, 0}, {-c, 0});
}

template <typename Scalar>
UnitarityReport<Scalar> validate_unitary(const UnitaryCoin<Scalar>& coin) {
  return unitarity_report(coin.a(), coin.b(), coin.c(), coin.d());
}

/// Normalized two-component initial state. Inputs off the unit sphere are
/// rejected, never silently renormalized.
template <typename Scalar>
class Qubit {
 public:
  using Complex = std::complex<Scalar>;

  Qubit(Complex left, Complex right, Scalar tol = Scalar(kDefaultTol))
      : left_(left), right_(right) {
    if (std::abs(std::norm(left) + std::norm(right) - Scalar(1)) > tol) {
      throw std::invalid_argument("qubit amplitudes must satisfy "
                                  "|left|^2 + |right|^2 = 1");
    }
  }

  Complex left() const { return left_; }
  Complex right() const { return right_; }

 private:
  Complex left_, right_;
};

template <typename Scalar>
Qubit<Scalar> make_qubit(std::complex<Scalar> left, std::complex<Scalar> right,
                         Scalar tol = Scalar(kDefaultTol)) {
  return Qubit<Scalar>(left, right, tol);
}

/// Lattice initial data (X_0(0), X_{-1}(1), X_1(1)); unconstrained.
template <typename Scalar>
struct InitialTriple {
  std::complex<Scalar> alpha{};
  std::complex<Scalar> beta{};
  std::complex<Scalar> gamma{};
};

using ThetaParamd = ThetaParam<double>;
using UnitaryCoind = UnitaryCoin<double>;
using Qubitd = Qubit<double>;
using InitialTripled = InitialTriple<double>;

}  // namespace qwrca
