#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <cstdint>
#include <utility>

namespace qwrca {

/// One lattice row of complex amplitudes with finite support: a dense value
/// vector plus the lattice index of its first stored cell. Reads outside the
/// stored window return exactly zero. Rows are immutable after construction.
template <typename Scalar>
class AmplitudeRow {
 public:
  using Complex = std::complex<Scalar>;
  using Vector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

  AmplitudeRow() = default;
  AmplitudeRow(std::int64_t first_site, Vector values)
      : first_site_(first_site), values_(std::move(values)) {}

  static AmplitudeRow zeros(std::int64_t first_site, Eigen::Index count) {
    return AmplitudeRow(first_site, Vector::Zero(count));
  }
  static AmplitudeRow single(std::int64_t site, Complex value) {
    Vector v(1);
    v[0] = value;
    return AmplitudeRow(site, std::move(v));
  }

  std::int64_t first_site() const { return first_site_; }
  std::int64_t last_site() const { return first_site_ + size() - 1; }
  Eigen::Index size() const { return values_.size(); }
  bool empty() const { return values_.size() == 0; }
  const Vector& values() const { return values_; }

  Complex at(std::int64_t site) const {
    const std::int64_t i = site - first_site_;
    if (i < 0 || i >= static_cast<std::int64_t>(size())) return Complex{};
    return values_[static_cast<Eigen::Index>(i)];
  }

  /// Zero-padded copy of the cells at sites [first, first+count).
  Vector read_window(std::int64_t first, Eigen::Index count) const {
    Vector out = Vector::Zero(count);
    const std::int64_t lo = std::max(first, first_site_);
    const std::int64_t hi = std::min(first + count, first_site_ + size());
    if (lo < hi) {
      out.segment(static_cast<Eigen::Index>(lo - first),
                  static_cast<Eigen::Index>(hi - lo)) =
          values_.segment(static_cast<Eigen::Index>(lo - first_site_),
                          static_cast<Eigen::Index>(hi - lo));
    }
    return out;
  }

 private:
  std::int64_t first_site_ = 0;
  Vector values_;
};

template <typename Scalar>
AmplitudeRow<Scalar> operator+(const AmplitudeRow<Scalar>& lhs,
                               const AmplitudeRow<Scalar>& rhs) {
  if (lhs.empty()) return rhs;
  if (rhs.empty()) return lhs;
  const std::int64_t first = std::min(lhs.first_site(), rhs.first_site());
  const std::int64_t last = std::max(lhs.last_site(), rhs.last_site());
  const Eigen::Index count = static_cast<Eigen::Index>(last - first + 1);
  return AmplitudeRow<Scalar>(
      first, lhs.read_window(first, count) + rhs.read_window(first, count));
}

template <typename Scalar>
AmplitudeRow<Scalar> operator*(std::complex<Scalar> scale,
                               const AmplitudeRow<Scalar>& row) {
  return AmplitudeRow<Scalar>(row.first_site(), scale * row.values());
}

/// Sum of |X_k|^2 over the stored support, in plain left-to-right order.
template <typename Scalar>
Scalar squared_norm(const AmplitudeRow<Scalar>& row) {
  Scalar acc{};
  for (Eigen::Index i = 0; i < row.size(); ++i) acc += std::norm(row.values()[i]);
  return acc;
}

/// First moment sum of k*|X_k|^2 over the stored support.
template <typename Scalar>
Scalar first_moment(const AmplitudeRow<Scalar>& row) {
  Scalar acc{};
  for (Eigen::Index i = 0; i < row.size(); ++i) {
    acc += Scalar(row.first_site() + i) * std::norm(row.values()[i]);
  }
  return acc;
}

/// Largest |lhs_k - rhs_k| over the union of the stored windows.
template <typename Scalar>
Scalar max_abs_diff(const AmplitudeRow<Scalar>& lhs,
                    const AmplitudeRow<Scalar>& rhs) {
  const std::int64_t first = std::min(lhs.first_site(), rhs.first_site());
  const std::int64_t last = std::max(lhs.last_site(), rhs.last_site());
  Scalar worst{};
  for (std::int64_t k = first; k <= last; ++k) {
    worst = std::max(worst, std::abs(lhs.at(k) - rhs.at(k)));
  }
  return worst;
}

using AmplitudeRowd = AmplitudeRow<double>;

}  // namespace qwrca
