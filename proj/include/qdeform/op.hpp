#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

namespace qdeform {

using cplx = std::complex<double>;
using Index = Eigen::Index;

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// Identifies the state space an operator acts on. Two operators may only be
// combined when their tags compare equal.
struct SpaceTag {
  std::string id;
  Index dim = 0;

  bool operator==(const SpaceTag&) const = default;
};

// Dense square matrix bound to a state space.
template <typename Scalar>
class Op {
 public:
  using scalar_type = Scalar;
  using matrix_type = DenseMatrix<Scalar>;

  Op() = default;

  Op(SpaceTag space, matrix_type matrix) : space_(std::move(space)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols() || matrix_.rows() != space_.dim) {
      throw std::invalid_argument("Op: matrix shape does not match space '" + space_.id + "'");
    }
  }

  static Op identity(const SpaceTag& space) {
    return Op(space, matrix_type::Identity(space.dim, space.dim));
  }
  static Op zero(const SpaceTag& space) { return Op(space, matrix_type::Zero(space.dim, space.dim)); }

  const SpaceTag& space() const { return space_; }
  const matrix_type& matrix() const { return matrix_; }
  Index dim() const { return space_.dim; }
  Scalar operator()(Index row, Index col) const { return matrix_(row, col); }

  Op& operator+=(const Op& other) {
    require_same(other);
    matrix_ += other.matrix_;
    return *this;
  }
  Op& operator-=(const Op& other) {
    require_same(other);
    matrix_ -= other.matrix_;
    return *this;
  }
  Op& operator*=(const Op& other) {
    require_same(other);
    matrix_ = matrix_ * other.matrix_;
    return *this;
  }
  Op& operator*=(Scalar s) {
    matrix_ *= s;
    return *this;
  }

  void require_same(const Op& other) const {
    if (!(space_ == other.space_)) {
      throw std::invalid_argument("Op: mixing operators on '" + space_.id + "' and '" + other.space_.id + "'");
    }
  }

 private:
  SpaceTag space_;
  matrix_type matrix_;
};

using Operator = Op<cplx>;

template <typename S>
Op<S> operator+(Op<S> a, const Op<S>& b) {
  return a += b;
}
template <typename S>
Op<S> operator-(Op<S> a, const Op<S>& b) {
  return a -= b;
}
template <typename S>
Op<S> operator-(const Op<S>& a) {
  return Op<S>(a.space(), -a.matrix());
}
template <typename S>
Op<S> operator*(const Op<S>& a, const Op<S>& b) {
  a.require_same(b);
  return Op<S>(a.space(), a.matrix() * b.matrix());
}
template <typename S>
Op<S> operator*(S s, const Op<S>& a) {
  return Op<S>(a.space(), s * a.matrix());
}
template <typename S>
Op<S> operator*(const Op<S>& a, S s) {
  return Op<S>(a.space(), a.matrix() * s);
}
// Allows `2.0 * op` on complex operators.
template <typename S>
  requires(!std::is_same_v<S, double>)
Op<S> operator*(double s, const Op<S>& a) {
  return Op<S>(a.space(), S(s) * a.matrix());
}

template <typename S>
Op<S> adjoint(const Op<S>& a) {
  return Op<S>(a.space(), a.matrix().adjoint());
}

template <typename S>
Op<S> commutator(const Op<S>& a, const Op<S>& b) {
  return a * b - b * a;
}

template <typename S>
Op<S> anticommutator(const Op<S>& a, const Op<S>& b) {
  return a * b + b * a;
}

// [a, b]_- for sign = +1 (commutator), [a, b]_+ for sign = -1 (anticommutator).
template <typename S>
Op<S> graded_commutator(const Op<S>& a, const Op<S>& b, int sign) {
  return sign > 0 ? commutator(a, b) : anticommutator(a, b);
}

template <typename S>
Op<S> power(const Op<S>& a, int k) {
  if (k < 0) throw std::invalid_argument("power: negative exponent");
  Op<S> result = Op<S>::identity(a.space());
  for (int i = 0; i < k; ++i) result = result * a;
  return result;
}

// Max-entry norm.
template <typename S>
double max_abs(const Op<S>& a) {
  if (a.dim() == 0) return 0.0;
  return a.matrix().cwiseAbs().maxCoeff();
}

template <typename S>
double max_abs_diff(const Op<S>& a, const Op<S>& b) {
  a.require_same(b);
  return max_abs(a - b);
}

template <typename S>
double offdiagonal_mass(const Op<S>& a) {
  double worst = 0.0;
  const auto& m = a.matrix();
  for (Index c = 0; c < m.cols(); ++c)
    for (Index r = 0; r < m.rows(); ++r)
      if (r != c) worst = std::max(worst, std::abs(m(r, c)));
  return worst;
}

template <typename S>
bool is_diagonal(const Op<S>& a, double tol = 1e-13) {
  return offdiagonal_mass(a) < tol;
}

template <typename S>
DenseVector<S> diagonal(const Op<S>& a) {
  return a.matrix().diagonal();
}

template <typename S>
Op<S> from_diagonal(const SpaceTag& space, const DenseVector<S>& d) {
  if (d.size() != space.dim) throw std::invalid_argument("from_diagonal: size mismatch");
  return Op<S>(space, d.asDiagonal().toDenseMatrix());
}

// Real spectrum of a diagonal operator; throws if off-diagonal or complex.
inline Eigen::VectorXd real_spectrum(const Operator& a, double tol = 1e-13) {
  if (!is_diagonal(a, tol)) throw std::invalid_argument("real_spectrum: operator is not diagonal");
  Eigen::VectorXd out(a.dim());
  for (Index k = 0; k < a.dim(); ++k) {
    const cplx v = a(k, k);
    if (std::abs(v.imag()) > tol * std::max(1.0, std::abs(v.real()))) {
      throw std::invalid_argument("real_spectrum: complex eigenvalue");
    }
    out(k) = v.real();
  }
  return out;
}

template <typename S>
DenseVector<S> apply(const Op<S>& a, const DenseVector<S>& v) {
  return a.matrix() * v;
}

}  // namespace qdeform
