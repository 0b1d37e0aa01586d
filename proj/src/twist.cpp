#include "qdeform/twist.hpp"

#include "qdeform/error.hpp"

#include <sstream>

namespace qdeform {

namespace {

struct RadicandGuard {
  const DeformationParam& q;
  std::vector<std::string> offending;

  cplx sqrt(cplx radicand, double j, double j0) {
    if (q.regime() == Regime::RootOfUnity && std::abs(radicand.imag()) < 1e-12 && radicand.real() < -1e-12) {
      std::ostringstream os;
      os << "(j=" << j << ", j0=" << j0 << ") -> " << radicand.real();
      offending.push_back(os.str());
    }
    return std::sqrt(radicand);
  }
};

cplx twist_prefactor(double j, double j0, const DeformationParam& q, RadicandGuard& g) {
  const double t = 1.0 + 2.0 * j;
  return q.pow((j - j0) / 2.0) / g.sqrt(t * qnum_sym(t, q), j, j0);
}

cplx twist_a_impl(double j, double j0, const DeformationParam& q, RadicandGuard& g) {
  const double x = 1.0 + j + j0;
  const double y = j - j0;
  return twist_prefactor(j, j0, q, g) *
         (g.sqrt(x * qnum_sym(x, q), j, j0) + q.pow(-(1.0 + 2.0 * j) / 2.0) * g.sqrt(y * qnum_sym(y, q), j, j0));
}

cplx twist_b_impl(double j, double j0, const DeformationParam& q, cplx zero_offset, RadicandGuard& g) {
  const double x = 1.0 + j + j0;
  const double y = j - j0;
  return twist_prefactor(j, j0, q, g) *
         (g.sqrt(qratio_safe(x, q, QKind::Sym, zero_offset), j, j0) -
          q.pow(-(1.0 + 2.0 * j) / 2.0) * g.sqrt(qratio_safe(y, q, QKind::Sym, zero_offset), j, j0));
}

}  // namespace

cplx twist_a(double j, double j0, const DeformationParam& q, cplx) {
  RadicandGuard g{q, {}};
  return twist_a_impl(j, j0, q, g);
}

cplx twist_b(double j, double j0, const DeformationParam& q, cplx zero_offset) {
  RadicandGuard g{q, {}};
  return twist_b_impl(j, j0, q, zero_offset, g);
}

MatrixTwist f_matrix_sl2(const FockSpace& space, const DeformationParam& q, cplx zero_offset) {
  const Sl2Triple t = sigma_sl2(space);
  const auto js = real_spectrum(t.j_casimir);
  const auto j0s = real_spectrum(t.j0);
  const Index dim = space.dimension();
  RadicandGuard g{q, {}};

  DenseVector<cplx> a(dim), a_shift(dim), b(dim);
  for (Index k = 0; k < dim; ++k) {
    a(k) = twist_a_impl(js(k), j0s(k), q, g);
    a_shift(k) = twist_a_impl(js(k), j0s(k) - 1.0, q, g);
    b(k) = twist_b_impl(js(k), j0s(k), q, zero_offset, g);
  }
  if (!g.offending.empty()) throw ConstructionError("f_matrix_sl2: negative radicand", g.offending);

  const auto A = from_diagonal(space.tag(), a);
  const auto A1 = from_diagonal(space.tag(), a_shift);
  const auto B = from_diagonal(space.tag(), b);

  MatrixTwist out;
  out.q = q;
  out.f = {{{A, B * t.j_minus}, {-(t.j_plus * B), A1}}};
  out.f_inv = {{{A, -(B * t.j_minus)}, {t.j_plus * B, A1}}};
  return out;
}

double block_product_residual(const Block2<Operator>& x, const Block2<Operator>& y, const InteriorProjector& p) {
  double worst = 0.0;
  const auto id = Operator::identity(p.space());
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      Operator s = x[i][0] * y[0][j] + x[i][1] * y[1][j];
      if (i == j) s -= id;
      worst = std::max(worst, p.residual(s));
    }
  }
  return worst;
}

double unitarity_residual(const MatrixTwist& t, const InteriorProjector& p) {
  double worst = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) worst = std::max(worst, p.residual(adjoint(t.f[i][j]) - t.f_inv[j][i]));
  return worst;
}

double counit_residual(const MatrixTwist& t) {
  // the vacuum is the first basis state
  double worst = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const cplx v = t.f[i][j](0, 0);
      worst = std::max(worst, std::abs(v - (i == j ? 1.0 : 0.0)));
    }
  return worst;
}

Eigen::Matrix4cd r_matrix_sl2(const DeformationParam& q) {
  Eigen::Matrix4cd r = Eigen::Matrix4cd::Zero();
  r(0, 0) = q.q();
  r(1, 1) = 1.0;
  r(2, 2) = 1.0;
  r(3, 3) = q.q();
  r(2, 1) = q.q() - q.pow(-1.0);
  return r;
}

namespace {

int sqrt_dim(const Eigen::MatrixXcd& r) {
  if (r.rows() != r.cols()) throw std::invalid_argument("R-matrix must be square");
  int n = 1;
  while (n * n < r.rows()) ++n;
  if (n * n != r.rows()) throw std::invalid_argument("R-matrix dimension must be a perfect square");
  return n;
}

// R acting on legs (a, b) of V x V x V.
Eigen::MatrixXcd embed(const Eigen::MatrixXcd& r, int n, int a, int b) {
  const int dim = n * n * n;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (int col = 0; col < dim; ++col) {
    const std::array<int, 3> in{col / (n * n), (col / n) % n, col % n};
    for (int u = 0; u < n; ++u) {
      for (int v = 0; v < n; ++v) {
        const cplx c = r(u * n + v, in[a] * n + in[b]);
        if (c == 0.0) continue;
        auto o = in;
        o[a] = u;
        o[b] = v;
        out(o[0] * n * n + o[1] * n + o[2], col) += c;
      }
    }
  }
  return out;
}

}  // namespace

double yang_baxter_check(const Eigen::MatrixXcd& r) {
  const int n = sqrt_dim(r);
  const auto r12 = embed(r, n, 0, 1);
  const auto r13 = embed(r, n, 0, 2);
  const auto r23 = embed(r, n, 1, 2);
  return (r12 * r13 * r23 - r23 * r13 * r12).cwiseAbs().maxCoeff();
}

double hecke_check(const Eigen::MatrixXcd& r, cplx q) {
  const int n = sqrt_dim(r);
  const auto id = Eigen::MatrixXcd::Identity(r.rows(), r.cols());
  // braid form P R
  Eigen::MatrixXcd swap = Eigen::MatrixXcd::Zero(r.rows(), r.cols());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) swap(i * n + j, j * n + i) = 1.0;
  const Eigen::MatrixXcd b = swap * r;
  return ((b - q * id) * (b + (1.0 / q) * id)).cwiseAbs().maxCoeff();
}

AbelianTwist::AbelianTwist(FockSpace space, Eigen::MatrixXd weights, Eigen::MatrixXd omega, double h)
    : space_(std::move(space)), weights_(std::move(weights)), omega_(std::move(omega)), h_(h) {
  if (space_.mode_count() < 2) throw std::invalid_argument("reshetikhin_twist: need at least 2 modes");
  if (weights_.rows() != space_.mode_count()) throw std::invalid_argument("reshetikhin_twist: one weight per mode");
  if (omega_.rows() != omega_.cols() || omega_.rows() != weights_.cols()) {
    throw std::invalid_argument("reshetikhin_twist: omega must be square of the Cartan rank");
  }
  if (omega_ != -omega_.transpose()) throw std::invalid_argument("reshetikhin_twist: omega is not antisymmetric");
  const auto n = number_ops(space_);
  for (Index i = 0; i < weights_.cols(); ++i) {
    Operator c = Operator::zero(space_.tag());
    for (int l = 0; l < space_.mode_count(); ++l) c += weights_(l, i) * n.per_mode[static_cast<size_t>(l)];
    cartan_.push_back(std::move(c));
  }
}

double AbelianTwist::pairing(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
  double s = 0.0;
  for (Index i = 0; i < omega_.rows(); ++i)
    for (Index j = 0; j < omega_.cols(); ++j) s += omega_(i, j) * x(i) * y(j);
  return s;
}

Eigen::VectorXd AbelianTwist::sigma_weights(Index state) const {
  Eigen::VectorXd out(cartan_.size());
  for (size_t i = 0; i < cartan_.size(); ++i) out(static_cast<Index>(i)) = cartan_[i](state, state).real();
  return out;
}

Operator AbelianTwist::mixed(int power, int l) const {
  detail::check_mode(space_, l);
  const Eigen::VectorXd w = weights_.row(l).transpose();
  DenseVector<cplx> d(space_.dimension());
  for (Index k = 0; k < d.size(); ++k) d(k) = std::exp(power * h_ * pairing(w, sigma_weights(k)));
  return from_diagonal(space_.tag(), d);
}

Operator AbelianTwist::mixed_flipped(int power, int l) const {
  detail::check_mode(space_, l);
  const Eigen::VectorXd w = weights_.row(l).transpose();
  DenseVector<cplx> d(space_.dimension());
  for (Index k = 0; k < d.size(); ++k) d(k) = std::exp(power * h_ * pairing(sigma_weights(k), w));
  return from_diagonal(space_.tag(), d);
}

Eigen::MatrixXcd AbelianTwist::rho_rho(int power) const {
  const Index m = weights_.rows();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(m * m, m * m);
  for (Index l = 0; l < m; ++l)
    for (Index k = 0; k < m; ++k)
      out(l * m + k, l * m + k) = std::exp(power * h_ * pairing(weights_.row(l).transpose(), weights_.row(k).transpose()));
  return out;
}

Eigen::MatrixXcd AbelianTwist::rho_rho_flipped() const {
  const Index m = weights_.rows();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(m * m, m * m);
  for (Index l = 0; l < m; ++l)
    for (Index k = 0; k < m; ++k) out(l * m + k, l * m + k) = std::exp(h_ * pairing(weights_.row(k).transpose(), weights_.row(l).transpose()));
  return out;
}

Eigen::MatrixXcd AbelianTwist::r_matrix() const { return rho_rho_flipped() * rho_rho(-1); }

Operator AbelianTwist::gamma_sigma() const {
  DenseVector<cplx> d(space_.dimension());
  for (Index k = 0; k < d.size(); ++k) {
    const auto x = sigma_weights(k);
    d(k) = std::exp(h_ * pairing(x, x));
  }
  return from_diagonal(space_.tag(), d);
}

Operator AbelianTwist::gamma_prime_sigma() const {
  DenseVector<cplx> d(space_.dimension());
  for (Index k = 0; k < d.size(); ++k) {
    const auto x = sigma_weights(k);
    d(k) = std::exp(-h_ * pairing(x, x));
  }
  return from_diagonal(space_.tag(), d);
}

Eigen::MatrixXcd AbelianTwist::gamma_rho() const {
  const Index m = weights_.rows();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(m, m);
  for (Index l = 0; l < m; ++l) out(l, l) = std::exp(h_ * pairing(weights_.row(l).transpose(), weights_.row(l).transpose()));
  return out;
}

Eigen::MatrixXcd AbelianTwist::gamma_prime_rho() const {
  const Index m = weights_.rows();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(m, m);
  for (Index l = 0; l < m; ++l) out(l, l) = std::exp(-h_ * pairing(weights_.row(l).transpose(), weights_.row(l).transpose()));
  return out;
}

AbelianTwist reshetikhin_twist(const FockSpace& space, const Eigen::MatrixXd& weights, const Eigen::MatrixXd& omega,
                               double h) {
  return AbelianTwist(space, weights, omega, h);
}

AbelianTwist default_abelian_twist(const FockSpace& space, double h, double omega0) {
  Eigen::MatrixXd omega(2, 2);
  omega << 0.0, omega0, -omega0, 0.0;
  return AbelianTwist(space, Eigen::MatrixXd::Identity(2, 2), omega, h);
}

}  // namespace qdeform
