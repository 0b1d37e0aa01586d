#pragma once

#include "qdeform/fock.hpp"
#include "qdeform/jschwinger.hpp"
#include "qdeform/qfunc.hpp"

#include <array>

namespace qdeform {

template <typename T>
using Block2 = std::array<std::array<T, 2>, 2>;

// (rho x sigma)F for the sl(2) twist: the first leg in the spin-1/2
// representation (block index), the second realized on a 2-mode space.
struct MatrixTwist {
  Block2<Operator> f;
  Block2<Operator> f_inv;
  DeformationParam q;
};

// F = [[a(j,j0), b(j,j0) j-], [-j+ b(j,j0), a(j,j0-1)]], F^-1 the same with b -> -b.
MatrixTwist f_matrix_sl2(const FockSpace& space, const DeformationParam& q, cplx zero_offset = 0.0);

// The scalar functions a(j,j0), b(j,j0) of the twist.
cplx twist_a(double j, double j0, const DeformationParam& q, cplx zero_offset = 0.0);
cplx twist_b(double j, double j0, const DeformationParam& q, cplx zero_offset = 0.0);

// Max projected residual of sum_k X[i][k] Y[k][j] - delta_ij.
double block_product_residual(const Block2<Operator>& x, const Block2<Operator>& y, const InteriorProjector& p);
// Max projected residual of f[i][j]^dagger - f_inv[j][i].
double unitarity_residual(const MatrixTwist& t, const InteriorProjector& p);
// The second leg evaluated on the vacuum, minus the 2x2 identity.
double counit_residual(const MatrixTwist& t);

// 4x4 R-matrix of U_h sl(2) in the spin-1/2 representation. Row index i*2+j,
// column index h*2+k for R^{ij}_{hk}, order up-up, up-dn, dn-up, dn-dn.
Eigen::Matrix4cd r_matrix_sl2(const DeformationParam& q);

// max |R12 R13 R23 - R23 R13 R12| for an N^2 x N^2 matrix R.
double yang_baxter_check(const Eigen::MatrixXcd& r);
// max |(PR - q)(PR + q^-1)| with P the flip: the Hecke condition on the braid form.
double hecke_check(const Eigen::MatrixXcd& r, cplx q);

// Abelian (Reshetikhin) twist F = exp(h omega_ij h_i x h_j) over a commuting
// Cartan realized by sigma(h_i) = sum_l weights(l, i) n_l.
class AbelianTwist {
 public:
  AbelianTwist(FockSpace space, Eigen::MatrixXd weights, Eigen::MatrixXd omega, double h);

  const FockSpace& space() const { return space_; }
  const Eigen::MatrixXd& weights() const { return weights_; }
  const Eigen::MatrixXd& omega() const { return omega_; }
  double h() const { return h_; }
  const std::vector<Operator>& cartan_ops() const { return cartan_; }
  int mode_count() const { return static_cast<int>(weights_.rows()); }

  // (rho x sigma)F^{power}: diagonal in the first leg; entry l is an Op.
  Operator mixed(int power, int l) const;
  // (sigma x rho)F^{power}, entry l.
  Operator mixed_flipped(int power, int l) const;

  // (rho x rho) of F^{power} and of F21, as M^2 x M^2 matrices.
  Eigen::MatrixXcd rho_rho(int power) const;
  Eigen::MatrixXcd rho_rho_flipped() const;
  // R = (rho x rho)(F21 F^-1)
  Eigen::MatrixXcd r_matrix() const;

  // gamma = S F^-1(1) F^-1(2) and gamma' = F(2) S F(1), in sigma and in rho.
  Operator gamma_sigma() const;
  Operator gamma_prime_sigma() const;
  Eigen::MatrixXcd gamma_rho() const;
  Eigen::MatrixXcd gamma_prime_rho() const;

 private:
  // sum_ij omega_ij x_i y_j
  double pairing(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
  Eigen::VectorXd sigma_weights(Index state) const;

  FockSpace space_;
  Eigen::MatrixXd weights_;
  Eigen::MatrixXd omega_;
  double h_;
  std::vector<Operator> cartan_;
};

AbelianTwist reshetikhin_twist(const FockSpace& space, const Eigen::MatrixXd& weights, const Eigen::MatrixXd& omega,
                               double h);

// Two modes, weights (1,0) and (0,1), omega = [[0, w0], [-w0, 0]].
AbelianTwist default_abelian_twist(const FockSpace& space, double h, double omega0 = 1.0);

}  // namespace qdeform
