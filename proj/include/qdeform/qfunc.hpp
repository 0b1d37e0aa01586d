#pragma once

#include "qdeform/op.hpp"

#include <cmath>
#include <optional>
#include <string>

namespace qdeform {

enum class Regime { Classical, GenericRealPositive, RootOfUnity, GenericComplex };

std::string to_string(Regime r);

// The deformation parameter q = e^h (principal branch) with its regime.
//
// When q is a root of unity its phase is kept as an exact rational multiple of
// pi, so that q^x for integer or half-integer x lands exactly on 1 where it
// should; this is what lets (p)_{q^2} vanish identically instead of to 1e-16.
class DeformationParam {
 public:
  DeformationParam() = default;

  static DeformationParam from_q(cplx q);
  static DeformationParam from_h(cplx h);
  // q = exp(i pi num / den)
  static DeformationParam from_phase(long num, long den);
  // Principal root q = e^{i pi / p}, satisfying q^{2p} = 1 and q^{2k} != 1 for 0 < k < p.
  static DeformationParam root_of_unity(int p);
  static DeformationParam classical() { return from_q(1.0); }

  cplx q() const { return q_; }
  cplx h() const { return h_; }
  Regime regime() const { return regime_; }
  // Order p of a root of unity (q^{2p} = 1), when regime() == RootOfUnity.
  std::optional<int> order() const;
  bool is_real_positive() const { return regime_ == Regime::Classical || regime_ == Regime::GenericRealPositive; }
  bool is_classical() const { return regime_ == Regime::Classical; }

  // q^x := exp(x ln q), exact on the unit circle for x in Z/2 when the phase is rational.
  cplx pow(double x) const;

  DeformationParam squared() const;
  DeformationParam inverse() const;

  std::string describe() const;

 private:
  static constexpr double kTol = 1e-12;
  void classify();

  cplx q_{1.0, 0.0};
  cplx h_{0.0, 0.0};
  Regime regime_ = Regime::Classical;
  // q = exp(i pi phase_num_ / phase_den_) when has_phase_
  bool has_phase_ = false;
  long phase_num_ = 0;
  long phase_den_ = 1;
};

template <typename T>
T principal_pow(T q, T x) {
  return std::exp(x * std::log(q));
}

// (x)_q := (q^x - 1)/(q - 1), equal to x at q = 1.
template <typename T>
T qnum_std(T x, T q) {
  if (q == T(1)) return x;
  if (x == T(0)) return T(0);
  return (principal_pow(q, x) - T(1)) / (q - T(1));
}

// [x]_q := (q^x - q^{-x})/(q - q^{-1}), equal to x at q = 1.
template <typename T>
T qnum_sym(T x, T q) {
  if (q == T(1)) return x;
  if (x == T(0)) return T(0);
  if (q == T(-1)) {
    // limit q -> -1; finite only for integer x, where it is -x cos(pi x)
    using std::cos;
    using std::sin;
    const T pix = T(M_PI) * x;
    if (std::abs(sin(pix)) > 1e-12) return T(INFINITY);
    return -x * cos(pix);
  }
  return (principal_pow(q, x) - principal_pow(q, -x)) / (q - T(1) / q);
}

cplx qnum_std(double x, const DeformationParam& q);
cplx qnum_sym(double x, const DeformationParam& q);

enum class QKind { Std, Sym };

// (x)_q / x or [x]_q / x for x >= 0, with the analytic x -> 0 limit at x = 0:
// Std: ln q/(q - 1), Sym: 2 ln q/(q - q^{-1}); both equal 1 at q = 1.
// `zero_offset` is added to the x = 0 value only; it exists so tests can show
// that no construction depends on that value.
cplx qratio_safe(double x, const DeformationParam& q, QKind kind, cplx zero_offset = 0.0);
cplx qratio_safe(double x, cplx q, QKind kind, cplx zero_offset = 0.0);

// Gamma_q(k) := prod_{m=1}^{k-1} (m)_q, integer k >= 1.
cplx q_gamma(int k, const DeformationParam& q);
cplx q_gamma(int k, cplx q);

// Applies f entrywise to the diagonal of a diagonal operator.
template <typename S, typename F>
Op<S> spectral_apply(F&& f, const Op<S>& d) {
  if (!is_diagonal(d)) throw std::invalid_argument("spectral_apply: operator is not diagonal");
  DenseVector<S> out(d.dim());
  for (Index k = 0; k < d.dim(); ++k) out(k) = static_cast<S>(f(d(k, k)));
  return from_diagonal(d.space(), out);
}

// Joint spectral calculus for commuting diagonal operators.
template <typename S, typename F>
Op<S> spectral_apply(F&& f, const Op<S>& d1, const Op<S>& d2) {
  d1.require_same(d2);
  if (!is_diagonal(d1) || !is_diagonal(d2)) {
    throw std::invalid_argument("spectral_apply: operator is not diagonal");
  }
  DenseVector<S> out(d1.dim());
  for (Index k = 0; k < d1.dim(); ++k) out(k) = static_cast<S>(f(d1(k, k), d2(k, k)));
  return from_diagonal(d1.space(), out);
}

}  // namespace qdeform
