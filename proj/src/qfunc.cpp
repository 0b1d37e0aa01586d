#include "qdeform/qfunc.hpp"

#include <charconv>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qdeform {

std::string to_string(Regime r) {
  switch (r) {
    case Regime::Classical:
      return "classical";
    case Regime::GenericRealPositive:
      return "real-positive";
    case Regime::RootOfUnity:
      return "root-of-unity";
    case Regime::GenericComplex:
      return "complex";
  }
  return "unknown";
}

namespace {

constexpr long kMaxPhaseDenominator = 1000;

std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

long positive_mod(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

DeformationParam DeformationParam::from_q(cplx q) {
  if (q == cplx(0.0)) throw std::invalid_argument("DeformationParam: q must be nonzero");
  DeformationParam p;
  p.q_ = q;
  p.h_ = std::log(q);
  p.classify();
  return p;
}

DeformationParam DeformationParam::from_h(cplx h) {
  DeformationParam p = from_q(std::exp(h));
  // keep the caller's h when it is the principal logarithm of the result
  if (p.regime_ == Regime::GenericRealPositive && std::abs(h.imag()) < kTol) p.h_ = cplx(h.real(), 0.0);
  return p;
}

DeformationParam DeformationParam::from_phase(long num, long den) {
  if (den <= 0) throw std::invalid_argument("DeformationParam: phase denominator must be positive");
  const long g = std::gcd(num, den);
  num /= g;
  den /= g;
  // principal branch: phase in (-pi, pi]
  num = positive_mod(num, 2 * den);
  if (num > den) num -= 2 * den;
  DeformationParam p;
  p.has_phase_ = true;
  p.phase_num_ = num;
  p.phase_den_ = den;
  p.h_ = cplx(0.0, M_PI * static_cast<double>(num) / static_cast<double>(den));
  if (num == 0) {
    p.regime_ = Regime::Classical;
    p.q_ = 1.0;
    p.h_ = 0.0;
    p.has_phase_ = false;
  } else if (den >= 2) {
    p.regime_ = Regime::RootOfUnity;
  } else {
    p.regime_ = Regime::GenericComplex;  // q = -1
  }
  if (p.has_phase_) p.q_ = p.pow(1.0);
  return p;
}

DeformationParam DeformationParam::root_of_unity(int p) {
  if (p < 2) throw std::invalid_argument("root_of_unity: order must be >= 2");
  return from_phase(1, p);
}

void DeformationParam::classify() {
  if (std::abs(q_ - cplx(1.0)) < kTol) {
    regime_ = Regime::Classical;
    q_ = 1.0;
    h_ = 0.0;
    return;
  }
  if (std::abs(q_.imag()) < kTol * std::abs(q_) && q_.real() > 0.0) {
    regime_ = Regime::GenericRealPositive;
    q_ = cplx(q_.real(), 0.0);
    h_ = cplx(std::log(q_.real()), 0.0);
    return;
  }
  if (std::abs(std::abs(q_) - 1.0) < kTol) {
    const double theta = std::arg(q_) / M_PI;
    for (long den = 1; den <= kMaxPhaseDenominator; ++den) {
      const long num = std::lround(theta * static_cast<double>(den));
      const cplx candidate = std::polar(1.0, M_PI * static_cast<double>(num) / static_cast<double>(den));
      if (std::abs(candidate - q_) < kTol) {
        *this = from_phase(num, den);
        return;
      }
    }
  }
  regime_ = Regime::GenericComplex;
}

std::optional<int> DeformationParam::order() const {
  if (regime_ != Regime::RootOfUnity) return std::nullopt;
  return static_cast<int>(phase_den_);
}

cplx DeformationParam::pow(double x) const {
  if (regime_ == Regime::Classical) return 1.0;
  if (regime_ == Regime::GenericRealPositive) return std::pow(q_.real(), x);
  if (has_phase_) {
    const double twice = 2.0 * x;
    const double rounded = std::round(twice);
    if (std::abs(twice - rounded) < 1e-12) {
      // q^x = exp(i pi num m / (2 den)) with m = 2x
      const long m = static_cast<long>(rounded);
      const long period = 4 * phase_den_;
      const long r = positive_mod(positive_mod(phase_num_, period) * positive_mod(m, period), period);
      if (r == 0) return {1.0, 0.0};
      if (r == 2 * phase_den_) return {-1.0, 0.0};
      if (r == phase_den_) return {0.0, 1.0};
      if (r == 3 * phase_den_) return {0.0, -1.0};
      return std::polar(1.0, M_PI * static_cast<double>(r) / static_cast<double>(2 * phase_den_));
    }
  }
  return std::exp(x * h_);
}

DeformationParam DeformationParam::squared() const {
  if (has_phase_) return from_phase(2 * phase_num_, phase_den_);
  if (regime_ == Regime::GenericRealPositive || regime_ == Regime::Classical) {
    return from_q(cplx(q_.real() * q_.real(), 0.0));
  }
  return from_q(q_ * q_);
}

DeformationParam DeformationParam::inverse() const {
  if (has_phase_) return from_phase(-phase_num_, phase_den_);
  if (regime_ == Regime::GenericRealPositive || regime_ == Regime::Classical) {
    return from_q(cplx(1.0 / q_.real(), 0.0));
  }
  return from_q(1.0 / q_);
}

std::string DeformationParam::describe() const {
  if (has_phase_ && phase_num_ == 1) return "root:" + std::to_string(phase_den_);
  if (has_phase_) return "phase:" + std::to_string(phase_num_) + "/" + std::to_string(phase_den_);
  if (q_.imag() == 0.0) return shortest(q_.real());
  std::string out = shortest(q_.real());
  out += q_.imag() < 0 ? "-" : "+";
  out += shortest(std::abs(q_.imag())) + "i";
  return out;
}

cplx qnum_std(double x, const DeformationParam& q) {
  if (q.is_classical()) return x;
  if (x == 0.0) return 0.0;
  return (q.pow(x) - 1.0) / (q.q() - 1.0);
}

cplx qnum_sym(double x, const DeformationParam& q) {
  if (q.is_classical()) return x;
  if (x == 0.0) return 0.0;
  return (q.pow(x) - q.pow(-x)) / (q.q() - 1.0 / q.q());
}

namespace {
constexpr double kZeroTol = 1e-12;

void check_nonnegative(double x) {
  if (x < -kZeroTol) throw std::invalid_argument("qratio_safe: x must be >= 0, got " + std::to_string(x));
}
}  // namespace

cplx qratio_safe(double x, const DeformationParam& q, QKind kind, cplx zero_offset) {
  check_nonnegative(x);
  if (std::abs(x) <= kZeroTol) {
    if (q.is_classical()) return 1.0 + zero_offset;
    const cplx limit = kind == QKind::Std ? q.h() / (q.q() - 1.0) : 2.0 * q.h() / (q.q() - 1.0 / q.q());
    return limit + zero_offset;
  }
  return (kind == QKind::Std ? qnum_std(x, q) : qnum_sym(x, q)) / x;
}

cplx qratio_safe(double x, cplx q, QKind kind, cplx zero_offset) {
  check_nonnegative(x);
  if (std::abs(x) <= kZeroTol) {
    if (q == cplx(1.0)) return 1.0 + zero_offset;
    const cplx h = std::log(q);
    const cplx limit = kind == QKind::Std ? h / (q - 1.0) : 2.0 * h / (q - 1.0 / q);
    return limit + zero_offset;
  }
  const cplx xc(x, 0.0);
  return (kind == QKind::Std ? qnum_std(xc, q) : qnum_sym(xc, q)) / xc;
}

cplx q_gamma(int k, const DeformationParam& q) {
  if (k < 1) throw std::invalid_argument("q_gamma: argument must be a positive integer");
  cplx out = 1.0;
  for (int m = 1; m < k; ++m) out *= qnum_std(static_cast<double>(m), q);
  return out;
}

cplx q_gamma(int k, cplx q) {
  if (k < 1) throw std::invalid_argument("q_gamma: argument must be a positive integer");
  cplx out = 1.0;
  for (int m = 1; m < k; ++m) out *= qnum_std(cplx(m, 0.0), q);
  return out;
}

}  // namespace qdeform
