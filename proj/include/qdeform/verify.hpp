#pragma once

#include "qdeform/deform.hpp"
#include "qdeform/fock.hpp"
#include "qdeform/jschwinger.hpp"

#include <map>
#include <string>
#include <vector>

namespace qdeform {

enum class CheckStatus { Pass, Fail, Skip, ExpectedSingular };

// Below: the residual must be smaller than the tolerance. Above: a negative
// control, the residual must exceed it.
enum class Expect { Below, Above };

std::string to_string(CheckStatus s);
CheckStatus check_status_from_string(const std::string& s);
std::string to_string(Expect e);
Expect expect_from_string(const std::string& s);

using Context = std::map<std::string, std::string>;

struct RelationReport {
  std::string id;
  double residual = 0.0;
  double tolerance = 0.0;
  Expect expect = Expect::Below;
  CheckStatus status = CheckStatus::Fail;
  std::string reason;
  Context context;

  bool passed() const { return status != CheckStatus::Fail; }
  // Recomputes the status from residual and tolerance (no-op for skip and
  // expected-singular).
  void reevaluate();

  bool operator==(const RelationReport&) const = default;
};

RelationReport make_check(std::string id, double residual, double tolerance, Context context = {},
                          Expect expect = Expect::Below);
RelationReport make_skip(std::string id, std::string reason, Context context = {});
RelationReport make_expected_singular(std::string id, double value, std::string reason, Context context = {});

struct SuiteReport {
  std::string name;
  std::vector<RelationReport> checks;
  double duration_seconds = 0.0;
  Context config;

  bool passed() const;
  // fail if any check failed, skip if every check was skipped, else pass
  CheckStatus status() const;
  void add(RelationReport r) { checks.push_back(std::move(r)); }
  void append(const SuiteReport& other);
  void sort_checks();
  // Applies the longest matching id-prefix tolerance to each check.
  void apply_tolerances(const std::map<std::string, double>& overrides);
};

Context context_of(const DeformedQuartet& quartet, const InteriorProjector& p);

enum class QcrNormalization {
  Triangular,  // no prefactors
  Sl2,         // s q^{s} on the mixed relation, s q^{-s} on the others
};

// A^iA+_j = delta + s c1 R^{ui}_{jv} A+_u A^v
// A^iA^j   = s c2 R^{ij}_{vu} A^u A^v
// A+_iA+_j = s c2 R^{vu}_{ij} A+_u A+_v
SuiteReport check_qcr_rmatrix(const DeformedQuartet& quartet, const Eigen::MatrixXcd& r, QcrNormalization norm,
                              const InteriorProjector& p, double tol = 1e-10, const std::string& prefix = "qcr");

// The explicit 2-mode relations of the quartet's sign.
SuiteReport check_qcr_explicit(const DeformedQuartet& quartet, const InteriorProjector& p, double tol = 1e-10);

// A A+ - 1 - q^2 A+ A on a single mode.
SuiteReport check_qcr_1d(const DeformedQuartet& quartet, const InteriorProjector& p, double tol = 1e-11);

// [a^i, a+_j]_-+ = delta, [a^i, a^j]_-+ = 0 = [a+_i, a+_j]_-+ for the deformed operators.
SuiteReport check_ccr(const DeformedQuartet& quartet, const InteriorProjector& p, double tol,
                      const std::string& prefix = "ccr");

// x |> A+_i = rho(x)^l_i A+_l and x |> A^i = rho(S x)^i_m A^m for x in {J0, J+, J-}.
std::vector<std::pair<std::string, double>> covariance_residuals(const DeformedQuartet& quartet,
                                                                 const QuantumSl2Triple& t, const HopfData& hopf,
                                                                 const InteriorProjector& p);
SuiteReport check_covariance(const DeformedQuartet& quartet, const QuantumSl2Triple& t, const HopfData& hopf,
                             const InteriorProjector& p, double tol = 1e-10,
                             const std::string& prefix = "covariance");

// (A^i)^dagger = A+_i; skipped unless q is real positive.
SuiteReport check_star(const DeformedQuartet& quartet, double tol = 1e-11, Expect expect = Expect::Below,
                       const std::string& prefix = "star");

enum class InvariantTarget {
  Classical,  // I^n_h = I^n
  QDeformed,  // N = (n)_{q^2}, I^4_h = (n)_{q^2}(n-1)_{q^2}
};

struct InvariantOptions {
  std::vector<int> orders{1, 2};
  InvariantTarget target = InvariantTarget::Classical;
  double tol_order1 = 1e-13;
  double tol_order2 = 1e-10;
  std::string prefix = "invariant";
};

// Order n is checked on the interior with margin 2n (full space for Fermi).
SuiteReport check_invariants(const DeformedQuartet& quartet, const FockSpace& space,
                             const InvariantOptions& opt = {});

// N A+_i = A+_i (1 + q^{+-2} N),  N A^i = A^i q^{-+2}(N - 1). The residual is
// relative to the largest entry of the left side once that exceeds 1, since
// N A+ grows like (cutoff)_{q^2}^{3/2}.
SuiteReport check_number_ladder(const DeformedQuartet& quartet, const InteriorProjector& p, double tol = 1e-10);

// A+_i|0> = a+_i|0> and A^i|0> = 0; the vacuum is basis state 0.
SuiteReport check_vacuum(const DeformedQuartet& quartet, double tol = 1e-13);

// [J0, J+-] = +-J+-, [J+, J-] = (q^{2J0} - q^{-2J0})/(q - q^{-1}).
SuiteReport check_uqsl2_relations(const QuantumSl2Triple& t, const InteriorProjector& p, double tol = 1e-10);

SuiteReport check_antipode(const QuantumSl2Triple& t, const HopfData& hopf, const InteriorProjector& p,
                           double tol = 1e-10);

// x |> 1 = e(x) 1
SuiteReport check_counit_action(const QuantumSl2Triple& t, const HopfData& hopf, double tol = 1e-12);

// x |> (ab) = sum (x_(1) |> a)(x_(2) |> b) for a, b among the deformed operators.
SuiteReport check_module_algebra(const DeformedQuartet& quartet, const QuantumSl2Triple& t, const HopfData& hopf,
                                 const InteriorProjector& p, double tol = 1e-9);

// (xy) |> a = x |> (y |> a) for generator pairs.
SuiteReport check_action_composition(const DeformedQuartet& quartet, const QuantumSl2Triple& t,
                                     const HopfData& hopf, const InteriorProjector& p, double tol = 1e-9);

}  // namespace qdeform
