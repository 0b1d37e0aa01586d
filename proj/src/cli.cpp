#include "qdeform/cli.hpp"

#include "qdeform/error.hpp"
#include "qdeform/reps.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

namespace qdeform {

namespace {

double parse_real(std::string_view s, const std::string& whole) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw UsageError("invalid q spec '" + whole + "'");
  }
  return v;
}

// "1.5", "1.5+2i", "-0.5-1e-3i", "2i", "i", "-i"
cplx parse_complex(const std::string& s, const std::string& whole) {
  if (s.empty()) throw UsageError("invalid q spec '" + whole + "'");
  if (s.back() != 'i') return parse_real(s, whole);
  const std::string body = s.substr(0, s.size() - 1);
  size_t split = std::string::npos;
  for (size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const std::string re = split == std::string::npos ? "" : body.substr(0, split);
  std::string im = split == std::string::npos ? body : body.substr(split);
  if (im.empty() || im == "+") im = "1";
  if (im == "-") im = "-1";
  return {re.empty() ? 0.0 : parse_real(re, whole), parse_real(im, whole)};
}

constexpr int kMaxCutoff = 60;

long parse_long(const std::string& s, const std::string& whole) {
  long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) throw UsageError("invalid q spec '" + whole + "'");
  return v;
}

}  // namespace

DeformationParam parse_q_spec(const std::string& spec) {
  if (spec.rfind("root:", 0) == 0) {
    const long p = parse_long(spec.substr(5), spec);
    if (p < 2 || p > 1000) throw UsageError("root order must be in [2, 1000]: '" + spec + "'");
    return DeformationParam::root_of_unity(static_cast<int>(p));
  }
  if (spec.rfind("phase:", 0) == 0) {
    const auto rest = spec.substr(6);
    const auto slash = rest.find('/');
    if (slash == std::string::npos) throw UsageError("invalid q spec '" + spec + "'");
    const long num = parse_long(rest.substr(0, slash), spec);
    const long den = parse_long(rest.substr(slash + 1), spec);
    if (den < 1 || den > 1000) throw UsageError("phase denominator must be in [1, 1000]: '" + spec + "'");
    return DeformationParam::from_phase(num, den);
  }
  if (spec.rfind("exp:", 0) == 0) return DeformationParam::from_h(parse_complex(spec.substr(4), spec));
  const cplx q = parse_complex(spec, spec);
  if (q == 0.0) throw UsageError("q must be nonzero");
  return DeformationParam::from_q(q);
}

std::optional<std::uint64_t> parse_seed(const char* text) {
  if (text == nullptr) return std::nullopt;
  const std::string s(text);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw UsageError("QDEFORM_SEED must be an unsigned integer, got '" + s + "'");
  }
  return v;
}

std::pair<std::string, double> parse_tolerance(const std::string& text) {
  const auto eq = text.rfind('=');
  if (eq == std::string::npos || eq == 0) throw UsageError("--tol expects PREFIX=VAL, got '" + text + "'");
  const double v = parse_real(text.substr(eq + 1), text);
  if (!(v > 0.0)) throw UsageError("--tol value must be positive: '" + text + "'");
  return {text.substr(0, eq), v};
}

namespace {

struct Params {
  DeformationParam q;
  std::string q_spec;
  int cutoff = 12;
  int margin = 2;
  std::optional<Statistics> stats;
  std::uint64_t seed = kDefaultSeed;
};

std::string stats_name(Statistics s) { return s == Statistics::Bose ? "weyl" : "clifford"; }

std::vector<Statistics> stats_list(const Params& p) {
  if (p.stats) return {*p.stats};
  return {Statistics::Bose, Statistics::Fermi};
}

FockSpace space_for(Statistics s, int cutoff) { return make_space(2, s, s == Statistics::Fermi ? 2 : cutoff); }

InteriorProjector projector_for(const FockSpace& space, int margin) {
  return space.statistics() == Statistics::Fermi ? full_space(space.tag()) : interior(space, margin);
}

SuiteReport prefixed(SuiteReport r, const std::string& prefix) {
  for (auto& c : r.checks) c.id = prefix + "." + c.id;
  return r;
}

void require_real_positive(const Params& p, const std::string& suite) {
  if (!p.q.is_real_positive()) throw UsageError(suite + " needs a real positive q, got " + p.q_spec);
}

SuiteReport suite_proto1d(const Params& prm) {
  const auto space = make_space(1, Statistics::Bose, prm.cutoff);
  const auto P = interior(space, prm.margin);
  const auto quartet = map_1d(space, prm.q);
  SuiteReport out;
  out.append(check_qcr_1d(quartet, P, 1e-11));
  out.append(check_number_ladder(quartet, P, 1e-10));
  out.append(check_vacuum(quartet));
  out.append(check_star(quartet));
  return out;
}

SuiteReport suite_sl2_weyl(const Params& prm) {
  const auto space = make_space(2, Statistics::Bose, prm.cutoff);
  const auto P = interior(space, prm.margin);
  const auto quartet = map_sl2_weyl(space, prm.q);
  SuiteReport out;
  out.append(check_qcr_explicit(quartet, P, 1e-10));
  out.append(check_qcr_rmatrix(quartet, r_matrix_sl2(prm.q), QcrNormalization::Sl2, P, 1e-10));
  out.append(check_number_ladder(quartet, P, 1e-10));
  out.append(check_vacuum(quartet));
  return out;
}

SuiteReport suite_sl2_clifford(const Params& prm) {
  const auto space = make_space(2, Statistics::Fermi, 2);
  const auto P = full_space(space.tag());
  const auto quartet = map_sl2_clifford(space, prm.q);
  SuiteReport out;
  out.append(check_qcr_explicit(quartet, P, 1e-12));
  out.append(check_qcr_rmatrix(quartet, r_matrix_sl2(prm.q), QcrNormalization::Sl2, P, 1e-12));
  out.append(check_number_ladder(quartet, P, 1e-12));
  out.append(check_vacuum(quartet));
  return out;
}

DeformedQuartet closed_form(const FockSpace& space, const DeformationParam& q) {
  return space.statistics() == Statistics::Bose ? map_sl2_weyl(space, q) : map_sl2_clifford(space, q);
}

SuiteReport suite_equivalence(const Params& prm) {
  SuiteReport out;
  for (Statistics st : stats_list(prm)) {
    const auto space = space_for(st, prm.cutoff);
    const auto P = projector_for(space, prm.margin);
    const auto full = full_space(space.tag());
    const std::string tag = "equivalence." + stats_name(st);
    const auto twist = f_matrix_sl2(space, prm.q);
    const auto built = map_universal_sl2(space, prm.q, sign_of(st));
    const auto closed = closed_form(space, prm.q);
    const Context ctx = context_of(built, full);
    const char* mode[2] = {"up", "dn"};
    for (int i = 0; i < 2; ++i) {
      out.add(make_check(tag + ".ann." + mode[i], max_abs_diff(built.ann[i], closed.ann[i]), 1e-10, ctx));
      out.add(make_check(tag + ".cre." + mode[i], max_abs_diff(built.cre[i], closed.cre[i]), 1e-10, ctx));
    }
    out.add(make_check(tag + ".f-inverse", std::max(block_product_residual(twist.f, twist.f_inv, full),
                                                    block_product_residual(twist.f_inv, twist.f, full)),
                       1e-10, ctx));
    out.add(make_check(tag + ".f-counit", counit_residual(twist), 1e-12, ctx));
    out.append(prefixed(check_qcr_explicit(built, P, 1e-10), "twist-built"));
  }
  return out;
}

SuiteReport suite_covariance(const Params& prm) {
  SuiteReport out;
  for (Statistics st : stats_list(prm)) {
    const auto space = space_for(st, prm.cutoff);
    const auto P = projector_for(space, prm.margin);
    const std::string tag = "covariance." + stats_name(st);
    const auto triple = phi_h_generators(space, prm.q);
    const HopfData hopf{prm.q};
    const auto quartet = closed_form(space, prm.q);
    out.append(check_covariance(quartet, triple, hopf, P, 1e-10, tag));

    // the undeformed operators are covariant under the undeformed action only
    const auto classical = classical_quartet(space);
    out.append(check_covariance(classical, as_realization(sigma_sl2(space)), HopfData{DeformationParam::classical()},
                                P, 1e-12, tag + ".classical"));
    const Context ctx = context_of(classical, P);
    if (prm.q.is_classical()) {
      out.add(make_skip(tag + ".classical-control", "q = 1 leaves nothing to detect", ctx));
    } else {
      double worst = 0.0;
      for (const auto& [id, r] : covariance_residuals(classical, triple, hopf, P)) worst = std::max(worst, r);
      out.add(make_check(tag + ".classical-control", worst, 1e-3, ctx, Expect::Above));
    }
  }
  return out;
}

Eigen::MatrixXcd perturbed(const Eigen::MatrixXcd& r, std::mt19937_64& rng, double eps) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXcd out = r;
  for (Index i = 0; i < r.rows(); ++i)
    for (Index j = 0; j < r.cols(); ++j) {
      const double re = u(rng);
      const double im = u(rng);
      out(i, j) += eps * cplx(re, im);
    }
  return out;
}

SuiteReport suite_hopf(const Params& prm) {
  SuiteReport out;
  const Context rctx{{"q", prm.q.describe()}};
  const Eigen::MatrixXcd r = r_matrix_sl2(prm.q);
  out.add(make_check("rmatrix.yang-baxter", yang_baxter_check(r), 1e-13, rctx));
  out.add(make_check("rmatrix.hecke", hecke_check(r, prm.q.q()), 1e-13, rctx));
  std::mt19937_64 rng(prm.seed);
  const Eigen::MatrixXcd bad = perturbed(r, rng, 1e-3);
  Context pctx = rctx;
  pctx["seed"] = std::to_string(prm.seed);
  out.add(make_check("rmatrix.perturbed.yang-baxter", yang_baxter_check(bad), 1e-8, pctx, Expect::Above));
  out.add(make_check("rmatrix.perturbed.hecke", hecke_check(bad, prm.q.q()), 1e-8, pctx, Expect::Above));

  const auto space = make_space(2, Statistics::Bose, prm.cutoff);
  const auto P = interior(space, prm.margin);
  if (prm.q.regime() == Regime::RootOfUnity) {
    const Context ctx{{"q", prm.q.describe()}, {"space", space.tag().id}};
    const std::string why = "phi_h needs real radicands, which a root of unity does not give";
    for (const char* id : {"uqsl2", "antipode", "counit", "module-algebra", "composition"}) out.add(make_skip(id, why, ctx));
    return out;
  }
  const auto triple = phi_h_generators(space, prm.q);
  const HopfData hopf{prm.q};
  const auto quartet = map_sl2_weyl(space, prm.q);
  out.append(check_uqsl2_relations(triple, P, 1e-10));
  out.append(check_antipode(triple, hopf, P, 1e-10));
  out.append(check_counit_action(triple, hopf, 1e-12));
  out.append(check_module_algebra(quartet, triple, hopf, P, 1e-9));
  out.append(check_action_composition(quartet, triple, hopf, P, 1e-9));
  return out;
}

Eigen::MatrixXcd flip(const Eigen::MatrixXcd& r) {
  const Index n = static_cast<Index>(std::lround(std::sqrt(static_cast<double>(r.rows()))));
  Eigen::MatrixXcd swap = Eigen::MatrixXcd::Zero(r.rows(), r.cols());
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) swap(i * n + j, j * n + i) = 1.0;
  return swap * r * swap;
}

SuiteReport suite_abelian(const Params& prm) {
  require_real_positive(prm, "abelian-triangular");
  const double h = prm.q.h().real();
  SuiteReport out;
  for (Statistics st : stats_list(prm)) {
    const auto space = space_for(st, prm.cutoff);
    const auto P = projector_for(space, prm.margin);
    const std::string tag = "abelian." + stats_name(st);
    const auto twist = default_abelian_twist(space, h);
    const auto quartet = map_abelian(twist, sign_of(st));
    const Context ctx = context_of(quartet, P);

    out.add(make_check(tag + ".forms", abelian_form_disagreement(abelian_forms(twist)), 1e-12, ctx));
    const auto id = Operator::identity(space.tag());
    const double g = std::max({max_abs(twist.gamma_sigma() - id), max_abs(twist.gamma_prime_sigma() - id),
                               (twist.gamma_rho() - Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff(),
                               (twist.gamma_prime_rho() - Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff()});
    out.add(make_check(tag + ".gamma", g, 1e-15, ctx));

    const Eigen::MatrixXcd r = twist.r_matrix();
    const Index n2 = r.rows();
    out.add(make_check(tag + ".r-equals-f-minus-two", (r - twist.rho_rho(-2)).cwiseAbs().maxCoeff(), 1e-13, ctx));
    out.add(make_check(tag + ".triangular", (flip(r) * r - Eigen::MatrixXcd::Identity(n2, n2)).cwiseAbs().maxCoeff(),
                       1e-13, ctx));
    out.add(make_check(tag + ".yang-baxter", yang_baxter_check(r), 1e-13, ctx));
    out.append(check_qcr_rmatrix(quartet, r, QcrNormalization::Triangular, P, 1e-11, "qcr." + stats_name(st)));

    // number operators of the deformed quartet
    const char* mode[2] = {"up", "dn"};
    std::vector<Operator> N;
    for (int i = 0; i < 2; ++i) N.push_back(quartet.cre[i] * quartet.ann[i]);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        const std::string pair = std::string(mode[i]) + "." + mode[j];
        out.add(make_check(tag + ".number.commute." + pair, P.residual(commutator(N[i], N[j])), 1e-11, ctx));
        Operator d = commutator(N[i], quartet.cre[j]);
        if (i == j) d -= quartet.cre[j];
        out.add(make_check(tag + ".number.raise." + pair, P.residual(d), 1e-11, ctx));
      }
    }
  }
  return out;
}

SuiteReport suite_invariants(const Params& prm) {
  SuiteReport out;
  for (Statistics st : stats_list(prm)) {
    const auto space = space_for(st, prm.cutoff);
    if (prm.q.is_real_positive()) {
      const auto twist = default_abelian_twist(space, prm.q.h().real());
      InvariantOptions opt;
      opt.prefix = "invariant.abelian." + stats_name(st);
      out.append(check_invariants(map_abelian(twist, sign_of(st)), space, opt));
    } else {
      out.add(make_skip("invariant.abelian." + stats_name(st), "the abelian twist needs a real positive q",
                        {{"q", prm.q.describe()}}));
    }
    InvariantOptions opt;
    opt.target = InvariantTarget::QDeformed;
    opt.tol_order1 = 1e-10;
    opt.prefix = "invariant.sl2." + stats_name(st);
    out.append(check_invariants(closed_form(space, prm.q), space, opt));
  }
  return out;
}

SuiteReport suite_star(const Params& prm) {
  SuiteReport out;
  for (Statistics st : stats_list(prm)) {
    const auto space = space_for(st, prm.cutoff);
    out.append(check_star(closed_form(space, prm.q), 1e-11, Expect::Below, "star.closed-form." + stats_name(st)));
    if (prm.q.is_real_positive()) {
      out.append(check_star(map_universal_sl2(space, prm.q, sign_of(st)), 1e-11, Expect::Below,
                            "star.twist-built." + stats_name(st)));
    }
    if (st == Statistics::Bose) {
      const auto ch = map_chaichian(space, prm.q);
      if (prm.q.is_classical()) {
        out.add(make_skip("star.chaichian.gap", "q = 1 leaves nothing to detect", {{"q", prm.q.describe()}}));
      } else {
        out.append(check_star(ch, 1e-3, Expect::Above, "star.chaichian"));
      }
    }
  }
  return out;
}

SuiteReport suite_alpha(const Params& prm) {
  require_real_positive(prm, "alpha-chaichian");
  const auto space = make_space(2, Statistics::Bose, prm.cutoff);
  const auto P = interior(space, prm.margin);
  const auto closed = map_sl2_weyl(space, prm.q);
  const auto conj = conjugate(closed, alpha_element(space, prm.q));
  const auto ch = map_chaichian(space, prm.q);
  const Context ctx = context_of(ch, P);
  SuiteReport out;
  const char* mode[2] = {"up", "dn"};
  for (int i = 0; i < 2; ++i) {
    out.add(make_check(std::string("alpha.conjugation.ann.") + mode[i], P.residual(conj.ann[i] - ch.ann[i]), 1e-10, ctx));
    out.add(make_check(std::string("alpha.conjugation.cre.") + mode[i], P.residual(conj.cre[i] - ch.cre[i]), 1e-10, ctx));
  }
  out.append(prefixed(check_qcr_explicit(ch, P, 1e-10), "chaichian"));

  const DeformationParam q2 = prm.q.squared();
  double rec = 0.0;
  for (int k = 1; k <= prm.cutoff; ++k) {
    const cplx lhs = q_gamma(k + 1, q2);
    rec = std::max(rec, std::abs(lhs - qnum_std(static_cast<double>(k), q2) * q_gamma(k, q2)) / std::abs(lhs));
  }
  rec = std::max(rec, std::abs(q_gamma(1, q2) - 1.0));
  out.add(make_check("qgamma.recurrence", rec, 1e-12, {{"q^2", q2.describe()}, {"k-max", std::to_string(prm.cutoff)}}));

  // a random unitary alpha' gives another map of the same kind
  std::mt19937_64 rng(prm.seed);
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  DenseVector<cplx> phases(space.dimension());
  for (Index k = 0; k < phases.size(); ++k) phases(k) = std::polar(1.0, u(rng));
  const auto other = conjugate(closed, diagonal_alpha(space.tag(), phases));
  out.append(prefixed(check_qcr_explicit(other, P, 1e-10), "random-alpha"));
  out.append(check_star(other, 1e-11, Expect::Below, "random-alpha.star"));
  for (auto& c : out.checks)
    if (c.id.rfind("random-alpha", 0) == 0) c.context["seed"] = std::to_string(prm.seed);
  return out;
}

SuiteReport suite_root_unity(const Params& prm) {
  const auto order = prm.q.order();
  if (prm.q.regime() != Regime::RootOfUnity || !order || prm.q.describe() != "root:" + std::to_string(*order)) {
    throw UsageError("root-unity needs q = root:p, got " + prm.q_spec);
  }
  const int p = *order;
  if (prm.cutoff < 3 * p) {
    throw UsageError("root-unity needs cutoff >= 3p = " + std::to_string(3 * p) + ", got " + std::to_string(prm.cutoff));
  }
  const auto space = make_space(2, Statistics::Bose, prm.cutoff);
  const auto P = interior(space, prm.margin);
  const auto quartet = root_unity_quartet(space, p);
  const auto blocks = root_unity_blocks(space, p, quartet);
  Context ctx = context_of(quartet, P);
  ctx["cyclic-vectors"] = std::to_string(blocks.cyclic_vectors.size());
  ctx["complete-blocks"] = std::to_string(blocks.blocks.size());
  ctx["unreached"] = std::to_string(blocks.unreached.size());
  SuiteReport out;
  out.add(make_check("root-unity.annihilation", blocks.annihilation_residual, 1e-10, ctx));
  out.add(make_check("root-unity.closure", blocks.closure_residual, 1e-10, ctx));
  out.add(make_check("root-unity.disjoint", blocks.disjoint ? 0.0 : 1.0, 0.5, ctx));
  // integer-valued: any difference from p^2 fails
  for (const auto& b : blocks.blocks) {
    const std::string label = "(" + std::to_string(b.cyclic[0] / p) + "," + std::to_string(b.cyclic[1] / p) + ")";
    Context bctx = ctx;
    bctx["dimension"] = std::to_string(b.dimension);
    out.add(make_check("root-unity.block." + label + ".dimension",
                       std::abs(static_cast<double>(b.dimension) - static_cast<double>(p * p)), 0.5, bctx));
  }
  if (blocks.blocks.empty()) {
    out.add(make_check("root-unity.block.(0,0).dimension", static_cast<double>(p * p), 0.5, ctx));
  }
  out.append(check_qcr_explicit(quartet, P, 1e-10));
  return out;
}

SuiteReport suite_pw(const Params& prm) {
  const cplx q = prm.q.q();
  if (q.imag() != 0.0 || !(q.real() > 0.0 && q.real() < 1.0)) {
    throw UsageError("pw-reps needs 0 < q < 1, got " + prm.q_spec);
  }
  SuiteReport out;
  for (PWClass cls : {PWClass::C1, PWClass::C2, PWClass::C3, PWClass::C4, PWClass::C5}) {
    const auto rep = pw_build(prm.q, cls);
    const auto P = rep.interior();
    const std::string tag = "pw." + to_string(cls);
    Context ctx = context_of(rep.quartet, P);
    ctx["interior"] = std::to_string(P.rank());
    ctx["labels"] = std::to_string(rep.dimension());
    if (rep.energy) {
      char buf[32];
      ctx["E"] = std::string(buf, std::to_chars(buf, buf + sizeof buf, *rep.energy).ptr);
    }
    out.add(make_check(tag + ".interior-size", static_cast<double>(P.rank()), 0.5, ctx, Expect::Above));
    out.append(prefixed(check_qcr_explicit(rep.quartet, P, 1e-10), tag));
    out.append(check_qcr_rmatrix(rep.quartet, r_matrix_sl2(prm.q), QcrNormalization::Sl2, P, 1e-10, tag + ".qcr"));
    out.add(make_check(tag + ".eigenvalues", eigenvalue_identity_residual(rep), 1e-12, ctx));

    const auto scan = singularity_scan(rep);
    Context sctx = ctx;
    sctx["positive"] = std::to_string(scan.positive);
    sctx["zero"] = std::to_string(scan.zero);
    sctx["negative"] = std::to_string(scan.negative);
    double lowest = std::numeric_limits<double>::infinity();
    for (const auto& e : scan.entries) lowest = std::min({lowest, e.arg_dn, e.arg_total});
    if (cls == PWClass::C1) {
      out.add(make_check(tag + ".scan.min-argument", lowest, 0.0, sctx, Expect::Above));
      out.append(prefixed(intertwine_class1(rep).report, tag));
      const auto ground = rep.index_of({0, 0});
      double g = 0.0;
      for (const auto& a : rep.quartet.ann) g = std::max(g, a.matrix().col(*ground).cwiseAbs().maxCoeff());
      out.add(make_check(tag + ".ground-state", g, 1e-13, ctx));
      continue;
    }
    const ArgumentSign expected = cls == PWClass::C3 ? ArgumentSign::Zero : ArgumentSign::Negative;
    const std::string found = to_string(scan.summary());
    if (scan.summary() == expected) {
      out.add(make_expected_singular(tag + ".scan", lowest, "log argument " + found + "; inverse map undefined", sctx));
    } else {
      RelationReport r = make_check(tag + ".scan", lowest, 0.0, sctx);
      r.status = CheckStatus::Fail;
      r.reason = "expected a " + to_string(expected) + " log argument, scan found " + found;
      out.add(std::move(r));
    }
    const auto inv = inverse_map_sl2(rep.quartet, P);
    if (!inv.singular.empty() && !inv.recovered) {
      Context ictx = ctx;
      ictx["singular-labels"] = std::to_string(inv.singular.size());
      ictx["first"] = inv.singular.front().label;
      out.add(make_expected_singular(tag + ".inverse-map", static_cast<double>(inv.singular.size()),
                                     "nonpositive log argument on the interior", ictx));
    } else {
      RelationReport r = make_check(tag + ".inverse-map", 0.0, 0.0, ctx);
      r.status = CheckStatus::Fail;
      r.reason = "inverse map unexpectedly defined";
      out.add(std::move(r));
    }
  }
  return out;
}

struct SuiteDef {
  SuiteInfo info;
  std::optional<Statistics> fixed_stats;  // empty: both, or restricted by --stats
  std::function<SuiteReport(const Params&)> body;
};

const std::vector<SuiteDef>& defs() {
  static const std::vector<SuiteDef> d{
      {{"abelian-triangular", "abelian twist: four forms, gamma, R = F^-2, triangular QCR", {"exp:0.3"}, 12},
       std::nullopt,
       suite_abelian},
      {{"alpha-chaichian", "alpha conjugation onto the Chaichian map, q-Gamma recurrence", {"1.5"}, 12},
       Statistics::Bose,
       suite_alpha},
      {{"invariants", "order 1 and 2 invariants", {"exp:0.3", "1.4"}, 12}, std::nullopt, suite_invariants},
      {{"proto1d", "one-mode map and its QCR", {"0.5", "1.3", "exp:0.1i"}, 20}, Statistics::Bose, suite_proto1d},
      {{"pw-reps", "Pusz-Woronowicz classes, singularity scan, class 1 intertwining", {"0.6"}, 0},
       Statistics::Bose,
       suite_pw},
      {{"root-unity", "root-of-unity blocks", {"root:3"}, 9}, Statistics::Bose, suite_root_unity},
      {{"sl2-clifford", "closed-form Clifford map", {"0.7", "1.4"}, 2}, Statistics::Fermi, suite_sl2_clifford},
      {{"sl2-covariance", "covariance under the quantum action", {"0.7", "1.4"}, 12}, std::nullopt, suite_covariance},
      {{"sl2-hopf", "U_q(sl2) relations, antipode, module algebra, R-matrix", {"0.5", "1.4", "root:3"}, 12},
       Statistics::Bose,
       suite_hopf},
      {{"sl2-universal-equivalence", "twist-built map against the closed forms", {"0.7", "1.4"}, 12},
       std::nullopt,
       suite_equivalence},
      {{"sl2-weyl", "closed-form Weyl map", {"0.7", "1.4"}, 12}, Statistics::Bose, suite_sl2_weyl},
      {{"star", "star structure", {"0.7", "1.5"}, 12}, std::nullopt, suite_star},
  };
  return d;
}

std::string fmt_double(double x) {
  if (!std::isfinite(x)) return "null";
  if (x == 0.0) return "0";  // no -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string quote(const std::string& s) { return nlohmann::json(s).dump(); }

std::string stats_string(const std::optional<Statistics>& s) {
  if (!s) return "default";
  return s == Statistics::Bose ? "bose" : "fermi";
}

}  // namespace

const std::vector<SuiteInfo>& suite_registry() {
  static const std::vector<SuiteInfo> r = [] {
    std::vector<SuiteInfo> out;
    for (const auto& d : defs()) out.push_back(d.info);
    out.push_back({"all", "every suite with its default parameters", {}, 0});
    return out;
  }();
  return r;
}

bool RunReport::passed() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteReport& s) { return s.passed(); });
}

bool RunReport::operator==(const RunReport& other) const {
  if (version != other.version || config != other.config || suites.size() != other.suites.size()) return false;
  for (size_t i = 0; i < suites.size(); ++i) {
    const auto& a = suites[i];
    const auto& b = other.suites[i];
    if (a.name != b.name || a.config != b.config || a.checks != b.checks) return false;
  }
  return true;
}

RunReport run(const RunConfig& config) {
  const SuiteDef* only = nullptr;
  if (config.suite != "all") {
    for (const auto& d : defs())
      if (d.info.name == config.suite) only = &d;
    if (only == nullptr) throw UsageError("unknown suite '" + config.suite + "'");
  } else if (!config.q.empty() || config.cutoff || config.stats) {
    throw UsageError("'all' runs every suite with its defaults; --q, --cutoff and --stats are not accepted");
  }
  if (config.cutoff && *config.cutoff < 0) throw UsageError("--cutoff must be nonnegative");
  // dense operators: cutoff 60 is already a 1891-dimensional space
  if (config.cutoff && *config.cutoff > kMaxCutoff)
    throw UsageError("--cutoff above " + std::to_string(kMaxCutoff) + " is not supported");
  if (config.margin && *config.margin < 0) throw UsageError("--margin must be nonnegative");
  if (config.format != "json" && config.format != "text") throw UsageError("--format must be json or text");

  RunReport report;
  std::string qs;
  for (const auto& s : config.q) qs += (qs.empty() ? "" : ",") + s;
  std::string tols;
  for (const auto& [k, v] : config.tolerances) tols += (tols.empty() ? "" : ";") + k + "=" + fmt_double(v);
  report.config = {{"suite", config.suite},
                   {"q", qs.empty() ? "default" : qs},
                   {"cutoff", config.cutoff ? std::to_string(*config.cutoff) : "default"},
                   {"margin", config.margin ? std::to_string(*config.margin) : "default"},
                   {"stats", stats_string(config.stats)},
                   {"tol", tols},
                   {"seed", std::to_string(config.seed)}};

  std::vector<const SuiteDef*> selected;
  if (only != nullptr) {
    selected.push_back(only);
  } else {
    for (const auto& d : defs()) selected.push_back(&d);
  }

  // validate everything before running anything
  struct Job {
    const SuiteDef* def;
    Params params;
  };
  std::vector<Job> jobs;
  for (const SuiteDef* d : selected) {
    if (config.stats && d->fixed_stats && *config.stats != *d->fixed_stats) {
      throw UsageError(d->info.name + " is fixed to --stats " + stats_string(d->fixed_stats));
    }
    const auto& specs = config.q.empty() ? d->info.default_q : config.q;
    for (const auto& spec : specs) {
      Params p;
      p.q = parse_q_spec(spec);
      p.q_spec = spec;
      p.cutoff = config.cutoff.value_or(d->info.default_cutoff);
      p.margin = config.margin.value_or(2);
      p.stats = config.stats;
      p.seed = config.seed;
      jobs.push_back({d, p});
    }
  }

  for (const auto& job : jobs) {
    const auto start = std::chrono::steady_clock::now();
    SuiteReport block = job.def->body(job.params);
    block.duration_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    block.name = job.def->info.name;
    block.config = {{"q", job.params.q.describe()}};
    block.apply_tolerances(config.tolerances);
    block.sort_checks();
    report.suites.push_back(std::move(block));
  }
  std::stable_sort(report.suites.begin(), report.suites.end(),
                   [](const SuiteReport& a, const SuiteReport& b) { return a.name < b.name; });
  return report;
}

int exit_code(const RunReport& report) { return report.passed() ? 0 : 1; }

std::string to_json(const RunReport& report) {
  std::ostringstream os;
  os << "{\n  \"version\": " << quote(report.version) << ",\n  \"config\": {";
  bool first = true;
  for (const auto& [k, v] : report.config) {
    os << (first ? "" : ",") << "\n    " << quote(k) << ": " << quote(v);
    first = false;
  }
  os << "\n  },\n  \"status\": " << quote(report.passed() ? "pass" : "fail") << ",\n  \"suites\": [";
  for (size_t s = 0; s < report.suites.size(); ++s) {
    const auto& suite = report.suites[s];
    const auto q = suite.config.find("q");
    os << (s == 0 ? "" : ",") << "\n    {\n      \"name\": " << quote(suite.name)
       << ",\n      \"q\": " << quote(q == suite.config.end() ? "" : q->second)
       << ",\n      \"status\": " << quote(to_string(suite.status())) << ",\n      \"checks\": [";
    for (size_t c = 0; c < suite.checks.size(); ++c) {
      const auto& r = suite.checks[c];
      os << (c == 0 ? "" : ",") << "\n        {\"id\": " << quote(r.id) << ", \"residual\": " << fmt_double(r.residual)
         << ", \"tolerance\": " << fmt_double(r.tolerance) << ", \"expect\": " << quote(to_string(r.expect))
         << ", \"status\": " << quote(to_string(r.status));
      if (!r.reason.empty()) os << ", \"reason\": " << quote(r.reason);
      os << ", \"context\": {";
      bool cfirst = true;
      for (const auto& [k, v] : r.context) {
        os << (cfirst ? "" : ", ") << quote(k) << ": " << quote(v);
        cfirst = false;
      }
      os << "}}";
    }
    os << "\n      ]\n    }";
  }
  os << "\n  ]\n}\n";
  return os.str();
}

RunReport from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  auto number = [](const nlohmann::json& v) {
    return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
  };
  RunReport out;
  out.version = j.at("version").get<std::string>();
  out.config = j.at("config").get<std::map<std::string, std::string>>();
  for (const auto& s : j.at("suites")) {
    SuiteReport suite;
    suite.name = s.at("name").get<std::string>();
    suite.config = {{"q", s.at("q").get<std::string>()}};
    for (const auto& c : s.at("checks")) {
      RelationReport r;
      r.id = c.at("id").get<std::string>();
      r.residual = number(c.at("residual"));
      r.tolerance = number(c.at("tolerance"));
      r.expect = expect_from_string(c.at("expect").get<std::string>());
      r.status = check_status_from_string(c.at("status").get<std::string>());
      r.reason = c.value("reason", std::string());
      r.context = c.at("context").get<Context>();
      suite.checks.push_back(std::move(r));
    }
    out.suites.push_back(std::move(suite));
  }
  return out;
}

std::string to_text(const RunReport& report) {
  std::ostringstream os;
  os << "qdeform " << report.version << "  suite " << report.config.at("suite") << "\n";
  for (const auto& s : report.suites) {
    const auto q = s.config.find("q");
    char dur[32];
    std::snprintf(dur, sizeof dur, "%.3f", s.duration_seconds);
    os << "\n[" << to_string(s.status()) << "] " << s.name << "  q=" << (q == s.config.end() ? "" : q->second) << "  ("
       << s.checks.size() << " checks, " << dur << " s)\n";
    for (const auto& r : s.checks) {
      char line[64];
      os << "  " << to_string(r.status);
      for (size_t k = to_string(r.status).size(); k < 18; ++k) os << ' ';
      os << r.id;
      if (r.status == CheckStatus::Skip) {
        os << "  (" << r.reason << ")\n";
        continue;
      }
      std::snprintf(line, sizeof line, "  %.3e %s %.1e", r.residual, r.expect == Expect::Below ? "<" : ">",
                    r.tolerance);
      if (r.status == CheckStatus::ExpectedSingular) std::snprintf(line, sizeof line, "  value %.3e", r.residual);
      os << line;
      if (!r.reason.empty()) os << "  (" << r.reason << ")";
      os << "\n";
    }
  }
  os << "\noverall: " << (report.passed() ? "pass" : "fail") << "\n";
  return os.str();
}

int run_and_write(const RunConfig& config, std::ostream& os, std::ostream& err) {
  RunReport report;
  try {
    report = run(config);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ConstructionError& e) {
    err << "construction error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "construction error: " << e.what() << "\n";
    return 3;
  }
  const std::string body = config.format == "json" ? to_json(report) : to_text(report);
  if (config.out.empty()) {
    os << body;
  } else {
    std::ofstream f(config.out, std::ios::binary);
    if (!f) {
      err << "usage error: cannot write '" << config.out << "'\n";
      return 2;
    }
    f << body;
  }
  return exit_code(report);
}

}  // namespace qdeform
