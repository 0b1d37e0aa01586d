#include "qdeform/reps.hpp"

#include "qdeform/error.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>

namespace qdeform {

std::string to_string(PWClass c) {
  switch (c) {
    case PWClass::C1:
      return "C1";
    case PWClass::C2:
      return "C2";
    case PWClass::C3:
      return "C3";
    case PWClass::C4:
      return "C4";
    case PWClass::C5:
      return "C5";
  }
  return "C1";
}

PWClass pw_class_from_string(const std::string& s) {
  for (PWClass c : {PWClass::C1, PWClass::C2, PWClass::C3, PWClass::C4, PWClass::C5}) {
    if (to_string(c) == s) return c;
  }
  throw std::invalid_argument("unknown Pusz-Woronowicz class '" + s + "'");
}

bool pw_uses_energy(PWClass c) { return c == PWClass::C2 || c == PWClass::C4 || c == PWClass::C5; }

std::string to_string(ArgumentSign s) {
  switch (s) {
    case ArgumentSign::Positive:
      return "positive";
    case ArgumentSign::Zero:
      return "zero";
    case ArgumentSign::Negative:
      return "negative";
  }
  return "positive";
}

std::optional<Index> PWRepresentation::index_of(const std::array<int, 2>& label) const {
  const auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) return std::nullopt;
  return static_cast<Index>(it - labels.begin());
}

InteriorProjector PWRepresentation::interior() const { return InteriorProjector(quartet.space, interior_mask, 2); }

std::string PWRepresentation::label_string(Index k) const {
  const auto& l = labels.at(static_cast<size_t>(k));
  switch (cls) {
    case PWClass::C3:
      return "(" + std::to_string(l[1]) + ")";
    case PWClass::C5:
      return "(" + std::to_string(l[0]) + ")";
    default:
      return "(" + std::to_string(l[0]) + "," + std::to_string(l[1]) + ")";
  }
}

namespace {

double eta_value(EtaKind kind, int x, double q, double energy) {
  switch (kind) {
    case EtaKind::Fock:
      return std::pow(q, 2 * x) / (q * q - 1.0);
    case EtaKind::Energy:
      return std::pow(q, 2 * x) * energy;
    case EtaKind::Zero:
      return 0.0;
  }
  return 0.0;
}

// shortest round-trip form
std::string fmt(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace

PWRepresentation pw_build(const DeformationParam& q, PWClass cls, std::optional<double> energy,
                          const PWBounds& bounds) {
  const cplx qc = q.q();
  if (std::abs(qc.imag()) > 0.0 || !(qc.real() > 0.0 && qc.real() < 1.0)) {
    throw std::invalid_argument("pw_build: requires 0 < q < 1, got " + q.describe());
  }
  const double qr = qc.real();
  if (pw_uses_energy(cls)) {
    if (!energy) energy = (qr * qr + 1.0) / 2.0;
    if (!(*energy > qr * qr && *energy < 1.0)) {
      throw std::invalid_argument("pw_build: E must satisfy q^2 < E < 1, got " + fmt(*energy));
    }
  } else if (energy) {
    throw std::invalid_argument("pw_build: E is irrelevant for class " + to_string(cls) + " and must be absent");
  }
  if (bounds.m_max < 1 || bounds.n_max <= bounds.n_min) throw std::invalid_argument("pw_build: empty bounds");

  PWRepresentation rep;
  rep.q = q;
  rep.cls = cls;
  rep.energy = energy;
  switch (cls) {
    case PWClass::C1:
      rep.kind_up = EtaKind::Fock;
      rep.kind_dn = EtaKind::Fock;
      for (int m1 = 0; m1 <= bounds.m_max; ++m1)
        for (int m2 = 0; m2 <= m1; ++m2) rep.labels.push_back({m1, m2});
      break;
    case PWClass::C2:
      rep.kind_up = EtaKind::Energy;
      rep.kind_dn = EtaKind::Fock;
      for (int n1 = bounds.n_min; n1 <= bounds.n_max; ++n1)
        for (int m1 = 0; m1 <= bounds.m_max; ++m1) rep.labels.push_back({n1, m1});
      break;
    case PWClass::C3:
      rep.kind_up = EtaKind::Zero;
      rep.kind_dn = EtaKind::Fock;
      for (int m1 = 0; m1 <= bounds.m_max; ++m1) rep.labels.push_back({0, m1});
      break;
    case PWClass::C4:
      rep.kind_up = EtaKind::Energy;
      rep.kind_dn = EtaKind::Energy;
      for (int n1 = bounds.n_min; n1 <= bounds.n_max; ++n1)
        for (int n2 = n1 + 1; n2 <= bounds.n_max; ++n2) rep.labels.push_back({n1, n2});
      break;
    case PWClass::C5:
      rep.kind_up = EtaKind::Energy;
      rep.kind_dn = EtaKind::Zero;
      for (int n1 = bounds.n_min; n1 <= bounds.n_max; ++n1) rep.labels.push_back({n1, 0});
      break;
  }

  const double e = energy.value_or(0.0);
  const double inv = 1.0 / (qr * qr - 1.0);
  const Index dim = rep.dimension();
  for (const auto& l : rep.labels) {
    rep.eta.push_back({eta_value(rep.kind_up, l[0], qr, e), eta_value(rep.kind_dn, l[1], qr, e)});
  }

  SpaceTag tag;
  tag.id = "pw:" + to_string(cls) + ":q=" + q.describe() + (energy ? ":E=" + fmt(*energy) : std::string()) +
           ":m<=" + std::to_string(bounds.m_max) + ":n=" + std::to_string(bounds.n_min) + ".." +
           std::to_string(bounds.n_max);
  tag.dim = dim;

  std::map<std::array<int, 2>, Index> index;
  for (Index k = 0; k < dim; ++k) index[rep.labels[static_cast<size_t>(k)]] = k;

  const int step_up = rep.kind_up == EtaKind::Zero ? 0 : 1;
  const int step_dn = rep.kind_dn == EtaKind::Zero ? 0 : 1;
  // ann up, ann dn, cre up, cre dn
  const std::array<std::array<int, 2>, 4> shift{{{-step_up, 0}, {-step_up, -step_dn}, {step_up, 0}, {step_up, step_dn}}};
  std::array<DenseMatrix<cplx>, 4> mats;
  for (auto& m : mats) m = DenseMatrix<cplx>::Zero(dim, dim);
  rep.wall = Eigen::VectorXd::Zero(dim);
  std::vector<std::vector<Index>> images(static_cast<size_t>(dim));
  std::vector<std::string> offending;

  for (Index k = 0; k < dim; ++k) {
    const auto [eta, eta_dn] = rep.eta[static_cast<size_t>(k)];
    const std::array<std::array<double, 2>, 4> parts{
        {{eta, -eta_dn}, {eta_dn, -inv}, {qr * qr * eta, -eta_dn}, {qr * qr * eta_dn, -inv}}};
    for (int op = 0; op < 4; ++op) {
      double rad = parts[op][0] + parts[op][1];
      const double scale = std::max({1.0, std::abs(parts[op][0]), std::abs(parts[op][1])});
      if (rad < 0.0) {
        if (rad < -1e-12 * scale) {
          offending.push_back(rep.label_string(k) + " op " + std::to_string(op) + " radicand " + fmt(rad));
          continue;
        }
        rad = 0.0;
      }
      if (rad <= 1e-12 * scale) continue;
      const auto& l = rep.labels[static_cast<size_t>(k)];
      const std::array<int, 2> target{l[0] + shift[op][0], l[1] + shift[op][1]};
      const auto it = index.find(target);
      if (it == index.end()) {
        rep.wall(k) = 1.0;
        continue;
      }
      mats[op](it->second, k) = std::sqrt(rad);
      images[static_cast<size_t>(k)].push_back(it->second);
    }
  }
  if (!offending.empty()) {
    throw ConstructionError("pw_build: negative radicand in class " + to_string(cls), offending);
  }

  rep.interior_mask = Eigen::VectorXd::Zero(dim);
  for (Index k = 0; k < dim; ++k) {
    if (rep.wall(k) != 0.0) continue;
    const auto& im = images[static_cast<size_t>(k)];
    if (std::all_of(im.begin(), im.end(), [&](Index t) { return rep.wall(t) == 0.0; })) rep.interior_mask(k) = 1.0;
  }

  DeformedQuartet& out = rep.quartet;
  out.space = tag;
  out.q = q;
  out.provenance = Provenance::PuszWoronowicz;
  out.sign = Sign::Weyl;
  out.ann = {Operator(tag, mats[0]), Operator(tag, mats[1])};
  out.cre = {Operator(tag, mats[2]), Operator(tag, mats[3])};
  for (Index k = 0; k < dim; ++k) out.basis_labels.push_back(rep.label_string(k));
  return rep;
}

ArgumentSign SingularityScan::summary() const {
  if (negative > 0) return ArgumentSign::Negative;
  if (zero > 0) return ArgumentSign::Zero;
  return ArgumentSign::Positive;
}

SingularityScan singularity_scan(const PWRepresentation& rep, double zero_tol) {
  const double k = std::norm(rep.q.q()) - 1.0;
  SingularityScan scan;
  scan.cls = rep.cls;
  auto tally = [&](double v) {
    if (std::abs(v) <= zero_tol)
      ++scan.zero;
    else if (v < 0.0)
      ++scan.negative;
    else
      ++scan.positive;
  };
  for (Index i = 0; i < rep.dimension(); ++i) {
    const auto [eta, eta_dn] = rep.eta[static_cast<size_t>(i)];
    ScanEntry e{rep.label_string(i), k * eta_dn, k * eta};
    tally(e.arg_dn);
    tally(e.arg_total);
    scan.entries.push_back(std::move(e));
  }
  return scan;
}

double eigenvalue_identity_residual(const PWRepresentation& rep) {
  const double k = std::norm(rep.q.q()) - 1.0;
  const Index dim = rep.dimension();
  DenseVector<cplx> up(dim), dn(dim), total(dim);
  for (Index i = 0; i < dim; ++i) {
    const auto [eta, eta_dn] = rep.eta[static_cast<size_t>(i)];
    up(i) = eta - eta_dn;
    dn(i) = eta_dn - 1.0 / k;
    total(i) = k * eta;
  }
  const auto& Q = rep.quartet;
  const Operator n_up = Q.Ap_up() * Q.A_up();
  const Operator n_dn = Q.Ap_dn() * Q.A_dn();
  const auto id = Operator::identity(Q.space);
  const auto p = rep.interior();
  return std::max({p.residual(n_up - from_diagonal(Q.space, up)), p.residual(n_dn - from_diagonal(Q.space, dn)),
                   p.residual(id + k * (n_up + n_dn) - from_diagonal(Q.space, total))});
}

IntertwineReport intertwine_class1(const PWRepresentation& rep, double tol) {
  if (rep.cls != PWClass::C1) throw std::invalid_argument("intertwine_class1: requires a C1 representation");
  if (!singularity_scan(rep).all_positive()) {
    throw std::invalid_argument("intertwine_class1: singularity scan is not all-positive");
  }
  const auto p = rep.interior();
  IntertwineReport out;
  const Context ctx = context_of(rep.quartet, p);
  const auto inv = inverse_map_sl2(rep.quartet, p);
  if (!inv.recovered) {
    out.report.add(make_check("intertwine.singular", static_cast<double>(inv.singular.size()), 0.5, ctx));
    return out;
  }
  const DeformedQuartet& rec = *inv.recovered;
  out.report.append(check_ccr(rec, p, tol, "intertwine.ccr"));

  // (n_up, n_dn) = (m1 - m2, m2)
  const Index dim = rep.dimension();
  DenseVector<cplx> up(dim), dn(dim);
  for (Index i = 0; i < dim; ++i) {
    const auto& l = rep.labels[static_cast<size_t>(i)];
    up(i) = l[0] - l[1];
    dn(i) = l[1];
  }
  out.report.add(make_check("intertwine.spectrum.up",
                            p.residual(rec.Ap_up() * rec.A_up() - from_diagonal(rec.space, up)), tol, ctx));
  out.report.add(make_check("intertwine.spectrum.dn",
                            p.residual(rec.Ap_dn() * rec.A_dn() - from_diagonal(rec.space, dn)), tol, ctx));

  const auto ground = rep.index_of({0, 0});
  double g = 0.0;
  for (const auto& a : rec.ann) g = std::max(g, a.matrix().col(*ground).cwiseAbs().maxCoeff());
  out.report.add(make_check("intertwine.ground-state", g, tol, ctx));

  const auto fwd = weyl_closed_form(rec.ann, rec.cre, rep.q);
  double trip = 0.0;
  for (int i = 0; i < 2; ++i) {
    trip = std::max(trip, p.residual(fwd.ann[static_cast<size_t>(i)] - rep.quartet.ann[static_cast<size_t>(i)]));
    trip = std::max(trip, p.residual(fwd.cre[static_cast<size_t>(i)] - rep.quartet.cre[static_cast<size_t>(i)]));
  }
  out.report.add(make_check("intertwine.round-trip", trip, tol, ctx));
  out.recovered = rec;
  return out;
}

BlockDecomposition root_unity_blocks(const FockSpace& space, int p, const DeformedQuartet& quartet) {
  if (p < 2) throw std::invalid_argument("root_unity_blocks: p must be at least 2");
  if (space.mode_count() != 2 || space.statistics() != Statistics::Bose) {
    throw std::invalid_argument("root_unity_blocks: expects a 2-mode Bose space");
  }
  if (!(space.tag() == quartet.space)) throw std::invalid_argument("root_unity_blocks: space mismatch");
  if (space.cutoff() < 3 * p) {
    throw std::invalid_argument("root_unity_blocks: cutoff " + std::to_string(space.cutoff()) + " below 3p");
  }
  const Index dim = space.dimension();
  const int cutoff = space.cutoff();
  BlockDecomposition out;
  out.p = p;

  std::vector<Operator> cre_pow;
  for (const auto& c : quartet.cre) cre_pow.push_back(power(c, p));

  std::vector<int> owner(static_cast<size_t>(dim), -1);
  for (int m = 0; m * p <= cutoff; ++m) {
    for (int n = 0; (m + n) * p <= cutoff; ++n) {
      const Occupation occ{m * p, n * p};
      out.cyclic_vectors.push_back(occ);
      const Index c = *space.index_of(occ);
      for (const auto& a : quartet.ann) {
        out.annihilation_residual = std::max(out.annihilation_residual, a.matrix().col(c).cwiseAbs().maxCoeff());
      }
      if ((m + n) * p + 2 * (p - 1) > cutoff) continue;

      // columns (A+_up)^a (A+_dn)^b |mp, np>
      DenseMatrix<cplx> cols(dim, p * p);
      DenseVector<cplx> e = DenseVector<cplx>::Zero(dim);
      e(c) = 1.0;
      DenseVector<cplx> vb = e;
      for (int b = 0; b < p; ++b) {
        DenseVector<cplx> v = vb;
        for (int a = 0; a < p; ++a) {
          cols.col(b * p + a) = v;
          v = quartet.cre[0].matrix() * v;
        }
        vb = quartet.cre[1].matrix() * vb;
      }
      Eigen::JacobiSVD<DenseMatrix<cplx>> svd(cols, Eigen::ComputeThinU);
      const auto& sv = svd.singularValues();
      Index rank = 0;
      for (Index i = 0; i < sv.size(); ++i)
        if (sv(i) > 1e-10 * sv(0)) ++rank;
      const DenseMatrix<cplx> basis = svd.matrixU().leftCols(rank);

      Block blk;
      blk.cyclic = occ;
      blk.dimension = rank;
      for (Index r = 0; r < dim; ++r) {
        if (cols.row(r).cwiseAbs().maxCoeff() > 1e-12) {
          blk.support.push_back(r);
          if (owner[static_cast<size_t>(r)] >= 0) out.disjoint = false;
          owner[static_cast<size_t>(r)] = static_cast<int>(out.blocks.size());
        }
      }
      const DenseMatrix<cplx> leave = DenseMatrix<cplx>::Identity(dim, dim) - basis * basis.adjoint();
      for (const auto& x : quartet.ann)
        out.closure_residual = std::max(out.closure_residual, (leave * x.matrix() * basis).cwiseAbs().maxCoeff());
      for (const auto& x : quartet.cre)
        out.closure_residual = std::max(out.closure_residual, (leave * x.matrix() * basis).cwiseAbs().maxCoeff());
      for (const auto& x : cre_pow)
        out.closure_residual = std::max(out.closure_residual, (x.matrix() * basis).cwiseAbs().maxCoeff());
      out.blocks.push_back(std::move(blk));
    }
  }
  for (Index r = 0; r < dim; ++r)
    if (owner[static_cast<size_t>(r)] < 0) out.unreached.push_back(r);
  return out;
}

}  // namespace qdeform
