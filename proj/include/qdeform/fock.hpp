#pragma once

#include "qdeform/op.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace qdeform {

enum class Statistics { Bose, Fermi };

using Occupation = std::vector<int>;

std::string to_string(Statistics s);
std::string to_string(const Occupation& occ);

// Truncated multi-mode Fock space. Basis states are the occupation tuples with
// total quanta <= cutoff (entries in {0,1} for Fermi), ordered by ascending
// total and, within a total, lexicographically descending, so for two modes
// (1,0) precedes (0,1).
class FockSpace {
 public:
  FockSpace(int mode_count, Statistics statistics, int cutoff);

  int mode_count() const { return data_->modes; }
  Statistics statistics() const { return data_->statistics; }
  int cutoff() const { return data_->cutoff; }
  Index dimension() const { return static_cast<Index>(data_->basis.size()); }
  const std::vector<Occupation>& basis() const { return data_->basis; }
  const Occupation& state(Index k) const { return data_->basis.at(static_cast<size_t>(k)); }
  int total(Index k) const;
  std::optional<Index> index_of(const Occupation& occ) const;
  const SpaceTag& tag() const { return data_->tag; }

  bool operator==(const FockSpace& other) const { return tag() == other.tag(); }

 private:
  struct Data {
    int modes = 0;
    Statistics statistics = Statistics::Bose;
    int cutoff = 0;
    std::vector<Occupation> basis;
    std::map<Occupation, Index> lookup;
    SpaceTag tag;
  };
  std::shared_ptr<const Data> data_;
};

FockSpace make_space(int mode_count, Statistics statistics, int cutoff);

namespace detail {
void check_mode(const FockSpace& space, int i);
}

// a+_i in the occupation basis. Raising past the cutoff gives the zero vector.
// Fermionic signs follow the Jordan-Wigner string ordered by mode index.
template <typename Scalar = cplx>
Op<Scalar> creator(const FockSpace& space, int i) {
  detail::check_mode(space, i);
  const Index dim = space.dimension();
  DenseMatrix<Scalar> m = DenseMatrix<Scalar>::Zero(dim, dim);
  for (Index col = 0; col < dim; ++col) {
    Occupation raised = space.state(col);
    const int n = raised[static_cast<size_t>(i)];
    if (space.statistics() == Statistics::Fermi && n == 1) continue;
    raised[static_cast<size_t>(i)] += 1;
    const auto row = space.index_of(raised);
    if (!row) continue;
    if (space.statistics() == Statistics::Bose) {
      m(*row, col) = Scalar(std::sqrt(static_cast<double>(n + 1)));
    } else {
      int parity = 0;
      for (int k = 0; k < i; ++k) parity += raised[static_cast<size_t>(k)];
      m(*row, col) = Scalar(parity % 2 == 0 ? 1.0 : -1.0);
    }
  }
  return Op<Scalar>(space.tag(), std::move(m));
}

template <typename Scalar = cplx>
Op<Scalar> annihilator(const FockSpace& space, int i) {
  return adjoint(creator<Scalar>(space, i));
}

template <typename Scalar = cplx>
struct NumberOps {
  std::vector<Op<Scalar>> per_mode;
  Op<Scalar> total;
};

// Diagonal occupation-number operators, built directly from the basis.
template <typename Scalar = cplx>
NumberOps<Scalar> number_ops(const FockSpace& space) {
  NumberOps<Scalar> out;
  const Index dim = space.dimension();
  DenseVector<Scalar> total = DenseVector<Scalar>::Zero(dim);
  for (int i = 0; i < space.mode_count(); ++i) {
    DenseVector<Scalar> d(dim);
    for (Index k = 0; k < dim; ++k) d(k) = Scalar(space.state(k)[static_cast<size_t>(i)]);
    total += d;
    out.per_mode.push_back(from_diagonal(space.tag(), d));
  }
  out.total = from_diagonal(space.tag(), total);
  return out;
}

// Orthogonal projector onto a subset of basis states, stored as a 0/1 mask.
// For a Fock space the subset is "total quanta <= cutoff - margin": a relation
// whose sides are words of length <= margin in creators/annihilators holds
// without truncation error between such states.
class InteriorProjector {
 public:
  InteriorProjector(SpaceTag space, Eigen::VectorXd mask, int margin);

  const SpaceTag& space() const { return space_; }
  int margin() const { return margin_; }
  const Eigen::VectorXd& mask() const { return mask_; }
  Index rank() const;
  bool empty() const { return rank() == 0; }
  const std::optional<std::string>& warning() const { return warning_; }
  bool contains(Index k) const { return mask_(k) != 0.0; }

  Operator matrix() const;

  // P X P
  Operator project(const Operator& x) const;
  // max |(P X P)_{rc}|
  double residual(const Operator& x) const;

 private:
  SpaceTag space_;
  Eigen::VectorXd mask_;
  int margin_ = 0;
  std::optional<std::string> warning_;
};

InteriorProjector interior(const FockSpace& space, int margin = 2);
InteriorProjector full_space(const SpaceTag& space);

}  // namespace qdeform
