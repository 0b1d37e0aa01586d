#include "qdeform/fock.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace qdeform {

std::string to_string(Statistics s) { return s == Statistics::Bose ? "bose" : "fermi"; }

std::string to_string(const Occupation& occ) {
  std::ostringstream os;
  os << '(';
  for (size_t i = 0; i < occ.size(); ++i) os << (i ? "," : "") << occ[i];
  os << ')';
  return os.str();
}

namespace {

// All tuples of `modes` entries in [0, max_entry] summing to `total`, in
// descending lexicographic order.
void enumerate(int modes, int total, int max_entry, Occupation& prefix, std::vector<Occupation>& out) {
  if (static_cast<int>(prefix.size()) == modes - 1) {
    if (total <= max_entry) {
      prefix.push_back(total);
      out.push_back(prefix);
      prefix.pop_back();
    }
    return;
  }
  for (int v = std::min(total, max_entry); v >= 0; --v) {
    prefix.push_back(v);
    enumerate(modes, total - v, max_entry, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

FockSpace::FockSpace(int mode_count, Statistics statistics, int cutoff) {
  if (mode_count < 1) throw std::invalid_argument("make_space: mode_count must be >= 1");
  if (cutoff < 0) throw std::invalid_argument("make_space: cutoff must be >= 0");
  auto data = std::make_shared<Data>();
  data->modes = mode_count;
  data->statistics = statistics;
  data->cutoff = statistics == Statistics::Fermi ? std::min(cutoff, mode_count) : cutoff;
  const int max_entry = statistics == Statistics::Fermi ? 1 : data->cutoff;
  for (int total = 0; total <= data->cutoff; ++total) {
    Occupation prefix;
    enumerate(mode_count, total, max_entry, prefix, data->basis);
  }
  for (size_t k = 0; k < data->basis.size(); ++k) data->lookup.emplace(data->basis[k], static_cast<Index>(k));
  data->tag.id = "fock:" + to_string(statistics) + ":modes=" + std::to_string(mode_count) +
                 ":cutoff=" + std::to_string(data->cutoff);
  data->tag.dim = static_cast<Index>(data->basis.size());
  data_ = std::move(data);
}

int FockSpace::total(Index k) const {
  const auto& s = state(k);
  return std::accumulate(s.begin(), s.end(), 0);
}

std::optional<Index> FockSpace::index_of(const Occupation& occ) const {
  const auto it = data_->lookup.find(occ);
  if (it == data_->lookup.end()) return std::nullopt;
  return it->second;
}

FockSpace make_space(int mode_count, Statistics statistics, int cutoff) {
  return FockSpace(mode_count, statistics, cutoff);
}

namespace detail {
void check_mode(const FockSpace& space, int i) {
  if (i < 0 || i >= space.mode_count()) {
    throw std::out_of_range("mode index " + std::to_string(i) + " out of range for " +
                            std::to_string(space.mode_count()) + " modes");
  }
}
}  // namespace detail

InteriorProjector::InteriorProjector(SpaceTag space, Eigen::VectorXd mask, int margin)
    : space_(std::move(space)), mask_(std::move(mask)), margin_(margin) {
  if (mask_.size() != space_.dim) throw std::invalid_argument("InteriorProjector: mask size mismatch");
  for (Index k = 0; k < mask_.size(); ++k) {
    if (mask_(k) != 0.0 && mask_(k) != 1.0) throw std::invalid_argument("InteriorProjector: mask must be 0/1");
  }
  if (rank() == 0 && space_.dim > 0) warning_ = "empty interior on " + space_.id;
}

Index InteriorProjector::rank() const { return static_cast<Index>(mask_.sum()); }

Operator InteriorProjector::matrix() const {
  return from_diagonal(space_, DenseVector<cplx>(mask_.cast<cplx>()));
}

Operator InteriorProjector::project(const Operator& x) const {
  if (!(x.space() == space_)) throw std::invalid_argument("InteriorProjector: space mismatch");
  const auto p = mask_.cast<cplx>().asDiagonal();
  return Operator(space_, p * x.matrix() * p);
}

double InteriorProjector::residual(const Operator& x) const {
  if (!(x.space() == space_)) throw std::invalid_argument("InteriorProjector: space mismatch");
  double worst = 0.0;
  const auto& m = x.matrix();
  for (Index c = 0; c < m.cols(); ++c) {
    if (mask_(c) == 0.0) continue;
    for (Index r = 0; r < m.rows(); ++r) {
      if (mask_(r) == 0.0) continue;
      worst = std::max(worst, std::abs(m(r, c)));
    }
  }
  return worst;
}

InteriorProjector interior(const FockSpace& space, int margin) {
  if (margin < 0) throw std::invalid_argument("interior: margin must be >= 0");
  Eigen::VectorXd mask(space.dimension());
  const int limit = space.cutoff() - margin;
  for (Index k = 0; k < space.dimension(); ++k) mask(k) = space.total(k) <= limit ? 1.0 : 0.0;
  InteriorProjector p(space.tag(), std::move(mask), margin);
  return p;
}

InteriorProjector full_space(const SpaceTag& space) {
  return InteriorProjector(space, Eigen::VectorXd::Ones(space.dim), 0);
}

}  // namespace qdeform
