#pragma once

#include "qdeform/deform.hpp"
#include "qdeform/fock.hpp"
#include "qdeform/verify.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace qdeform {

// Pusz-Woronowicz classes for 0 < q < 1:
// C1 (s=2), C2 (r=s=1), C3 (s=1, r=0), C4 (r=2, s=0), C5 (r=1, s=0).
enum class PWClass { C1, C2, C3, C4, C5 };

std::string to_string(PWClass c);
PWClass pw_class_from_string(const std::string& s);
bool pw_uses_energy(PWClass c);

// Integer ranges for the label coordinates. m-type coordinates run over
// [0, m_max], n-type over [n_min, n_max].
struct PWBounds {
  int m_max = 10;
  int n_min = -6;
  int n_max = 6;
};

// How one coordinate of |eta, eta_dn> depends on its integer label.
enum class EtaKind {
  Fock,    // q^{2x}/(q^2-1)
  Energy,  // q^{2x} E
  Zero,    // 0, fixed
};

struct PWRepresentation {
  DeformationParam q;
  PWClass cls = PWClass::C1;
  std::optional<double> energy;
  EtaKind kind_up = EtaKind::Fock, kind_dn = EtaKind::Fock;
  std::vector<std::array<int, 2>> labels;         // (x, y); Zero coordinates are held at 0
  std::vector<std::array<double, 2>> eta;         // (eta, eta_dn)
  DeformedQuartet quartet;                        // on the span of the labels
  Eigen::VectorXd wall;                           // 1 where a shift left the label set with nonzero amplitude
  Eigen::VectorXd interior_mask;

  SpaceTag space() const { return quartet.space; }
  Index dimension() const { return static_cast<Index>(labels.size()); }
  std::optional<Index> index_of(const std::array<int, 2>& label) const;
  InteriorProjector interior() const;
  std::string label_string(Index k) const;
};

// E defaults to (q^2 + 1)/2 for the classes that use it; it must be absent
// for C1 and C3.
PWRepresentation pw_build(const DeformationParam& q, PWClass cls, std::optional<double> energy = std::nullopt,
                          const PWBounds& bounds = {});

enum class ArgumentSign { Positive, Zero, Negative };
std::string to_string(ArgumentSign s);

struct ScanEntry {
  std::string label;
  double arg_dn = 0.0;     // (q^2-1) eta_dn = 1 + (q^2-1) N_dn
  double arg_total = 0.0;  // (q^2-1) eta    = 1 + (q^2-1) N
};

struct SingularityScan {
  PWClass cls = PWClass::C1;
  std::vector<ScanEntry> entries;
  int positive = 0, zero = 0, negative = 0;  // over all arguments
  // Negative if any argument is negative, else Zero if any vanishes.
  ArgumentSign summary() const;
  bool all_positive() const { return zero == 0 && negative == 0; }
};

SingularityScan singularity_scan(const PWRepresentation& rep, double zero_tol = 1e-12);

// Largest deviation of the diagonal identities N_up = eta - eta_dn,
// N_dn = eta_dn - 1/(q^2-1), 1 + (q^2-1)N = (q^2-1)eta, on the interior.
double eigenvalue_identity_residual(const PWRepresentation& rep);

struct IntertwineReport {
  SuiteReport report;
  std::optional<DeformedQuartet> recovered;
};

// Inverse map on a C1 representation: CCR, the spectra of the recovered
// number operators, the ground state, and the forward map round trip.
IntertwineReport intertwine_class1(const PWRepresentation& rep, double tol = 1e-9);

struct Block {
  Occupation cyclic;
  std::vector<Index> support;  // basis indices reached
  Index dimension = 0;
};

struct BlockDecomposition {
  int p = 0;
  std::vector<Occupation> cyclic_vectors;  // every |mp, np> within the cutoff
  std::vector<Block> blocks;               // complete blocks only
  std::vector<Index> unreached;
  double annihilation_residual = 0.0;      // over all cyclic vectors
  double closure_residual = 0.0;           // (A+_i)^p on, and A, A+ leaving, each block
  bool disjoint = true;
};

// Complete blocks are those with mp + np + 2(p-1) <= cutoff.
BlockDecomposition root_unity_blocks(const FockSpace& space, int p, const DeformedQuartet& quartet);

}  // namespace qdeform
