#pragma once

#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "qbell/pauli.hpp"
#include "qbell/statevector.hpp"

namespace qbell {

/// Mixed n-qubit state. Same index convention as StateVector. Immutable after
/// construction; operations return new matrices.
class DensityMatrix {
 public:
  /// |psi><psi|.
  explicit DensityMatrix(const StateVector& psi);

  /// Validates Hermiticity (1e-12 entrywise), unit trace (1e-12) and
  /// positive semidefiniteness (eigenvalues >= -1e-10).
  static DensityMatrix from_matrix(int num_qubits, Eigen::MatrixXcd entries);

  int num_qubits() const { return num_qubits_; }
  long dim() const { return entries_.rows(); }
  const Eigen::MatrixXcd& entries() const { return entries_; }

 private:
  DensityMatrix(int num_qubits, Eigen::MatrixXcd entries, bool /*trusted*/)
      : num_qubits_(num_qubits), entries_(std::move(entries)) {}

  int num_qubits_;
  Eigen::MatrixXcd entries_;

  friend DensityMatrix unchecked_density(int, Eigen::MatrixXcd);
};

DensityMatrix unchecked_density(int num_qubits, Eigen::MatrixXcd entries);

DensityMatrix apply_gate(const DensityMatrix& rho, const GateSpec& gate);
DensityMatrix apply_gates(const DensityMatrix& rho, std::span<const GateSpec> gates);
DensityMatrix apply_pauli(const DensityMatrix& rho, const PauliString& p);

/// Weighted Kraus decomposition of a CPTP map on `arity` qubits. Construction
/// enforces completeness sum_k E_k^dag E_k = I within 1e-10.
class KrausChannel {
 public:
  struct Term {
    double coefficient;  // sqrt of the branch probability for unitary branches
    std::variant<PauliString, Eigen::MatrixXcd> op;
  };

  KrausChannel(int arity, std::vector<Term> terms);

  int arity() const { return arity_; }
  const std::vector<Term>& terms() const { return terms_; }

 private:
  int arity_;
  std::vector<Term> terms_;
};

/// sum_k E_k rho E_k^dag with the channel embedded on `targets` (targets[i]
/// is qubit i of the channel's operators).
DensityMatrix apply_channel(const DensityMatrix& rho, const KrausChannel& channel,
                            std::span<const int> targets);

/// Fidelity as the overlap root sqrt(<psi|rho|psi>).
double fidelity(const StateVector& reference, const DensityMatrix& rho);

/// Reduced state on `keep` (any order; output qubit order is ascending).
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);
DensityMatrix partial_trace(const StateVector& psi, std::span<const int> keep);

/// -sum lambda log2 lambda in bits; eigenvalues in [-1e-10, 0] clamp to 0.
double von_neumann_entropy(const DensityMatrix& rho);

struct MutualInformation {
  double s_a;
  double s_b;
  double s_ab;
  double s_a_given_b;  // S_AB - S_B
  double mutual;       // S_A + S_B - S_AB
};

/// Entropy bookkeeping for a bipartition. The two parts must be disjoint and
/// together cover every qubit.
MutualInformation mutual_information(const DensityMatrix& rho_ab,
                                     std::span<const int> part_a,
                                     std::span<const int> part_b);

}  // namespace qbell
