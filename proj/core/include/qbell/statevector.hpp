#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qbell {

using cdouble = std::complex<double>;

/// Dense simulation is capped here; the largest supported scenario needs 14
/// qubits and syndrome measurement temporarily borrows one more.
inline constexpr int kMaxQubits = 16;

enum class GateKind { H, X, Z, Cnot, ControlledUnitary, RawUnitary };

/// A gate plus the qubits it acts on. Qubit indices are 0-based and
/// little-endian: qubit q is bit q of the amplitude index.
struct GateSpec {
  GateKind kind{};
  std::vector<int> controls;  // empty except Cnot / ControlledUnitary
  std::vector<int> targets;   // one entry except RawUnitary
  Eigen::MatrixXcd matrix;    // 2x2 (single / controlled) or 2^m x 2^m (raw)

  static GateSpec h(int target);
  static GateSpec x(int target);
  static GateSpec z(int target);
  static GateSpec cnot(int control, int target);
  static GateSpec controlled_unitary(std::vector<int> controls, int target,
                                     const Eigen::Matrix2cd& unitary);
  static GateSpec raw_unitary(std::vector<int> targets,
                              const Eigen::MatrixXcd& unitary);
};

/// Pure n-qubit state. Immutable after construction: every operation returns
/// a new state, so states can be fanned out across threads freely.
class StateVector {
 public:
  /// |0...0> on num_qubits qubits.
  explicit StateVector(int num_qubits);

  /// Validates length 2^num_qubits and unit norm (1e-12).
  static StateVector from_amplitudes(int num_qubits, std::vector<cdouble> amps);

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  const std::vector<cdouble>& amplitudes() const { return amps_; }
  cdouble amplitude(std::size_t basis_index) const { return amps_.at(basis_index); }

  double norm() const;

 private:
  StateVector(int num_qubits, std::vector<cdouble> amps, bool /*trusted*/)
      : num_qubits_(num_qubits), amps_(std::move(amps)) {}

  int num_qubits_;
  std::vector<cdouble> amps_;

  friend StateVector apply_gate(const StateVector&, const GateSpec&);
  friend class PauliString;
  friend StateVector tensor(const StateVector&, const StateVector&);
  friend StateVector unchecked_state(int, std::vector<cdouble>);
};

StateVector apply_gate(const StateVector& state, const GateSpec& gate);

/// Wraps amplitudes that are already known to be normalized (internal use by
/// gate/channel kernels; skips the norm check).
StateVector unchecked_state(int num_qubits, std::vector<cdouble> amps);

StateVector apply_gates(const StateVector& state, std::span<const GateSpec> gates);

/// |a> tensor |b>; qubits of `a` stay the low-order bits.
StateVector tensor(const StateVector& a, const StateVector& b);

/// |<a|b>| -- global-phase-insensitive overlap.
double overlap(const StateVector& a, const StateVector& b);

cdouble inner_product(const StateVector& a, const StateVector& b);

enum class BellLabel { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

/// (|0>|m> + (-1)^n |1>|1 xor m>)/sqrt(2), built as H, CNOT, then the local
/// Z^n / X^m transforms on qubit B.
StateVector prepare_bell(int m, int n);
StateVector prepare_bell(BellLabel label);

BellLabel bell_label(int m, int n);
std::pair<int, int> bell_bits(BellLabel label);
std::string bell_name(BellLabel label);

/// Single-qubit gates on qubit B (index 1) that map `source` to `target` up
/// to global phase.
std::vector<GateSpec> bell_transform(BellLabel source, BellLabel target);

namespace detail {
// In-place 2x2 kernel shared by the statevector and density-matrix paths.
void apply_single_qubit(std::span<cdouble> amps, int num_qubits, int target,
                        const Eigen::Matrix2cd& u);
void apply_controlled(std::span<cdouble> amps, int num_qubits,
                      std::span<const int> controls, int target,
                      const Eigen::Matrix2cd& u);
void apply_raw(std::span<cdouble> amps, int num_qubits,
               std::span<const int> targets, const Eigen::MatrixXcd& u);
void apply_gate_inplace(std::span<cdouble> amps, int num_qubits,
                        const GateSpec& gate);
}  // namespace detail

}  // namespace qbell
