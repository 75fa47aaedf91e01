#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "qbell/statevector.hpp"

namespace qbell {

/// Symbolic n-qubit Pauli operator with an exact phase in {+1, +i, -1, -i}.
///
/// Stored as op = i^phase * X^x_mask * Z^z_mask, bit q of a mask = qubit q
/// (user-facing labels are 1-based, so qubit q prints as qubit q+1). A site
/// with both bits set prints as Y,
/// absorbing one factor of i.
class PauliString {
 public:
  static PauliString identity(int num_qubits);
  /// X at every set bit of `mask`.
  static PauliString bit_flips(int num_qubits, std::uint32_t mask);
  /// Z at every set bit of `mask`.
  static PauliString phase_flips(int num_qubits, std::uint32_t mask);
  /// Single letter ('I','X','Y','Z') at `qubit`, identity elsewhere.
  static PauliString single(int num_qubits, int qubit, char letter);
  /// Parses e.g. "XIIIII", "-ZZ", "iY", "-iXY". Letters are qubits 1..n
  /// left to right.
  static PauliString from_text(std::string_view text);

  int num_qubits() const { return num_qubits_; }
  std::uint32_t x_mask() const { return x_; }
  std::uint32_t z_mask() const { return z_; }
  /// Exponent of i in the stored X^x Z^z form.
  int phase_exponent() const { return phase_; }
  /// Scalar coefficient in the lettered (I/X/Y/Z) form.
  cdouble coefficient() const;
  char letter(int qubit) const;
  std::string text() const;

  int weight() const;
  bool is_identity_letters() const { return x_ == 0 && z_ == 0; }
  /// True iff the coefficient is +/-1.
  bool is_hermitian() const;
  /// Letters restricted to {I, X} with coefficient +1.
  bool is_bit_flip() const { return z_ == 0 && phase_ == 0; }
  bool is_phase_flip_letters() const { return x_ == 0; }

  /// Letters zeroed outside `qubits`; phase kept.
  PauliString restricted_to(std::span<const int> qubits) const;

  bool operator==(const PauliString& other) const = default;

 private:
  PauliString(int n, std::uint32_t x, std::uint32_t z, int phase)
      : num_qubits_(n), x_(x), z_(z), phase_(phase & 3) {}

  int num_qubits_;
  std::uint32_t x_;
  std::uint32_t z_;
  int phase_;  // i^phase_

  friend PauliString multiply(const PauliString&, const PauliString&);
  friend PauliString conjugate_by_hadamards(const PauliString&);
};

/// Exact product a*b including phase.
PauliString multiply(const PauliString& a, const PauliString& b);

/// +1 if ab = ba, -1 otherwise (symplectic product of the masks).
int commutes(const PauliString& a, const PauliString& b);

/// H^(x)n P H^(x)n: swaps the X and Z parts sitewise.
PauliString conjugate_by_hadamards(const PauliString& p);

StateVector apply_pauli(const StateVector& state, const PauliString& p);

/// Dense matrix form; guarded to small operator sizes (<= 6 qubits), meant
/// for cross-checks against the symbolic algebra.
Eigen::MatrixXcd pauli_matrix(const PauliString& p);

/// True iff e1*e2 is the identity or the all-X string. Both inputs must be
/// bit-flip strings on the same qubit count.
bool equivalent_mod_logical_x(const PauliString& e1, const PauliString& e2);

struct Syndrome {
  std::vector<int> bits;  // one +/-1 per generator

  std::string text() const;  // "+1 -1 ..."
  bool operator==(const Syndrome&) const = default;
};

/// Ordered stabilizer generator list. Construction validates the stabilizer
/// group properties: pairwise commutation, each generator squares to +I, and
/// no product of generators equals -I (exhaustive over subsets).
class GeneratorSet {
 public:
  GeneratorSet(int num_qubits, std::vector<PauliString> generators);

  int num_qubits() const { return num_qubits_; }
  const std::vector<PauliString>& generators() const { return gens_; }
  std::size_t size() const { return gens_.size(); }
  const PauliString& operator[](std::size_t i) const { return gens_[i]; }

 private:
  int num_qubits_;
  std::vector<PauliString> gens_;
};

/// Commutation pattern of `error` against every generator, in order.
Syndrome syndrome(const PauliString& error, const GeneratorSet& gens);

struct MeasurementResult {
  int outcome;        // +1 or -1
  StateVector state;  // post-measurement state (ancilla already discarded)
};

/// Ancilla-assisted eigenspace measurement of a Hermitian stabilizer:
/// H on a fresh ancilla, controlled-stabilizer, H, Z-measurement. For states
/// in an eigenspace the outcome is deterministic; otherwise `rng` picks the
/// branch with the Born probabilities.
MeasurementResult measure_syndrome_circuit(const StateVector& state,
                                           const PauliString& stabilizer,
                                           std::mt19937_64& rng);
MeasurementResult measure_syndrome_circuit(const StateVector& state,
                                           const PauliString& stabilizer);

}  // namespace qbell
