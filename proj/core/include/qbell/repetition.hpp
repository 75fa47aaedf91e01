#pragma once

#include <span>
#include <vector>

#include "qbell/density.hpp"
#include "qbell/statevector.hpp"

namespace qbell {

enum class CodeScenario { Single, BipartiteBell, BipartiteProduct };

/// Qubit layout of a (2k+1,1) repetition code. Single-block codes use qubits
/// 0..2k (data first); bipartite codes give Alice qubits 0..2k and Bob
/// qubits 2k+1..4k+1, matching the 1-based user-facing numbering 1..2(2k+1).
struct CodeLayout {
  int k;
  CodeScenario scenario;

  static CodeLayout single(int k);
  static CodeLayout bipartite(int k, CodeScenario scenario);

  int block_size() const { return 2 * k + 1; }
  int num_blocks() const { return scenario == CodeScenario::Single ? 1 : 2; }
  int total_qubits() const { return num_blocks() * block_size(); }
  int data_qubit(int block) const { return block * block_size(); }
  std::vector<int> ancilla_qubits(int block) const;
  std::vector<int> block_qubits(int block) const;
  std::vector<int> all_qubits() const;
};

/// CNOT fan-out from each block's data qubit onto its 2k ancillas.
std::vector<GateSpec> build_encoder(const CodeLayout& layout);

/// U_enc^dag followed by the coherent majority correction: for every ancilla
/// pattern of weight > k, a pattern-controlled X on the data qubit (open
/// controls realized by X conjugation).
std::vector<GateSpec> build_decoder(const CodeLayout& layout);

/// Debug helper for the encoder precondition: every ancilla of `layout` holds
/// |0> in `state`.
bool ancillas_are_zero(const StateVector& state, const CodeLayout& layout);

/// Measurement-based decoding decision for one block: flip the data qubit
/// iff more than k ancillas read -1.
bool majority_decode(std::span<const int> ancilla_outcomes, int k);

enum class ChannelKind { BitFlip, PhaseFlip };

struct ChannelModel {
  ChannelKind kind;
  double p;   // single-qubit flip probability
  int arity;  // number of code qubits the channel acts on
};

/// Tensor-power Pauli channel: one Kraus term per flip pattern with weight
/// sqrt(p^|m| (1-p)^(n-|m|)).
KrausChannel make_channel(const ChannelModel& model);

/// H on every code qubit; applied before and after a phase-flip channel it
/// turns Z errors into X errors for the bit-flip decoder.
std::vector<GateSpec> phaseflip_sandwich(const CodeLayout& layout);

/// Exact binomial coefficient (n <= 62).
std::uint64_t binomial(int n, int r);

struct SingleFidelity {
  double correct_probability;  // P = sum_{r<=k} C(2k+1,r) p^r (1-p)^(2k+1-r)
  double fidelity;             // sqrt(P)
};

SingleFidelity closed_form_single_fidelity(int k, double p);

enum class BipartiteKind { Bell, Product };

/// Coefficient table f(0..2(2k+1)) counting flip patterns of each total
/// weight that decode back to the input. `as_published` reproduces the
/// closed-form case split verbatim, whose middle range overcounts splits
/// with more than k flips on one side when k >= 2; the default restricts
/// each side's flip count and always matches exhaustive enumeration.
std::vector<double> bipartite_coefficients(int k, BipartiteKind kind,
                                           bool as_published = false);

struct BipartiteFidelity {
  double fidelity;  // from the enumeration-consistent coefficients
  std::vector<double> coefficients;
  std::vector<double> coefficients_as_published;
  bool matches_published;  // tables agree (true for k = 1)
};

BipartiteFidelity closed_form_bipartite_fidelity(int k, double p, BipartiteKind kind);

enum class UnencodedKind { Bell, Arbitrary };

/// Minimum fidelity of an unencoded two-qubit state after independent
/// bit flips. Bell: sqrt(p^2 + (1-p)^2) in closed form. Arbitrary: minimum
/// over a 32x32 Bloch-angle grid per qubit, evaluated by direct Kraus
/// conjugation.
double unencoded_min_fidelity(double p, UnencodedKind kind);

struct UnencodedArbitraryFidelity {
  double grid_minimum;  // the adjudicated value
  double linear_rule;   // p
  double sqrt_rule;     // sqrt(p)
};

/// The two printed closed-form candidates disagree with each other and with
/// the grid oracle; this reports all three so callers can compare.
UnencodedArbitraryFidelity unencoded_arbitrary_report(double p);

}  // namespace qbell
