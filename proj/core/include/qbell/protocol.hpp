#pragma once

#include <string>
#include <vector>

#include "qbell/pauli.hpp"
#include "qbell/repetition.hpp"
#include "qbell/stabilizer_decoder.hpp"

namespace qbell {

enum class Party { Alice, Bob };

std::string party_name(Party p);

struct PartyView {
  Party party;
  std::vector<int> qubits;                   // this party's code qubits
  std::vector<PauliString> local_generators; // identity outside `qubits`
};

struct ClassicalMessage {
  int round;
  Party sender;
  std::vector<int> bits;  // local syndrome outcomes, then the boundary m-bit
};

/// Locality-respecting generator basis for the encoded Bell code: 2k
/// generators local to each party, the single nonlocal boundary generator
/// Z_{2k+1}Z_{2k+2}, and the logical X^(x)2(2k+1). Generates the same group
/// as bell_code_generators(k).
struct SplitGenerators {
  PartyView alice;
  PartyView bob;
  PauliString boundary;
  PauliString logical_x;
};

SplitGenerators split_generators(int k);

/// Whether the error, restricted to the party's qubits, commutes with the
/// party's single-qubit factor of the boundary generator. The nondestructive
/// observable (the anticommutator with that factor) is modeled at the Pauli
/// frame: the bit comes from exact commutation on the sampled error.
int local_commutation_bit(const PartyView& party, const PauliString& error,
                          const PauliString& boundary_half);

/// Syndrome of the nonlocal boundary generator from the two local bits.
int combine_boundary_syndrome(int m1, int m2);

/// (1 + m1)(1 + m2)(m2 - m1): the scalar part of the commutator of the two
/// local boundary observables. Zero for every sign pair, so both can be
/// measured simultaneously.
long commutator_identity_value(int m1, int m2);

/// Records qubit support of each decoding-phase operation and rejects any
/// that straddles the Alice/Bob cut.
class LocalityAudit {
 public:
  LocalityAudit(std::vector<int> alice_qubits, std::vector<int> bob_qubits);

  /// Throws std::logic_error if `support` touches both partitions.
  void record(std::span<const int> support);
  int operations_checked() const { return checked_; }

 private:
  std::vector<bool> is_alice_;
  std::vector<bool> is_bob_;
  int checked_ = 0;
};

struct ProtocolResult {
  std::vector<ClassicalMessage> transcript;
  PauliString alice_correction;
  PauliString bob_correction;
  double fidelity;  // decoded pair against |phi+>
  int locality_checked_operations;
};

/// Two-party decoding of one bit-flip error on the encoded pair.
/// With the classical channel, local syndromes and m-bits are exchanged in
/// one synchronous round, the full syndrome is reassembled, and each party
/// applies its half of the rotation correction: fidelity 1 for every
/// bit-flip pattern. Without it, each party independently runs its local
/// repetition decoder.
ProtocolResult run_protocol(int k, const PauliString& error, bool classical_channel);

/// One JSON object per line: {"round": r, "sender": "...", "bits": [...]}.
std::string transcript_jsonl(const std::vector<ClassicalMessage>& transcript);

}  // namespace qbell
