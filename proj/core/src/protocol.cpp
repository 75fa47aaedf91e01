#include "qbell/protocol.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

namespace qbell {

namespace {

std::vector<int> pauli_support(const PauliString& p) {
  std::vector<int> out;
  for (int q = 0; q < p.num_qubits(); ++q)
    if (p.letter(q) != 'I') out.push_back(q);
  return out;
}

std::vector<int> gate_support(const GateSpec& gate) {
  std::vector<int> out = gate.controls;
  out.insert(out.end(), gate.targets.begin(), gate.targets.end());
  return out;
}

}  // namespace

std::string party_name(Party p) { return p == Party::Alice ? "Alice" : "Bob"; }

LocalityAudit::LocalityAudit(std::vector<int> alice_qubits, std::vector<int> bob_qubits) {
  int max_q = -1;
  for (int q : alice_qubits) max_q = std::max(max_q, q);
  for (int q : bob_qubits) max_q = std::max(max_q, q);
  is_alice_.assign(max_q + 1, false);
  is_bob_.assign(max_q + 1, false);
  for (int q : alice_qubits) is_alice_[q] = true;
  for (int q : bob_qubits) is_bob_[q] = true;
}

void LocalityAudit::record(std::span<const int> support) {
  bool alice = false, bob = false;
  for (int q : support) {
    if (q >= 0 && q < static_cast<int>(is_alice_.size())) {
      alice |= is_alice_[q];
      bob |= is_bob_[q];
    }
  }
  if (alice && bob)
    throw std::logic_error("locality audit: operation straddles the Alice/Bob cut");
  ++checked_;
}

SplitGenerators split_generators(int k) {
  if (k < 1) throw std::invalid_argument("code order k must be >= 1");
  const int block = 2 * k + 1;
  const int n = 2 * block;
  if (n > kMaxQubits) throw std::invalid_argument("code order too large");

  PartyView alice{Party::Alice, {}, {}};
  for (int q = 0; q < block; ++q) alice.qubits.push_back(q);
  for (int j = 1; j < block; ++j)
    alice.local_generators.push_back(PauliString::phase_flips(n, 1u | (1u << j)));

  PartyView bob{Party::Bob, {}, {}};
  for (int q = block; q < n; ++q) bob.qubits.push_back(q);
  for (int j = block; j < n - 1; ++j)
    bob.local_generators.push_back(
        PauliString::phase_flips(n, (1u << j) | (1u << (j + 1))));

  return SplitGenerators{
      std::move(alice), std::move(bob),
      PauliString::phase_flips(n, (1u << (block - 1)) | (1u << block)),
      PauliString::bit_flips(n, (1u << n) - 1)};
}

int local_commutation_bit(const PartyView& party, const PauliString& error,
                          const PauliString& boundary_half) {
  const auto half_support = pauli_support(boundary_half);
  if (half_support.size() != 1 ||
      !std::binary_search(party.qubits.begin(), party.qubits.end(), half_support[0]))
    throw std::invalid_argument("boundary half must be a single letter on the party's side");
  return commutes(error.restricted_to(party.qubits), boundary_half);
}

int combine_boundary_syndrome(int m1, int m2) {
  if ((m1 != 1 && m1 != -1) || (m2 != 1 && m2 != -1))
    throw std::invalid_argument("m-bits must be +/-1");
  return m1 * m2;
}

long commutator_identity_value(int m1, int m2) {
  return static_cast<long>(1 + m1) * (1 + m2) * (m2 - m1);
}

ProtocolResult run_protocol(int k, const PauliString& error, bool classical_channel) {
  if (!error.is_bit_flip())
    throw std::invalid_argument("protocol expects a bit-flip error");
  const int block = 2 * k + 1;
  const int n = 2 * block;
  if (error.num_qubits() != n)
    throw std::invalid_argument("error does not match code size");

  const auto split = split_generators(k);
  LocalityAudit audit(split.alice.qubits, split.bob.qubits);
  StateVector state = apply_pauli(encoded_bell_state(k), error);

  ProtocolResult result{{},
                        PauliString::identity(n),
                        PauliString::identity(n),
                        0.0,
                        0};

  if (classical_channel) {
    auto measure_local = [&](const PartyView& party) {
      std::vector<int> bits;
      for (const auto& g : party.local_generators) {
        audit.record(pauli_support(g));
        auto [outcome, post] = measure_syndrome_circuit(state, g);
        bits.push_back(outcome);
        state = std::move(post);
      }
      return bits;
    };
    const std::vector<int> alice_bits = measure_local(split.alice);
    const std::vector<int> bob_bits = measure_local(split.bob);

    const PauliString z_alice_edge = PauliString::single(n, block - 1, 'Z');
    const PauliString z_bob_edge = PauliString::single(n, block, 'Z');
    const int m1 = local_commutation_bit(split.alice, error, z_alice_edge);
    const int m2 = local_commutation_bit(split.bob, error, z_bob_edge);

    std::vector<int> alice_payload = alice_bits;
    alice_payload.push_back(m1);
    std::vector<int> bob_payload = bob_bits;
    bob_payload.push_back(m2);
    result.transcript.push_back({1, Party::Alice, std::move(alice_payload)});
    result.transcript.push_back({1, Party::Bob, std::move(bob_payload)});

    const int boundary_bit = combine_boundary_syndrome(m1, m2);

    // Reassemble the canonical Z1Zj syndromes: syndromes multiply along
    // products of generators, and Z1Zj chains through the boundary into
    // Bob's side.
    Syndrome full;
    for (int j = 1; j < block; ++j) full.bits.push_back(alice_bits[j - 1]);
    int running = alice_bits[block - 2] * boundary_bit;  // Z1 Z_{block+1}
    full.bits.push_back(running);
    for (int t = 1; t < block; ++t) {
      running *= bob_bits[t - 1];
      full.bits.push_back(running);
    }
    full.bits.push_back(commutes(error, split.logical_x));  // +1 for bit flips

    const PauliString correction = rotation_correct(full, k);
    result.alice_correction = correction.restricted_to(split.alice.qubits);
    result.bob_correction = correction.restricted_to(split.bob.qubits);
    audit.record(pauli_support(result.alice_correction));
    audit.record(pauli_support(result.bob_correction));
    state = apply_pauli(state, result.alice_correction);
    state = apply_pauli(state, result.bob_correction);

    const auto layout = CodeLayout::bipartite(k, CodeScenario::BipartiteBell);
    for (const auto& g : build_encoder(layout)) {  // U_enc^dag, blockwise local
      audit.record(gate_support(g));
      state = apply_gate(state, g);
    }
  } else {
    // No classical channel: each side falls back to its own repetition
    // decoder; the boundary syndrome is simply unavailable.
    const auto layout = CodeLayout::bipartite(k, CodeScenario::BipartiteBell);
    for (const auto& g : build_decoder(layout)) {
      audit.record(gate_support(g));
      state = apply_gate(state, g);
    }
  }

  const std::vector<int> data = {0, block};
  result.fidelity = fidelity(prepare_bell(0, 0), partial_trace(state, data));
  result.locality_checked_operations = audit.operations_checked();
  return result;
}

std::string transcript_jsonl(const std::vector<ClassicalMessage>& transcript) {
  std::string out;
  for (const auto& msg : transcript) {
    nlohmann::json j{
        {"round", msg.round}, {"sender", party_name(msg.sender)}, {"bits", msg.bits}};
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace qbell
