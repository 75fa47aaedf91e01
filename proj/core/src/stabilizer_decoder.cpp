#include "qbell/stabilizer_decoder.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace qbell {

namespace {

std::vector<int> flip_positions(std::uint32_t mask) {
  std::vector<int> out;
  for (int b = 0; mask >> b; ++b)
    if (mask & (1u << b)) out.push_back(b);
  return out;
}

bool class_order(const SyndromeClass& a, const SyndromeClass& b) {
  const int wa = a.representative.weight();
  const int wb = b.representative.weight();
  if (wa != wb) return wa < wb;
  return std::lexicographical_compare(
      flip_positions(a.representative.x_mask()).begin(),
      flip_positions(a.representative.x_mask()).end(),
      flip_positions(b.representative.x_mask()).begin(),
      flip_positions(b.representative.x_mask()).end());
}

}  // namespace

GeneratorSet bell_code_generators(int k) {
  if (k < 1) throw std::invalid_argument("code order k must be >= 1");
  const int n = 2 * (2 * k + 1);
  if (n > kMaxQubits) throw std::invalid_argument("code order too large");
  std::vector<PauliString> gens;
  for (int j = 1; j < n; ++j)
    gens.push_back(PauliString::phase_flips(n, 1u | (1u << j)));
  gens.push_back(PauliString::bit_flips(n, (1u << n) - 1));
  return GeneratorSet(n, std::move(gens));
}

GeneratorSet product_code_generators(int k) {
  if (k < 1) throw std::invalid_argument("code order k must be >= 1");
  const int block = 2 * k + 1;
  const int n = 2 * block;
  if (n > kMaxQubits) throw std::invalid_argument("code order too large");
  std::vector<PauliString> gens;
  for (int j = 1; j < block; ++j)
    gens.push_back(PauliString::phase_flips(n, 1u | (1u << j)));
  for (int j = 1; j < block; ++j)
    gens.push_back(PauliString::phase_flips(n, (1u << block) | (1u << (block + j))));
  return GeneratorSet(n, std::move(gens));
}

StateVector encoded_bell_state(int k) {
  const auto layout = CodeLayout::bipartite(k, CodeScenario::BipartiteBell);
  StateVector s(layout.total_qubits());
  s = apply_gate(s, GateSpec::h(layout.data_qubit(0)));
  s = apply_gate(s, GateSpec::cnot(layout.data_qubit(0), layout.data_qubit(1)));
  const auto encoder = build_encoder(layout);
  return apply_gates(s, encoder);
}

SyndromeTable::SyndromeTable(int k, std::vector<SyndromeClass> classes)
    : k_(k), classes_(std::move(classes)) {
  for (std::size_t i = 0; i < classes_.size(); ++i)
    index_.emplace(classes_[i].syndrome.bits, i);
}

const SyndromeClass* SyndromeTable::find(const Syndrome& s) const {
  const auto it = index_.find(s.bits);
  return it == index_.end() ? nullptr : &classes_[it->second];
}

SyndromeTable build_syndrome_table(int k) {
  if (k < 1 || k > 3)
    throw std::invalid_argument("exhaustive syndrome table limited to k <= 3");
  const int n = 2 * (2 * k + 1);
  const std::uint32_t all = (1u << n) - 1;
  const auto gens = bell_code_generators(k);

  std::vector<SyndromeClass> classes;
  classes.reserve(std::size_t{1} << (n - 1));
  for (std::uint32_t mask = 0; mask <= all; ++mask) {
    const std::uint32_t partner = mask ^ all;
    if (partner < mask) continue;  // visit each class once
    std::uint32_t rep = mask, other = partner;
    const int wm = std::popcount(mask), wp = std::popcount(partner);
    if (wp < wm || (wp == wm && (partner & 1u) && !(mask & 1u))) std::swap(rep, other);
    PauliString rep_string = PauliString::bit_flips(n, rep);
    Syndrome s = syndrome(rep_string, gens);
    classes.push_back(SyndromeClass{
        0, rep_string, {rep_string, PauliString::bit_flips(n, other)}, std::move(s)});
  }
  std::sort(classes.begin(), classes.end(), class_order);
  for (std::size_t i = 0; i < classes.size(); ++i)
    classes[i].class_id = static_cast<int>(i);
  return SyndromeTable(k, std::move(classes));
}

std::string syndrome_table_csv(const SyndromeTable& table) {
  std::string out = "error,syndrome,class_id,min_weight_rep\n";
  for (const auto& cls : table.classes())
    for (const auto& member : cls.members) {
      out += member.text();
      out += ',';
      out += cls.syndrome.text();
      out += ',';
      out += std::to_string(cls.class_id);
      out += ',';
      out += cls.representative.text();
      out += '\n';
    }
  return out;
}

PauliString rotation_correct(const Syndrome& s, int k) {
  const int n = 2 * (2 * k + 1);
  if (static_cast<int>(s.bits.size()) != n)
    throw std::invalid_argument("syndrome length does not match code order");
  for (int bit : s.bits)
    if (bit != 1 && bit != -1) throw std::invalid_argument("syndrome bits must be +/-1");
  if (s.bits.back() != +1)
    throw std::invalid_argument("all-X syndrome bit is -1: not a bit-flip error");

  // Rotate right by one; +1 positions of the rotated syndrome are the flip
  // support (or its complement, both equivalent modulo the all-X stabilizer).
  std::uint32_t mask = 0;
  for (int i = 0; i < n; ++i) {
    const int rotated = s.bits[(i + n - 1) % n];
    if (rotated == +1) mask |= 1u << i;
  }
  const std::uint32_t all = (1u << n) - 1;
  if (std::popcount(mask ^ all) < std::popcount(mask)) mask ^= all;
  return PauliString::bit_flips(n, mask);
}

ShortDistanceResult stabilizer_correct(int k, const StateVector& corrupted) {
  const auto gens = bell_code_generators(k);
  if (corrupted.num_qubits() != gens.num_qubits())
    throw std::invalid_argument("state does not match code size");

  ShortDistanceResult result{Syndrome{}, PauliString::identity(gens.num_qubits()), 0.0};
  StateVector state = corrupted;
  for (const auto& g : gens.generators()) {
    auto [outcome, post] = measure_syndrome_circuit(state, g);
    result.syndrome.bits.push_back(outcome);
    state = std::move(post);
  }

  result.correction = rotation_correct(result.syndrome, k);
  state = apply_pauli(state, result.correction);

  const auto layout = CodeLayout::bipartite(k, CodeScenario::BipartiteBell);
  state = apply_gates(state, build_encoder(layout));  // U_enc^dag
  const std::vector<int> data = {layout.data_qubit(0), layout.data_qubit(1)};
  result.fidelity = fidelity(prepare_bell(0, 0), partial_trace(state, data));
  return result;
}

ShortDistanceResult short_distance_pipeline(int k, const PauliString& error) {
  if (!error.is_bit_flip())
    throw std::invalid_argument("short-distance pipeline expects a bit-flip error");
  const StateVector corrupted = apply_pauli(encoded_bell_state(k), error);
  return stabilizer_correct(k, corrupted);
}

bool phase_flip_transparency_check(int k, const PauliString& z_error) {
  if (!z_error.is_phase_flip_letters() || !z_error.is_hermitian())
    throw std::invalid_argument("transparency check expects a Z-only error");
  const StateVector encoded = encoded_bell_state(k);
  if (z_error.num_qubits() != encoded.num_qubits())
    throw std::invalid_argument("error does not match code size");
  return overlap(encoded, apply_pauli(encoded, z_error)) > 1.0 - 1e-12;
}

}  // namespace qbell
