#pragma once

#include <map>
#include <string>
#include <vector>

#include "qbell/pauli.hpp"
#include "qbell/repetition.hpp"
#include "qbell/statevector.hpp"

namespace qbell {

/// Canonical generator basis of the encoded Bell code on 2(2k+1) qubits:
/// Z1Z2, Z1Z3, ..., Z1Z_{2(2k+1)}, X^(x)2(2k+1), in that order.
GeneratorSet bell_code_generators(int k);

/// Party-local generators for product inputs: Z1Z2..Z1Z_{2k+1} on Alice's
/// block, Z_{2k+2}Z_{2k+3}..Z_{2k+2}Z_{2(2k+1)} on Bob's. 4k generators.
GeneratorSet product_code_generators(int k);

/// Encoded |phi+> on 2(2k+1) qubits, built by Bell preparation on the two
/// data qubits followed by the repetition encoder.
StateVector encoded_bell_state(int k);

struct SyndromeClass {
  int class_id;
  PauliString representative;        // minimum weight, ties keep X on qubit 1
  std::vector<PauliString> members;  // the representative and its partner
  Syndrome syndrome;
};

/// Exhaustive bit-flip error classification against bell_code_generators(k).
/// Classes are ordered by representative weight, then by flip positions
/// lexicographically, which reproduces the published k=1 listing row for row.
class SyndromeTable {
 public:
  SyndromeTable(int k, std::vector<SyndromeClass> classes);

  int k() const { return k_; }
  const std::vector<SyndromeClass>& classes() const { return classes_; }
  const SyndromeClass* find(const Syndrome& s) const;

 private:
  int k_;
  std::vector<SyndromeClass> classes_;
  std::map<std::vector<int>, std::size_t> index_;
};

/// Builds the full table over all 2^(2(2k+1)) bit-flip patterns. k <= 3.
SyndromeTable build_syndrome_table(int k);

/// CSV dump, one row per bit-flip pattern:
/// error,syndrome,class_id,min_weight_rep
std::string syndrome_table_csv(const SyndromeTable& table);

/// Decoding rule for bit-flip syndromes: rotate the syndrome right by one,
/// place X wherever the rotated bit is +1, then swap to the complement
/// pattern when that is lighter. The last syndrome bit (the all-X generator)
/// must read +1.
PauliString rotation_correct(const Syndrome& s, int k);

struct ShortDistanceResult {
  Syndrome syndrome;
  PauliString correction;
  double fidelity;  // of the decoded pair against |phi+>
};

/// Corrupted encoded state -> measured syndromes -> rotation correction ->
/// repetition decode -> fidelity of the data pair. Shared by the bit-flip
/// and Hadamard-sandwich pipelines.
ShortDistanceResult stabilizer_correct(int k, const StateVector& corrupted);

/// Full short-distance run for one bit-flip error on the encoded pair.
ShortDistanceResult short_distance_pipeline(int k, const PauliString& error);

/// True iff `z_error` (letters in {I, Z}) leaves the encoded Bell state
/// invariant, verified on the statevector. Holds exactly for even weight.
bool phase_flip_transparency_check(int k, const PauliString& z_error);

}  // namespace qbell
