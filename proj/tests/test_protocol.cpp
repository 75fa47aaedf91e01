#include <doctest.h>

#include <cmath>
#include <map>

#include "qbell/protocol.hpp"

using namespace qbell;

TEST_CASE("split generator basis for k=1") {
  const auto split = split_generators(1);
  CHECK(split.alice.qubits == std::vector<int>{0, 1, 2});
  CHECK(split.bob.qubits == std::vector<int>{3, 4, 5});
  REQUIRE(split.alice.local_generators.size() == 2);
  REQUIRE(split.bob.local_generators.size() == 2);
  CHECK(split.alice.local_generators[0].text() == "ZZIIII");
  CHECK(split.alice.local_generators[1].text() == "ZIZIII");
  CHECK(split.bob.local_generators[0].text() == "IIIZZI");
  CHECK(split.bob.local_generators[1].text() == "IIIIZZ");
  CHECK(split.boundary.text() == "IIZZII");
  CHECK(split.logical_x.text() == "XXXXXX");
}

TEST_CASE("split basis partitions errors exactly like the canonical basis") {
  const auto split = split_generators(1);
  const auto canonical = bell_code_generators(1);
  std::vector<PauliString> split_list = split.alice.local_generators;
  split_list.insert(split_list.end(), split.bob.local_generators.begin(),
                    split.bob.local_generators.end());
  split_list.push_back(split.boundary);
  split_list.push_back(split.logical_x);
  const GeneratorSet split_gens(6, split_list);

  std::map<std::vector<int>, std::vector<int>> canonical_to_split;
  for (std::uint32_t mask = 0; mask < 64; ++mask) {
    const auto e = PauliString::bit_flips(6, mask);
    const auto c = syndrome(e, canonical).bits;
    const auto s = syndrome(e, split_gens).bits;
    const auto [it, inserted] = canonical_to_split.emplace(c, s);
    CHECK(it->second == s);  // same canonical syndrome, same split syndrome
  }
  CHECK(canonical_to_split.size() == 32);
}

TEST_CASE("local commutation bits reproduce the worked cases") {
  const auto split = split_generators(1);
  const auto z3 = PauliString::single(6, 2, 'Z');
  const auto z4 = PauliString::single(6, 3, 'Z');

  CHECK(local_commutation_bit(split.alice, PauliString::from_text("IIXIII"), z3) == -1);
  CHECK(local_commutation_bit(split.bob, PauliString::from_text("IIIXII"), z4) == -1);
  CHECK(local_commutation_bit(split.alice, PauliString::identity(6), z3) == 1);
  // Flips on the other side are invisible to the local bit.
  CHECK(local_commutation_bit(split.alice, PauliString::from_text("IIIXXX"), z3) == 1);

  CHECK_THROWS_AS(local_commutation_bit(split.alice, PauliString::identity(6), z4),
                  std::invalid_argument);
  CHECK_THROWS_AS(local_commutation_bit(split.alice, PauliString::identity(6),
                                        split.boundary),
                  std::invalid_argument);
}

TEST_CASE("boundary syndrome combination") {
  CHECK(combine_boundary_syndrome(-1, -1) == 1);
  CHECK(combine_boundary_syndrome(-1, 1) == -1);
  CHECK(combine_boundary_syndrome(1, -1) == -1);
  CHECK(combine_boundary_syndrome(1, 1) == 1);
  CHECK_THROWS_AS(combine_boundary_syndrome(0, 1), std::invalid_argument);

  const auto split = split_generators(1);
  const GeneratorSet boundary_only(6, {split.boundary});
  for (std::uint32_t mask = 0; mask < 64; ++mask) {
    const auto e = PauliString::bit_flips(6, mask);
    const int m1 = local_commutation_bit(split.alice, e, PauliString::single(6, 2, 'Z'));
    const int m2 = local_commutation_bit(split.bob, e, PauliString::single(6, 3, 'Z'));
    CHECK(combine_boundary_syndrome(m1, m2) == syndrome(e, boundary_only).bits[0]);
  }
}

TEST_CASE("the two local observables always commute") {
  for (int m1 : {-1, 1})
    for (int m2 : {-1, 1}) CHECK(commutator_identity_value(m1, m2) == 0);
}

TEST_CASE("locality audit rejects cross-partition operations") {
  LocalityAudit audit({0, 1, 2}, {3, 4, 5});
  CHECK_NOTHROW(audit.record(std::vector<int>{0, 2}));
  CHECK_NOTHROW(audit.record(std::vector<int>{3, 4, 5}));
  CHECK_NOTHROW(audit.record(std::vector<int>{}));
  CHECK(audit.operations_checked() == 3);
  CHECK_THROWS_AS(audit.record(std::vector<int>{2, 3}), std::logic_error);
}

TEST_CASE("protocol with classical channel corrects a weight-3 error") {
  const auto result = run_protocol(1, PauliString::from_text("XXIXII"), true);
  CHECK(result.fidelity == doctest::Approx(1.0).epsilon(1e-12));
  REQUIRE(result.transcript.size() == 2);
  CHECK(result.transcript[0].sender == Party::Alice);
  CHECK(result.transcript[1].sender == Party::Bob);
  CHECK(result.transcript[0].round == 1);
  CHECK(result.transcript[0].bits.size() == 3);  // 2k syndrome bits + m-bit
  // The correction is the error or its all-X complement, split by side.
  const auto applied = multiply(result.alice_correction, result.bob_correction);
  CHECK(equivalent_mod_logical_x(applied, PauliString::from_text("XXIXII")));
  CHECK(result.alice_correction.restricted_to(std::vector<int>{3, 4, 5})
            .is_identity_letters());
  CHECK(result.bob_correction.restricted_to(std::vector<int>{0, 1, 2})
            .is_identity_letters());
  CHECK(result.locality_checked_operations > 0);
}

TEST_CASE("protocol with classical channel corrects every pattern") {
  for (std::uint32_t mask = 0; mask < 64; ++mask) {
    const auto result = run_protocol(1, PauliString::bit_flips(6, mask), true);
    CHECK(result.fidelity == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("without the classical channel only per-side decoding survives") {
  CHECK(run_protocol(1, PauliString::identity(6), false).fidelity ==
        doctest::Approx(1.0).epsilon(1e-12));
  // One correctable flip per side.
  CHECK(run_protocol(1, PauliString::from_text("IXIIXI"), false).fidelity ==
        doctest::Approx(1.0).epsilon(1e-12));
  // Two flips in Alice's block exceed k=1 and surface as a logical flip.
  CHECK(run_protocol(1, PauliString::from_text("XXIIII"), false).fidelity ==
        doctest::Approx(0.0).epsilon(1e-12));
  const auto res = run_protocol(1, PauliString::from_text("XXIIII"), false);
  CHECK(res.transcript.empty());
}

TEST_CASE("protocol validates its error input") {
  CHECK_THROWS_AS(run_protocol(1, PauliString::from_text("ZIIIII"), true),
                  std::invalid_argument);
  CHECK_THROWS_AS(run_protocol(1, PauliString::identity(3), true),
                  std::invalid_argument);
}

TEST_CASE("transcript serializes as JSON lines") {
  const auto result = run_protocol(1, PauliString::from_text("XXIXII"), true);
  const auto jsonl = transcript_jsonl(result.transcript);
  CHECK(jsonl.find("\"sender\":\"Alice\"") != std::string::npos);
  CHECK(jsonl.find("\"sender\":\"Bob\"") != std::string::npos);
  CHECK(jsonl.find("\"round\":1") != std::string::npos);
  std::size_t lines = 0;
  for (char c : jsonl)
    if (c == '\n') ++lines;
  CHECK(lines == 2);
}
