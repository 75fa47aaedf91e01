#include <doctest.h>

#include <cmath>
#include <random>

#include "qbell/pauli.hpp"
#include "qbell/stabilizer_decoder.hpp"

using namespace qbell;

namespace {

const char kLetters[4] = {'I', 'X', 'Y', 'Z'};

PauliString random_string(int n, std::mt19937_64& rng) {
  std::string text;
  for (int q = 0; q < n; ++q) text += kLetters[rng() % 4];
  return PauliString::from_text(text);
}

}  // namespace

TEST_CASE("text round trips and prefixes") {
  for (const char* text : {"XIIIII", "-ZZ", "iY", "-iXY", "IIIIII", "YZXI"}) {
    const auto p = PauliString::from_text(text);
    CHECK(p.text() == text);
  }
  CHECK(PauliString::from_text("+XX").text() == "XX");
  CHECK_THROWS_AS(PauliString::from_text("XQ"), std::invalid_argument);
  CHECK_THROWS_AS(PauliString::from_text(""), std::invalid_argument);
}

TEST_CASE("factories agree with letters") {
  const auto p = PauliString::bit_flips(6, 0b001011);
  CHECK(p.text() == "XXIXII");
  CHECK(p.weight() == 3);
  CHECK(p.is_bit_flip());
  const auto z = PauliString::phase_flips(4, 0b1001);
  CHECK(z.text() == "ZIIZ");
  CHECK(z.is_phase_flip_letters());
  CHECK(PauliString::single(3, 1, 'Y').text() == "IYI");
}

TEST_CASE("Y stores one factor of i") {
  const auto y = PauliString::from_text("Y");
  CHECK(y.phase_exponent() == 1);  // Y = i X Z
  CHECK(y.coefficient() == cdouble(1, 0));
  CHECK(y.is_hermitian());
  const auto iy = PauliString::from_text("iY");
  CHECK(iy.coefficient() == cdouble(0, 1));
  CHECK(!iy.is_hermitian());
}

TEST_CASE("multiply matches dense matrix products") {
  std::mt19937_64 rng(99);
  for (int n : {1, 2, 3})
    for (int trial = 0; trial < 40; ++trial) {
      const auto a = random_string(n, rng);
      const auto b = random_string(n, rng);
      const auto ab = multiply(a, b);
      const Eigen::MatrixXcd expected = pauli_matrix(a) * pauli_matrix(b);
      CHECK((pauli_matrix(ab) - expected).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("single-qubit multiplication table spot values") {
  const auto X = PauliString::from_text("X");
  const auto Z = PauliString::from_text("Z");
  const auto Y = PauliString::from_text("Y");
  CHECK(multiply(X, Z).text() == "-iY");
  CHECK(multiply(Z, X).text() == "iY");
  CHECK(multiply(X, Y).text() == "iZ");
  CHECK(multiply(Y, Y).text() == "I");
  CHECK(multiply(X, X).text() == "I");
}

TEST_CASE("commutes agrees with matrix commutators exhaustively") {
  for (int a = 0; a < 16; ++a)
    for (int b = 0; b < 16; ++b) {
      std::string ta = {kLetters[a / 4], kLetters[a % 4]};
      std::string tb = {kLetters[b / 4], kLetters[b % 4]};
      const auto pa = PauliString::from_text(ta);
      const auto pb = PauliString::from_text(tb);
      const Eigen::MatrixXcd ma = pauli_matrix(pa);
      const Eigen::MatrixXcd mb = pauli_matrix(pb);
      const bool commute_matrices = (ma * mb - mb * ma).cwiseAbs().maxCoeff() < 1e-14;
      CHECK(commutes(pa, pb) == (commute_matrices ? 1 : -1));
    }
}

TEST_CASE("Hadamard conjugation swaps X and Z") {
  CHECK(conjugate_by_hadamards(PauliString::from_text("Z")).text() == "X");
  CHECK(conjugate_by_hadamards(PauliString::from_text("X")).text() == "Z");
  CHECK(conjugate_by_hadamards(PauliString::from_text("Y")).text() == "-Y");
  CHECK(conjugate_by_hadamards(PauliString::from_text("ZIX")).text() == "XIZ");
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = random_string(3, rng);
    const auto q = conjugate_by_hadamards(conjugate_by_hadamards(p));
    CHECK(q == p);
  }
}

TEST_CASE("apply_pauli matches the dense matrix action") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = random_string(3, rng);
    StateVector s(3);
    s = apply_gate(s, GateSpec::h(0));
    s = apply_gate(s, GateSpec::cnot(0, 1));
    s = apply_gate(s, GateSpec::h(2));
    const auto via_pauli = apply_pauli(s, p);
    Eigen::VectorXcd v(8);
    for (int i = 0; i < 8; ++i) v(i) = s.amplitude(i);
    const Eigen::VectorXcd expected = pauli_matrix(p) * v;
    for (int i = 0; i < 8; ++i)
      CHECK(std::abs(via_pauli.amplitude(i) - expected(i)) < 1e-14);
  }
}

TEST_CASE("restricted_to zeroes letters outside the kept set") {
  const auto p = PauliString::from_text("XXIXII");
  const std::vector<int> alice = {0, 1, 2};
  CHECK(p.restricted_to(alice).text() == "XXIIII");
  const std::vector<int> bob = {3, 4, 5};
  CHECK(p.restricted_to(bob).text() == "IIIXII");
}

TEST_CASE("equivalent_mod_logical_x") {
  const auto e1 = PauliString::bit_flips(6, 0b001011);
  const auto e2 = PauliString::bit_flips(6, 0b110100);
  CHECK(equivalent_mod_logical_x(e1, e2));
  CHECK(equivalent_mod_logical_x(e1, e1));
  CHECK(!equivalent_mod_logical_x(e1, PauliString::bit_flips(6, 0b000001)));
}

TEST_CASE("GeneratorSet validates the stabilizer group laws") {
  CHECK_NOTHROW(bell_code_generators(1));
  CHECK_THROWS_AS(GeneratorSet(1, {PauliString::from_text("X"),
                                   PauliString::from_text("Z")}),
                  std::invalid_argument);
  CHECK_THROWS_AS(GeneratorSet(1, {PauliString::from_text("iX")}),
                  std::invalid_argument);
  CHECK_THROWS_AS(GeneratorSet(1, {PauliString::from_text("-I")}),
                  std::invalid_argument);
}

TEST_CASE("syndrome reproduces a published row") {
  const auto gens = bell_code_generators(1);
  const auto s = syndrome(PauliString::from_text("XXIXII"), gens);
  CHECK(s.text() == "+1 -1 +1 -1 -1 +1");
  CHECK(syndrome(PauliString::identity(6), gens).text() == "+1 +1 +1 +1 +1 +1");
}

TEST_CASE("syndrome circuit is deterministic on eigenstates") {
  const auto encoded = encoded_bell_state(1);
  const auto gens = bell_code_generators(1);
  for (const auto& g : gens.generators()) {
    auto [outcome, post] = measure_syndrome_circuit(encoded, g);
    CHECK(outcome == 1);
    CHECK(overlap(post, encoded) == doctest::Approx(1.0).epsilon(1e-12));
  }
  const auto corrupted = apply_pauli(encoded, PauliString::from_text("XIIIII"));
  auto [outcome, post] =
      measure_syndrome_circuit(corrupted, PauliString::from_text("ZZIIII"));
  CHECK(outcome == -1);
  CHECK(overlap(post, corrupted) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("syndrome circuit collapses superpositions to eigenstates") {
  std::mt19937_64 rng(123);
  const StateVector zero(1);
  const auto x_op = PauliString::from_text("X");
  int plus_seen = 0, minus_seen = 0;
  for (int trial = 0; trial < 50; ++trial) {
    auto [outcome, post] = measure_syndrome_circuit(zero, x_op, rng);
    (outcome == 1 ? plus_seen : minus_seen)++;
    // Remeasuring must repeat the outcome with certainty.
    auto [again, post2] = measure_syndrome_circuit(post, x_op, rng);
    CHECK(again == outcome);
    CHECK(overlap(post2, post) == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(plus_seen > 0);
  CHECK(minus_seen > 0);
}
