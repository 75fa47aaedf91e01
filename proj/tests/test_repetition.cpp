#include <doctest.h>

#include <bit>
#include <cmath>

#include "qbell/repetition.hpp"
#include "qbell/stabilizer_decoder.hpp"

using namespace qbell;

TEST_CASE("layout accounting") {
  const auto single = CodeLayout::single(1);
  CHECK(single.block_size() == 3);
  CHECK(single.total_qubits() == 3);
  CHECK(single.data_qubit(0) == 0);
  CHECK(single.ancilla_qubits(0) == std::vector<int>{1, 2});

  const auto bi = CodeLayout::bipartite(2, CodeScenario::BipartiteBell);
  CHECK(bi.total_qubits() == 10);
  CHECK(bi.data_qubit(1) == 5);
  CHECK(bi.ancilla_qubits(1) == std::vector<int>{6, 7, 8, 9});
  CHECK_THROWS_AS(CodeLayout::single(0), std::invalid_argument);
  CHECK_THROWS_AS(CodeLayout::bipartite(1, CodeScenario::Single), std::invalid_argument);
  CHECK_THROWS_AS(CodeLayout::bipartite(4, CodeScenario::BipartiteBell),
                  std::invalid_argument);
}

TEST_CASE("encoder copies the data qubit across its block") {
  const auto layout = CodeLayout::single(1);
  auto logical = StateVector::from_amplitudes(1, {0.8, -0.6});
  auto s = tensor(logical, StateVector(2));
  CHECK(ancillas_are_zero(s, layout));
  s = apply_gates(s, build_encoder(layout));
  CHECK(std::abs(s.amplitude(0) - cdouble(0.8, 0)) < 1e-14);
  CHECK(std::abs(s.amplitude(7) - cdouble(-0.6, 0)) < 1e-14);
  CHECK(!ancillas_are_zero(s, layout));
}

TEST_CASE("bipartite encoder turns the Bell pair into a six-qubit cat state") {
  const auto s = encoded_bell_state(1);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(s.amplitude(0) - cdouble(r, 0)) < 1e-14);
  CHECK(std::abs(s.amplitude(63) - cdouble(r, 0)) < 1e-14);
  for (std::size_t i = 1; i < 63; ++i) CHECK(std::abs(s.amplitude(i)) < 1e-14);
}

TEST_CASE("decoder corrects up to k flips and fails beyond") {
  const auto layout = CodeLayout::single(1);
  for (std::uint32_t mask = 0; mask < 8; ++mask) {
    auto s = apply_gates(StateVector(3), build_encoder(layout));
    s = apply_pauli(s, PauliString::bit_flips(3, mask));
    s = apply_gates(s, build_decoder(layout));
    const double f = fidelity(StateVector(1), partial_trace(s, std::vector<int>{0}));
    const double expected = std::popcount(mask) <= 1 ? 1.0 : 0.0;
    CHECK(f == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("majority decoding decisions") {
  CHECK(majority_decode(std::vector<int>{-1, -1}, 1));
  CHECK(!majority_decode(std::vector<int>{1, 1}, 1));
  CHECK(!majority_decode(std::vector<int>{-1, 1}, 1));
  CHECK(!majority_decode(std::vector<int>{-1, -1, 1, 1}, 2));
  CHECK(majority_decode(std::vector<int>{-1, -1, -1, 1}, 2));
  CHECK_THROWS_AS(majority_decode(std::vector<int>{0, 1}, 1), std::invalid_argument);
}

TEST_CASE("channel construction") {
  const auto two = make_channel({ChannelKind::BitFlip, 0.3, 2});
  CHECK(two.terms().size() == 4);
  CHECK(two.terms()[0].coefficient == doctest::Approx(0.7));
  CHECK(two.terms()[3].coefficient == doctest::Approx(0.3));

  const auto none = make_channel({ChannelKind::BitFlip, 0.0, 3});
  CHECK(none.terms().size() == 1);

  CHECK_NOTHROW(make_channel({ChannelKind::PhaseFlip, 0.3, 6}));
  CHECK_THROWS_AS(make_channel({ChannelKind::BitFlip, 1.5, 2}), std::invalid_argument);
}

TEST_CASE("phase-flip sandwich turns Z errors into X errors") {
  const auto layout = CodeLayout::single(1);
  const auto sandwich = phaseflip_sandwich(layout);
  CHECK(sandwich.size() == 3);
  auto s = apply_gates(StateVector(3), build_encoder(layout));
  auto bit_flipped = apply_pauli(s, PauliString::bit_flips(3, 0b010));
  auto phase_path = apply_gates(s, sandwich);
  phase_path = apply_pauli(phase_path, PauliString::phase_flips(3, 0b010));
  phase_path = apply_gates(phase_path, sandwich);
  CHECK(overlap(bit_flipped, phase_path) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("binomial coefficients are exact") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(14, 7) == 3432);
  CHECK(binomial(10, 0) == 1);
  CHECK(binomial(10, 11) == 0);
  CHECK_THROWS_AS(binomial(70, 3), std::invalid_argument);
}

TEST_CASE("single-block closed form") {
  const auto k1 = closed_form_single_fidelity(1, 0.1);
  CHECK(k1.correct_probability == doctest::Approx(0.972).epsilon(1e-12));
  CHECK(k1.fidelity == doctest::Approx(0.985900603509299).epsilon(1e-12));
  const auto k2 = closed_form_single_fidelity(2, 0.1);
  CHECK(k2.correct_probability == doctest::Approx(0.99144).epsilon(1e-12));
  CHECK(k2.fidelity == doctest::Approx(0.9957108013876319).epsilon(1e-12));
  CHECK(closed_form_single_fidelity(3, 0.0).fidelity == doctest::Approx(1.0));
}

TEST_CASE("bipartite coefficient tables") {
  const std::vector<double> bell1 = {1, 6, 9, 0, 9, 6, 1};
  CHECK(bipartite_coefficients(1, BipartiteKind::Bell) == bell1);
  CHECK(bipartite_coefficients(1, BipartiteKind::Bell, true) == bell1);
  const std::vector<double> prod1 = {1, 6, 9, 0, 0, 0, 0};
  CHECK(bipartite_coefficients(1, BipartiteKind::Product) == prod1);

  // k=2: the published case split overcounts mixed splits; the decoder-true
  // count keeps only per-side-correctable (or per-side-uncorrectable) splits.
  const std::vector<double> bell2 = {1, 10, 45, 100, 100, 0, 100, 100, 45, 10, 1};
  const std::vector<double> bell2_published = {1, 10, 45, 100, 200, 0,
                                               200, 100, 45, 10, 1};
  CHECK(bipartite_coefficients(2, BipartiteKind::Bell) == bell2);
  CHECK(bipartite_coefficients(2, BipartiteKind::Bell, true) == bell2_published);
}

TEST_CASE("bipartite closed form at the reference point") {
  const auto bell = closed_form_bipartite_fidelity(1, 0.1, BipartiteKind::Bell);
  CHECK(bell.fidelity * bell.fidelity == doctest::Approx(0.945568).epsilon(1e-12));
  CHECK(bell.fidelity == doctest::Approx(0.9724032085508564).epsilon(1e-12));
  CHECK(bell.matches_published);

  const auto prod = closed_form_bipartite_fidelity(1, 0.1, BipartiteKind::Product);
  CHECK(prod.fidelity == doctest::Approx(0.972).epsilon(1e-12));

  CHECK(!closed_form_bipartite_fidelity(2, 0.1, BipartiteKind::Bell).matches_published);
}

TEST_CASE("unencoded baselines") {
  CHECK(unencoded_min_fidelity(0.25, UnencodedKind::Bell) ==
        doctest::Approx(0.7905694150420949).epsilon(1e-12));
  CHECK(unencoded_min_fidelity(0.0, UnencodedKind::Bell) == doctest::Approx(1.0));
  CHECK(unencoded_min_fidelity(0.5, UnencodedKind::Bell) ==
        doctest::Approx(0.7071067811865476).epsilon(1e-12));

  // Worst-case product input is an X eigenvalue-free state (|0> works), so
  // the grid minimum is exactly 1-p; both published readings are reported.
  const auto report = unencoded_arbitrary_report(0.1);
  CHECK(report.grid_minimum == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(report.linear_rule == doctest::Approx(0.1));
  CHECK(report.sqrt_rule == doctest::Approx(std::sqrt(0.1)));
  CHECK(unencoded_min_fidelity(0.1, UnencodedKind::Arbitrary) ==
        doctest::Approx(0.9).epsilon(1e-12));
}
