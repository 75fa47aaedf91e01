#include "qbell/pauli.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace qbell {

namespace {

constexpr cdouble kPhases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

int parity(std::uint32_t v) { return std::popcount(v) & 1; }

void check_qubit_count(int n) {
  if (n < 1 || n > kMaxQubits)
    throw std::invalid_argument("pauli qubit count out of supported range");
}

}  // namespace

PauliString PauliString::identity(int num_qubits) {
  check_qubit_count(num_qubits);
  return PauliString(num_qubits, 0, 0, 0);
}

PauliString PauliString::bit_flips(int num_qubits, std::uint32_t mask) {
  check_qubit_count(num_qubits);
  if (mask >> num_qubits) throw std::invalid_argument("flip mask wider than register");
  return PauliString(num_qubits, mask, 0, 0);
}

PauliString PauliString::phase_flips(int num_qubits, std::uint32_t mask) {
  check_qubit_count(num_qubits);
  if (mask >> num_qubits) throw std::invalid_argument("flip mask wider than register");
  return PauliString(num_qubits, 0, mask, 0);
}

PauliString PauliString::single(int num_qubits, int qubit, char letter) {
  check_qubit_count(num_qubits);
  if (qubit < 0 || qubit >= num_qubits) throw std::out_of_range("pauli qubit out of range");
  const std::uint32_t bit = std::uint32_t{1} << qubit;
  switch (letter) {
    case 'I': return PauliString(num_qubits, 0, 0, 0);
    case 'X': return PauliString(num_qubits, bit, 0, 0);
    case 'Y': return PauliString(num_qubits, bit, bit, 1);  // Y = i XZ
    case 'Z': return PauliString(num_qubits, 0, bit, 0);
  }
  throw std::invalid_argument("pauli letter must be one of I, X, Y, Z");
}

PauliString PauliString::from_text(std::string_view text) {
  int phase = 0;
  std::size_t pos = 0;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    if (text[pos] == '-') phase = 2;
    ++pos;
  }
  if (pos < text.size() && text[pos] == 'i') {
    phase += 1;
    ++pos;
  }
  const std::string_view letters = text.substr(pos);
  if (letters.empty()) throw std::invalid_argument("empty pauli string");
  const int n = static_cast<int>(letters.size());
  check_qubit_count(n);
  PauliString out = PauliString::identity(n);
  out.phase_ = phase & 3;
  for (int q = 0; q < n; ++q)
    out = multiply(out, PauliString::single(n, q, letters[q]));
  return out;
}

cdouble PauliString::coefficient() const {
  const int y_count = std::popcount(x_ & z_);
  return kPhases[((phase_ - y_count) % 4 + 4) % 4];
}

char PauliString::letter(int qubit) const {
  if (qubit < 0 || qubit >= num_qubits_) throw std::out_of_range("pauli qubit out of range");
  const bool x = (x_ >> qubit) & 1;
  const bool z = (z_ >> qubit) & 1;
  if (x && z) return 'Y';
  if (x) return 'X';
  if (z) return 'Z';
  return 'I';
}

std::string PauliString::text() const {
  const cdouble c = coefficient();
  std::string out;
  if (c.real() > 0.5) {
  } else if (c.real() < -0.5) {
    out += "-";
  } else if (c.imag() > 0.5) {
    out += "i";
  } else {
    out += "-i";
  }
  for (int q = 0; q < num_qubits_; ++q) out += letter(q);
  return out;
}

int PauliString::weight() const { return std::popcount(x_ | z_); }

bool PauliString::is_hermitian() const {
  const cdouble c = coefficient();
  return std::abs(c.imag()) < 0.5;
}

PauliString PauliString::restricted_to(std::span<const int> qubits) const {
  PauliString out = PauliString::identity(num_qubits_);
  for (int q : qubits) out = multiply(out, PauliString::single(num_qubits_, q, letter(q)));
  return out;
}

PauliString multiply(const PauliString& a, const PauliString& b) {
  if (a.num_qubits() != b.num_qubits())
    throw std::invalid_argument("pauli length mismatch");
  // Reorder Z^az X^bx: each overlapping site contributes a factor of -1 = i^2.
  const int phase = a.phase_ + b.phase_ + 2 * parity(a.z_ & b.x_);
  return PauliString(a.num_qubits(), a.x_ ^ b.x_, a.z_ ^ b.z_, phase);
}

int commutes(const PauliString& a, const PauliString& b) {
  if (a.num_qubits() != b.num_qubits())
    throw std::invalid_argument("pauli length mismatch");
  const int anti = parity(a.x_mask() & b.z_mask()) ^ parity(a.z_mask() & b.x_mask());
  return anti ? -1 : +1;
}

PauliString conjugate_by_hadamards(const PauliString& p) {
  // HXH = Z and HZH = X per site; each Y site picks up a sign.
  const int y_sign = 2 * parity(p.x_ & p.z_);
  return PauliString(p.num_qubits_, p.z_, p.x_, p.phase_ + y_sign);
}

StateVector apply_pauli(const StateVector& state, const PauliString& p) {
  if (state.num_qubits() != p.num_qubits())
    throw std::invalid_argument("pauli/state dimension mismatch");
  const std::size_t dim = state.dim();
  std::vector<cdouble> out(dim);
  const cdouble ip = kPhases[p.phase_exponent()];
  for (std::size_t b = 0; b < dim; ++b) {
    const double sign = parity(static_cast<std::uint32_t>(b) & p.z_mask()) ? -1.0 : 1.0;
    out[b ^ p.x_mask()] = ip * sign * state.amplitudes()[b];
  }
  return unchecked_state(state.num_qubits(), std::move(out));
}

Eigen::MatrixXcd pauli_matrix(const PauliString& p) {
  if (p.num_qubits() > 6)
    throw std::invalid_argument("dense pauli matrix limited to 6 qubits");
  const long dim = 1L << p.num_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  const cdouble ip = kPhases[p.phase_exponent()];
  for (long b = 0; b < dim; ++b) {
    const double sign = parity(static_cast<std::uint32_t>(b) & p.z_mask()) ? -1.0 : 1.0;
    m(b ^ static_cast<long>(p.x_mask()), b) = ip * sign;
  }
  return m;
}

bool equivalent_mod_logical_x(const PauliString& e1, const PauliString& e2) {
  if (e1.num_qubits() != e2.num_qubits())
    throw std::invalid_argument("pauli length mismatch");
  if (!e1.is_bit_flip() || !e2.is_bit_flip())
    throw std::invalid_argument("equivalence check expects bit-flip strings");
  const std::uint32_t prod = e1.x_mask() ^ e2.x_mask();
  const std::uint32_t all = (std::uint32_t{1} << e1.num_qubits()) - 1;
  return prod == 0 || prod == all;
}

std::string Syndrome::text() const {
  std::string out;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (i) out += ' ';
    out += bits[i] > 0 ? "+1" : "-1";
  }
  return out;
}

GeneratorSet::GeneratorSet(int num_qubits, std::vector<PauliString> generators)
    : num_qubits_(num_qubits), gens_(std::move(generators)) {
  check_qubit_count(num_qubits);
  for (const auto& g : gens_) {
    if (g.num_qubits() != num_qubits_)
      throw std::invalid_argument("generator length mismatch");
    const PauliString sq = multiply(g, g);
    if (!sq.is_identity_letters() || sq.phase_exponent() != 0)
      throw std::invalid_argument("generator does not square to +identity");
  }
  for (std::size_t i = 0; i < gens_.size(); ++i)
    for (std::size_t j = i + 1; j < gens_.size(); ++j)
      if (commutes(gens_[i], gens_[j]) != +1)
        throw std::invalid_argument("generators must pairwise commute");
  // -I exclusion, exhaustive over subset products for the sizes we build.
  if (gens_.size() <= 16) {
    const std::size_t count = std::size_t{1} << gens_.size();
    std::vector<PauliString> prod(count, PauliString::identity(num_qubits_));
    for (std::size_t mask = 1; mask < count; ++mask) {
      const int low = std::countr_zero(mask);
      prod[mask] = multiply(prod[mask & (mask - 1)], gens_[low]);
      if (prod[mask].is_identity_letters() && prod[mask].phase_exponent() != 0)
        throw std::invalid_argument("generator products reach -identity");
    }
  }
}

Syndrome syndrome(const PauliString& error, const GeneratorSet& gens) {
  if (error.num_qubits() != gens.num_qubits())
    throw std::invalid_argument("error/generator length mismatch");
  Syndrome s;
  s.bits.reserve(gens.size());
  for (const auto& g : gens.generators()) s.bits.push_back(commutes(error, g));
  return s;
}

MeasurementResult measure_syndrome_circuit(const StateVector& state,
                                           const PauliString& stabilizer,
                                           std::mt19937_64& rng) {
  if (state.num_qubits() != stabilizer.num_qubits())
    throw std::invalid_argument("stabilizer/state dimension mismatch");
  if (!stabilizer.is_hermitian())
    throw std::invalid_argument("syndrome measurement needs a Hermitian stabilizer");

  const int n = state.num_qubits();
  if (n + 1 > kMaxQubits) throw std::invalid_argument("no room for measurement ancilla");
  const std::size_t half = std::size_t{1} << n;

  // Ancilla is the top bit: |0>|psi>, then H, controlled-stabilizer, H.
  std::vector<cdouble> amps(2 * half, cdouble{0, 0});
  for (std::size_t b = 0; b < half; ++b) amps[b] = state.amplitudes()[b];
  detail::apply_single_qubit(amps, n + 1, n, GateSpec::h(0).matrix);

  const cdouble ip = kPhases[stabilizer.phase_exponent()];
  std::vector<cdouble> upper(half);
  for (std::size_t b = 0; b < half; ++b) {
    const double sign =
        parity(static_cast<std::uint32_t>(b) & stabilizer.z_mask()) ? -1.0 : 1.0;
    upper[b ^ stabilizer.x_mask()] = ip * sign * amps[half + b];
  }
  for (std::size_t b = 0; b < half; ++b) amps[half + b] = upper[b];

  detail::apply_single_qubit(amps, n + 1, n, GateSpec::h(0).matrix);

  double p_plus = 0.0;
  for (std::size_t b = 0; b < half; ++b) p_plus += std::norm(amps[b]);

  int outcome;
  if (p_plus > 1.0 - 1e-12) {
    outcome = +1;
  } else if (p_plus < 1e-12) {
    outcome = -1;
  } else {
    const double u = (rng() >> 11) * 0x1.0p-53;
    outcome = u < p_plus ? +1 : -1;
  }

  const std::size_t offset = outcome > 0 ? 0 : half;
  const double branch = outcome > 0 ? p_plus : 1.0 - p_plus;
  const double scale = 1.0 / std::sqrt(branch);
  std::vector<cdouble> post(half);
  for (std::size_t b = 0; b < half; ++b) post[b] = scale * amps[offset + b];
  return {outcome, unchecked_state(n, std::move(post))};
}

MeasurementResult measure_syndrome_circuit(const StateVector& state,
                                           const PauliString& stabilizer) {
  thread_local std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  return measure_syndrome_circuit(state, stabilizer, rng);
}

}  // namespace qbell
