#include "qbell/repetition.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qbell {

CodeLayout CodeLayout::single(int k) {
  if (k < 1) throw std::invalid_argument("code order k must be >= 1");
  CodeLayout layout{k, CodeScenario::Single};
  if (layout.total_qubits() > kMaxQubits)
    throw std::invalid_argument("code layout exceeds qubit cap");
  return layout;
}

CodeLayout CodeLayout::bipartite(int k, CodeScenario scenario) {
  if (k < 1) throw std::invalid_argument("code order k must be >= 1");
  if (scenario == CodeScenario::Single)
    throw std::invalid_argument("bipartite layout needs a bipartite scenario");
  CodeLayout layout{k, scenario};
  if (layout.total_qubits() > kMaxQubits)
    throw std::invalid_argument("code layout exceeds qubit cap");
  return layout;
}

std::vector<int> CodeLayout::ancilla_qubits(int block) const {
  std::vector<int> out;
  const int base = data_qubit(block);
  for (int a = 1; a <= 2 * k; ++a) out.push_back(base + a);
  return out;
}

std::vector<int> CodeLayout::block_qubits(int block) const {
  std::vector<int> out;
  const int base = data_qubit(block);
  for (int q = 0; q < block_size(); ++q) out.push_back(base + q);
  return out;
}

std::vector<int> CodeLayout::all_qubits() const {
  std::vector<int> out;
  for (int q = 0; q < total_qubits(); ++q) out.push_back(q);
  return out;
}

std::vector<GateSpec> build_encoder(const CodeLayout& layout) {
  std::vector<GateSpec> gates;
  for (int b = 0; b < layout.num_blocks(); ++b)
    for (int a : layout.ancilla_qubits(b))
      gates.push_back(GateSpec::cnot(layout.data_qubit(b), a));
  return gates;
}

std::vector<GateSpec> build_decoder(const CodeLayout& layout) {
  // The fan-out CNOTs share a control, so U_enc^dag is the same list.
  std::vector<GateSpec> gates = build_encoder(layout);
  const int m = 2 * layout.k;
  for (int b = 0; b < layout.num_blocks(); ++b) {
    const auto ancillas = layout.ancilla_qubits(b);
    for (std::uint32_t pattern = 0; pattern < (1u << m); ++pattern) {
      if (std::popcount(pattern) <= layout.k) continue;
      std::vector<int> zeros;
      for (int a = 0; a < m; ++a)
        if (!(pattern & (1u << a))) zeros.push_back(ancillas[a]);
      for (int q : zeros) gates.push_back(GateSpec::x(q));
      gates.push_back(GateSpec::controlled_unitary(ancillas, layout.data_qubit(b),
                                                   GateSpec::x(0).matrix));
      for (int q : zeros) gates.push_back(GateSpec::x(q));
    }
  }
  return gates;
}

bool ancillas_are_zero(const StateVector& state, const CodeLayout& layout) {
  std::uint64_t mask = 0;
  for (int b = 0; b < layout.num_blocks(); ++b)
    for (int a : layout.ancilla_qubits(b)) mask |= std::uint64_t{1} << a;
  for (std::size_t i = 0; i < state.dim(); ++i)
    if ((i & mask) && std::norm(state.amplitudes()[i]) > 1e-24) return false;
  return true;
}

bool majority_decode(std::span<const int> ancilla_outcomes, int k) {
  int minus = 0;
  for (int bit : ancilla_outcomes) {
    if (bit != 1 && bit != -1)
      throw std::invalid_argument("ancilla outcomes must be +/-1");
    if (bit == -1) ++minus;
  }
  return minus > k;
}

KrausChannel make_channel(const ChannelModel& model) {
  if (model.p < 0.0 || model.p > 1.0)
    throw std::invalid_argument("flip probability must be in [0, 1]");
  if (model.arity < 1 || model.arity > 12)
    throw std::invalid_argument("channel arity out of range");
  std::vector<KrausChannel::Term> terms;
  if (model.p == 0.0) {
    terms.push_back({1.0, PauliString::identity(model.arity)});
    return KrausChannel(model.arity, std::move(terms));
  }
  const std::uint32_t count = 1u << model.arity;
  terms.reserve(count);
  for (std::uint32_t mask = 0; mask < count; ++mask) {
    const int w = std::popcount(mask);
    const double weight =
        std::pow(model.p, w) * std::pow(1.0 - model.p, model.arity - w);
    PauliString op = model.kind == ChannelKind::BitFlip
                         ? PauliString::bit_flips(model.arity, mask)
                         : PauliString::phase_flips(model.arity, mask);
    terms.push_back({std::sqrt(weight), std::move(op)});
  }
  return KrausChannel(model.arity, std::move(terms));
}

std::vector<GateSpec> phaseflip_sandwich(const CodeLayout& layout) {
  std::vector<GateSpec> gates;
  for (int q : layout.all_qubits()) gates.push_back(GateSpec::h(q));
  return gates;
}

std::uint64_t binomial(int n, int r) {
  if (n < 0 || n > 62) throw std::invalid_argument("binomial range");
  if (r < 0 || r > n) return 0;
  r = std::min(r, n - r);
  std::uint64_t acc = 1;
  for (int i = 1; i <= r; ++i) {
    acc = acc * static_cast<std::uint64_t>(n - r + i);
    acc /= static_cast<std::uint64_t>(i);
  }
  return acc;
}

SingleFidelity closed_form_single_fidelity(int k, double p) {
  if (k < 1) throw std::invalid_argument("code order k must be >= 1");
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("p must be in [0, 1]");
  const int n = 2 * k + 1;
  double prob = 0.0;
  for (int r = 0; r <= k; ++r)
    prob += static_cast<double>(binomial(n, r)) * std::pow(p, r) * std::pow(1.0 - p, n - r);
  return {prob, std::sqrt(prob)};
}

std::vector<double> bipartite_coefficients(int k, BipartiteKind kind, bool as_published) {
  if (k < 1) throw std::invalid_argument("code order k must be >= 1");
  const int block = 2 * k + 1;
  const int n = 2 * block;
  std::vector<double> f(static_cast<std::size_t>(n) + 1, 0.0);

  if (as_published) {
    for (int i = 0; i <= n; ++i) {
      if (i <= k) {
        f[i] = static_cast<double>(binomial(n, i));
      } else if (i <= 2 * k) {
        double acc = 0.0;
        for (int j = 1; j <= i - 1; ++j)
          acc += static_cast<double>(binomial(block, j) * binomial(block, i - j));
        f[i] = acc;
      } else if (i == block) {
        f[i] = 0.0;
      } else {
        f[i] = kind == BipartiteKind::Bell ? f[n - i] : 0.0;
      }
    }
    return f;
  }

  // Enumeration-consistent counts: split each total weight across the two
  // blocks and keep the splits the per-block decoder maps back to the input.
  for (int i = 0; i <= n; ++i) {
    double acc = 0.0;
    for (int j = std::max(0, i - block); j <= std::min(block, i); ++j) {
      const bool alice_ok = j <= k;
      const bool bob_ok = (i - j) <= k;
      const bool kept = kind == BipartiteKind::Bell ? (alice_ok == bob_ok)
                                                    : (alice_ok && bob_ok);
      if (kept) acc += static_cast<double>(binomial(block, j) * binomial(block, i - j));
    }
    f[i] = acc;
  }
  return f;
}

BipartiteFidelity closed_form_bipartite_fidelity(int k, double p, BipartiteKind kind) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("p must be in [0, 1]");
  BipartiteFidelity out;
  out.coefficients = bipartite_coefficients(k, kind, false);
  out.coefficients_as_published = bipartite_coefficients(k, kind, true);
  out.matches_published = out.coefficients == out.coefficients_as_published;
  const int n = static_cast<int>(out.coefficients.size()) - 1;
  double f2 = 0.0;
  for (int i = 0; i <= n; ++i)
    f2 += out.coefficients[i] * std::pow(p, i) * std::pow(1.0 - p, n - i);
  out.fidelity = std::sqrt(f2);
  return out;
}

namespace {

constexpr int kBlochGrid = 32;

// |<psi(theta, phi)| X |psi(theta, phi)>|^2 evaluated by an explicit inner
// product on the single-qubit statevector.
std::vector<double> bloch_grid_x_expectations() {
  std::vector<double> out;
  out.reserve(kBlochGrid * kBlochGrid);
  for (int it = 0; it < kBlochGrid; ++it) {
    const double theta = std::numbers::pi * it / (kBlochGrid - 1);
    for (int ip = 0; ip < kBlochGrid; ++ip) {
      const double phi = 2.0 * std::numbers::pi * ip / kBlochGrid;
      const std::vector<cdouble> amps = {
          std::cos(theta / 2.0),
          std::polar(std::sin(theta / 2.0), phi)};
      StateVector psi = unchecked_state(1, amps);
      const StateVector flipped = apply_pauli(psi, PauliString::single(1, 0, 'X'));
      out.push_back(std::norm(inner_product(psi, flipped)));
    }
  }
  return out;
}

}  // namespace

double unencoded_min_fidelity(double p, UnencodedKind kind) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("p must be in [0, 1]");
  if (kind == UnencodedKind::Bell)
    return std::sqrt(p * p + (1.0 - p) * (1.0 - p));
  return unencoded_arbitrary_report(p).grid_minimum;
}

UnencodedArbitraryFidelity unencoded_arbitrary_report(double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("p must be in [0, 1]");
  const auto x2 = bloch_grid_x_expectations();
  const double q = 1.0 - p;
  double best = 1.0;
  for (double a : x2)
    for (double b : x2) {
      // F^2 = sum over {II, XI, IX, XX} of weight * |<psi|E|psi>|^2 for the
      // product state; cross terms factor into the per-qubit expectations.
      const double f2 = q * q + p * q * (a + b) + p * p * a * b;
      best = std::min(best, f2);
    }
  return {std::sqrt(best), p, std::sqrt(p)};
}

}  // namespace qbell
