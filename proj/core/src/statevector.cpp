#include "qbell/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qbell {

namespace {

const double kSqrtHalf = 1.0 / std::sqrt(2.0);

Eigen::Matrix2cd h_matrix() {
  Eigen::Matrix2cd m;
  m << kSqrtHalf, kSqrtHalf, kSqrtHalf, -kSqrtHalf;
  return m;
}

Eigen::Matrix2cd x_matrix() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}

Eigen::Matrix2cd z_matrix() {
  Eigen::Matrix2cd m;
  m << 1, 0, 0, -1;
  return m;
}

void check_unitary(const Eigen::MatrixXcd& u) {
  if (u.rows() != u.cols()) throw std::invalid_argument("gate matrix must be square");
  Eigen::MatrixXcd err = u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols());
  if (err.cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("gate matrix is not unitary");
}

void check_indices(const GateSpec& gate, int num_qubits) {
  std::vector<int> all = gate.controls;
  all.insert(all.end(), gate.targets.begin(), gate.targets.end());
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end())
    throw std::invalid_argument("gate qubit indices must be distinct");
  for (int q : all)
    if (q < 0 || q >= num_qubits) throw std::out_of_range("gate qubit index out of range");
}

}  // namespace

GateSpec GateSpec::h(int target) { return {GateKind::H, {}, {target}, h_matrix()}; }
GateSpec GateSpec::x(int target) { return {GateKind::X, {}, {target}, x_matrix()}; }
GateSpec GateSpec::z(int target) { return {GateKind::Z, {}, {target}, z_matrix()}; }

GateSpec GateSpec::cnot(int control, int target) {
  return {GateKind::Cnot, {control}, {target}, x_matrix()};
}

GateSpec GateSpec::controlled_unitary(std::vector<int> controls, int target,
                                      const Eigen::Matrix2cd& unitary) {
  check_unitary(unitary);
  if (controls.empty()) throw std::invalid_argument("controlled gate needs controls");
  return {GateKind::ControlledUnitary, std::move(controls), {target}, unitary};
}

GateSpec GateSpec::raw_unitary(std::vector<int> targets, const Eigen::MatrixXcd& unitary) {
  check_unitary(unitary);
  if (targets.empty()) throw std::invalid_argument("raw gate needs targets");
  if (unitary.rows() != (1LL << targets.size()))
    throw std::invalid_argument("raw gate dimension does not match target count");
  return {GateKind::RawUnitary, {}, std::move(targets), unitary};
}

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxQubits)
    throw std::invalid_argument("num_qubits out of supported range");
  amps_.assign(std::size_t{1} << num_qubits, cdouble{0.0, 0.0});
  amps_[0] = 1.0;
}

StateVector StateVector::from_amplitudes(int num_qubits, std::vector<cdouble> amps) {
  if (num_qubits < 1 || num_qubits > kMaxQubits)
    throw std::invalid_argument("num_qubits out of supported range");
  if (amps.size() != (std::size_t{1} << num_qubits))
    throw std::invalid_argument("amplitude vector has wrong length");
  double n2 = 0.0;
  for (const auto& a : amps) n2 += std::norm(a);
  if (std::abs(n2 - 1.0) > 1e-12)
    throw std::invalid_argument("amplitude vector is not normalized");
  return StateVector(num_qubits, std::move(amps), true);
}

double StateVector::norm() const {
  double n2 = 0.0;
  for (const auto& a : amps_) n2 += std::norm(a);
  return std::sqrt(n2);
}

StateVector unchecked_state(int num_qubits, std::vector<cdouble> amps) {
  return StateVector(num_qubits, std::move(amps), true);
}

namespace detail {

void apply_single_qubit(std::span<cdouble> amps, int num_qubits, int target,
                        const Eigen::Matrix2cd& u) {
  const std::size_t dim = std::size_t{1} << num_qubits;
  const std::size_t stride = std::size_t{1} << target;
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    for (std::size_t off = 0; off < stride; ++off) {
      const std::size_t i0 = base + off;
      const std::size_t i1 = i0 + stride;
      const cdouble a0 = amps[i0], a1 = amps[i1];
      amps[i0] = u(0, 0) * a0 + u(0, 1) * a1;
      amps[i1] = u(1, 0) * a0 + u(1, 1) * a1;
    }
  }
}

void apply_controlled(std::span<cdouble> amps, int num_qubits,
                      std::span<const int> controls, int target,
                      const Eigen::Matrix2cd& u) {
  const std::size_t dim = std::size_t{1} << num_qubits;
  std::size_t cmask = 0;
  for (int c : controls) cmask |= std::size_t{1} << c;
  const std::size_t tmask = std::size_t{1} << target;
  for (std::size_t i = 0; i < dim; ++i) {
    if ((i & cmask) != cmask || (i & tmask)) continue;
    const std::size_t j = i | tmask;
    const cdouble a0 = amps[i], a1 = amps[j];
    amps[i] = u(0, 0) * a0 + u(0, 1) * a1;
    amps[j] = u(1, 0) * a0 + u(1, 1) * a1;
  }
}

void apply_raw(std::span<cdouble> amps, int num_qubits,
               std::span<const int> targets, const Eigen::MatrixXcd& u) {
  const std::size_t dim = std::size_t{1} << num_qubits;
  const int m = static_cast<int>(targets.size());
  const std::size_t sub = std::size_t{1} << m;
  std::size_t tmask = 0;
  for (int t : targets) tmask |= std::size_t{1} << t;

  std::vector<std::size_t> scatter(sub, 0);
  for (std::size_t s = 0; s < sub; ++s)
    for (int b = 0; b < m; ++b)
      if (s & (std::size_t{1} << b)) scatter[s] |= std::size_t{1} << targets[b];

  Eigen::VectorXcd in(sub), out(sub);
  for (std::size_t rest = 0; rest < dim; ++rest) {
    if (rest & tmask) continue;
    for (std::size_t s = 0; s < sub; ++s) in(static_cast<long>(s)) = amps[rest | scatter[s]];
    out = u * in;
    for (std::size_t s = 0; s < sub; ++s) amps[rest | scatter[s]] = out(static_cast<long>(s));
  }
}

void apply_gate_inplace(std::span<cdouble> amps, int num_qubits, const GateSpec& gate) {
  check_indices(gate, num_qubits);
  switch (gate.kind) {
    case GateKind::H:
    case GateKind::X:
    case GateKind::Z:
      apply_single_qubit(amps, num_qubits, gate.targets[0], gate.matrix);
      break;
    case GateKind::Cnot:
    case GateKind::ControlledUnitary:
      apply_controlled(amps, num_qubits, gate.controls, gate.targets[0], gate.matrix);
      break;
    case GateKind::RawUnitary:
      apply_raw(amps, num_qubits, gate.targets, gate.matrix);
      break;
  }
}

}  // namespace detail

StateVector apply_gate(const StateVector& state, const GateSpec& gate) {
  StateVector out = state;
  detail::apply_gate_inplace(out.amps_, out.num_qubits_, gate);
  return out;
}

StateVector apply_gates(const StateVector& state, std::span<const GateSpec> gates) {
  StateVector out = state;
  for (const auto& g : gates) out = apply_gate(out, g);
  return out;
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  const int n = a.num_qubits() + b.num_qubits();
  if (n > kMaxQubits) throw std::invalid_argument("tensor product exceeds qubit cap");
  std::vector<cdouble> amps(std::size_t{1} << n);
  for (std::size_t j = 0; j < b.dim(); ++j)
    for (std::size_t i = 0; i < a.dim(); ++i)
      amps[(j << a.num_qubits()) | i] = b.amplitudes()[j] * a.amplitudes()[i];
  return unchecked_state(n, std::move(amps));
}

cdouble inner_product(const StateVector& a, const StateVector& b) {
  if (a.num_qubits() != b.num_qubits())
    throw std::invalid_argument("inner product dimension mismatch");
  cdouble acc{0.0, 0.0};
  for (std::size_t i = 0; i < a.dim(); ++i)
    acc += std::conj(a.amplitudes()[i]) * b.amplitudes()[i];
  return acc;
}

double overlap(const StateVector& a, const StateVector& b) {
  return std::abs(inner_product(a, b));
}

BellLabel bell_label(int m, int n) {
  if ((m != 0 && m != 1) || (n != 0 && n != 1))
    throw std::invalid_argument("bell bits must be 0 or 1");
  static constexpr BellLabel table[2][2] = {
      {BellLabel::PhiPlus, BellLabel::PhiMinus},
      {BellLabel::PsiPlus, BellLabel::PsiMinus}};
  return table[m][n];
}

std::pair<int, int> bell_bits(BellLabel label) {
  switch (label) {
    case BellLabel::PhiPlus: return {0, 0};
    case BellLabel::PhiMinus: return {0, 1};
    case BellLabel::PsiPlus: return {1, 0};
    case BellLabel::PsiMinus: return {1, 1};
  }
  throw std::invalid_argument("bad bell label");
}

std::string bell_name(BellLabel label) {
  switch (label) {
    case BellLabel::PhiPlus: return "phi+";
    case BellLabel::PhiMinus: return "phi-";
    case BellLabel::PsiPlus: return "psi+";
    case BellLabel::PsiMinus: return "psi-";
  }
  throw std::invalid_argument("bad bell label");
}

StateVector prepare_bell(int m, int n) {
  StateVector s(2);
  s = apply_gate(s, GateSpec::h(0));
  s = apply_gate(s, GateSpec::cnot(0, 1));
  if (n) s = apply_gate(s, GateSpec::z(1));
  if (m) s = apply_gate(s, GateSpec::x(1));
  return s;
}

StateVector prepare_bell(BellLabel label) {
  auto [m, n] = bell_bits(label);
  return prepare_bell(m, n);
}

std::vector<GateSpec> bell_transform(BellLabel source, BellLabel target) {
  auto [ms, ns] = bell_bits(source);
  auto [mt, nt] = bell_bits(target);
  std::vector<GateSpec> gates;
  if (ns ^ nt) gates.push_back(GateSpec::z(1));
  if (ms ^ mt) gates.push_back(GateSpec::x(1));
  return gates;
}

}  // namespace qbell
