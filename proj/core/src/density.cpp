#include "qbell/density.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace qbell {

namespace {

int parity(std::uint32_t v) { return std::popcount(v) & 1; }

void apply_gate_to_columns(Eigen::MatrixXcd& m, int num_qubits, const GateSpec& gate) {
  for (long c = 0; c < m.cols(); ++c) {
    std::span<cdouble> col(m.col(c).data(), static_cast<std::size_t>(m.rows()));
    detail::apply_gate_inplace(col, num_qubits, gate);
  }
}

std::vector<int> sorted_distinct(std::span<const int> qubits, int num_qubits) {
  std::vector<int> out(qubits.begin(), qubits.end());
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end())
    throw std::invalid_argument("qubit list has duplicates");
  for (int q : out)
    if (q < 0 || q >= num_qubits) throw std::out_of_range("qubit index out of range");
  return out;
}

}  // namespace

DensityMatrix::DensityMatrix(const StateVector& psi) : num_qubits_(psi.num_qubits()) {
  const long dim = static_cast<long>(psi.dim());
  Eigen::VectorXcd v(dim);
  for (long i = 0; i < dim; ++i) v(i) = psi.amplitudes()[static_cast<std::size_t>(i)];
  entries_ = v * v.adjoint();
}

DensityMatrix DensityMatrix::from_matrix(int num_qubits, Eigen::MatrixXcd entries) {
  if (num_qubits < 1 || num_qubits > kMaxQubits)
    throw std::invalid_argument("num_qubits out of supported range");
  const long dim = 1L << num_qubits;
  if (entries.rows() != dim || entries.cols() != dim)
    throw std::invalid_argument("density matrix has wrong dimension");
  if ((entries - entries.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("density matrix is not Hermitian");
  if (std::abs(entries.trace().real() - 1.0) > 1e-12 ||
      std::abs(entries.trace().imag()) > 1e-12)
    throw std::invalid_argument("density matrix trace is not 1");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(entries,
                                                         Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -1e-10)
    throw std::invalid_argument("density matrix is not positive semidefinite");
  return DensityMatrix(num_qubits, std::move(entries), true);
}

DensityMatrix unchecked_density(int num_qubits, Eigen::MatrixXcd entries) {
  return DensityMatrix(num_qubits, std::move(entries), true);
}

DensityMatrix apply_gate(const DensityMatrix& rho, const GateSpec& gate) {
  Eigen::MatrixXcd m = rho.entries();
  apply_gate_to_columns(m, rho.num_qubits(), gate);  // U rho
  Eigen::MatrixXcd a = m.adjoint();                  // rho U^dag
  apply_gate_to_columns(a, rho.num_qubits(), gate);  // U rho U^dag
  return unchecked_density(rho.num_qubits(), std::move(a));
}

DensityMatrix apply_gates(const DensityMatrix& rho, std::span<const GateSpec> gates) {
  DensityMatrix out = rho;
  for (const auto& g : gates) out = apply_gate(out, g);
  return out;
}

DensityMatrix apply_pauli(const DensityMatrix& rho, const PauliString& p) {
  if (rho.num_qubits() != p.num_qubits())
    throw std::invalid_argument("pauli/state dimension mismatch");
  const long dim = rho.dim();
  Eigen::MatrixXcd out(dim, dim);
  const long x = static_cast<long>(p.x_mask());
  for (long j = 0; j < dim; ++j) {
    for (long i = 0; i < dim; ++i) {
      const double sign =
          parity(static_cast<std::uint32_t>(i ^ j) & p.z_mask()) ? -1.0 : 1.0;
      out(i ^ x, j ^ x) = sign * rho.entries()(i, j);
    }
  }
  return unchecked_density(rho.num_qubits(), std::move(out));
}

KrausChannel::KrausChannel(int arity, std::vector<Term> terms)
    : arity_(arity), terms_(std::move(terms)) {
  if (arity < 1 || arity > kMaxQubits) throw std::invalid_argument("bad channel arity");
  if (terms_.empty()) throw std::invalid_argument("channel needs at least one operator");
  const long dim = 1L << arity;
  Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : terms_) {
    if (const auto* p = std::get_if<PauliString>(&t.op)) {
      if (p->num_qubits() != arity)
        throw std::invalid_argument("channel operator arity mismatch");
      total += (t.coefficient * t.coefficient) * Eigen::MatrixXcd::Identity(dim, dim);
    } else {
      const auto& m = std::get<Eigen::MatrixXcd>(t.op);
      if (m.rows() != dim || m.cols() != dim)
        throw std::invalid_argument("channel operator dimension mismatch");
      total += (t.coefficient * t.coefficient) * (m.adjoint() * m);
    }
  }
  if ((total - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("Kraus operators violate completeness");
}

DensityMatrix apply_channel(const DensityMatrix& rho, const KrausChannel& channel,
                            std::span<const int> targets) {
  if (static_cast<int>(targets.size()) != channel.arity())
    throw std::invalid_argument("target count does not match channel arity");
  sorted_distinct(targets, rho.num_qubits());  // distinctness / range check

  const int n = rho.num_qubits();
  const long dim = rho.dim();
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dim, dim);

  for (const auto& t : channel.terms()) {
    const double w = t.coefficient * t.coefficient;
    if (w == 0.0) continue;
    if (const auto* p = std::get_if<PauliString>(&t.op)) {
      PauliString full = PauliString::identity(n);
      for (int q = 0; q < channel.arity(); ++q)
        full = multiply(full, PauliString::single(n, targets[q], p->letter(q)));
      acc += w * apply_pauli(rho, full).entries();
    } else {
      const auto& m = std::get<Eigen::MatrixXcd>(t.op);
      Eigen::MatrixXcd work = rho.entries();
      for (long c = 0; c < dim; ++c) {
        std::span<cdouble> col(work.col(c).data(), static_cast<std::size_t>(dim));
        detail::apply_raw(col, n, targets, m);
      }
      Eigen::MatrixXcd a = work.adjoint();
      for (long c = 0; c < dim; ++c) {
        std::span<cdouble> col(a.col(c).data(), static_cast<std::size_t>(dim));
        detail::apply_raw(col, n, targets, m);
      }
      acc += w * a.adjoint();
    }
  }
  return unchecked_density(n, std::move(acc));
}

double fidelity(const StateVector& reference, const DensityMatrix& rho) {
  if (reference.num_qubits() != rho.num_qubits())
    throw std::invalid_argument("fidelity dimension mismatch");
  const long dim = rho.dim();
  Eigen::VectorXcd v(dim);
  for (long i = 0; i < dim; ++i) v(i) = reference.amplitudes()[static_cast<std::size_t>(i)];
  double q = (v.adjoint() * rho.entries() * v)(0).real();
  q = std::clamp(q, 0.0, 1.0);
  return std::sqrt(q);
}

namespace {

struct TraceMaps {
  std::vector<long> keep_scatter;
  std::vector<long> rest_scatter;
};

TraceMaps trace_maps(std::span<const int> keep_sorted, int num_qubits) {
  const int k = static_cast<int>(keep_sorted.size());
  std::vector<int> rest;
  for (int q = 0; q < num_qubits; ++q)
    if (!std::binary_search(keep_sorted.begin(), keep_sorted.end(), q)) rest.push_back(q);
  TraceMaps maps;
  maps.keep_scatter.assign(std::size_t{1} << k, 0);
  for (std::size_t s = 0; s < maps.keep_scatter.size(); ++s)
    for (int b = 0; b < k; ++b)
      if (s & (std::size_t{1} << b)) maps.keep_scatter[s] |= 1L << keep_sorted[b];
  maps.rest_scatter.assign(std::size_t{1} << rest.size(), 0);
  for (std::size_t s = 0; s < maps.rest_scatter.size(); ++s)
    for (std::size_t b = 0; b < rest.size(); ++b)
      if (s & (std::size_t{1} << b)) maps.rest_scatter[s] |= 1L << rest[b];
  return maps;
}

}  // namespace

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
  if (keep.empty()) throw std::invalid_argument("partial trace keep set is empty");
  const auto keep_sorted = sorted_distinct(keep, rho.num_qubits());
  const auto maps = trace_maps(keep_sorted, rho.num_qubits());
  const long kd = static_cast<long>(maps.keep_scatter.size());
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(kd, kd);
  for (long j = 0; j < kd; ++j)
    for (long i = 0; i < kd; ++i)
      for (long r : maps.rest_scatter)
        out(i, j) += rho.entries()(maps.keep_scatter[i] | r, maps.keep_scatter[j] | r);
  return unchecked_density(static_cast<int>(keep_sorted.size()), std::move(out));
}

DensityMatrix partial_trace(const StateVector& psi, std::span<const int> keep) {
  if (keep.empty()) throw std::invalid_argument("partial trace keep set is empty");
  const auto keep_sorted = sorted_distinct(keep, psi.num_qubits());
  const auto maps = trace_maps(keep_sorted, psi.num_qubits());
  const long kd = static_cast<long>(maps.keep_scatter.size());
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(kd, kd);
  for (long r : maps.rest_scatter)
    for (long j = 0; j < kd; ++j) {
      const cdouble aj = psi.amplitudes()[static_cast<std::size_t>(maps.keep_scatter[j] | r)];
      if (aj == cdouble{0, 0}) continue;
      for (long i = 0; i < kd; ++i)
        out(i, j) += psi.amplitudes()[static_cast<std::size_t>(maps.keep_scatter[i] | r)] *
                     std::conj(aj);
    }
  return unchecked_density(static_cast<int>(keep_sorted.size()), std::move(out));
}

double von_neumann_entropy(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho.entries(),
                                                         Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (long i = 0; i < solver.eigenvalues().size(); ++i) {
    const double lambda = solver.eigenvalues()(i);
    if (lambda <= 0.0) continue;  // clamp numerical PSD noise
    s -= lambda * std::log2(lambda);
  }
  return std::max(s, 0.0);
}

MutualInformation mutual_information(const DensityMatrix& rho_ab,
                                     std::span<const int> part_a,
                                     std::span<const int> part_b) {
  std::vector<int> all(part_a.begin(), part_a.end());
  all.insert(all.end(), part_b.begin(), part_b.end());
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end())
    throw std::invalid_argument("partition overlaps");
  if (static_cast<int>(all.size()) != rho_ab.num_qubits() || all.front() != 0 ||
      all.back() != rho_ab.num_qubits() - 1)
    throw std::invalid_argument("partition must cover all qubits");

  MutualInformation info{};
  info.s_a = von_neumann_entropy(partial_trace(rho_ab, part_a));
  info.s_b = von_neumann_entropy(partial_trace(rho_ab, part_b));
  info.s_ab = von_neumann_entropy(rho_ab);
  info.s_a_given_b = info.s_ab - info.s_b;
  info.mutual = info.s_a + info.s_b - info.s_ab;
  return info;
}

}  // namespace qbell
