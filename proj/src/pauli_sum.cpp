#include "anticomm/pauli_sum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "anticomm/errors.hpp"

namespace anticomm {

void PauliSum::add(const PauliString& p, Complex coeff) {
  if (terms_.empty() && n_qubits_ == 0) n_qubits_ = p.n_qubits();
  if (p.n_qubits() != n_qubits_) {
    throw std::invalid_argument(
        fmt::format("PauliSum width {} cannot hold a {}-qubit string", n_qubits_, p.n_qubits()));
  }
  const Complex c = coeff * phase_value(p.phase_exp());
  auto& acc = terms_[p.phase_normalized()];
  acc.re.add(c.real());
  acc.im.add(c.imag());
}

void PauliSum::add(const PauliSum& other, Complex scale) {
  for (const auto& [p, c] : other.sorted_terms()) add(p, scale * c);
}

Complex PauliSum::coefficient(const PauliString& p) const {
  auto it = terms_.find(p.phase_normalized());
  if (it == terms_.end()) return {0.0, 0.0};
  return it->second.value() * std::conj(phase_value(p.phase_exp()));
}

std::vector<PauliSum::Entry> PauliSum::sorted_terms(double drop_tol) const {
  std::vector<Entry> out;
  out.reserve(terms_.size());
  for (const auto& [p, acc] : terms_) {
    const Complex c = acc.value();
    if (std::abs(c) > drop_tol) out.emplace_back(p, c);
  }
  std::sort(out.begin(), out.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  return out;
}

double PauliSum::l1_norm(double drop_tol) const {
  KahanSum total;
  for (const auto& [p, c] : sorted_terms(drop_tol)) total.add(std::abs(c));
  return total.value();
}

double PauliSum::max_imag() const {
  double worst = 0.0;
  for (const auto& [p, acc] : terms_) worst = std::max(worst, std::abs(acc.im.value()));
  return worst;
}

PauliSum PauliSum::operator*(const PauliSum& rhs) const {
  PauliSum out(n_qubits_);
  const auto left = sorted_terms();
  const auto right = rhs.sorted_terms();
  for (const auto& [p, a] : left) {
    for (const auto& [q, b] : right) out.add(multiply(p, q), a * b);
  }
  return out;
}

DenseOperator PauliSum::to_dense(std::size_t dense_cap) const {
  if (n_qubits_ > dense_cap) {
    throw DenseCapExceeded(
        fmt::format("dense conversion of {} qubits exceeds cap {}", n_qubits_, dense_cap));
  }
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n_qubits_);
  DenseOperator m = DenseOperator::Zero(dim, dim);
  for (const auto& [p, c] : sorted_terms()) add_to_dense(p, c, m);
  return m;
}

}  // namespace anticomm
