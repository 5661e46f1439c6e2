#pragma once

#include <cstddef>
#include <unordered_map>
#include <utility>
#include <vector>

#include "anticomm/parallel.hpp"
#include "anticomm/pauli.hpp"

namespace anticomm {

/// Linear combination of Pauli strings with complex coefficients.
///
/// Keys are phase-normalized; the phase of an added string is folded into
/// its coefficient. Accumulation is Kahan-compensated per key.
class PauliSum {
 public:
  using Entry = std::pair<PauliString, Complex>;

  PauliSum() = default;
  explicit PauliSum(std::size_t n_qubits) : n_qubits_(n_qubits) {}

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  void add(const PauliString& p, Complex coeff);
  void add(const PauliSum& other, Complex scale = 1.0);

  Complex coefficient(const PauliString& p) const;

  /// Entries sorted by key, dropping those with |c| <= drop_tol.
  std::vector<Entry> sorted_terms(double drop_tol = 0.0) const;

  /// Sum of |c| over entries with |c| > drop_tol.
  double l1_norm(double drop_tol = 0.0) const;

  /// Largest |Im c|; zero for any Hermitian combination of Hermitian Paulis.
  double max_imag() const;

  PauliSum operator*(const PauliSum& rhs) const;

  DenseOperator to_dense(std::size_t dense_cap = kDefaultDenseCap) const;

 private:
  struct Accumulator {
    KahanSum re;
    KahanSum im;
    Complex value() const { return {re.value(), im.value()}; }
  };

  std::size_t n_qubits_ = 0;
  std::unordered_map<PauliString, Accumulator, PauliHash> terms_;
};

}  // namespace anticomm
