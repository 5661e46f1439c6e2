#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "anticomm/pauli.hpp"

namespace anticomm {

/// One Hamiltonian term alpha * (sign) * P with alpha > 0.
///
/// Every bound uses the magnitude alpha only. The sign bit is applied
/// whenever the term enters an operator (a dense matrix, a product, a
/// unitary), which keeps all positive-coefficient formulas unchanged while
/// accepting negative input coefficients.
struct Term {
  double alpha = 0.0;
  PauliString op;  // phase_exp == 0
  bool negative = false;

  double signed_coefficient() const { return negative ? -alpha : alpha; }
  /// (sign) * P as a Pauli string (phase_exp 2 for a negative term).
  PauliString signed_op() const { return negative ? op.with_phase(2) : op; }
};

struct IngestOptions {
  /// Merged terms with |c| below this are dropped.
  double drop_tolerance = 1e-14;
};

/// H = sum_l alpha_l H_l over pairwise distinct Pauli strings, L >= 1.
class Hamiltonian {
 public:
  /// Validates the invariants; throws std::invalid_argument on violation.
  Hamiltonian(std::size_t n_qubits, std::vector<Term> terms, std::string label = {});

  /// Merges duplicate operators by exact coefficient addition, drops
  /// near-zero sums and absorbs signs. Throws std::invalid_argument when
  /// nothing survives. Strings with a nonzero phase_exp must be +-1 phases.
  static Hamiltonian from_signed(std::size_t n_qubits,
                                 const std::vector<std::pair<double, PauliString>>& terms,
                                 std::string label = {}, const IngestOptions& options = {});

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t size() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }
  const Term& term(std::size_t l) const { return terms_[l]; }
  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  /// alpha = sum_l alpha_l (compensated).
  double alpha() const;
  /// sum_l alpha_l^2.
  double alpha_squared_sum() const;
  /// Largest Pauli weight over the terms.
  std::size_t max_weight() const;
  /// Index of the term whose operator equals p up to phase, or -1.
  long find(const PauliString& p) const;

  DenseOperator to_dense(std::size_t dense_cap = kDefaultDenseCap) const;

  /// Term-list text with a "# qubits: N" header and signed coefficients.
  std::string serialize() const;

 private:
  std::size_t n_qubits_;
  std::vector<Term> terms_;
  std::string label_;
};

/// Parses the term-list format: optional "# qubits: N" header, '#'
/// comments ("# label: NAME" also sets the label), and lines
/// "<coefficient> <factor>*" with factors matching [XYZ][0-9]+.
Hamiltonian load_hamiltonian(std::string_view text, std::string label = {},
                             const IngestOptions& options = {});

/// Reads a term-list file; the label defaults to the file stem.
Hamiltonian load_hamiltonian_file(const std::filesystem::path& path,
                                  const IngestOptions& options = {});

void save_hamiltonian_file(const Hamiltonian& h, const std::filesystem::path& path);

}  // namespace anticomm
