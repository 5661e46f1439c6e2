#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "anticomm/hamiltonian.hpp"

namespace anticomm {

/// Pairwise commutation graph of the terms plus its coefficient masses.
struct CommutationStructure {
  std::size_t size = 0;          // L
  std::size_t words_per_row = 0;
  std::vector<std::uint64_t> adjacency;  // row-major bit rows, diagonal set

  double alpha = 0.0;
  double alpha_comm = 0.0;  // sum over ordered commuting pairs, diagonal included
  double alpha_anti = 0.0;
  double q2 = 1.0;          // alpha / sqrt(alpha_comm)
  /// comm_mass[i] = sum of alpha_j over j commuting with i (j = i included).
  std::vector<double> comm_mass;
  /// comm_square_mass[i] = sum of alpha_j^2 over the same set.
  std::vector<double> comm_square_mass;

  bool commute(std::size_t i, std::size_t j) const {
    return (adjacency[i * words_per_row + j / 64] >> (j % 64)) & 1u;
  }
  const std::uint64_t* row(std::size_t i) const { return adjacency.data() + i * words_per_row; }
  /// True when every distinct pair anticommutes.
  bool pairwise_anticommuting() const;
};

/// Builds the adjacency in parallel; the aggregates do not depend on the
/// worker count.
CommutationStructure analyze(const Hamiltonian& h, unsigned workers = 0);

/// H^m expanded in the Pauli basis, sorted by operator, zeros dropped.
struct SymbolicOperator {
  std::size_t n_qubits = 0;
  std::vector<std::pair<PauliString, double>> terms;

  double l1_norm() const;
  double coefficient(const PauliString& p) const;
  DenseOperator to_dense(std::size_t dense_cap = kDefaultDenseCap) const;
};

struct SymbolicBudget {
  std::size_t max_entries = 5'000'000;
  double max_products = 1e9;
  double drop_tolerance = 1e-13;
};

/// Exact expansion of H^m (m >= 1). Throws BudgetExceeded before the map or
/// the product count would outgrow the budget.
SymbolicOperator symbolic_power(const Hamiltonian& h, int m, const SymbolicBudget& budget = {},
                                unsigned workers = 0);

/// Third-order classification of ordered index triples.
///
/// Repeated-index triples reduce to multiples of single terms (beta). For
/// distinct indices the six orderings cancel when zero or two of the pairs
/// commute, sum to 6 H_a H_b H_c when all three commute (alpha3_r), and to
/// 2 H_a H_b H_c when exactly one pair commutes (alpha3_mixed).
struct Order3Result {
  std::vector<double> beta;
  double beta_sum = 0.0;
  double alpha3_r = 0.0;
  double alpha3_mixed = 0.0;

  /// Mass left after moving the beta part into single terms.
  double residual() const { return alpha3_r + alpha3_mixed; }
  double classified() const { return beta_sum + alpha3_r + alpha3_mixed; }
};

/// max_work caps the number of 64-bit word operations of the triple scan.
Order3Result cancellation_order3(const Hamiltonian& h, const CommutationStructure& s,
                                 double max_work = 4e9, unsigned workers = 0);

/// One product class of the distinct-commuting-pair part of H^2.
struct PairGroup {
  PauliString op;            // phase-normalized
  double coefficient = 0.0;  // signed component of H^2 along op
  double mass = 0.0;         // sum of 2 alpha_a alpha_b over its pairs
  long absorbed_term = -1;   // term index when op equals a term operator
};

struct ExtraUnitarySelection {
  /// Coefficient of I in H^2 (sum of alpha_l^2).
  double identity_coefficient = 0.0;
  /// Component of H^2 along the signed term operator, per term.
  std::vector<double> term_coefficient;
  /// Selected groups, largest |coefficient| first.
  std::vector<PairGroup> chosen;
  /// Groups neither absorbed nor chosen, in the same order.
  std::vector<PairGroup> rest;
  std::size_t group_count = 0;  // groups eligible for selection
  double e_epsilon = 0.0;
};

/// Groups H^2 by product operator and keeps the E heaviest eligible groups.
ExtraUnitarySelection select_extra_unitaries(const Hamiltonian& h, const CommutationStructure& s,
                                             std::size_t E);

/// Extra unitaries that fit in the unused select slots: 2^w - L - 1.
std::size_t free_select_slots(std::size_t L);

enum class Method { Classification, Symbolic, Composite };
std::string to_string(Method m);

struct CancellationReport {
  std::string label;
  std::size_t n_qubits = 0;
  std::size_t L = 0;
  double alpha = 0.0;
  double alpha_comm = 0.0;
  double alpha_anti = 0.0;
  double q2 = 1.0;

  double alpha3 = 0.0;
  Method alpha3_method = Method::Classification;
  double alpha3_classified = 0.0;
  std::optional<double> alpha3_symbolic;
  double alpha3_r = 0.0;
  double alpha3_mixed = 0.0;
  std::vector<double> beta;

  double alpha4 = 0.0;
  Method alpha4_method = Method::Composite;

  std::size_t extra_unitaries = 0;
  double e_epsilon = 0.0;

  double q3() const;
  double q4() const;
  double alpha3_residual() const { return alpha3_r + alpha3_mixed; }
};

struct ReportOptions {
  /// Number of extra unitaries; defaults to the free select slots.
  std::optional<std::size_t> extra_unitaries;
  SymbolicBudget budget;
  bool symbolic = true;
  unsigned workers = 0;
};

CancellationReport cancellation_report(const Hamiltonian& h, const CommutationStructure& s,
                                       const ReportOptions& options = {});

}  // namespace anticomm
