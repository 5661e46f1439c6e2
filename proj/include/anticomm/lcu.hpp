#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "anticomm/hamiltonian.hpp"
#include "anticomm/lcu_types.hpp"
#include "anticomm/structure.hpp"

namespace anticomm {

/// t = (r - 1) tau + tau_re with tau = ln2 / alpha and tau_re in (0, tau].
struct SegmentSchedule {
  std::size_t r = 1;
  double tau = 0.0;
  double tau_re = 0.0;
};
SegmentSchedule segment_schedule(double t, double alpha);

enum class PlanScheme { Truncated, Modified };
std::string to_string(PlanScheme s);

/// Order-K block of the modified scheme, applied after (-itH)^{K-1}/K!:
///   sum_l gamma_l (-i s_l H_l) + w_0 (sign_0 I) + sum_j w_j (sign_j P_j).
struct ModifiedBlock {
  std::vector<Complex> gamma;
  double identity_weight = 0.0;
  double identity_sign = -1.0;
  std::vector<PairGroup> extra;
  std::vector<double> extra_weight;
  std::vector<double> extra_sign;
  std::size_t E_requested = 0;
  double e_epsilon = 0.0;
  double alpha3_residual = 0.0;

  /// Sum of the block's LCU weights.
  double weight_sum() const;
};

/// Coefficient plan for one segment of duration t. Orders are kept as
/// aggregates (tα)^k/k!; expand_unitaries produces the explicit list.
struct LcuPlan {
  PlanScheme scheme = PlanScheme::Truncated;
  int K = 1;
  double t = 0.0;
  double alpha = 0.0;
  std::size_t n_qubits = 0;
  std::size_t L = 0;
  /// (t alpha)^k / k! for k = 0..K (truncated) or 0..K-1 (modified).
  std::vector<double> order_weight;
  double s = 0.0;
  std::optional<ModifiedBlock> modified;
  std::vector<std::string> warnings;
};

LcuPlan build_truncated(const Hamiltonian& h, double t, int K);

/// Requires odd K. E extra unitaries are taken from the heaviest H^2 groups.
LcuPlan build_modified(const Hamiltonian& h, const CommutationStructure& s, double t, int K,
                       std::size_t E);

/// Dense operator represented by the plan (before normalization by s).
DenseOperator plan_operator(const LcuPlan& plan, const Hamiltonian& h,
                            std::size_t dense_cap = kDefaultDenseCap);

/// Explicit weighted unitaries. Sequences with identical Pauli string and
/// phase are merged, which keeps every weight positive and s unchanged; the
/// order-K block of a modified plan is listed per (sequence, block term).
/// Throws BudgetExceeded above max_terms entries.
std::vector<LcuTerm> expand_unitaries(const LcuPlan& plan, const Hamiltonian& h,
                                      std::size_t max_terms = 1u << 16);

struct GateCost {
  std::size_t L = 0;
  std::size_t w = 0;
  long long cnot_per_select = 0;
  long long t_per_select = 0;
  int K = 0;
  std::size_t r = 1;
  std::size_t D = 0;  // largest Pauli weight of a term
  std::size_t E = 0;
  std::size_t free_slots = 0;
  bool cost_parity = true;  // the modified select costs the same as select(H)
  long long cnot_total = 0;
  long long t_total = 0;
  double complexity_estimate = 0.0;  // alpha t L (D + log2 L) K
};

/// Throws std::invalid_argument for L < 4, outside the cost formula's domain.
GateCost gate_cost(std::size_t L, int K, std::size_t r, std::size_t D, double alpha, double t,
                   std::size_t E);
GateCost gate_cost(const LcuPlan& plan, const Hamiltonian& h, std::size_t r);

}  // namespace anticomm
