#pragma once

#include <vector>

#include "anticomm/pauli.hpp"

namespace anticomm {

/// phase * op, where op may carry its own i^k phase and |phase| == 1.
struct PhasedPauli {
  PauliString op;
  Complex phase{1.0, 0.0};
};

/// One weighted unitary of a linear combination; weight >= 0.
struct LcuTerm {
  double weight = 0.0;
  PhasedPauli unitary;
};

/// sum_j w_j V_j as a dense matrix.
DenseOperator lcu_sum(const std::vector<LcuTerm>& terms, std::size_t n_qubits,
                      std::size_t dense_cap = kDefaultDenseCap);

double lcu_normalization(const std::vector<LcuTerm>& terms);

}  // namespace anticomm
