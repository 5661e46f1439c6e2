#pragma once

#include <cstddef>
#include <vector>

#include "anticomm/hamiltonian.hpp"
#include "anticomm/lcu_types.hpp"

namespace anticomm {

struct OracleConfig {
  std::size_t dense_cap = kDefaultDenseCap;
  /// Full SVD up to this dimension, power iteration on A^dagger A above it.
  Eigen::Index svd_max_dim = 256;
  double power_tolerance = 1e-11;
  int power_max_iterations = 200000;
};

/// exp(-i t H) for Hermitian H through its eigendecomposition.
DenseOperator hermitian_expm(const DenseOperator& h, double t);
DenseOperator expm(const Hamiltonian& h, double t, const OracleConfig& config = {});

double spectral_norm(const DenseOperator& a, const OracleConfig& config = {});
/// Largest singular value by power iteration on A^dagger A from a fixed start.
double spectral_norm_power(const DenseOperator& a, double tolerance = 1e-11,
                           int max_iterations = 200000);

/// sum_{k <= K} (-i t H)^k / k!
DenseOperator taylor_partial_sum(const DenseOperator& h, double t, int K);

/// (prod_l exp(-i a_l H_l t / r))^r with the first term leftmost.
DenseOperator pf1_product(const Hamiltonian& h, double t, std::size_t r,
                          const OracleConfig& config = {});

/// Prepare oracle G with G|0> = sum_j sqrt(w_j / s) |j>, completed to a
/// unitary as the Householder reflection mapping e_0 to that column.
/// The dimension is the next power of two >= weights.size().
DenseOperator prepare_oracle(const std::vector<double>& weights);

/// W = (G^dagger (x) I) select(V) (G (x) I), ancilla as the high-order index.
class BlockEncoding {
 public:
  BlockEncoding(std::vector<LcuTerm> terms, std::size_t n_qubits);

  std::size_t ancilla_dim() const { return ancilla_dim_; }
  std::size_t system_dim() const { return system_dim_; }
  double s() const { return s_; }
  const std::vector<LcuTerm>& terms() const { return terms_; }

  /// W X and W^dagger X for X with ancilla_dim * system_dim rows.
  DenseOperator apply(const DenseOperator& x) const;
  DenseOperator apply_adjoint(const DenseOperator& x) const;

  /// Explicit W; refuses dimensions above max_dim.
  DenseOperator dense(Eigen::Index max_dim = 2048) const;
  /// (<0| (x) I) W (|0> (x) I), which equals (1/s) sum_j w_j V_j.
  DenseOperator block() const;

 private:
  DenseOperator prepare(const DenseOperator& x) const;  // (G (x) I) x, G is Hermitian
  DenseOperator select(const DenseOperator& x, bool adjoint) const;

  std::vector<LcuTerm> terms_;
  std::size_t n_qubits_;
  std::size_t ancilla_dim_;
  std::size_t system_dim_;
  double s_;
  Eigen::VectorXd householder_;  // v = e_0 - g; empty when g = e_0
};

/// <0|-block of -W R W^dagger R W with R = (I - 2|0><0|) (x) I.
DenseOperator amplify(const BlockEncoding& w);

/// (3/s) U - (4/s^3) U U^dagger U.
DenseOperator amplification_formula(const DenseOperator& u, double s);

/// Raises s < 2 to exactly 2 by adding +I and -I with weight (2 - s)/2 each,
/// which leaves sum_j w_j V_j unchanged.
std::vector<LcuTerm> boost_to_two(std::vector<LcuTerm> terms, std::size_t n_qubits);

}  // namespace anticomm
