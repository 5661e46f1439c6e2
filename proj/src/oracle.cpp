#include "anticomm/oracle.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <fmt/format.h>

#include "anticomm/errors.hpp"
#include "anticomm/parallel.hpp"

namespace anticomm {

namespace {

void check_cap(std::size_t n, std::size_t cap) {
  if (n > cap) {
    throw DenseCapExceeded(fmt::format("{} qubits exceed the dense cap of {}", n, cap));
  }
}

DenseOperator identity(Eigen::Index dim) { return DenseOperator::Identity(dim, dim); }

}  // namespace

DenseOperator lcu_sum(const std::vector<LcuTerm>& terms, std::size_t n_qubits,
                      std::size_t dense_cap) {
  check_cap(n_qubits, dense_cap);
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n_qubits);
  DenseOperator m = DenseOperator::Zero(dim, dim);
  for (const auto& t : terms) add_to_dense(t.unitary.op, t.weight * t.unitary.phase, m);
  return m;
}

double lcu_normalization(const std::vector<LcuTerm>& terms) {
  KahanSum s;
  for (const auto& t : terms) s.add(t.weight);
  return s.value();
}

DenseOperator hermitian_expm(const DenseOperator& h, double t) {
  Eigen::SelfAdjointEigenSolver<DenseOperator> eig(h);
  if (eig.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
  const auto& vecs = eig.eigenvectors();
  Eigen::VectorXcd phases(eig.eigenvalues().size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) {
    phases(i) = std::exp(Complex(0.0, -t * eig.eigenvalues()(i)));
  }
  return vecs * phases.asDiagonal() * vecs.adjoint();
}

DenseOperator expm(const Hamiltonian& h, double t, const OracleConfig& config) {
  check_cap(h.n_qubits(), config.dense_cap);
  return hermitian_expm(h.to_dense(config.dense_cap), t);
}

double spectral_norm_power(const DenseOperator& a, double tolerance, int max_iterations) {
  const Eigen::Index n = a.cols();
  if (n == 0) return 0.0;
  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    v(i) = Complex(1.0 + 0.001 * static_cast<double>(i % 97), 0.0005 * static_cast<double>(i % 13));
  }
  v.normalize();
  double lambda = 0.0;
  for (int it = 0; it < max_iterations; ++it) {
    Eigen::VectorXcd w = a.adjoint() * (a * v);
    const double next = w.norm();
    if (next == 0.0) return 0.0;
    v = w / next;
    if (std::abs(next - lambda) <= tolerance * next) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  return std::sqrt(lambda);
}

double spectral_norm(const DenseOperator& a, const OracleConfig& config) {
  if (a.size() == 0) return 0.0;
  if (std::max(a.rows(), a.cols()) <= config.svd_max_dim) {
    Eigen::BDCSVD<DenseOperator> svd(a);
    return svd.singularValues()(0);
  }
  return spectral_norm_power(a, config.power_tolerance, config.power_max_iterations);
}

DenseOperator taylor_partial_sum(const DenseOperator& h, double t, int K) {
  const DenseOperator step = Complex(0.0, -t) * h;
  DenseOperator term = identity(h.rows());
  DenseOperator sum = term;
  for (int k = 1; k <= K; ++k) {
    term = (step * term) / static_cast<double>(k);
    sum += term;
  }
  return sum;
}

DenseOperator pf1_product(const Hamiltonian& h, double t, std::size_t r,
                          const OracleConfig& config) {
  check_cap(h.n_qubits(), config.dense_cap);
  if (r == 0) throw std::invalid_argument("r must be positive");
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << h.n_qubits());
  DenseOperator step = identity(dim);
  for (std::size_t l = h.size(); l-- > 0;) {
    const Term& term = h.term(l);
    const double theta = term.signed_coefficient() * t / static_cast<double>(r);
    DenseOperator next = std::cos(theta) * step;
    add_pauli_times(term.op, Complex(0.0, -std::sin(theta)), step, next);
    step = std::move(next);
  }
  DenseOperator out = identity(dim);
  DenseOperator base = step;
  for (std::size_t e = r; e > 0; e >>= 1) {
    if (e & 1u) out = out * base;
    if (e > 1) base = base * base;
  }
  return out;
}

DenseOperator prepare_oracle(const std::vector<double>& weights) {
  if (weights.empty()) throw std::invalid_argument("no LCU weights");
  const std::size_t d = std::bit_ceil(weights.size());
  double s = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("LCU weights must be non-negative");
    s += w;
  }
  if (!(s > 0.0)) throw std::invalid_argument("LCU weights sum to zero");
  Eigen::VectorXd g = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d));
  for (std::size_t j = 0; j < weights.size(); ++j) {
    g(static_cast<Eigen::Index>(j)) = std::sqrt(weights[j] / s);
  }
  g.normalize();
  Eigen::VectorXd v = -g;
  v(0) += 1.0;
  const double vv = v.squaredNorm();
  Eigen::MatrixXd G = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(d),
                                                static_cast<Eigen::Index>(d));
  if (vv > 1e-300) G -= (2.0 / vv) * v * v.transpose();
  return G.cast<Complex>();
}

BlockEncoding::BlockEncoding(std::vector<LcuTerm> terms, std::size_t n_qubits)
    : terms_(std::move(terms)), n_qubits_(n_qubits) {
  if (terms_.empty()) throw std::invalid_argument("empty linear combination");
  ancilla_dim_ = std::bit_ceil(terms_.size());
  system_dim_ = std::size_t{1} << n_qubits;
  std::vector<double> weights;
  for (const auto& t : terms_) {
    if (t.unitary.op.n_qubits() != n_qubits_) throw std::invalid_argument("unitary width mismatch");
    if (std::abs(std::abs(t.unitary.phase) - 1.0) > 1e-12) {
      throw std::invalid_argument("LCU phase must have unit modulus");
    }
    weights.push_back(t.weight);
  }
  s_ = lcu_normalization(terms_);
  if (!(s_ > 0.0)) throw std::invalid_argument("LCU weights sum to zero");
  Eigen::VectorXd g = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(ancilla_dim_));
  for (std::size_t j = 0; j < weights.size(); ++j) {
    g(static_cast<Eigen::Index>(j)) = std::sqrt(weights[j] / s_);
  }
  g.normalize();
  Eigen::VectorXd v = -g;
  v(0) += 1.0;
  if (v.squaredNorm() > 1e-300) householder_ = v;
}

DenseOperator BlockEncoding::prepare(const DenseOperator& x) const {
  if (householder_.size() == 0) return x;
  const auto D = static_cast<Eigen::Index>(system_dim_);
  DenseOperator proj = DenseOperator::Zero(D, x.cols());
  for (Eigen::Index j = 0; j < householder_.size(); ++j) {
    if (householder_(j) != 0.0) proj += householder_(j) * x.middleRows(j * D, D);
  }
  const double scale = 2.0 / householder_.squaredNorm();
  DenseOperator out = x;
  for (Eigen::Index j = 0; j < householder_.size(); ++j) {
    if (householder_(j) != 0.0) out.middleRows(j * D, D) -= (scale * householder_(j)) * proj;
  }
  return out;
}

DenseOperator BlockEncoding::select(const DenseOperator& x, bool adjoint) const {
  const auto D = static_cast<Eigen::Index>(system_dim_);
  DenseOperator out = x;  // padding slots act as the identity
  for (std::size_t j = 0; j < terms_.size(); ++j) {
    const auto& u = terms_[j].unitary;
    PauliString op = u.op;
    Complex phase = u.phase;
    if (adjoint) {
      op = op.with_phase((4u - op.phase_exp()) & 3u);
      phase = std::conj(phase);
    }
    const DenseOperator in = x.middleRows(static_cast<Eigen::Index>(j) * D, D);
    DenseOperator res = DenseOperator::Zero(D, x.cols());
    add_pauli_times(op, phase, in, res);
    out.middleRows(static_cast<Eigen::Index>(j) * D, D) = res;
  }
  return out;
}

DenseOperator BlockEncoding::apply(const DenseOperator& x) const {
  if (static_cast<std::size_t>(x.rows()) != ancilla_dim_ * system_dim_) {
    throw std::invalid_argument("block-encoding input has the wrong dimension");
  }
  // G is a real reflection, so G^dagger = G.
  return prepare(select(prepare(x), false));
}

DenseOperator BlockEncoding::apply_adjoint(const DenseOperator& x) const {
  if (static_cast<std::size_t>(x.rows()) != ancilla_dim_ * system_dim_) {
    throw std::invalid_argument("block-encoding input has the wrong dimension");
  }
  return prepare(select(prepare(x), true));
}

DenseOperator BlockEncoding::dense(Eigen::Index max_dim) const {
  const auto total = static_cast<Eigen::Index>(ancilla_dim_ * system_dim_);
  if (total > max_dim) {
    throw DenseCapExceeded(fmt::format("block encoding of dimension {} exceeds {}", total, max_dim));
  }
  return apply(identity(total));
}

DenseOperator BlockEncoding::block() const {
  const auto D = static_cast<Eigen::Index>(system_dim_);
  DenseOperator x = DenseOperator::Zero(static_cast<Eigen::Index>(ancilla_dim_) * D, D);
  x.topRows(D) = identity(D);
  return apply(x).topRows(D);
}

DenseOperator amplify(const BlockEncoding& w) {
  const auto D = static_cast<Eigen::Index>(w.system_dim());
  DenseOperator x = DenseOperator::Zero(static_cast<Eigen::Index>(w.ancilla_dim()) * D, D);
  x.topRows(D) = identity(D);
  DenseOperator y = w.apply(x);
  y.topRows(D) *= -1.0;  // R
  y = w.apply_adjoint(y);
  y.topRows(D) *= -1.0;  // R
  y = w.apply(y);
  return -y.topRows(D);
}

DenseOperator amplification_formula(const DenseOperator& u, double s) {
  return (3.0 / s) * u - (4.0 / (s * s * s)) * (u * u.adjoint() * u);
}

std::vector<LcuTerm> boost_to_two(std::vector<LcuTerm> terms, std::size_t n_qubits) {
  const double s = lcu_normalization(terms);
  if (s > 2.0 + 1e-12) throw std::invalid_argument(fmt::format("s = {} already exceeds 2", s));
  const double extra = (2.0 - s) / 2.0;
  if (extra > 0.0) {
    terms.push_back(LcuTerm{extra, PhasedPauli{PauliString(n_qubits), {1.0, 0.0}}});
    terms.push_back(LcuTerm{extra, PhasedPauli{PauliString(n_qubits), {-1.0, 0.0}}});
  }
  return terms;
}

}  // namespace anticomm
