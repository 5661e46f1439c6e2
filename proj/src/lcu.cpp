#include "anticomm/lcu.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

#include <fmt/format.h>

#include "anticomm/errors.hpp"
#include "anticomm/oracle.hpp"
#include "anticomm/parallel.hpp"

namespace anticomm {

namespace {

std::vector<double> order_weights(double y, int max_order) {
  std::vector<double> w;
  double term = 1.0;
  for (int k = 0; k <= max_order; ++k) {
    if (k > 0) term *= y / k;
    w.push_back(term);
  }
  return w;
}

double sum_of(const std::vector<double>& v) {
  KahanSum s;
  for (double x : v) s.add(x);
  return s.value();
}

void check_t_K(double t, int K) {
  if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("t must be positive");
  if (K < 1) throw std::invalid_argument("K must be at least 1");
}

}  // namespace

SegmentSchedule segment_schedule(double t, double alpha) {
  if (!(t > 0.0)) throw std::invalid_argument("t must be positive");
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  SegmentSchedule s;
  s.tau = std::numbers::ln2 / alpha;
  const double ratio = t / s.tau;
  // Snap ratios within rounding of an integer so that t = k tau gives r = k.
  const double nearest = std::round(ratio);
  const double segments = std::abs(ratio - nearest) <= 1e-12 * std::max(1.0, ratio) ? nearest
                                                                                      : std::ceil(ratio);
  s.r = static_cast<std::size_t>(std::max(1.0, segments));
  s.tau_re = t - static_cast<double>(s.r - 1) * s.tau;
  return s;
}

std::string to_string(PlanScheme s) {
  return s == PlanScheme::Truncated ? "truncated" : "modified";
}

double ModifiedBlock::weight_sum() const {
  KahanSum s;
  for (const auto& g : gamma) s.add(std::abs(g));
  s.add(identity_weight);
  for (double w : extra_weight) s.add(w);
  return s.value();
}

LcuPlan build_truncated(const Hamiltonian& h, double t, int K) {
  check_t_K(t, K);
  LcuPlan plan;
  plan.scheme = PlanScheme::Truncated;
  plan.K = K;
  plan.t = t;
  plan.alpha = h.alpha();
  plan.n_qubits = h.n_qubits();
  plan.L = h.size();
  plan.order_weight = order_weights(t * plan.alpha, K);
  plan.s = sum_of(plan.order_weight);
  return plan;
}

LcuPlan build_modified(const Hamiltonian& h, const CommutationStructure& s, double t, int K,
                       std::size_t E) {
  check_t_K(t, K);
  if (K % 2 == 0) {
    throw std::invalid_argument(
        fmt::format("the modified scheme needs an odd K (got {}); use K-1 or K+1", K));
  }
  if (s.size != h.size()) throw std::invalid_argument("structure does not match the Hamiltonian");
  LcuPlan plan;
  plan.scheme = PlanScheme::Modified;
  plan.K = K;
  plan.t = t;
  plan.alpha = h.alpha();
  plan.n_qubits = h.n_qubits();
  plan.L = h.size();
  plan.order_weight = order_weights(t * plan.alpha, K - 1);

  const Order3Result o3 = cancellation_order3(h, s);
  const ExtraUnitarySelection sel = select_extra_unitaries(h, s, E);
  const double k1 = static_cast<double>(K + 1);
  const double k2 = static_cast<double>(K + 2);
  const double t2 = t * t;
  const double t3 = t2 * t;

  ModifiedBlock blk;
  blk.E_requested = E;
  blk.e_epsilon = sel.e_epsilon;
  blk.alpha3_residual = o3.residual();
  // The block collects -itH + (-it)^2 H^2/(K+1) + (-it)^3 H^3/((K+1)(K+2)).
  // H^3 contributes beta_l (s_l H_l); H^2 contributes c_l (s_l H_l), c_I I and
  // the extra groups. Written against -i s_l H_l, the H^2 part is imaginary.
  for (std::size_t l = 0; l < h.size(); ++l) {
    const double re = h.term(l).alpha * t - t3 * o3.beta[l] / (k1 * k2);
    const double im = -t2 * sel.term_coefficient[l] / k1;
    blk.gamma.emplace_back(re, im);
  }
  blk.identity_weight = t2 * std::abs(sel.identity_coefficient) / k1;
  blk.identity_sign = sel.identity_coefficient >= 0.0 ? -1.0 : 1.0;
  for (const auto& g : sel.chosen) {
    blk.extra.push_back(g);
    blk.extra_weight.push_back(t2 * std::abs(g.coefficient) / k1);
    blk.extra_sign.push_back(g.coefficient >= 0.0 ? -1.0 : 1.0);
  }
  const std::size_t slots = free_select_slots(h.size());
  if (E > slots) {
    plan.warnings.push_back(fmt::format(
        "E = {} exceeds the {} free select slots; the modified select costs more", E, slots));
  }
  const double y = t * plan.alpha;
  const double block_scale = std::exp((K - 1) * std::log(y) - std::lgamma(K + 1.0));
  plan.s = sum_of(plan.order_weight) + block_scale * blk.weight_sum();
  plan.modified = std::move(blk);
  return plan;
}

DenseOperator plan_operator(const LcuPlan& plan, const Hamiltonian& h, std::size_t dense_cap) {
  if (h.n_qubits() > dense_cap) {
    throw DenseCapExceeded(fmt::format("{} qubits exceed the dense cap of {}", h.n_qubits(), dense_cap));
  }
  const DenseOperator H = h.to_dense(dense_cap);
  if (plan.scheme == PlanScheme::Truncated) return taylor_partial_sum(H, plan.t, plan.K);

  const ModifiedBlock& blk = *plan.modified;
  const auto dim = H.rows();
  const DenseOperator step = Complex(0.0, -plan.t) * H;
  DenseOperator sum = DenseOperator::Identity(dim, dim);
  DenseOperator power = sum;  // (-itH)^k / k!
  for (int k = 1; k <= plan.K - 1; ++k) {
    power = (step * power) / static_cast<double>(k);
    sum += power;
  }
  DenseOperator B = DenseOperator::Zero(dim, dim);
  for (std::size_t l = 0; l < h.size(); ++l) {
    add_to_dense(h.term(l).signed_op(), blk.gamma[l] * Complex(0.0, -1.0), B);
  }
  B.diagonal().array() += blk.identity_weight * blk.identity_sign;
  for (std::size_t j = 0; j < blk.extra.size(); ++j) {
    add_to_dense(blk.extra[j].op, blk.extra_weight[j] * blk.extra_sign[j], B);
  }
  // (-itH)^{K-1}/K! = [(-itH)^{K-1}/(K-1)!] / K
  sum += (power * B) / static_cast<double>(plan.K);
  return sum;
}

std::vector<LcuTerm> expand_unitaries(const LcuPlan& plan, const Hamiltonian& h,
                                      std::size_t max_terms) {
  const std::size_t n = h.n_qubits();
  const int last_order = plan.scheme == PlanScheme::Truncated ? plan.K : plan.K - 1;
  // Level k: phased Pauli sequences (-i)^k prod s_l H_l with weights t^k prod alpha / k!.
  std::vector<std::pair<PauliString, double>> level{{PauliString(n), 1.0}};
  std::unordered_map<PauliString, double, PauliHash> merged;
  std::vector<PauliString> merged_order;
  auto record = [&](const PauliString& p, double w) {
    auto [it, inserted] = merged.try_emplace(p, 0.0);
    if (inserted) merged_order.push_back(p);
    it->second += w;
  };
  record(PauliString(n), 1.0);
  std::vector<PauliString> steps;  // -i s_l H_l
  for (const auto& t : h.terms()) steps.push_back(multiply(PauliString(n).with_phase(3), t.signed_op()));

  for (int k = 1; k <= last_order; ++k) {
    std::unordered_map<PauliString, double, PauliHash> next;
    std::vector<PauliString> next_order;
    for (const auto& [p, w] : level) {
      for (std::size_t l = 0; l < h.size(); ++l) {
        const PauliString q = multiply(p, steps[l]);
        auto [it, inserted] = next.try_emplace(q, 0.0);
        if (inserted) next_order.push_back(q);
        it->second += w * h.term(l).alpha * plan.t / k;
      }
    }
    level.clear();
    for (const auto& q : next_order) {
      level.emplace_back(q, next.at(q));
      record(q, next.at(q));
    }
    if (merged.size() > max_terms) {
      throw BudgetExceeded(fmt::format("LCU expansion exceeds {} unitaries", max_terms));
    }
  }

  std::vector<LcuTerm> out;
  for (const auto& p : merged_order) out.push_back(LcuTerm{merged.at(p), PhasedPauli{p, {1.0, 0.0}}});

  if (plan.scheme == PlanScheme::Modified) {
    const ModifiedBlock& blk = *plan.modified;
    std::vector<LcuTerm> block_terms;
    for (std::size_t l = 0; l < h.size(); ++l) {
      const double mag = std::abs(blk.gamma[l]);
      if (mag == 0.0) continue;
      block_terms.push_back(LcuTerm{mag, PhasedPauli{steps[l], blk.gamma[l] / mag}});
    }
    if (blk.identity_weight > 0.0) {
      block_terms.push_back(
          LcuTerm{blk.identity_weight, PhasedPauli{PauliString(n), {blk.identity_sign, 0.0}}});
    }
    for (std::size_t j = 0; j < blk.extra.size(); ++j) {
      block_terms.push_back(
          LcuTerm{blk.extra_weight[j], PhasedPauli{blk.extra[j].op, {blk.extra_sign[j], 0.0}}});
    }
    if (out.size() + level.size() * block_terms.size() > max_terms) {
      throw BudgetExceeded(fmt::format("LCU expansion exceeds {} unitaries", max_terms));
    }
    for (const auto& [p, w] : level) {
      for (const auto& b : block_terms) {
        out.push_back(LcuTerm{w * b.weight / plan.K,
                              PhasedPauli{multiply(p, b.unitary.op), b.unitary.phase}});
      }
    }
  }
  return out;
}

GateCost gate_cost(std::size_t L, int K, std::size_t r, std::size_t D, double alpha, double t,
                   std::size_t E) {
  if (L < 4) {
    throw std::invalid_argument(fmt::format("the select cost formula needs L >= 4 (got {})", L));
  }
  GateCost g;
  g.L = L;
  g.w = static_cast<std::size_t>(std::countr_zero(std::bit_ceil(L)));
  const long long pow2 = 1LL << g.w;
  const long long w = static_cast<long long>(g.w);
  // 7.5 * 2^w is an integer for w >= 1.
  g.cnot_per_select = 15 * pow2 / 2 + 6 * w - 26;
  g.t_per_select = 15 * pow2 / 2 + 6 * w - 28;
  g.K = K;
  g.r = r;
  g.D = D;
  g.E = E;
  g.free_slots = free_select_slots(L);
  g.cost_parity = E <= g.free_slots;
  g.cnot_total = g.cnot_per_select * K * static_cast<long long>(r);
  g.t_total = g.t_per_select * K * static_cast<long long>(r);
  g.complexity_estimate = alpha * t * static_cast<double>(L) *
                          (static_cast<double>(D) + std::log2(static_cast<double>(L))) * K;
  return g;
}

GateCost gate_cost(const LcuPlan& plan, const Hamiltonian& h, std::size_t r) {
  const std::size_t E = plan.modified ? plan.modified->extra.size() : 0;
  return gate_cost(plan.L, plan.K, r, h.max_weight(), plan.alpha,
                   plan.t * static_cast<double>(r), E);
}

}  // namespace anticomm
