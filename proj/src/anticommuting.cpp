#include "anticomm/anticommuting.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

#include "anticomm/oracle.hpp"
#include "anticomm/parallel.hpp"

namespace anticomm {

namespace {

double beta_of(const Hamiltonian& h) { return std::sqrt(h.alpha_squared_sum()); }

}  // namespace

AnticommutingProfile profile(const Hamiltonian& h, const ProfileOptions& opts) {
  AnticommutingProfile p;
  const CommutationStructure s = analyze(h);
  p.is_pairwise_anticommuting = s.pairwise_anticommuting();
  p.alpha = h.alpha();
  p.beta_s = beta_of(h);

  const std::size_t L = h.size();
  const int m_max = std::max(opts.m_max, 1);
  p.gamma0.assign(static_cast<std::size_t>(m_max) + 1, 0.0);
  p.gamma.assign(static_cast<std::size_t>(m_max) + 1, std::vector<double>(L, 0.0));
  for (std::size_t l = 0; l < L; ++l) p.gamma[1][l] = h.term(l).signed_coefficient();
  for (int m = 1; m < m_max; ++m) {
    KahanSum g0;
    for (std::size_t l = 0; l < L; ++l) {
      g0.add(p.gamma[m][l] * h.term(l).signed_coefficient());
      p.gamma[m + 1][l] = p.gamma0[m] * h.term(l).signed_coefficient();
    }
    p.gamma0[m + 1] = g0.value();
  }

  if (p.is_pairwise_anticommuting) {
    p.epsilon_A = 0.0;
    p.epsilon_method = "exact";
  } else if (h.n_qubits() <= opts.dense_cap) {
    DenseOperator v = h.to_dense(opts.dense_cap);
    v = v * v;
    v.diagonal().array() -= p.beta_s * p.beta_s;
    p.epsilon_A = spectral_norm(v);
    p.epsilon_method = "dense";
  } else {
    // l1 of V = H^2 - beta_s^2 I bounds its spectral norm.
    const SymbolicOperator h2 = symbolic_power(h, 2, opts.budget);
    KahanSum l1;
    bool saw_identity = false;
    for (const auto& [op, c] : h2.terms) {
      if (op.is_identity()) {
        l1.add(std::abs(c - p.beta_s * p.beta_s));
        saw_identity = true;
      } else {
        l1.add(std::abs(c));
      }
    }
    if (!saw_identity) l1.add(p.beta_s * p.beta_s);
    p.epsilon_A = l1.value();
    p.epsilon_method = "symbolic";
  }
  return p;
}

ExactCoefficients perfect_case_coefficients(const Hamiltonian& h, double t) {
  const double beta = beta_of(h);
  ExactCoefficients c;
  c.alpha0 = std::cos(t * beta);
  const double sn = std::sin(t * beta);
  KahanSum s;
  s.add(std::abs(c.alpha0));
  for (const auto& term : h.terms()) {
    c.alpha_l.push_back(term.alpha / beta * sn);
    s.add(std::abs(c.alpha_l.back()));
  }
  c.s = s.value();
  return c;
}

ExactCoefficients exact_coefficients(const Hamiltonian& h, double t) {
  if (!analyze(h).pairwise_anticommuting()) {
    throw std::invalid_argument(
        "terms are not pairwise anticommuting; use the near-anticommuting bound or a Taylor plan");
  }
  return perfect_case_coefficients(h, t);
}

std::vector<LcuTerm> exact_lcu(const Hamiltonian& h, const ExactCoefficients& c) {
  if (c.alpha_l.size() != h.size()) throw std::invalid_argument("coefficient count mismatch");
  const std::size_t n = h.n_qubits();
  std::vector<LcuTerm> out;
  out.push_back(LcuTerm{std::abs(c.alpha0), PhasedPauli{PauliString(n), {c.alpha0 < 0 ? -1.0 : 1.0, 0.0}}});
  for (std::size_t l = 0; l < h.size(); ++l) {
    // -i s_l P_l
    const PauliString v = multiply(PauliString(n).with_phase(3), h.term(l).signed_op());
    const double a = c.alpha_l[l];
    out.push_back(LcuTerm{std::abs(a), PhasedPauli{v, {a < 0 ? -1.0 : 1.0, 0.0}}});
  }
  return out;
}

double s_value(double t, double alpha, double beta_s) {
  return std::abs(std::cos(t * beta_s)) + alpha / beta_s * std::abs(std::sin(t * beta_s));
}

ExactSchedule schedule(double t, double alpha, double beta_s) {
  if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("t must be positive");
  if (!(beta_s > 0.0)) throw std::invalid_argument("beta_s must be positive");
  if (alpha < beta_s * (1.0 - 1e-12)) throw std::invalid_argument("alpha must be at least beta_s");
  ExactSchedule sc;
  sc.t = t;
  const double half_period = std::numbers::pi / beta_s;
  sc.t1 = std::floor(t / half_period) * half_period;
  if (sc.t1 > t) sc.t1 = t;
  const double rest = t - sc.t1;
  const double rho = alpha / beta_s;

  if (sc.t1 > 0.0) {
    sc.segment_time.push_back(sc.t1);
    sc.segment_s.push_back(1.0);
  }
  if (rho * rho >= 3.0) {
    double root = std::asin((2.0 * rho - std::sqrt(rho * rho - 3.0)) / (1.0 + rho * rho)) / beta_s;
    if (!(std::abs(s_value(root, alpha, beta_s) - 2.0) <= 1e-9)) {
      // s rises monotonically on (0, atan(rho)/beta_s) to sqrt(1 + rho^2) >= 2.
      double lo = 0.0, hi = std::atan(rho) / beta_s;
      for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (s_value(mid, alpha, beta_s) < 2.0 ? lo : hi) = mid;
      }
      root = 0.5 * (lo + hi);
      sc.bisection = true;
    }
    sc.t_seg = root;
    sc.r = static_cast<std::size_t>(std::floor(rest / root));
    sc.t_rest = rest - static_cast<double>(sc.r) * root;
    if (sc.t_rest < 0.0) sc.t_rest = 0.0;
    for (std::size_t k = 0; k < sc.r; ++k) {
      sc.segment_time.push_back(root);
      sc.segment_s.push_back(s_value(root, alpha, beta_s));
    }
    if (sc.t_rest > 0.0) {
      sc.boost = true;
      sc.segment_time.push_back(sc.t_rest);
      sc.segment_s.push_back(s_value(sc.t_rest, alpha, beta_s));
    }
  } else {
    // max s = sqrt(1 + rho^2) < 2: one segment, boosted.
    sc.boost = rest > 0.0;
    sc.t_seg = rest;
    sc.r = rest > 0.0 ? 1 : 0;
    if (sc.r) {
      sc.segment_time.push_back(rest);
      sc.segment_s.push_back(s_value(rest, alpha, beta_s));
    }
  }
  return sc;
}

Hamiltonian generate_family(std::size_t n, const std::vector<double>& coefficients) {
  if (n < 2) throw std::invalid_argument("the anticommuting family needs n >= 2");
  if (!coefficients.empty() && coefficients.size() != n) {
    throw std::invalid_argument(fmt::format("expected {} coefficients, got {}", n, coefficients.size()));
  }
  std::vector<std::pair<double, PauliString>> terms;
  for (std::size_t j = 0; j < n; ++j) {
    PauliString p(n);
    if (j == 0) {
      p.set(0, 'X');
    } else {
      p.set(0, 'Z');
      for (std::size_t q = 1; q < j; ++q) p.set(q, 'X');
      p.set(j, 'Z');
    }
    terms.emplace_back(coefficients.empty() ? 1.0 : coefficients[j], p);
  }
  Hamiltonian h = Hamiltonian::from_signed(n, terms, fmt::format("family{}", n));
  if (h.size() != n || !analyze(h).pairwise_anticommuting()) {
    throw std::logic_error("generated family lost the anticommuting property");
  }
  return h;
}

std::optional<PowerReduction> power_reduction(const Hamiltonian& h, double t, int M_cap,
                                              const SymbolicBudget& budget) {
  const double alpha = h.alpha();
  for (int M = 1; M <= M_cap; ++M) {
    const SymbolicOperator hm = symbolic_power(h, M, budget);
    const double scale = std::pow(alpha, M);
    double gamma = 0.0;
    bool proportional = true;
    for (const auto& [op, c] : hm.terms) {
      if (op.is_identity()) {
        gamma = c;
      } else if (std::abs(c) > 1e-12 * scale) {
        proportional = false;
        break;
      }
    }
    if (!proportional || gamma == 0.0) continue;

    PowerReduction pr;
    pr.M = M;
    pr.gamma = gamma;
    // (-it)^{jM} gamma^j = z^j with z = (-it)^M gamma
    Complex z = gamma;
    for (int k = 0; k < M; ++k) z *= Complex(0.0, -t);
    for (int k = 0; k < M; ++k) {
      Complex term = 1.0 / std::tgamma(k + 1.0);
      Complex sum = term;
      for (int j = 1; j < 100000; ++j) {
        // term_j = term_{j-1} z / [(k + (j-1)M + 1) ... (k + jM)]
        term *= z;
        for (int f = k + (j - 1) * M + 1; f <= k + j * M; ++f) term /= static_cast<double>(f);
        sum += term;
        if (static_cast<double>(j * M) > std::abs(z) && std::abs(term) < 1e-17 * std::max(1.0, std::abs(sum))) {
          break;
        }
      }
      pr.gamma_k.push_back(sum);
    }
    return pr;
  }
  return std::nullopt;
}

double near_anticommuting_bound(double epsilon_A, double alpha, double beta_s, double t) {
  if (!(epsilon_A >= 0.0)) throw std::invalid_argument("epsilon_A must be non-negative");
  if (!(beta_s > 0.0)) throw std::invalid_argument("beta_s must be positive");
  if (epsilon_A == 0.0 || t == 0.0) return 0.0;
  // Termwise: sum_k [t^{2k}/(2k)! + alpha t^{2k+1}/(2k+1)!] (B^{2k} - beta^{2k}),
  // with B^{2k} - beta^{2k} = beta^{2k} expm1(k log1p(eps/beta^2)); no cancellation.
  const double u = std::log1p(epsilon_A / (beta_s * beta_s));
  const double B = std::sqrt(beta_s * beta_s + epsilon_A);
  KahanSum total;
  double prev = 0.0;
  for (int k = 1; k < 100000; ++k) {
    const double diff = std::expm1(k * u);
    const double log_b = 2.0 * k * std::log(beta_s);
    const double even = std::exp(2.0 * k * std::log(t) - std::lgamma(2.0 * k + 1.0) + log_b);
    const double odd = alpha * std::exp((2.0 * k + 1) * std::log(t) - std::lgamma(2.0 * k + 2.0) + log_b);
    const double term = (even + odd) * diff;
    total.add(term);
    if (term < 1e-17 * total.value() && k > t * B && term <= prev) break;
    prev = term;
  }
  return total.value();
}

}  // namespace anticomm
