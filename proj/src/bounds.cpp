#include "anticomm/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

#include "anticomm/errors.hpp"
#include "anticomm/oracle.hpp"
#include "anticomm/parallel.hpp"

namespace anticomm {

namespace {

void check_common(double alpha, double t, int K) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("alpha must be positive");
  if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("t must be non-negative");
  if (K < 0) throw std::invalid_argument("K must be non-negative");
}

// log( y^{K+1} / (K+1)! ) for y > 0.
double log_leading(double y, int K) {
  return (K + 1) * std::log(y) - std::lgamma(static_cast<double>(K) + 2.0);
}

double require(const std::optional<double>& v, const char* name) {
  if (!v) {
    throw std::invalid_argument(
        fmt::format("{} is missing; run the structure analysis first", name));
  }
  return *v;
}

}  // namespace

double original_delta(double alpha, double t, int K) {
  check_common(alpha, t, K);
  const double y = t * alpha;
  if (y == 0.0) return 0.0;
  return std::exp(log_leading(y, K) + y);
}

double refined2_delta(double alpha, double alpha_comm, double t, int K) {
  check_common(alpha, t, K);
  if (!(alpha_comm > 0.0)) throw std::invalid_argument("alpha_comm must be positive");
  const double y = t * alpha;
  if (y == 0.0) return 0.0;
  // q >= 1 always holds for a genuine alpha_comm; clamp rounding noise.
  const double q = std::max(1.0, alpha / std::sqrt(alpha_comm));
  const double x = y / q;
  const double sign = K % 2 == 0 ? 1.0 : -1.0;
  // [(q+1) e^x + (-1)^K (q-1) e^{-x}] / 2 = e^x [(q+1) + (-1)^K (q-1) e^{-2x}] / 2
  const double bracket = ((q + 1.0) + sign * (q - 1.0) * std::exp(-2.0 * x)) / 2.0;
  return std::exp(log_leading(y, K) - (K + 1) * std::log(q) + x) * bracket;
}

std::vector<double> scaled_residue_sums(double x, int m) {
  if (m < 1) throw std::invalid_argument("residue modulus must be positive");
  if (!(x >= 0.0)) throw std::invalid_argument("x must be non-negative");
  std::vector<KahanSum> acc(static_cast<std::size_t>(m));
  if (x == 0.0) {
    std::vector<double> out(static_cast<std::size_t>(m), 0.0);
    out[0] = 1.0;
    return out;
  }
  const double log_x = std::log(x);
  double total = 0.0;
  for (long l = 0;; ++l) {
    const double term = std::exp(l * log_x - std::lgamma(static_cast<double>(l) + 1.0) - x);
    acc[static_cast<std::size_t>(l % m)].add(term);
    total += term;
    if (static_cast<double>(l) > x && term < 1e-17 * total) break;
  }
  std::vector<double> out;
  for (const auto& a : acc) out.push_back(a.value());
  return out;
}

double refined_delta(int m, double alpha, double alpha_m, double t, int K) {
  check_common(alpha, t, K);
  if (m < 1) throw std::invalid_argument("cancellation order must be positive");
  if (!(alpha_m > 0.0)) throw std::invalid_argument("cancellation parameter must be positive");
  if (m == 2) return refined2_delta(alpha, alpha_m, t, K);
  const double y = t * alpha;
  if (y == 0.0) return 0.0;
  const double q = std::max(1.0, alpha / std::pow(alpha_m, 1.0 / m));
  const double x = y / q;
  const auto sums = scaled_residue_sums(x, m);
  KahanSum weighted;
  for (int j = 0; j < m; ++j) {
    weighted.add(std::pow(q, (K + 1 + j) % m) * sums[static_cast<std::size_t>(j)]);
  }
  return std::exp(log_leading(x, K) + x) * weighted.value();
}

BoundInputs BoundInputs::from_report(const CancellationReport& report) {
  BoundInputs in;
  in.alpha = report.alpha;
  in.alpha_comm = report.alpha_comm;
  in.alpha3 = report.alpha3;
  in.alpha3_residual = report.alpha3_residual();
  in.alpha4 = report.alpha4;
  in.e_epsilon = report.e_epsilon;
  return in;
}

double modified_delta(const BoundInputs& in) {
  check_common(in.alpha, in.t, in.K);
  if (in.K < 1) throw std::invalid_argument("the modified scheme needs K >= 1");
  const double e_eps = require(in.e_epsilon, "e_epsilon");
  const double a3 = require(in.alpha3_residual, "alpha3_residual");
  if (in.t == 0.0) return 0.0;
  const int K = in.K;
  // log ||H^{K-1}|| bound
  const double log_n = K % 2 == 1 ? 0.5 * (K - 1) * std::log(in.alpha_comm)
                                  : std::log(in.alpha) + 0.5 * (K - 2) * std::log(in.alpha_comm);
  const double log_t = std::log(in.t);
  double e1 = 0.0, e2 = 0.0;
  if (e_eps > 0.0) {
    e1 = std::exp((K + 1) * log_t + log_n - std::lgamma(K + 2.0) + std::log(e_eps));
  }
  if (a3 > 0.0) {
    e2 = std::exp((K + 2) * log_t + log_n - std::lgamma(K + 3.0) + std::log(a3));
  }
  return e1 + e2 + refined2_delta(in.alpha, in.alpha_comm, in.t, K + 2);
}

double envelope(double delta) {
  if (!(delta >= 0.0)) throw std::invalid_argument("delta must be non-negative");
  return (delta * delta + 3.0 * delta + 4.0) / 2.0 * delta;
}

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::Original: return "original";
    case Scheme::Refined2: return "refined2";
    case Scheme::Refined3: return "refined3";
    case Scheme::Refined4: return "refined4";
    case Scheme::Modified: return "modified";
    case Scheme::Pf1: return "pf1";
  }
  return "unknown";
}

Scheme parse_scheme(const std::string& name) {
  for (Scheme s : {Scheme::Original, Scheme::Refined2, Scheme::Refined3, Scheme::Refined4,
                   Scheme::Modified, Scheme::Pf1}) {
    if (to_string(s) == name) return s;
  }
  throw std::invalid_argument(fmt::format("unknown scheme '{}'", name));
}

double scheme_delta(Scheme scheme, const BoundInputs& in) {
  switch (scheme) {
    case Scheme::Original: return original_delta(in.alpha, in.t, in.K);
    case Scheme::Refined2: return refined2_delta(in.alpha, in.alpha_comm, in.t, in.K);
    case Scheme::Refined3:
      return refined3_delta(in.alpha, require(in.alpha3, "alpha3"), in.t, in.K);
    case Scheme::Refined4:
      return refined4_delta(in.alpha, require(in.alpha4, "alpha4"), in.t, in.K);
    case Scheme::Modified: return modified_delta(in);
    case Scheme::Pf1: break;
  }
  throw std::invalid_argument("pf1 is not a Taylor-series scheme");
}

BoundResult evaluate(Scheme scheme, const BoundInputs& in) {
  BoundResult out;
  out.scheme = scheme;
  out.per_segment_delta = scheme_delta(scheme, in);
  out.enveloped_epsilon = envelope(out.per_segment_delta);
  out.total_epsilon = out.enveloped_epsilon * static_cast<double>(in.r);
  return out;
}

double pf1_bound_analytic(const Hamiltonian& h, const CommutationStructure& s, double t,
                          std::size_t r) {
  if (r == 0) throw std::invalid_argument("r must be positive");
  KahanSum anti;
  for (std::size_t a = 0; a < h.size(); ++a) {
    for (std::size_t b = a + 1; b < h.size(); ++b) {
      if (!s.commute(a, b)) anti.add(2.0 * h.term(a).alpha * h.term(b).alpha);
    }
  }
  return t * t / (2.0 * static_cast<double>(r)) * anti.value();
}

double pf1_bound_exact(const Hamiltonian& h, const CommutationStructure& s, double t,
                       std::size_t r, std::size_t dense_cap) {
  if (r == 0) throw std::invalid_argument("r must be positive");
  if (h.n_qubits() > dense_cap) {
    throw DenseCapExceeded(
        fmt::format("exact commutator norms of {} qubits exceed cap {}", h.n_qubits(), dense_cap));
  }
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << h.n_qubits());
  KahanSum total;
  for (std::size_t a = 0; a < h.size(); ++a) {
    DenseOperator inner = DenseOperator::Zero(dim, dim);
    bool any = false;
    for (std::size_t b = a + 1; b < h.size(); ++b) {
      if (s.commute(a, b)) continue;
      // [c_b H_b, c_a H_a] = 2 c_a c_b H_b H_a for anticommuting Paulis.
      const PauliString prod = multiply(h.term(b).op, h.term(a).op);
      add_to_dense(prod, 2.0 * h.term(a).signed_coefficient() * h.term(b).signed_coefficient(),
                   inner);
      any = true;
    }
    if (any) total.add(spectral_norm(inner));
  }
  return t * t / (2.0 * static_cast<double>(r)) * total.value();
}

MinKResult min_K(Scheme scheme, const BoundInputs& in, double t, double eps, int k_max) {
  if (!(eps > 0.0)) throw std::invalid_argument("target error must be positive");
  if (!(t > 0.0)) throw std::invalid_argument("t must be positive");
  const double tau = std::numbers::ln2 / in.alpha;
  MinKResult out;
  out.r = static_cast<std::size_t>(std::ceil(in.alpha * t / std::numbers::ln2 - 1e-12));
  out.r = std::max<std::size_t>(out.r, 1);
  out.tau = tau;
  BoundInputs seg = in;
  seg.t = tau;
  seg.r = out.r;
  const double budget = eps / static_cast<double>(out.r);
  for (int K = 1; K <= k_max; ++K) {
    seg.K = K;
    const double d = scheme_delta(scheme, seg);
    if (envelope(d) <= budget) {
      out.K = K;
      out.delta = d;
      out.epsilon = envelope(d) * static_cast<double>(out.r);
      return out;
    }
  }
  throw std::runtime_error(
      fmt::format("no K <= {} reaches error {:.3g} with the {} scheme", k_max, eps, to_string(scheme)));
}

std::vector<RatioRow> ratio_table(const std::string& label, const BoundInputs& in,
                                  const std::vector<Scheme>& schemes, const std::vector<int>& Ks) {
  std::vector<RatioRow> rows;
  BoundInputs seg = in;
  seg.t = std::numbers::ln2 / in.alpha;
  seg.r = 1;
  for (int K : Ks) {
    seg.K = K;
    const double eps_o = envelope(original_delta(seg.alpha, seg.t, K));
    for (Scheme s : schemes) {
      if (s == Scheme::Pf1) continue;
      if (s == Scheme::Refined3 && !in.alpha3) continue;
      if (s == Scheme::Refined4 && !in.alpha4) continue;
      if (s == Scheme::Modified && (!in.e_epsilon || !in.alpha3_residual)) continue;
      RatioRow row;
      row.label = label;
      row.scheme = s;
      row.K = K;
      row.t = seg.t;
      row.r = 1;
      row.delta = scheme_delta(s, seg);
      row.epsilon = envelope(row.delta);
      row.ratio_vs_original = row.epsilon > 0.0 ? eps_o / row.epsilon : 1.0;
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace anticomm
