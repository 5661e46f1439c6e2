#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "anticomm/hamiltonian.hpp"
#include "anticomm/structure.hpp"

namespace anticomm {

/// Truncation error of the order-K Taylor series: (t alpha)^{K+1}/(K+1)! e^{t alpha}.
double original_delta(double alpha, double t, int K);

/// Same series with ||H^k|| <= alpha_comm^{floor(k/2)} alpha^{k mod 2}, closed form.
double refined2_delta(double alpha, double alpha_comm, double t, int K);

/// Residue sums S_j(x) = sum_{l = j mod m} x^l / l!, each scaled by e^{-x}.
std::vector<double> scaled_residue_sums(double x, int m);

/// Order-m cancellation bound with ||H^k|| <= alpha_m^{floor(k/m)} alpha^{k mod m}:
///   (x^{K+1}/(K+1)!) sum_j q^{(K+1+j) mod m} S_j(x),  q = alpha / alpha_m^{1/m},
///   x = t alpha / q. For m = 2 this equals refined2_delta.
double refined_delta(int m, double alpha, double alpha_m, double t, int K);
inline double refined3_delta(double alpha, double alpha3, double t, int K) {
  return refined_delta(3, alpha, alpha3, t, K);
}
inline double refined4_delta(double alpha, double alpha4, double t, int K) {
  return refined_delta(4, alpha, alpha4, t, K);
}

struct BoundInputs {
  double alpha = 0.0;
  double alpha_comm = 0.0;
  std::optional<double> alpha3;
  /// Mass of H^3 not captured by single terms (commuting triples plus
  /// one-commuting-pair triples).
  std::optional<double> alpha3_residual;
  std::optional<double> alpha4;
  std::optional<double> e_epsilon;
  double t = 0.0;
  int K = 1;
  std::size_t r = 1;

  static BoundInputs from_report(const CancellationReport& report);
};

/// Error of the modified scheme:
///   t^{K+1} N E_eps/(K+1)! + t^{K+2} N alpha3_residual/(K+2)! + refined2 tail from K+3,
/// with N = alpha_comm^{(K-1)/2} for odd K and alpha alpha_comm^{(K-2)/2} for even K.
double modified_delta(const BoundInputs& in);

/// Per-segment error after oblivious amplitude amplification: (d^2+3d+4)/2 d.
double envelope(double delta);

enum class Scheme { Original, Refined2, Refined3, Refined4, Modified, Pf1 };
std::string to_string(Scheme s);
Scheme parse_scheme(const std::string& name);

struct BoundResult {
  Scheme scheme = Scheme::Original;
  double per_segment_delta = 0.0;
  double enveloped_epsilon = 0.0;
  double total_epsilon = 0.0;
};

/// Taylor-type schemes only; uses in.t as the segment time and in.r segments.
double scheme_delta(Scheme scheme, const BoundInputs& in);
BoundResult evaluate(Scheme scheme, const BoundInputs& in);

/// First-order product formula bound
///   t^2/(2r) sum_{l1} || sum_{l2 > l1} [a_{l2} H_{l2}, a_{l1} H_{l1}] ||.
/// The analytic mode uses ||[P,Q]|| = 2 for anticommuting pairs and the
/// triangle inequality; the exact mode evaluates each inner norm densely.
double pf1_bound_analytic(const Hamiltonian& h, const CommutationStructure& s, double t,
                          std::size_t r);
double pf1_bound_exact(const Hamiltonian& h, const CommutationStructure& s, double t,
                       std::size_t r, std::size_t dense_cap = kDefaultDenseCap);

struct MinKResult {
  int K = 0;
  std::size_t r = 0;
  double tau = 0.0;
  double delta = 0.0;
  double epsilon = 0.0;  // r * envelope(delta)
};

/// Smallest K in [1, k_max] with envelope(delta(tau = ln2/alpha, K)) <= eps / r,
/// r = ceil(alpha t / ln 2). Throws std::runtime_error if none qualifies.
MinKResult min_K(Scheme scheme, const BoundInputs& in, double t, double eps, int k_max = 200);

struct RatioRow {
  std::string label;
  Scheme scheme = Scheme::Original;
  int K = 0;
  double t = 0.0;
  std::size_t r = 1;
  double delta = 0.0;
  double epsilon = 0.0;
  double ratio_vs_original = 1.0;
};

/// eps_o / eps_n at t = ln2/alpha for every scheme in `schemes` and K in `Ks`.
/// Schemes whose inputs are missing are skipped.
std::vector<RatioRow> ratio_table(const std::string& label, const BoundInputs& in,
                                  const std::vector<Scheme>& schemes, const std::vector<int>& Ks);

}  // namespace anticomm
