#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "anticomm/hamiltonian.hpp"
#include "anticomm/lcu_types.hpp"
#include "anticomm/structure.hpp"

namespace anticomm {

/// For pairwise anticommuting H, H^m = g0[m] I + sum_l g[m][l] P_l with
///   g0[m+1] = sum_l g[m][l] c_l,  g[m+1][l] = g0[m] c_l
/// and c_l the signed coefficients. Index 0 of both tables is unused.
struct AnticommutingProfile {
  bool is_pairwise_anticommuting = false;
  double alpha = 0.0;
  double beta_s = 0.0;     // sqrt(sum_l alpha_l^2)
  double epsilon_A = 0.0;  // ||H^2 - beta_s^2 I||
  std::string epsilon_method;  // "exact", "dense" or "symbolic"
  std::vector<double> gamma0;
  std::vector<std::vector<double>> gamma;
};

struct ProfileOptions {
  int m_max = 6;
  std::size_t dense_cap = kDefaultDenseCap;
  SymbolicBudget budget;
};

AnticommutingProfile profile(const Hamiltonian& h, const ProfileOptions& opts = {});

/// cos(t beta_s) I + sum_l (alpha_l / beta_s) sin(t beta_s) (-i s_l P_l).
struct ExactCoefficients {
  double alpha0 = 0.0;
  std::vector<double> alpha_l;
  double s = 0.0;  // |alpha0| + sum_l |alpha_l|
};

/// Throws std::invalid_argument unless H is pairwise anticommuting.
ExactCoefficients exact_coefficients(const Hamiltonian& h, double t);
/// Perfect-case coefficients for any H, used for near-anticommuting inputs.
ExactCoefficients perfect_case_coefficients(const Hamiltonian& h, double t);

/// The coefficients as weighted unitaries, signs moved into the phases.
std::vector<LcuTerm> exact_lcu(const Hamiltonian& h, const ExactCoefficients& c);

/// |cos(t beta_s)| + (alpha / beta_s) |sin(t beta_s)|
double s_value(double t, double alpha, double beta_s);

struct ExactSchedule {
  double t = 0.0;
  double t1 = 0.0;       // multiple of pi/beta_s; exp(-i t1 H) = +-I
  double t_seg = 0.0;    // s(t_seg) = 2 unless boosted
  std::size_t r = 0;
  double t_rest = 0.0;
  bool boost = false;    // segments with s < 2 get +-I padding up to s = 2
  bool bisection = false;  // closed-form root rejected, bisection used
  std::vector<double> segment_time;
  std::vector<double> segment_s;
};

/// Throws std::invalid_argument for t <= 0 or alpha < beta_s.
ExactSchedule schedule(double t, double alpha, double beta_s);

/// H_0 = X_0, H_1 = Z_0 Z_1, H_j = Z_0 X_1 ... X_{j-1} Z_j. Unit coefficients
/// unless given; n >= 2.
Hamiltonian generate_family(std::size_t n, const std::vector<double>& coefficients = {});

/// Smallest M <= M_cap with H^M = gamma I, and the coefficients
///   gamma_k = sum_j (-i t)^{jM} gamma^j / (k + jM)!,  k < M,
/// so that exp(-itH) = sum_{k<M} gamma_k (-itH)^k.
struct PowerReduction {
  int M = 0;
  double gamma = 0.0;
  std::vector<Complex> gamma_k;
};
std::optional<PowerReduction> power_reduction(const Hamiltonian& h, double t, int M_cap = 8,
                                              const SymbolicBudget& budget = {});

/// cosh(tB) - cosh(t beta_s) + alpha (sinh(tB)/B - sinh(t beta_s)/beta_s),
/// B = sqrt(beta_s^2 + epsilon_A).
double near_anticommuting_bound(double epsilon_A, double alpha, double beta_s, double t);

}  // namespace anticomm
