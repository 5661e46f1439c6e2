#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "anticomm/anticommuting.hpp"
#include "anticomm/oracle.hpp"
#include "oracles.hpp"

using namespace anticomm;
using oracle::from_text;
using C = std::complex<double>;

namespace {

Hamiltonian random_family(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> U(0.1, 1.0);
  std::vector<double> c;
  for (std::size_t j = 0; j < n; ++j) c.push_back(U(rng));
  return generate_family(n, c);
}

oracle::Mat reconstruction(const Hamiltonian& h, const ExactCoefficients& c) {
  const auto dim = oracle::dense(h).rows();
  oracle::Mat m = c.alpha0 * oracle::Mat::Identity(dim, dim);
  for (std::size_t l = 0; l < h.size(); ++l) {
    m += c.alpha_l[l] * C(0.0, -h.term(l).signed_coefficient() / h.term(l).alpha) *
         oracle::dense(h.term(l).op);
  }
  return m;
}

}  // namespace

TEST_CASE("generated family") {
  const Hamiltonian h2 = generate_family(2);
  CHECK(h2.term(0).op == PauliString::parse("X0", 2));
  CHECK(h2.term(1).op == PauliString::parse("Z0 Z1", 2));
  const Hamiltonian h3 = generate_family(3);
  CHECK(h3.find(PauliString::parse("Z0 X1 Z2", 3)) >= 0);
  const Hamiltonian h8 = generate_family(8);
  int pairs = 0;
  for (std::size_t a = 0; a < 8; ++a)
    for (std::size_t b = a + 1; b < 8; ++b) {
      CHECK_FALSE(commutes(h8.term(a).op, h8.term(b).op));
      ++pairs;
    }
  CHECK(pairs == 28);
  CHECK_THROWS(generate_family(1));
  CHECK_THROWS(generate_family(3, {1.0, 2.0}));
}

TEST_CASE("profile") {
  const auto p = profile(generate_family(5));
  CHECK(p.is_pairwise_anticommuting);
  CHECK(p.epsilon_A == 0.0);
  CHECK(p.beta_s == doctest::Approx(std::sqrt(5.0)));
  CHECK(p.gamma0[2] == doctest::Approx(5.0));
  for (double g : p.gamma[2]) CHECK(g == 0.0);

  const auto xyz = profile(from_text("1 X0\n1 Y0\n1 Z0\n"));
  CHECK(xyz.is_pairwise_anticommuting);
  CHECK(xyz.beta_s == doctest::Approx(std::sqrt(3.0)));
  CHECK(xyz.gamma0[4] == doctest::Approx(9.0));

  const auto zz = profile(from_text("1 Z0\n1 Z1\n"));
  CHECK_FALSE(zz.is_pairwise_anticommuting);
  CHECK(zz.epsilon_A == doctest::Approx(2.0));
  CHECK(zz.epsilon_method == "dense");

  ProfileOptions sym;
  sym.dense_cap = 1;
  const auto zz_sym = profile(from_text("1 Z0\n1 Z1\n"), sym);
  CHECK(zz_sym.epsilon_method == "symbolic");
  CHECK(zz_sym.epsilon_A == doctest::Approx(2.0));
}

TEST_CASE("recurrence matches symbolic powers") {
  std::mt19937_64 rng(8);
  for (std::size_t n = 2; n <= 5; ++n) {
    const Hamiltonian h = random_family(rng, n);
    const auto p = profile(h);
    for (int m = 2; m <= 6; ++m) {
      const SymbolicOperator hm = symbolic_power(h, m);
      CHECK(hm.coefficient(PauliString(n)) == doctest::Approx(p.gamma0[m]).epsilon(1e-12));
      for (std::size_t l = 0; l < n; ++l) {
        CHECK(hm.coefficient(h.term(l).op) == doctest::Approx(p.gamma[m][l]).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("exact coefficients") {
  // single rotation
  const Hamiltonian x = from_text("0.8 X0\n");
  const auto c1 = exact_coefficients(x, 0.9);
  CHECK(c1.alpha0 == doctest::Approx(std::cos(0.72)));
  CHECK(c1.alpha_l[0] == doctest::Approx(std::sin(0.72)));

  // half period
  const Hamiltonian f = generate_family(4);
  const auto half = exact_coefficients(f, std::numbers::pi / 2.0);
  CHECK(half.alpha0 == doctest::Approx(-1.0));
  for (double a : half.alpha_l) CHECK(std::abs(a) < 1e-15);
  CHECK(half.s == doctest::Approx(1.0));

  CHECK_THROWS_AS(exact_coefficients(from_text("1 Z0\n1 Z1\n"), 1.0), std::invalid_argument);

  std::mt19937_64 rng(19);
  for (std::size_t n = 2; n <= 8; ++n) {
    const Hamiltonian h = random_family(rng, n);
    const double beta = std::sqrt(h.alpha_squared_sum());
    for (double tb : {0.1, 1.0, 5.0, 10.0}) {
      const double t = tb / beta;
      const auto c = exact_coefficients(h, t);
      const oracle::Mat U = expm(h, t);
      CHECK(oracle::opnorm(reconstruction(h, c) - U) <= 1e-10);
      const auto lcu = exact_lcu(h, c);
      CHECK(oracle::opnorm(lcu_sum(lcu, n) - U) <= 1e-10);
      CHECK(lcu_normalization(lcu) == doctest::Approx(s_value(t, h.alpha(), beta)).epsilon(1e-13));
    }
  }
}

TEST_CASE("s value") {
  CHECK(s_value(0.0, 3.0, 2.0) == 1.0);
  CHECK(s_value(std::numbers::pi / 4.0, 3.0, 2.0) == doctest::Approx(1.5));
  for (int L : {4, 9, 16, 25}) {
    const double beta = std::sqrt(static_cast<double>(L));
    const double alpha = L;  // equal unit coefficients
    double max_s = 0.0;
    for (int i = 0; i <= 4000; ++i) {
      const double s = s_value(2.0 * std::numbers::pi / beta * i / 4000.0, alpha, beta);
      CHECK(s >= 1.0 - 1e-15);
      max_s = std::max(max_s, s);
    }
    CHECK(max_s <= 1.0 + std::sqrt(static_cast<double>(L)));
  }
}

TEST_CASE("exact schedule") {
  // alpha = beta: boost branch
  const auto b = schedule(2.0, 1.0, 1.0);
  CHECK(b.boost);
  CHECK(b.t1 == doctest::Approx(0.0));
  CHECK(b.t1 + static_cast<double>(b.r) * b.t_seg + b.t_rest == doctest::Approx(2.0).epsilon(1e-14));

  // equal-coefficient L = 16: alpha / beta = 4
  const auto s16 = schedule(1.7, 16.0, 4.0);
  CHECK(std::abs(s_value(s16.t_seg, 16.0, 4.0) - 2.0) <= 1e-9);
  CHECK(std::abs(s16.t1 + static_cast<double>(s16.r) * s16.t_seg + s16.t_rest - 1.7) <= 1e-12);
  CHECK(s16.t1 == doctest::Approx(2.0 * std::numbers::pi / 4.0));

  for (int L : {4, 9, 16, 25}) {
    const double beta = std::sqrt(static_cast<double>(L));
    const double alpha = L;
    const double rho = alpha / beta;
    const double bound = std::numbers::pi /
                         std::asin((2.0 * rho - std::sqrt(rho * rho - 3.0)) / (1.0 + rho * rho));
    for (double t : {0.05, 0.3, 1.0, 2.5, 9.0}) {
      const auto sc = schedule(t, alpha, beta);
      double sum = 0.0;
      for (double dt : sc.segment_time) sum += dt;
      CHECK(std::abs(sum - t) <= 1e-12);
      CHECK(static_cast<double>(sc.r) <= bound);
      CHECK(std::abs(s_value(sc.t_seg, alpha, beta) - 2.0) <= 1e-9);
      for (double s : sc.segment_s) {
        CHECK(s >= 1.0 - 1e-12);
        CHECK(s <= 2.0 + 1e-9);
      }
    }
  }
  CHECK_THROWS(schedule(0.0, 2.0, 1.0));
}

TEST_CASE("power reduction") {
  const Hamiltonian f = generate_family(3, {0.3, 0.5, 0.9});
  const double t = 0.8;
  auto pr = power_reduction(f, t);
  REQUIRE(pr);
  CHECK(pr->M == 2);
  CHECK(pr->gamma == doctest::Approx(f.alpha_squared_sum()));
  // exp(-itH) = sum_{k<M} gamma_k (-itH)^k
  const oracle::Mat H = oracle::dense(f);
  const oracle::Mat rebuilt = pr->gamma_k[0] * oracle::Mat::Identity(8, 8) + pr->gamma_k[1] * C(0.0, -t) * H;
  CHECK(oracle::opnorm(rebuilt - expm(f, t)) < 1e-12);

  auto z = power_reduction(from_text("1 Z0\n"), 2.0);
  REQUIRE(z);
  CHECK(z->M == 2);
  CHECK(z->gamma == doctest::Approx(1.0));

  CHECK_FALSE(power_reduction(from_text("0.3 Z0\n0.7 Z1\n0.45 Z0 Z1\n"), 1.0));

  // several periods; the terms pass 170! so they are built recursively
  auto far = power_reduction(f, 8.0);
  REQUIRE(far);
  const oracle::Mat far_rebuilt =
      far->gamma_k[0] * oracle::Mat::Identity(8, 8) + far->gamma_k[1] * C(0.0, -8.0) * H;
  CHECK(oracle::opnorm(far_rebuilt - expm(f, 8.0)) < 1e-10);
}

TEST_CASE("near-anticommuting bound") {
  CHECK(near_anticommuting_bound(0.0, 3.0, 2.0, 1.0) == 0.0);
  // closed form at moderate values
  const double eps = 0.3, alpha = 2.5, beta = 1.2, t = 0.7;
  const double B = std::sqrt(beta * beta + eps);
  const double closed = std::cosh(t * B) - std::cosh(t * beta) +
                        alpha * (std::sinh(t * B) / B - std::sinh(t * beta) / beta);
  CHECK(near_anticommuting_bound(eps, alpha, beta, t) == doctest::Approx(closed).epsilon(1e-12));
  // small t: leading term t^2 eps / 2
  for (double tb : {0.01, 0.05, 0.1}) {
    const double tt = tb / beta;
    const double lead = tt * tt * eps / 2.0;
    CHECK(std::abs(near_anticommuting_bound(eps, alpha, beta, tt) / lead - 1.0) < 0.1 + alpha * tt);
  }

  // perturbed family
  const Hamiltonian h = from_text("1 X0\n1 Z0 Z1\n1 Z0 X1 Z2\n1 Z0 X1 X2 Z3\n0.01 Z0\n");
  const auto p = profile(h);
  CHECK_FALSE(p.is_pairwise_anticommuting);
  CHECK(p.epsilon_A > 0.0);
  for (double tt : {0.1, 0.5, 1.0}) {
    const auto c = perfect_case_coefficients(h, tt);
    const double measured = oracle::opnorm(reconstruction(h, c) - expm(h, tt));
    const double bound = near_anticommuting_bound(p.epsilon_A, p.alpha, p.beta_s, tt);
    CHECK(measured <= bound);
  }
}
