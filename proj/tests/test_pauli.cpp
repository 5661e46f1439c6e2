#include <doctest.h>

#include <random>

#include "anticomm/errors.hpp"
#include "anticomm/pauli.hpp"
#include "anticomm/pauli_sum.hpp"
#include "oracles.hpp"

using namespace anticomm;

TEST_CASE("single-qubit products and phases") {
  const auto X = PauliString::from_letters("X");
  const auto Y = PauliString::from_letters("Y");
  const auto Z = PauliString::from_letters("Z");
  CHECK(multiply(X, Y) == Z.with_phase(1));
  CHECK(multiply(Y, X) == Z.with_phase(3));
  CHECK(multiply(Y, Z) == X.with_phase(1));
  CHECK(multiply(Z, X) == Y.with_phase(1));
  CHECK(multiply(X, X).is_identity());
  CHECK(multiply(X, X).phase_exp() == 0);
  CHECK(!commutes(X, Z));
  CHECK(commutes(PauliString::from_letters("XX"), PauliString::from_letters("ZZ")));
}

TEST_CASE("products match dense Kronecker matrices") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + trial % 5;
    auto p = PauliString::from_letters(oracle::random_letters(rng, n, true)).with_phase(trial % 4);
    auto q = PauliString::from_letters(oracle::random_letters(rng, n, true)).with_phase(trial / 4 % 4);
    const auto pd = oracle::dense(p);
    const auto qd = oracle::dense(q);
    CHECK((oracle::dense(multiply(p, q)) - pd * qd).norm() < 1e-12);
    CHECK((to_dense(p) - pd).norm() < 1e-12);
    const bool dense_commute = (pd * qd - qd * pd).norm() < 1e-12;
    CHECK(commutes(p, q) == dense_commute);
  }
}

TEST_CASE("multi-word strings") {
  std::mt19937_64 rng(11);
  const std::size_t n = 150;
  for (int trial = 0; trial < 50; ++trial) {
    auto a = PauliString::from_letters(oracle::random_letters(rng, n));
    auto b = PauliString::from_letters(oracle::random_letters(rng, n));
    // Per-qubit reference: the product phase and commutation are local.
    int log_i = 0;
    int anti = 0;
    for (std::size_t q = 0; q < n; ++q) {
      auto pa = PauliString::from_letters(std::string(1, a.letter(q)));
      auto pb = PauliString::from_letters(std::string(1, b.letter(q)));
      oracle::Mat prod = oracle::dense(pa) * oracle::dense(pb);
      auto r = multiply(pa, pb);
      CHECK((oracle::dense(r) - prod).norm() < 1e-12);
      log_i += static_cast<int>(r.phase_exp());
      anti += commutes(pa, pb) ? 0 : 1;
    }
    auto ab = multiply(a, b);
    CHECK(ab.phase_exp() == static_cast<unsigned>(log_i % 4));
    CHECK(commutes(a, b) == (anti % 2 == 0));
  }
}

TEST_CASE("parsing") {
  auto p = PauliString::parse("X0 Z3 Y1");
  CHECK(p.n_qubits() == 4);
  CHECK(p.factors() == "X0 Y1 Z3");
  CHECK(p.weight() == 3);
  CHECK(PauliString::parse("", 3).is_identity());
  CHECK_THROWS_AS(PauliString::parse("X0 X0"), ParseError);
  CHECK_THROWS_AS(PauliString::parse("Q1"), ParseError);
  CHECK_THROWS_AS(PauliString::parse("X"), ParseError);
  CHECK_THROWS_AS(PauliString::parse("X1a"), ParseError);
  CHECK_THROWS_AS(PauliString::parse("X5", 3), ParseError);
  CHECK_THROWS_AS(multiply(PauliString(2), PauliString(3)), std::invalid_argument);
}

TEST_CASE("dense helpers") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + trial % 4;
    auto p = PauliString::from_letters(oracle::random_letters(rng, n, true)).with_phase(trial % 4);
    const auto dim = Eigen::Index{1} << n;
    oracle::Mat in = oracle::Mat::Random(dim, dim);
    oracle::Mat out = oracle::Mat::Zero(dim, dim);
    add_pauli_times(p, Complex(0.5, -1.0), in, out);
    CHECK((out - Complex(0.5, -1.0) * oracle::dense(p) * in).norm() < 1e-12);
  }
  CHECK_THROWS_AS(to_dense(PauliString(13)), DenseCapExceeded);
}

TEST_CASE("PauliSum algebra") {
  PauliSum s(2);
  s.add(PauliString::parse("X0", 2), 1.0);
  s.add(PauliString::parse("Z1", 2), 2.0);
  auto sq = s * s;
  // (X0 + 2 Z1)^2 = 5 I + 4 X0 Z1
  CHECK(std::abs(sq.coefficient(PauliString(2)) - Complex(5.0)) < 1e-14);
  CHECK(std::abs(sq.coefficient(PauliString::parse("X0 Z1", 2)) - Complex(4.0)) < 1e-14);
  CHECK(sq.l1_norm() == doctest::Approx(9.0));
  CHECK((sq.to_dense() - s.to_dense() * s.to_dense()).norm() < 1e-12);
  PauliSum c(1);
  c.add(PauliString::from_letters("X"), 1.0);
  c.add(PauliString::from_letters("Z"), 1.0);
  auto comm = c * c;
  CHECK(comm.max_imag() < 1e-15);
}
