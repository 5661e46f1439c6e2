#include <doctest.h>

#include <cmath>
#include <random>

#include "anticomm/errors.hpp"
#include "anticomm/structure.hpp"
#include "oracles.hpp"

using namespace anticomm;
using oracle::from_text;

namespace {

Hamiltonian anticommuting_family(std::size_t n) {
  // X0, Z0 Z1, Z0 X1 Z2, Z0 X1 X2 Z3, ...
  std::vector<std::pair<double, PauliString>> terms;
  terms.emplace_back(1.0, PauliString::single(n, 0, 'X'));
  for (std::size_t j = 1; j < n; ++j) {
    PauliString p(n);
    p.set(0, 'Z');
    for (std::size_t k = 1; k < j; ++k) p.set(k, 'X');
    p.set(j, 'Z');
    terms.emplace_back(1.0, p);
  }
  return Hamiltonian::from_signed(n, terms);
}

}  // namespace

TEST_CASE("commutation aggregates") {
  auto comm = from_text("1 Z0\n1 Z1\n1 Z0 Z1\n");
  auto s = analyze(comm);
  CHECK(s.alpha_comm == doctest::Approx(9.0));
  CHECK(s.alpha_anti == 0.0);
  CHECK(s.q2 == doctest::Approx(1.0));
  CHECK(!s.pairwise_anticommuting());

  for (std::size_t n : {2u, 3u, 5u}) {
    auto s2 = analyze(anticommuting_family(n));
    CHECK(s2.pairwise_anticommuting());
    CHECK(s2.alpha_comm == doctest::Approx(static_cast<double>(n)));
    CHECK(s2.q2 == doctest::Approx(std::sqrt(static_cast<double>(n))));
  }
}

TEST_CASE("adjacency matches dense commutators") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    auto h = oracle::random_hamiltonian(rng, 3, 8);
    auto s = analyze(h);
    for (std::size_t i = 0; i < h.size(); ++i) {
      for (std::size_t j = 0; j < h.size(); ++j) {
        auto a = oracle::dense(h.term(i).op), b = oracle::dense(h.term(j).op);
        CHECK(s.commute(i, j) == ((a * b - b * a).norm() < 1e-12));
      }
    }
    CHECK(s.alpha_comm + s.alpha_anti == doctest::Approx(s.alpha * s.alpha).epsilon(1e-12));
    CHECK(s.alpha_comm >= h.alpha_squared_sum() - 1e-12);
    CHECK(s.q2 >= 1.0);
  }
}

TEST_CASE("symbolic powers") {
  auto xz = from_text("1 X0\n1 Z0\n");
  auto sq = symbolic_power(xz, 2);
  REQUIRE(sq.terms.size() == 1);
  CHECK(sq.terms[0].first.is_identity());
  CHECK(sq.terms[0].second == doctest::Approx(2.0));

  auto zz = from_text("1 Z0\n1 Z1\n");
  CHECK(symbolic_power(zz, 2).l1_norm() == doctest::Approx(4.0));

  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    auto h = oracle::random_hamiltonian(rng, 3, 4 + trial % 3);
    const oracle::Mat hd = oracle::dense(h);
    oracle::Mat power = hd;
    for (int m = 2; m <= 4; ++m) {
      power = power * hd;
      CHECK((symbolic_power(h, m).to_dense() - power).norm() < 1e-10);
    }
  }
  SymbolicBudget tiny;
  tiny.max_products = 10;
  CHECK_THROWS_AS(symbolic_power(from_text("1 X0\n1 Z0\n1 Y1\n1 X1\n"), 3, tiny), BudgetExceeded);
  tiny = {};
  tiny.max_entries = 2;
  CHECK_THROWS_AS(symbolic_power(from_text("1 X0\n1 Z0\n1 Y1\n1 X1\n"), 2, tiny), BudgetExceeded);
}

TEST_CASE("third-order classification on hand examples") {
  auto xz = from_text("1 X0\n1 Z0\n");
  auto o = cancellation_order3(xz, analyze(xz));
  CHECK(o.alpha3_r == 0.0);
  CHECK(o.beta[0] == doctest::Approx(2.0));
  CHECK(o.beta[1] == doctest::Approx(2.0));
  CHECK(o.classified() == doctest::Approx(4.0));
  const oracle::Mat d = oracle::dense(xz);
  CHECK(oracle::opnorm(d * d * d) <= 4.0);

  auto zzz = from_text("1 Z0\n1 Z1\n1 Z2\n");
  auto o2 = cancellation_order3(zzz, analyze(zzz));
  CHECK(o2.alpha3_r == doctest::Approx(6.0));
  for (double b : o2.beta) CHECK(b == doctest::Approx(7.0));
  CHECK(o2.classified() == doctest::Approx(27.0));

  // One commuting pair among three distinct terms: the orderings leave
  // 2 H_a H_b H_c behind, which the symbolic expansion confirms.
  auto mixed = from_text("1 X0\n1 Z0\n1 Z0 Z1\n");
  auto o3 = cancellation_order3(mixed, analyze(mixed));
  CHECK(o3.alpha3_mixed == doctest::Approx(2.0));
  CHECK(o3.beta_sum == doctest::Approx(13.0));
  CHECK(symbolic_power(mixed, 3).l1_norm() == doctest::Approx(15.0));
  CHECK(o3.classified() == doctest::Approx(15.0));
}

TEST_CASE("third-order classification matches multiset enumeration") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 25; ++trial) {
    auto h = oracle::random_hamiltonian(rng, 2 + trial % 2, 3 + trial % 6);
    auto s = analyze(h);
    auto o = cancellation_order3(h, s);
    auto ref = oracle::triple_classification(h);
    CHECK(o.classified() == doctest::Approx(ref.total).epsilon(1e-12));
    CHECK(o.alpha3_r == doctest::Approx(ref.distinct_all_commuting).epsilon(1e-12));
    CHECK(o.alpha3_mixed == doctest::Approx(ref.distinct_one_commuting).epsilon(1e-12));
    CHECK(symbolic_power(h, 3).l1_norm() <= o.classified() + 1e-12);
    CHECK(o.classified() <= s.alpha * s.alpha_comm * (1 + 1e-12));
  }
}

TEST_CASE("fourth order") {
  auto fam = anticommuting_family(4);
  auto sf = analyze(fam);
  const double beta2 = fam.alpha_squared_sum();
  CHECK(symbolic_power(fam, 4).l1_norm() == doctest::Approx(beta2 * beta2));
  auto zs = from_text("1 Z0\n1 Z1\n1 Z0 Z1\n1 Z2\n");
  CHECK(symbolic_power(zs, 4).l1_norm() == doctest::Approx(std::pow(4.0, 4)));
  auto r = cancellation_report(fam, sf);
  CHECK(r.alpha4_method == Method::Symbolic);
  CHECK(r.q4() == doctest::Approx(fam.alpha() / std::sqrt(beta2)));
}

TEST_CASE("extra unitary selection") {
  auto h = from_text("1 Z0\n1 Z1\n1 X0 X1\n");
  auto s = analyze(h);
  auto none = select_extra_unitaries(h, s, 0);
  CHECK(none.group_count == 1);
  CHECK(none.chosen.empty());
  CHECK(none.e_epsilon == doctest::Approx(2.0));
  auto one = select_extra_unitaries(h, s, 1);
  REQUIRE(one.chosen.size() == 1);
  CHECK(one.chosen[0].op == PauliString::parse("Z0 Z1", 2));
  CHECK(one.chosen[0].coefficient == doctest::Approx(2.0));
  CHECK(one.e_epsilon == 0.0);
  CHECK(select_extra_unitaries(h, s, 10).e_epsilon == 0.0);

  auto neg = from_text("-1 Z0\n1 Z1\n");
  auto sel = select_extra_unitaries(neg, analyze(neg), 1);
  CHECK(sel.chosen[0].coefficient == doctest::Approx(-2.0));

  // Products equal to a term are absorbed into that term.
  auto closed = from_text("1 Z0\n1 Z1\n-0.5 Z0 Z1\n");
  auto sc = select_extra_unitaries(closed, analyze(closed), 5);
  CHECK(sc.group_count == 0);
  CHECK(sc.term_coefficient[2] == doctest::Approx(-2.0));  // 2 Z0Z1 = -2 (-Z0Z1)
  CHECK(sc.term_coefficient[0] == doctest::Approx(-1.0));  // Z1 * (-0.5 Z0Z1) twice
  CHECK(sc.identity_coefficient == doctest::Approx(2.25));
}

TEST_CASE("H^2 is reassembled from the selection") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 15; ++trial) {
    auto h = oracle::random_hamiltonian(rng, 3, 7);
    auto s = analyze(h);
    auto sel = select_extra_unitaries(h, s, 1000);
    const auto dim = Eigen::Index{8};
    oracle::Mat m = sel.identity_coefficient * oracle::Mat::Identity(dim, dim);
    for (std::size_t l = 0; l < h.size(); ++l)
      m += sel.term_coefficient[l] * oracle::dense(h.term(l).signed_op());
    for (const auto& g : sel.chosen) m += g.coefficient * oracle::dense(g.op);
    const oracle::Mat hd = oracle::dense(h);
    CHECK((m - hd * hd).norm() < 1e-10);
    auto partial = select_extra_unitaries(h, s, 2);
    CHECK(partial.e_epsilon <= s.alpha_comm - h.alpha_squared_sum() + 1e-12);
  }
}

TEST_CASE("worker count does not change results") {
  std::mt19937_64 rng(1234);
  auto h = oracle::random_hamiltonian(rng, 6, 150);
  auto s1 = analyze(h, 1);
  auto s4 = analyze(h, 4);
  CHECK(s1.alpha_comm == s4.alpha_comm);
  CHECK(s1.adjacency == s4.adjacency);
  auto o1 = cancellation_order3(h, s1, 4e9, 1);
  auto o4 = cancellation_order3(h, s4, 4e9, 4);
  CHECK(o1.alpha3_r == o4.alpha3_r);
  CHECK(o1.alpha3_mixed == o4.alpha3_mixed);
  auto p1 = symbolic_power(h, 2, {}, 1);
  auto p4 = symbolic_power(h, 2, {}, 4);
  REQUIRE(p1.terms.size() == p4.terms.size());
  bool same = true;
  for (std::size_t i = 0; i < p1.terms.size(); ++i)
    same = same && p1.terms[i].first == p4.terms[i].first && p1.terms[i].second == p4.terms[i].second;
  CHECK(same);
}
