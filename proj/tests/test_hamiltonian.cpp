#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "anticomm/errors.hpp"
#include "anticomm/hamiltonian.hpp"
#include "anticomm/jordan_wigner.hpp"
#include "oracles.hpp"

using namespace anticomm;

TEST_CASE("term list parsing") {
  auto h = load_hamiltonian("# qubits: 3\n# a comment\n0.5 X0 Z2\n-0.25 Y1\n+1e-1\n\n");
  CHECK(h.n_qubits() == 3);
  REQUIRE(h.size() == 3);
  CHECK(h.term(0).alpha == 0.5);
  CHECK(h.term(1).negative);
  CHECK(h.term(2).op.is_identity());
  CHECK(h.alpha() == doctest::Approx(0.85));
  CHECK(h.max_weight() == 2);
}

TEST_CASE("width inferred without header") {
  auto h = load_hamiltonian("1 X4\n");
  CHECK(h.n_qubits() == 5);
}

TEST_CASE("duplicates merge and cancellations drop") {
  auto h = load_hamiltonian("1 X0\n0.5 X0\n2 Z1\n-2 Z1\n0.25 Y0\n");
  REQUIRE(h.size() == 2);
  CHECK(h.term(0).alpha == doctest::Approx(1.5));
  CHECK(h.term(1).op == PauliString::parse("Y0", 2));
  CHECK_THROWS_AS(load_hamiltonian("1 X0\n-1 X0\n"), std::invalid_argument);
}

TEST_CASE("malformed input reports the line") {
  try {
    load_hamiltonian("1 X0\nabc X1\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  try {
    load_hamiltonian("1 X0\n1 X1 X1\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(load_hamiltonian("1 W0\n"), ParseError);
  CHECK_THROWS_AS(load_hamiltonian("# only comments\n"), ParseError);
  CHECK_THROWS_AS(load_hamiltonian("# qubits: 2\n1 X3\n"), ParseError);
  CHECK_THROWS_AS(load_hamiltonian("nan X0\n"), ParseError);
}

TEST_CASE("serialization round trip") {
  std::mt19937_64 rng(5);
  auto h = oracle::random_hamiltonian(rng, 4, 8);
  auto back = load_hamiltonian(h.serialize());
  REQUIRE(back.size() == h.size());
  for (std::size_t l = 0; l < h.size(); ++l) {
    CHECK(back.term(l).alpha == h.term(l).alpha);
    CHECK(back.term(l).negative == h.term(l).negative);
    CHECK(back.term(l).op == h.term(l).op);
  }
  CHECK((h.to_dense() - oracle::dense(h)).norm() < 1e-12);
}

TEST_CASE("file loading uses the stem as label") {
  auto path = std::filesystem::temp_directory_path() / "anticomm_test_h2.txt";
  {
    std::FILE* f = std::fopen(path.string().c_str(), "w");
    std::fputs("-0.8 \n0.17 Z0\n", f);
    std::fclose(f);
  }
  auto h = load_hamiltonian_file(path);
  CHECK(h.label() == "anticomm_test_h2");
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_hamiltonian_file("/nonexistent/file.txt"), ParseError);
}

TEST_CASE("Jordan-Wigner ladder operators") {
  for (std::size_t n = 1; n <= 3; ++n) {
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = 0; q < n; ++q) {
        auto ap = annihilation(n, p).to_dense();
        auto aqd = creation(n, q).to_dense();
        auto aq = annihilation(n, q).to_dense();
        oracle::Mat anti = ap * aqd + aqd * ap;
        oracle::Mat expect = (p == q ? 1.0 : 0.0) * oracle::Mat::Identity(ap.rows(), ap.cols());
        CHECK((anti - expect).norm() < 1e-12);
        CHECK((ap * aq + aq * ap).norm() < 1e-12);
      }
    }
  }
}

TEST_CASE("Jordan-Wigner small cases") {
  FermionIntegrals one(1);
  one.one_body(0, 0) = 1.0;
  auto h1 = jordan_wigner(one);
  REQUIRE(h1.size() == 2);
  CHECK(h1.find(PauliString(1)) >= 0);
  CHECK(h1.term(static_cast<std::size_t>(h1.find(PauliString::parse("Z0", 1)))).signed_coefficient() ==
        doctest::Approx(-0.5));

  FermionIntegrals hop(2);
  hop.one_body(0, 1) = hop.one_body(1, 0) = 1.0;
  auto h2 = jordan_wigner(hop);
  REQUIRE(h2.size() == 2);
  CHECK(h2.find(PauliString::parse("X0 X1", 2)) >= 0);
  CHECK(h2.find(PauliString::parse("Y0 Y1", 2)) >= 0);
  CHECK(h2.alpha() == doctest::Approx(1.0));

  FermionIntegrals bad(2);
  bad.one_body(0, 1) = 1.0;
  CHECK_THROWS_AS(jordan_wigner(bad), std::invalid_argument);
}

TEST_CASE("Jordan-Wigner two-body term matches dense ladder algebra") {
  const std::size_t n = 3;
  FermionIntegrals f(n);
  f.one_body(0, 0) = -1.2;
  f.one_body(1, 2) = f.one_body(2, 1) = 0.3;
  // Real symmetric: h_pqrs = h_srqp.
  f.h2(0, 1, 1, 0) = 0.7;
  f.h2(0, 2, 1, 0) = 0.2;
  f.h2(0, 1, 2, 0) = 0.2;
  auto h = jordan_wigner(f);
  oracle::Mat ref = oracle::Mat::Zero(8, 8);
  std::vector<oracle::Mat> a, ad;
  for (std::size_t p = 0; p < n; ++p) {
    a.push_back(annihilation(n, p).to_dense());
    ad.push_back(a.back().adjoint());
  }
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      ref += f.one_body(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q)) * ad[p] * a[q];
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s < n; ++s)
          ref += 0.5 * f.h2(p, q, r, s) * ad[p] * ad[q] * a[r] * a[s];
  CHECK((h.to_dense() - ref).norm() < 1e-12);
}

TEST_CASE("integral file format") {
  auto f = load_integrals("# modes: 2\n0 1 0.5\n1 0 0.5\n0 1 1 0 0.25\n");
  CHECK(f.n_modes == 2);
  CHECK(f.one_body(0, 1) == 0.5);
  CHECK(f.h2(0, 1, 1, 0) == 0.25);
  CHECK_THROWS_AS(load_integrals("0 1 0.5\n"), ParseError);
  CHECK_THROWS_AS(load_integrals("# modes: 2\n0 2 0.5\n"), ParseError);
  CHECK_THROWS_AS(load_integrals("# modes: 2\n0 1 0.5 3\n"), ParseError);
}
