// Test-only reference implementations. Nothing here calls into the library's
// algebra beyond reading letters, so disagreements point at the library.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "anticomm/hamiltonian.hpp"
#include "anticomm/pauli.hpp"

namespace oracle {

using anticomm::Complex;
using Mat = Eigen::MatrixXcd;

inline Mat single(char letter) {
  Mat m(2, 2);
  const Complex i(0, 1);
  switch (letter) {
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -i, i, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: m << 1, 0, 0, 1; break;
  }
  return m;
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c)
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  return out;
}

// Qubit 0 is the leftmost Kronecker factor.
inline Mat dense(const anticomm::PauliString& p) {
  Mat m = Mat::Identity(1, 1);
  for (std::size_t q = 0; q < p.n_qubits(); ++q) m = kron(m, single(p.letter(q)));
  static const Complex phases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return phases[p.phase_exp() & 3] * m;
}

inline Mat dense(const anticomm::Hamiltonian& h) {
  const auto dim = Eigen::Index{1} << h.n_qubits();
  Mat m = Mat::Zero(dim, dim);
  for (const auto& t : h.terms()) m += t.signed_coefficient() * dense(t.op);
  return m;
}

// Taylor series with scaling and squaring; independent of any eigensolver.
inline Mat expm_taylor(const Mat& a) {
  const double norm = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  double scale = 1.0;
  while (norm * scale > 0.25) {
    scale *= 0.5;
    ++squarings;
  }
  const Mat b = a * scale;
  Mat term = Mat::Identity(a.rows(), a.cols());
  Mat sum = term;
  for (int k = 1; k < 40; ++k) {
    term = term * b / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

inline double opnorm(const Mat& a) {
  Eigen::JacobiSVD<Mat> svd(a);
  return svd.singularValues()(0);
}

inline std::string random_letters(std::mt19937_64& rng, std::size_t n, bool allow_identity = false) {
  static const char kL[4] = {'I', 'X', 'Y', 'Z'};
  std::uniform_int_distribution<int> d(0, 3);
  for (;;) {
    std::string s(n, 'I');
    for (auto& c : s) c = kL[d(rng)];
    if (allow_identity || s != std::string(n, 'I')) return s;
  }
}

// L distinct random strings with signed coefficients of magnitude in [0.1, 1].
inline anticomm::Hamiltonian random_hamiltonian(std::mt19937_64& rng, std::size_t n,
                                                std::size_t L) {
  std::vector<std::pair<double, anticomm::PauliString>> terms;
  std::vector<std::string> used;
  std::uniform_real_distribution<double> mag(0.1, 1.0);
  std::bernoulli_distribution neg(0.3);
  std::size_t guard = 0;
  while (terms.size() < L && guard++ < 10000) {
    std::string s = random_letters(rng, n, true);
    bool dup = false;
    for (const auto& u : used) dup = dup || u == s;
    if (dup) continue;
    used.push_back(s);
    const double c = mag(rng) * (neg(rng) ? -1.0 : 1.0);
    terms.emplace_back(c, anticomm::PauliString::from_letters(s));
  }
  return anticomm::Hamiltonian::from_signed(n, terms, "random");
}

}  // namespace oracle

namespace oracle {

// Sum over multisets {i,j,k} of alpha_i alpha_j alpha_k times the norm of the
// sum over distinct orderings of H_i H_j H_k. Each such sum is a multiple of
// a single Pauli string, so the norm is the surviving multiplicity.
struct TripleOracle {
  double total = 0.0;
  double distinct_all_commuting = 0.0;
  double distinct_one_commuting = 0.0;
};

inline TripleOracle triple_classification(const anticomm::Hamiltonian& h) {
  const std::size_t L = h.size();
  std::vector<Mat> mats;
  for (const auto& t : h.terms()) mats.push_back(dense(t.op));
  auto commute = [&](std::size_t a, std::size_t b) {
    return (mats[a] * mats[b] - mats[b] * mats[a]).norm() < 1e-9;
  };
  TripleOracle out;
  for (std::size_t i = 0; i < L; ++i) {
    for (std::size_t j = i; j < L; ++j) {
      for (std::size_t k = j; k < L; ++k) {
        std::vector<std::size_t> idx{i, j, k};
        Mat sum = Mat::Zero(mats[0].rows(), mats[0].cols());
        do {
          sum += mats[idx[0]] * mats[idx[1]] * mats[idx[2]];
        } while (std::next_permutation(idx.begin(), idx.end()));
        const double mult = opnorm(sum);
        const double w = h.term(i).alpha * h.term(j).alpha * h.term(k).alpha;
        out.total += w * mult;
        if (i < j && j < k) {
          const int comm = int(commute(i, j)) + int(commute(i, k)) + int(commute(j, k));
          if (comm == 3) out.distinct_all_commuting += w * mult;
          if (comm == 1) out.distinct_one_commuting += w * mult;
        }
      }
    }
  }
  return out;
}

inline anticomm::Hamiltonian from_text(const char* text) { return anticomm::load_hamiltonian(text); }

}  // namespace oracle
