#include "anticomm/structure.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_map>

#include <fmt/format.h>

#include "anticomm/errors.hpp"
#include "anticomm/parallel.hpp"

namespace anticomm {

namespace {

constexpr std::size_t kRowChunk = 32;
constexpr std::size_t kSymbolicChunk = 256;

std::size_t chunk_count(std::size_t n, std::size_t chunk) { return (n + chunk - 1) / chunk; }

struct ComplexAcc {
  KahanSum re;
  KahanSum im;
  void add(Complex c) {
    re.add(c.real());
    im.add(c.imag());
  }
  Complex value() const { return {re.value(), im.value()}; }
};

}  // namespace

bool CommutationStructure::pairwise_anticommuting() const {
  for (std::size_t i = 0; i < size; ++i) {
    std::size_t count = 0;
    for (std::size_t w = 0; w < words_per_row; ++w) count += std::popcount(row(i)[w]);
    if (count != 1) return false;
  }
  return true;
}

CommutationStructure analyze(const Hamiltonian& h, unsigned workers) {
  CommutationStructure s;
  const std::size_t L = h.size();
  s.size = L;
  s.words_per_row = (L + 63) / 64;
  s.adjacency.assign(L * s.words_per_row, 0);
  s.comm_mass.assign(L, 0.0);
  s.comm_square_mass.assign(L, 0.0);
  std::vector<double> anti_mass(L, 0.0);
  const auto& terms = h.terms();

  parallel_chunks(chunk_count(L, kRowChunk), workers, [&](std::size_t chunk) {
    const std::size_t end = std::min(L, (chunk + 1) * kRowChunk);
    for (std::size_t i = chunk * kRowChunk; i < end; ++i) {
      std::uint64_t* bits = s.adjacency.data() + i * s.words_per_row;
      KahanSum comm, comm_sq, anti;
      for (std::size_t j = 0; j < L; ++j) {
        const double a = terms[j].alpha;
        if (i == j || commutes(terms[i].op, terms[j].op)) {
          bits[j / 64] |= std::uint64_t{1} << (j % 64);
          comm.add(a);
          comm_sq.add(a * a);
        } else {
          anti.add(a);
        }
      }
      s.comm_mass[i] = comm.value();
      s.comm_square_mass[i] = comm_sq.value();
      anti_mass[i] = anti.value();
    }
  });

  KahanSum alpha, comm, anti;
  for (std::size_t i = 0; i < L; ++i) {
    alpha.add(terms[i].alpha);
    comm.add(terms[i].alpha * s.comm_mass[i]);
    anti.add(terms[i].alpha * anti_mass[i]);
  }
  s.alpha = alpha.value();
  s.alpha_comm = comm.value();
  s.alpha_anti = anti.value();
  s.q2 = s.alpha / std::sqrt(s.alpha_comm);
  return s;
}

double SymbolicOperator::l1_norm() const {
  KahanSum total;
  for (const auto& [p, c] : terms) total.add(std::abs(c));
  return total.value();
}

double SymbolicOperator::coefficient(const PauliString& p) const {
  const PauliString key = p.phase_normalized();
  auto it = std::lower_bound(terms.begin(), terms.end(), key,
                             [](const auto& e, const PauliString& k) { return e.first < k; });
  if (it == terms.end() || !(it->first == key)) return 0.0;
  return it->second;
}

DenseOperator SymbolicOperator::to_dense(std::size_t dense_cap) const {
  if (n_qubits > dense_cap) {
    throw DenseCapExceeded(
        fmt::format("dense conversion of {} qubits exceeds cap {}", n_qubits, dense_cap));
  }
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n_qubits);
  DenseOperator m = DenseOperator::Zero(dim, dim);
  for (const auto& [p, c] : terms) add_to_dense(p, c, m);
  return m;
}

SymbolicOperator symbolic_power(const Hamiltonian& h, int m, const SymbolicBudget& budget,
                                unsigned workers) {
  if (m < 1) throw std::invalid_argument("symbolic_power needs m >= 1");
  using Entry = std::pair<PauliString, Complex>;
  const auto& terms = h.terms();
  const std::size_t L = terms.size();

  std::vector<Entry> current;
  for (const auto& t : terms) current.emplace_back(t.op, t.signed_coefficient());
  std::sort(current.begin(), current.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });

  double products = 0.0;
  for (int k = 2; k <= m; ++k) {
    products += static_cast<double>(current.size()) * static_cast<double>(L);
    if (products > budget.max_products) {
      throw BudgetExceeded(fmt::format(
          "H^{} expansion needs more than {:.3g} products; use the composite bound", m,
          budget.max_products));
    }
    const std::size_t n_chunks = chunk_count(current.size(), kSymbolicChunk);
    std::vector<std::vector<Entry>> partial(n_chunks);
    parallel_chunks(n_chunks, workers, [&](std::size_t chunk) {
      std::unordered_map<PauliString, ComplexAcc, PauliHash> local;
      const std::size_t end = std::min(current.size(), (chunk + 1) * kSymbolicChunk);
      for (std::size_t e = chunk * kSymbolicChunk; e < end; ++e) {
        const auto& [p, c] = current[e];
        for (const auto& t : terms) {
          const PauliString prod = multiply(p, t.op);
          local[prod.phase_normalized()].add(c * t.signed_coefficient() *
                                             phase_value(prod.phase_exp()));
        }
        if (local.size() > budget.max_entries) {
          throw BudgetExceeded(fmt::format(
              "H^{} expansion exceeds {} distinct strings; use the composite bound", m,
              budget.max_entries));
        }
      }
      auto& out = partial[chunk];
      out.reserve(local.size());
      for (const auto& [p, acc] : local) out.emplace_back(p, acc.value());
      std::sort(out.begin(), out.end(),
                [](const Entry& a, const Entry& b) { return a.first < b.first; });
    });

    std::unordered_map<PauliString, ComplexAcc, PauliHash> merged;
    for (const auto& part : partial) {
      for (const auto& [p, c] : part) merged[p].add(c);
      if (merged.size() > budget.max_entries) {
        throw BudgetExceeded(fmt::format(
            "H^{} expansion exceeds {} distinct strings; use the composite bound", m,
            budget.max_entries));
      }
    }
    partial.clear();
    current.clear();
    current.reserve(merged.size());
    for (const auto& [p, acc] : merged) {
      const Complex c = acc.value();
      if (std::abs(c) > budget.drop_tolerance) current.emplace_back(p, c);
    }
    std::sort(current.begin(), current.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
  }

  const double scale = std::pow(h.alpha(), m);
  SymbolicOperator out;
  out.n_qubits = h.n_qubits();
  out.terms.reserve(current.size());
  for (const auto& [p, c] : current) {
    // Powers of a Hermitian operator are Hermitian: real Pauli coefficients.
    if (std::abs(c.imag()) > 1e-9 * scale) {
      throw std::logic_error(fmt::format("imaginary coefficient {} in H^{}", c.imag(), m));
    }
    if (std::abs(c.real()) > budget.drop_tolerance) out.terms.emplace_back(p, c.real());
  }
  return out;
}

Order3Result cancellation_order3(const Hamiltonian& h, const CommutationStructure& s,
                                 double max_work, unsigned workers) {
  const std::size_t L = h.size();
  const auto& terms = h.terms();
  const std::size_t W = s.words_per_row;

  double pairs = 0.0;
  for (std::size_t b = 0; b < L; ++b) {
    for (std::size_t w = 0; w < W; ++w) pairs += std::popcount(s.row(b)[w]);
  }
  if ((pairs - static_cast<double>(L)) / 2.0 * static_cast<double>(W) > max_work) {
    throw BudgetExceeded("triple classification exceeds its work budget; use alpha * alpha_comm");
  }

  Order3Result out;
  out.beta.assign(L, 0.0);
  std::vector<double> r_part(L, 0.0), mixed_part(L, 0.0);
  const double square_sum = h.alpha_squared_sum();

  parallel_chunks(chunk_count(L, kRowChunk), workers, [&](std::size_t chunk) {
    const std::size_t end = std::min(L, (chunk + 1) * kRowChunk);
    for (std::size_t b = chunk * kRowChunk; b < end; ++b) {
      const double ab = terms[b].alpha;
      // (b,b,b); (a,a,b), (b,a,a) for any a != b; (a,b,a) adds +-1 by commutation.
      const double comm_sq = s.comm_square_mass[b] - ab * ab;
      const double anti_sq = square_sum - s.comm_square_mass[b];
      out.beta[b] = ab * ab * ab + 3.0 * ab * comm_sq + ab * anti_sq;

      KahanSum r, mixed;
      const std::uint64_t* rb = s.row(b);
      for (std::size_t c = b + 1; c < L; ++c) {
        if (!s.commute(b, c)) continue;
        const std::uint64_t* rc = s.row(c);
        // Third indices commuting with both, and anticommuting with both.
        KahanSum third_comm, third_anti;
        for (std::size_t w = 0; w < W; ++w) {
          const std::uint64_t valid = w + 1 < W || L % 64 == 0 ? ~std::uint64_t{0}
                                                               : (std::uint64_t{1} << (L % 64)) - 1;
          std::uint64_t both = rb[w] & rc[w];
          std::uint64_t neither = ~(rb[w] | rc[w]) & valid;
          while (both) {
            const std::size_t a = w * 64 + static_cast<std::size_t>(std::countr_zero(both));
            if (a != b && a != c) third_comm.add(terms[a].alpha);
            both &= both - 1;
          }
          while (neither) {
            third_anti.add(terms[w * 64 + static_cast<std::size_t>(std::countr_zero(neither))].alpha);
            neither &= neither - 1;
          }
        }
        const double ac = terms[c].alpha;
        r.add(ab * ac * third_comm.value());
        mixed.add(ab * ac * third_anti.value());
      }
      r_part[b] = r.value();
      mixed_part[b] = mixed.value();
    }
  });

  KahanSum beta, r, mixed;
  for (std::size_t b = 0; b < L; ++b) {
    beta.add(out.beta[b]);
    r.add(r_part[b]);
    mixed.add(mixed_part[b]);
  }
  out.beta_sum = beta.value();
  // Each all-commuting triple is seen from each of its 3 pairs: 6/3 = 2.
  out.alpha3_r = 2.0 * r.value();
  out.alpha3_mixed = 2.0 * mixed.value();
  return out;
}

std::size_t free_select_slots(std::size_t L) {
  if (L <= 1) return 0;
  const std::size_t width = std::bit_ceil(L);
  return width > L + 1 ? width - L - 1 : 0;
}

ExtraUnitarySelection select_extra_unitaries(const Hamiltonian& h, const CommutationStructure& s,
                                             std::size_t E) {
  struct Acc {
    KahanSum coefficient;
    KahanSum mass;
    std::size_t first_seen;
  };
  const auto& terms = h.terms();
  const std::size_t L = terms.size();
  std::unordered_map<PauliString, std::size_t, PauliHash> term_index;
  for (std::size_t l = 0; l < L; ++l) term_index.emplace(terms[l].op, l);

  ExtraUnitarySelection out;
  out.identity_coefficient = h.alpha_squared_sum();
  out.term_coefficient.assign(L, 0.0);

  std::unordered_map<PauliString, Acc, PauliHash> groups;
  std::vector<PauliString> order;
  for (std::size_t a = 0; a < L; ++a) {
    for (std::size_t b = a + 1; b < L; ++b) {
      if (!s.commute(a, b)) continue;
      const PauliString prod = multiply(terms[a].op, terms[b].op);
      const double sign = (prod.phase_exp() == 2 ? -1.0 : 1.0) *
                          (terms[a].negative ? -1.0 : 1.0) * (terms[b].negative ? -1.0 : 1.0);
      const double weight = 2.0 * terms[a].alpha * terms[b].alpha;
      const PauliString key = prod.phase_normalized();
      auto [it, inserted] = groups.try_emplace(key, Acc{{}, {}, order.size()});
      if (inserted) order.push_back(key);
      it->second.coefficient.add(sign * weight);
      it->second.mass.add(weight);
    }
  }

  std::vector<PairGroup> eligible;
  for (const auto& key : order) {
    const Acc& acc = groups.at(key);
    PairGroup g{key, acc.coefficient.value(), acc.mass.value(), -1};
    if (key.is_identity()) {
      out.identity_coefficient += g.coefficient;
      continue;
    }
    auto it = term_index.find(key);
    if (it != term_index.end()) {
      g.absorbed_term = static_cast<long>(it->second);
      out.term_coefficient[it->second] += terms[it->second].negative ? -g.coefficient : g.coefficient;
      continue;
    }
    eligible.push_back(std::move(g));
  }
  std::sort(eligible.begin(), eligible.end(), [](const PairGroup& x, const PairGroup& y) {
    const double ax = std::abs(x.coefficient), ay = std::abs(y.coefficient);
    if (ax != ay) return ax > ay;
    return x.op < y.op;
  });
  out.group_count = eligible.size();
  const std::size_t take = std::min(E, eligible.size());
  out.chosen.assign(eligible.begin(), eligible.begin() + static_cast<long>(take));
  out.rest.assign(eligible.begin() + static_cast<long>(take), eligible.end());
  KahanSum eps;
  for (const auto& g : out.rest) eps.add(g.mass);
  out.e_epsilon = eps.value();
  return out;
}

std::string to_string(Method m) {
  switch (m) {
    case Method::Classification: return "classification";
    case Method::Symbolic: return "symbolic";
    case Method::Composite: return "composite";
  }
  return "unknown";
}

double CancellationReport::q3() const { return alpha / std::cbrt(alpha3); }
double CancellationReport::q4() const { return alpha / std::sqrt(std::sqrt(alpha4)); }

CancellationReport cancellation_report(const Hamiltonian& h, const CommutationStructure& s,
                                       const ReportOptions& options) {
  CancellationReport r;
  r.label = h.label();
  r.n_qubits = h.n_qubits();
  r.L = h.size();
  r.alpha = s.alpha;
  r.alpha_comm = s.alpha_comm;
  r.alpha_anti = s.alpha_anti;
  r.q2 = s.q2;

  try {
    const Order3Result o3 = cancellation_order3(h, s, 4e9, options.workers);
    r.alpha3_classified = o3.classified();
    r.alpha3_r = o3.alpha3_r;
    r.alpha3_mixed = o3.alpha3_mixed;
    r.beta = o3.beta;
    r.alpha3 = r.alpha3_classified;
    r.alpha3_method = Method::Classification;
  } catch (const BudgetExceeded&) {
    // Without the classification every distinct triple stays in the residual.
    r.alpha3_classified = s.alpha * s.alpha_comm;
    r.alpha3 = r.alpha3_classified;
    r.alpha3_method = Method::Composite;
    r.alpha3_r = s.alpha * s.alpha_comm;
    r.alpha3_mixed = 0.0;
  }

  r.alpha4 = s.alpha_comm * s.alpha_comm;
  r.alpha4_method = Method::Composite;
  if (options.symbolic) {
    try {
      const double v3 = symbolic_power(h, 3, options.budget, options.workers).l1_norm();
      r.alpha3_symbolic = v3;
      if (v3 <= r.alpha3) {
        r.alpha3 = v3;
        r.alpha3_method = Method::Symbolic;
      }
    } catch (const BudgetExceeded&) {
    }
    try {
      const double v4 = symbolic_power(h, 4, options.budget, options.workers).l1_norm();
      if (v4 <= r.alpha4) {
        r.alpha4 = v4;
        r.alpha4_method = Method::Symbolic;
      }
    } catch (const BudgetExceeded&) {
    }
  }

  r.extra_unitaries = options.extra_unitaries.value_or(free_select_slots(h.size()));
  r.e_epsilon = select_extra_unitaries(h, s, r.extra_unitaries).e_epsilon;
  return r;
}

}  // namespace anticomm
