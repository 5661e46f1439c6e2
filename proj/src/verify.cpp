#include "anticomm/verify.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "anticomm/anticommuting.hpp"
#include "anticomm/errors.hpp"
#include "anticomm/oracle.hpp"

namespace anticomm {

namespace {

struct Recorder {
  const std::string& label;
  double scale;
  std::vector<VerifyRecord>& out;

  void add(std::string check, int K, double t, double measured, double bound, std::string note = {}) {
    VerifyRecord r;
    r.label = label;
    r.check = std::move(check);
    r.K = K;
    r.t = t;
    r.measured = measured;
    r.bound = bound * scale;
    // absolute slack for rounding in the dense oracle
    r.pass = std::isfinite(measured) && measured <= r.bound * (1.0 + 1e-9) + 1e-13;
    r.note = std::move(note);
    out.push_back(std::move(r));
  }
};

}  // namespace

std::vector<VerifyRecord> verify_hamiltonian(const Hamiltonian& h, const VerifyOptions& opts) {
  if (h.n_qubits() > opts.dense_cap) {
    throw DenseCapExceeded(
        fmt::format("{} has {} qubits, above the dense cap {}", h.label(), h.n_qubits(), opts.dense_cap));
  }
  std::vector<VerifyRecord> out;
  const std::string label = h.label().empty() ? "H" : h.label();
  Recorder rec{label, opts.bound_scale, out};

  const CommutationStructure s = analyze(h);
  const CancellationReport rep = cancellation_report(h, s);
  const DenseOperator H = h.to_dense(opts.dense_cap);
  const double alpha = h.alpha();
  const double tau = std::numbers::ln2 / alpha;
  const DenseOperator U = hermitian_expm(H, tau);

  // ||H^m|| against the cancellation parameters
  const DenseOperator H2 = H * H;
  rec.add("norm_H2", 0, 0.0, spectral_norm(H2), s.alpha_comm);
  rec.add("norm_H3", 0, 0.0, spectral_norm(H2 * H), rep.alpha3, to_string(rep.alpha3_method));
  rec.add("norm_H4", 0, 0.0, spectral_norm(H2 * H2), rep.alpha4, to_string(rep.alpha4_method));

  BoundInputs in = BoundInputs::from_report(rep);
  in.t = tau;
  for (int K : opts.Ks) {
    const double r2 = refined2_delta(alpha, s.alpha_comm, tau, K);
    const DenseOperator tk = taylor_partial_sum(H, tau, K);
    rec.add("truncation", K, tau, spectral_norm(tk - U), r2);
    rec.add("refined2_le_original", K, tau, r2, original_delta(alpha, tau, K));
    // s boosted to 2; the +-I padding leaves the combination unchanged
    rec.add("envelope", K, tau, spectral_norm(amplification_formula(tk, 2.0) - U), envelope(r2));
    if (K % 2 == 1) {
      in.K = K;
      const LcuPlan mod = build_modified(h, s, tau, K, rep.extra_unitaries);
      rec.add("modified", K, tau, spectral_norm(plan_operator(mod, h, opts.dense_cap) - U),
              modified_delta(in));
    }
  }

  for (std::size_t r : {std::size_t{1}, std::size_t{4}}) {
    const double t = 1.0 / alpha;
    const DenseOperator exact = hermitian_expm(H, t);
    rec.add(fmt::format("pf1_r{}", r), 0, t, spectral_norm(pf1_product(h, t, r) - exact),
            pf1_bound_exact(h, s, t, r, opts.dense_cap));
  }

  // block encoding of the K = 1 truncated plan
  const LcuPlan p1 = build_truncated(h, tau, 1);
  const auto terms = expand_unitaries(p1, h);
  if (std::bit_ceil(terms.size()) * (std::size_t{1} << h.n_qubits()) <= opts.max_block_dim) {
    const BlockEncoding be(terms, h.n_qubits());
    const DenseOperator A = lcu_sum(terms, h.n_qubits(), opts.dense_cap);
    rec.add("block", 1, tau, (be.block() - A / be.s()).cwiseAbs().maxCoeff(), 1e-10);
    rec.add("amplification", 1, tau,
            (amplify(be) - amplification_formula(A, be.s())).cwiseAbs().maxCoeff(), 1e-10);
  }

  if (s.pairwise_anticommuting()) {
    const double beta = std::sqrt(h.alpha_squared_sum());
    for (double tb : {0.1, 1.0, 5.0}) {
      const double t = tb / beta;
      const auto c = exact_coefficients(h, t);
      const DenseOperator rebuilt = lcu_sum(exact_lcu(h, c), h.n_qubits(), opts.dense_cap);
      rec.add("anticommuting_exact", 0, t, spectral_norm(rebuilt - hermitian_expm(H, t)), 1e-10);
    }
  } else {
    ProfileOptions po;
    po.m_max = 2;
    po.dense_cap = opts.dense_cap;
    const auto prof = profile(h, po);
    for (double t : {0.1, 0.5, 1.0}) {
      const auto c = perfect_case_coefficients(h, t);
      const DenseOperator rebuilt = lcu_sum(exact_lcu(h, c), h.n_qubits(), opts.dense_cap);
      rec.add("near_anticommuting", 0, t, spectral_norm(rebuilt - hermitian_expm(H, t)),
              near_anticommuting_bound(prof.epsilon_A, prof.alpha, prof.beta_s, t));
    }
  }
  return out;
}

CsvTable verify_csv(const std::vector<VerifyRecord>& records) {
  CsvTable t;
  t.header = {"molecule_label", "check", "K", "t", "measured", "bound", "margin", "pass", "note"};
  for (const auto& r : records) {
    t.add_row({r.label, r.check, std::to_string(r.K), format_number(r.t), format_number(r.measured),
               format_number(r.bound), format_number(r.bound - r.measured), r.pass ? "1" : "0",
               r.note});
  }
  return t;
}

}  // namespace anticomm
