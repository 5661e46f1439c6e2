// anticomm: command-line front end for the cancellation analysis, error
// bounds, LCU plans and dense verification.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "anticomm/anticommuting.hpp"
#include "anticomm/bounds.hpp"
#include "anticomm/errors.hpp"
#include "anticomm/hamiltonian.hpp"
#include "anticomm/jordan_wigner.hpp"
#include "anticomm/lcu.hpp"
#include "anticomm/parallel.hpp"
#include "anticomm/report.hpp"
#include "anticomm/structure.hpp"
#include "anticomm/verify.hpp"

namespace fs = std::filesystem;
using namespace anticomm;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kInputError = 2, kBudget = 3 };

struct RunConfig {
  std::vector<std::string> inputs;
  std::string schemes;
  std::string k_grid;
  std::string eps_grid;
  std::string t_mode;
  std::string extra_unitaries = "free";
  std::size_t dense_cap = kDefaultDenseCap;
  std::string out = ".";
  std::uint64_t seed = 1;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

double to_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size()) throw std::invalid_argument(fmt::format("'{}' is not a number", s));
  return v;
}

int to_int(const std::string& s) {
  const double v = to_double(s);
  if (v != std::floor(v)) throw std::invalid_argument(fmt::format("'{}' is not an integer", s));
  return static_cast<int>(v);
}

// "1:40", "2:40:2" or "3,5,7"
std::vector<int> parse_k_grid(const std::string& text) {
  std::vector<int> ks;
  for (const auto& item : split(text, ',')) {
    const auto parts = split(item, ':');
    if (parts.size() == 1) {
      ks.push_back(to_int(parts[0]));
    } else if (parts.size() == 2 || parts.size() == 3) {
      const int a = to_int(parts[0]), b = to_int(parts[1]);
      const int step = parts.size() == 3 ? to_int(parts[2]) : 1;
      if (step <= 0 || b < a) throw std::invalid_argument(fmt::format("bad K range '{}'", item));
      for (int k = a; k <= b; k += step) ks.push_back(k);
    } else {
      throw std::invalid_argument(fmt::format("bad K range '{}'", item));
    }
  }
  if (ks.empty()) throw std::invalid_argument("empty K grid");
  for (int k : ks) {
    if (k < 1) throw std::invalid_argument("K values must be positive");
  }
  return ks;
}

// "1e-2,1e-6" or "1e0:1e-20" (every decade in between)
std::vector<double> parse_eps_grid(const std::string& text) {
  std::vector<double> eps;
  for (const auto& item : split(text, ',')) {
    const auto parts = split(item, ':');
    if (parts.size() == 1) {
      eps.push_back(to_double(parts[0]));
    } else if (parts.size() == 2) {
      const int a = static_cast<int>(std::lround(std::log10(to_double(parts[0]))));
      const int b = static_cast<int>(std::lround(std::log10(to_double(parts[1]))));
      const int step = a <= b ? 1 : -1;
      for (int e = a;; e += step) {
        eps.push_back(std::pow(10.0, e));
        if (e == b) break;
      }
    } else {
      throw std::invalid_argument(fmt::format("bad epsilon range '{}'", item));
    }
  }
  if (eps.empty()) throw std::invalid_argument("empty epsilon grid");
  for (double e : eps) {
    if (!(e > 0.0)) throw std::invalid_argument("epsilon values must be positive");
  }
  return eps;
}

std::vector<Scheme> parse_schemes(const std::string& text) {
  std::vector<Scheme> out;
  for (const auto& s : split(text, ',')) out.push_back(parse_scheme(s));
  if (out.empty()) throw std::invalid_argument("no schemes selected");
  return out;
}

// "ln2" (segment time), "n" (number of qubits) or an explicit time
double resolve_time(const std::string& mode, const Hamiltonian& h) {
  if (mode == "ln2") return std::numbers::ln2 / h.alpha();
  if (mode == "n") return static_cast<double>(h.n_qubits());
  const double t = to_double(mode);
  if (!(t > 0.0)) throw std::invalid_argument("time must be positive");
  return t;
}

std::size_t resolve_extra(const std::string& mode, const Hamiltonian& h) {
  if (mode == "free") return free_select_slots(h.size());
  const int e = to_int(mode);
  if (e < 0) throw std::invalid_argument("--extra-unitaries must be non-negative");
  return static_cast<std::size_t>(e);
}

std::vector<Hamiltonian> load_inputs(const RunConfig& cfg) {
  if (cfg.inputs.empty()) throw std::invalid_argument("no --input files given");
  std::vector<Hamiltonian> hs;
  for (const auto& path : cfg.inputs) hs.push_back(load_hamiltonian_file(path));
  return hs;
}

ReportOptions report_options(const RunConfig& cfg, const Hamiltonian& h) {
  ReportOptions ro;
  ro.extra_unitaries = resolve_extra(cfg.extra_unitaries, h);
  return ro;
}

Hamiltonian random_hamiltonian(std::mt19937_64& rng, std::size_t n, std::size_t L) {
  std::uniform_real_distribution<double> mag(0.1, 1.0);
  std::uniform_int_distribution<int> letter(0, 3);
  std::bernoulli_distribution negative(0.3);
  std::vector<std::pair<double, PauliString>> terms;
  std::size_t attempts = 0;
  while (terms.size() < L && attempts++ < 100 * L) {
    std::string letters;
    for (std::size_t q = 0; q < n; ++q) letters += "IXYZ"[letter(rng)];
    const PauliString p = PauliString::from_letters(letters);
    if (p.is_identity()) continue;
    bool dup = false;
    for (const auto& [c, q] : terms) dup = dup || q == p;
    if (dup) continue;
    const double c = mag(rng);
    terms.emplace_back(negative(rng) ? -c : c, p);
  }
  return Hamiltonian::from_signed(n, terms);
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error(fmt::format("cannot write {}", path.string()));
  f << text;
}

// ---- subcommands ----

int cmd_analyze(const RunConfig& cfg) {
  const auto hs = load_inputs(cfg);
  std::vector<AnalyzeRow> rows(hs.size());
  parallel_chunks(hs.size(), 0, [&](std::size_t i) {
    const Hamiltonian& h = hs[i];
    ReportOptions ro = report_options(cfg, h);
    ro.workers = 1;
    rows[i].report = cancellation_report(h, analyze(h, 1), ro);
    ProfileOptions po;
    po.dense_cap = cfg.dense_cap;
    rows[i].profile = profile(h, po);
  });
  const CsvTable table = analyze_table(rows);
  table.write(fs::path(cfg.out) / "analyze.csv");
  nlohmann::json j = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json e = to_json(r.report);
    e["anticommuting"] = to_json(r.profile);
    j.push_back(e);
  }
  write_text(fs::path(cfg.out) / "analyze.json", j.dump(2) + "\n");
  table.write(std::cout);
  return kOk;
}

int cmd_ratios(const RunConfig& cfg) {
  if (!cfg.t_mode.empty() && cfg.t_mode != "ln2") {
    throw std::invalid_argument("ratios are defined at the segment time; use --t-mode ln2");
  }
  const auto hs = load_inputs(cfg);
  const auto schemes = parse_schemes(cfg.schemes.empty() ? "original,refined2,refined3,refined4,modified"
                                                         : cfg.schemes);
  const auto ks = parse_k_grid(cfg.k_grid.empty() ? "1:40" : cfg.k_grid);
  std::vector<RatioRow> rows;
  for (const auto& h : hs) {
    const CancellationReport rep = cancellation_report(h, analyze(h), report_options(cfg, h));
    const auto part = ratio_table(h.label(), BoundInputs::from_report(rep), schemes, ks);
    rows.insert(rows.end(), part.begin(), part.end());
    for (Scheme s : schemes) {
      if (s == Scheme::Pf1) continue;
      write_ratio_dat(rows, h.label(), s,
                      fs::path(cfg.out) / fmt::format("ratios_{}_{}.dat", h.label(), to_string(s)));
    }
  }
  const CsvTable table = ratio_csv(rows);
  table.write(fs::path(cfg.out) / "ratios.csv");
  table.write(std::cout);
  return kOk;
}

int cmd_mink(const RunConfig& cfg) {
  const auto hs = load_inputs(cfg);
  const auto schemes = parse_schemes(cfg.schemes.empty() ? "original,refined2,modified" : cfg.schemes);
  const auto eps = parse_eps_grid(cfg.eps_grid.empty() ? "1e-1:1e-20" : cfg.eps_grid);
  std::vector<MinKRow> rows;
  for (const auto& h : hs) {
    const CancellationReport rep = cancellation_report(h, analyze(h), report_options(cfg, h));
    const BoundInputs in = BoundInputs::from_report(rep);
    const double t = resolve_time(cfg.t_mode.empty() ? "n" : cfg.t_mode, h);
    for (double e : eps) {
      MinKRow row;
      row.label = h.label();
      row.epsilon = e;
      row.t = t;
      row.schemes = schemes;
      for (Scheme s : schemes) {
        if (s == Scheme::Pf1) throw std::invalid_argument("pf1 has no truncation order");
        row.results.push_back(min_K(s, in, t, e));
      }
      rows.push_back(std::move(row));
    }
  }
  const CsvTable table = mink_csv(rows);
  table.write(fs::path(cfg.out) / "mink.csv");
  table.write(std::cout);
  return kOk;
}

int cmd_schedule(const RunConfig& cfg) {
  const auto hs = load_inputs(cfg);
  const auto ks = parse_k_grid(cfg.k_grid.empty() ? "10" : cfg.k_grid);
  const Scheme scheme = parse_scheme(cfg.schemes.empty() ? "original" : cfg.schemes);
  for (const auto& h : hs) {
    const double t = resolve_time(cfg.t_mode.empty() ? "n" : cfg.t_mode, h);
    const SegmentSchedule seg = segment_schedule(t, h.alpha());
    const CommutationStructure s = analyze(h);
    nlohmann::json j;
    j["molecule_label"] = h.label();
    j["t"] = t;
    nlohmann::json plans = nlohmann::json::array();
    for (int K : ks) {
      LcuPlan plan = scheme == Scheme::Modified
                         ? build_modified(h, s, seg.tau, K, resolve_extra(cfg.extra_unitaries, h))
                         : build_truncated(h, seg.tau, K);
      std::optional<GateCost> cost;
      if (h.size() >= 4) cost = gate_cost(plan, h, seg.r);
      plans.push_back(to_json(plan, seg, cost ? &*cost : nullptr));
      fmt::print("{} K={} scheme={} r={} tau={:.6g} tau_re={:.6g} s={:.12g}\n", h.label(), K,
                  to_string(plan.scheme), seg.r, seg.tau, seg.tau_re, plan.s);
      for (const auto& w : plan.warnings) fmt::print(stderr, "warning: {}\n", w);
    }
    j["taylor"] = plans;
    ProfileOptions po;
    po.dense_cap = cfg.dense_cap;
    const AnticommutingProfile prof = profile(h, po);
    j["anticommuting"] = to_json(prof);
    if (prof.is_pairwise_anticommuting) {
      const ExactSchedule ex = schedule(t, prof.alpha, prof.beta_s);
      j["exact_schedule"] = to_json(ex);
      fmt::print("{} exact: t1={:.6g} t_seg={:.6g} r={} t_rest={:.6g} boost={}\n", h.label(), ex.t1,
                 ex.t_seg, ex.r, ex.t_rest, ex.boost);
      for (std::size_t k = 0; k < ex.segment_s.size(); ++k) {
        fmt::print("  segment {} time={:.12g} s={:.12g}\n", k, ex.segment_time[k], ex.segment_s[k]);
      }
    }
    write_text(fs::path(cfg.out) / fmt::format("schedule_{}.json", h.label()), j.dump(2) + "\n");
  }
  return kOk;
}

int cmd_verify(const RunConfig& cfg, std::size_t random_count, const std::vector<int>& families,
               bool corrupt) {
  std::vector<Hamiltonian> hs;
  if (!cfg.inputs.empty()) hs = load_inputs(cfg);
  std::mt19937_64 rng(cfg.seed);
  for (std::size_t i = 0; i < random_count; ++i) {
    const std::size_t n = 1 + i % 5;
    const std::size_t L = 2 + (i * 7) % 9;
    Hamiltonian h = random_hamiltonian(rng, n, L);
    h.set_label(fmt::format("random{}", i));
    hs.push_back(std::move(h));
  }
  for (int n : families) hs.push_back(generate_family(static_cast<std::size_t>(n)));
  if (hs.empty()) throw std::invalid_argument("nothing to verify; give --input, --random or --family");

  VerifyOptions vo;
  vo.dense_cap = cfg.dense_cap;
  if (!cfg.k_grid.empty()) vo.Ks = parse_k_grid(cfg.k_grid);
  if (corrupt) vo.bound_scale = 1e-6;

  std::vector<std::vector<VerifyRecord>> per(hs.size());
  std::vector<std::string> skipped(hs.size());
  parallel_chunks(hs.size(), 0, [&](std::size_t i) {
    try {
      per[i] = verify_hamiltonian(hs[i], vo);
    } catch (const DenseCapExceeded& e) {
      skipped[i] = e.what();
    }
  });
  std::vector<VerifyRecord> all;
  std::size_t failures = 0;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    if (!skipped[i].empty()) fmt::print(stderr, "skipped: {}\n", skipped[i]);
    for (const auto& r : per[i]) {
      failures += !r.pass;
      all.push_back(r);
    }
  }
  verify_csv(all).write(fs::path(cfg.out) / "verify.csv");
  for (const auto& r : all) {
    if (!r.pass) {
      fmt::print("FAIL {} {} K={} measured={:.6g} bound={:.6g}\n", r.label, r.check, r.K, r.measured,
                 r.bound);
    }
  }
  fmt::print("{} checks, {} failed, {} skipped\n", all.size(), failures,
             std::count_if(skipped.begin(), skipped.end(), [](const auto& s) { return !s.empty(); }));
  return failures ? kVerifyFailed : kOk;
}

int cmd_generate_family(std::size_t n, const std::string& coeffs, bool random, std::uint64_t seed,
                        const std::string& out) {
  std::vector<double> c;
  if (!coeffs.empty()) {
    for (const auto& s : split(coeffs, ',')) c.push_back(to_double(s));
  } else if (random) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0.1, 1.0);
    for (std::size_t j = 0; j < n; ++j) c.push_back(U(rng));
  }
  const Hamiltonian h = generate_family(n, c);
  if (out.empty() || out == "-") {
    std::cout << h.serialize();
  } else {
    save_hamiltonian_file(h, out);
  }
  return kOk;
}

int cmd_jw(const std::string& input, const std::string& out) {
  const FermionIntegrals f = load_integrals_file(input);
  Hamiltonian h = jordan_wigner(f);
  h.set_label(fs::path(input).stem().string());
  if (out.empty() || out == "-") {
    std::cout << h.serialize();
  } else {
    save_hamiltonian_file(h, out);
  }
  return kOk;
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--input,-i", cfg.inputs, "Hamiltonian files");
  sub->add_option("--scheme", cfg.schemes,
                  "comma list of original, refined2, refined3, refined4, modified");
  sub->add_option("--k-grid", cfg.k_grid, "K values: 1:40, 2:40:2 or 3,5,7");
  sub->add_option("--eps-grid", cfg.eps_grid, "target errors: 1e-2,1e-6 or 1e0:1e-20");
  sub->add_option("--t-mode", cfg.t_mode, "ln2 (t = ln2/alpha), n (t = qubits) or a number");
  sub->add_option("--extra-unitaries", cfg.extra_unitaries, "free (2^w - L - 1) or a count");
  sub->add_option("--dense-cap", cfg.dense_cap, "largest qubit count for dense work");
  sub->add_option("--out,-o", cfg.out, "output directory");
  sub->add_option("--seed", cfg.seed, "random seed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Anticommutation-aware error bounds and LCU plans for Pauli Hamiltonians"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* analyze_cmd = app.add_subcommand("analyze", "commutation structure and cancellation report");
  add_common(analyze_cmd, cfg);
  auto* ratios_cmd = app.add_subcommand("ratios", "error ratios against the original bound");
  add_common(ratios_cmd, cfg);
  auto* mink_cmd = app.add_subcommand("mink", "smallest K reaching each target error");
  add_common(mink_cmd, cfg);
  auto* schedule_cmd = app.add_subcommand("schedule", "segment plans, s values and gate costs");
  add_common(schedule_cmd, cfg);

  auto* verify_cmd = app.add_subcommand("verify", "dense checks of every bound and identity");
  add_common(verify_cmd, cfg);
  std::size_t random_count = 0;
  std::vector<int> families;
  bool corrupt = false;
  verify_cmd->add_option("--random", random_count, "number of seeded random Hamiltonians");
  verify_cmd->add_option("--family", families, "anticommuting family sizes");
  verify_cmd->add_flag("--corrupt-bound", corrupt, "shrink every bound to exercise the failure path");

  auto* family_cmd = app.add_subcommand("generate-family", "pairwise anticommuting family");
  std::size_t family_n = 0;
  std::string family_coeffs, family_out;
  bool family_random = false;
  std::uint64_t family_seed = 1;
  family_cmd->add_option("--n,-n", family_n, "number of qubits (and terms)")->required();
  family_cmd->add_option("--coefficients", family_coeffs, "comma list of coefficients");
  family_cmd->add_flag("--random", family_random, "random coefficients in [0.1, 1)");
  family_cmd->add_option("--seed", family_seed, "random seed");
  family_cmd->add_option("--out,-o", family_out, "output file (stdout when omitted)");

  auto* jw_cmd = app.add_subcommand("jw", "Jordan-Wigner transform of an integral file");
  std::string jw_input, jw_out;
  jw_cmd->add_option("--input,-i", jw_input, "integral file")->required();
  jw_cmd->add_option("--out,-o", jw_out, "output file (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*analyze_cmd) return cmd_analyze(cfg);
    if (*ratios_cmd) return cmd_ratios(cfg);
    if (*mink_cmd) return cmd_mink(cfg);
    if (*schedule_cmd) return cmd_schedule(cfg);
    if (*verify_cmd) return cmd_verify(cfg, random_count, families, corrupt);
    if (*family_cmd) return cmd_generate_family(family_n, family_coeffs, family_random, family_seed, family_out);
    if (*jw_cmd) return cmd_jw(jw_input, jw_out);
  } catch (const BudgetExceeded& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kBudget;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kInputError;
  }
  return kInputError;
}
