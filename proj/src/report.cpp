#include "anticomm/report.hpp"

#include <fstream>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

namespace anticomm {

std::string format_number(double v) { return fmt::format("{}", v); }

void CsvTable::add_row(std::vector<std::string> row) {
  if (row.size() != header.size()) {
    throw std::logic_error(fmt::format("csv row has {} fields, header has {}", row.size(), header.size()));
  }
  rows.push_back(std::move(row));
}

namespace {

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_line(std::ostream& os, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) os << ',';
    os << quote(fields[i]);
  }
  os << '\n';
}

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error(fmt::format("cannot write {}", path.string()));
  return f;
}

}  // namespace

void CsvTable::write(std::ostream& os) const {
  write_line(os, header);
  for (const auto& r : rows) write_line(os, r);
}

void CsvTable::write(const std::filesystem::path& path) const {
  auto f = open_out(path);
  write(f);
}

CsvTable analyze_table(const std::vector<AnalyzeRow>& rows) {
  CsvTable t;
  t.header = {"molecule_label", "n_qubits", "L", "alpha", "alpha_comm", "alpha_anti", "q2",
              "alpha3", "alpha3_method", "alpha3_r", "alpha3_mixed", "q3", "alpha4",
              "alpha4_method", "q4", "extra_unitaries", "e_epsilon", "epsilon_A",
              "epsilon_A_method", "pairwise_anticommuting"};
  for (const auto& row : rows) {
    const auto& r = row.report;
    t.add_row({r.label, std::to_string(r.n_qubits), std::to_string(r.L), format_number(r.alpha),
               format_number(r.alpha_comm), format_number(r.alpha_anti), format_number(r.q2),
               format_number(r.alpha3), to_string(r.alpha3_method), format_number(r.alpha3_r),
               format_number(r.alpha3_mixed), format_number(r.q3()), format_number(r.alpha4),
               to_string(r.alpha4_method), format_number(r.q4()), std::to_string(r.extra_unitaries),
               format_number(r.e_epsilon), format_number(row.profile.epsilon_A),
               row.profile.epsilon_method, row.profile.is_pairwise_anticommuting ? "1" : "0"});
  }
  return t;
}

nlohmann::json to_json(const CancellationReport& r) {
  nlohmann::json j;
  j["molecule_label"] = r.label;
  j["n_qubits"] = r.n_qubits;
  j["L"] = r.L;
  j["alpha"] = r.alpha;
  j["alpha_comm"] = r.alpha_comm;
  j["alpha_anti"] = r.alpha_anti;
  j["q2"] = r.q2;
  j["alpha3"] = r.alpha3;
  j["alpha3_method"] = to_string(r.alpha3_method);
  j["alpha3_classified"] = r.alpha3_classified;
  if (r.alpha3_symbolic) j["alpha3_symbolic"] = *r.alpha3_symbolic;
  j["alpha3_r"] = r.alpha3_r;
  j["alpha3_mixed"] = r.alpha3_mixed;
  j["q3"] = r.q3();
  j["alpha4"] = r.alpha4;
  j["alpha4_method"] = to_string(r.alpha4_method);
  j["q4"] = r.q4();
  j["extra_unitaries"] = r.extra_unitaries;
  j["e_epsilon"] = r.e_epsilon;
  return j;
}

nlohmann::json to_json(const AnticommutingProfile& p) {
  nlohmann::json j;
  j["is_pairwise_anticommuting"] = p.is_pairwise_anticommuting;
  j["alpha"] = p.alpha;
  j["beta_s"] = p.beta_s;
  j["epsilon_A"] = p.epsilon_A;
  j["epsilon_A_method"] = p.epsilon_method;
  if (p.is_pairwise_anticommuting) {
    nlohmann::json g = nlohmann::json::array();
    for (std::size_t m = 1; m < p.gamma0.size(); ++m) {
      g.push_back({{"m", m}, {"gamma0", p.gamma0[m]}, {"gamma", p.gamma[m]}});
    }
    j["gamma"] = g;
  }
  return j;
}

CsvTable ratio_csv(const std::vector<RatioRow>& rows) {
  CsvTable t;
  t.header = {"molecule_label", "scheme", "K", "t", "r", "delta", "epsilon", "ratio_vs_original"};
  for (const auto& r : rows) {
    t.add_row({r.label, to_string(r.scheme), std::to_string(r.K), format_number(r.t),
               std::to_string(r.r), format_number(r.delta), format_number(r.epsilon),
               format_number(r.ratio_vs_original)});
  }
  return t;
}

void write_ratio_dat(const std::vector<RatioRow>& rows, const std::string& label, Scheme scheme,
                     const std::filesystem::path& path) {
  auto f = open_out(path);
  f << "# " << label << ' ' << to_string(scheme) << "\n# K ratio_vs_original\n";
  for (const auto& r : rows) {
    if (r.label == label && r.scheme == scheme) {
      f << r.K << ' ' << format_number(r.ratio_vs_original) << '\n';
    }
  }
}

CsvTable mink_csv(const std::vector<MinKRow>& rows) {
  CsvTable t;
  t.header = {"molecule_label", "epsilon", "t", "r"};
  if (!rows.empty()) {
    for (Scheme s : rows.front().schemes) t.header.push_back("K_" + to_string(s));
  }
  for (const auto& row : rows) {
    std::vector<std::string> fields{row.label, format_number(row.epsilon), format_number(row.t),
                                    row.results.empty() ? "" : std::to_string(row.results[0].r)};
    for (const auto& res : row.results) fields.push_back(res.K > 0 ? std::to_string(res.K) : "");
    t.add_row(std::move(fields));
  }
  return t;
}

nlohmann::json to_json(const LcuPlan& plan, const SegmentSchedule& seg, const GateCost* cost) {
  nlohmann::json j;
  j["scheme"] = to_string(plan.scheme);
  j["K"] = plan.K;
  j["r"] = seg.r;
  j["tau"] = seg.tau;
  j["tau_re"] = seg.tau_re;
  j["t_segment"] = plan.t;
  j["alpha"] = plan.alpha;
  j["L"] = plan.L;
  j["n_qubits"] = plan.n_qubits;
  j["s"] = plan.s;
  j["order_weight"] = plan.order_weight;
  if (plan.modified) {
    const auto& b = *plan.modified;
    nlohmann::json gre = nlohmann::json::array(), gim = nlohmann::json::array();
    for (const auto& g : b.gamma) {
      gre.push_back(g.real());
      gim.push_back(g.imag());
    }
    nlohmann::json extra = nlohmann::json::array();
    for (std::size_t k = 0; k < b.extra.size(); ++k) {
      extra.push_back({{"op", b.extra[k].op.factors()},
                       {"weight", b.extra_weight[k]},
                       {"sign", b.extra_sign[k]}});
    }
    j["block"] = {{"gamma_re", gre},
                  {"gamma_im", gim},
                  {"identity_weight", b.identity_weight},
                  {"identity_sign", b.identity_sign},
                  {"extra", extra},
                  {"E_requested", b.E_requested},
                  {"e_epsilon", b.e_epsilon},
                  {"alpha3_residual", b.alpha3_residual}};
  }
  j["warnings"] = plan.warnings;
  if (cost) {
    j["gate_cost"] = {{"L", cost->L},
                      {"w", cost->w},
                      {"cnot_per_select", cost->cnot_per_select},
                      {"t_per_select", cost->t_per_select},
                      {"K", cost->K},
                      {"r", cost->r},
                      {"D", cost->D},
                      {"E", cost->E},
                      {"free_slots", cost->free_slots},
                      {"cost_parity", cost->cost_parity},
                      {"cnot_total", cost->cnot_total},
                      {"t_total", cost->t_total},
                      {"complexity_estimate", cost->complexity_estimate}};
  }
  return j;
}

nlohmann::json to_json(const ExactSchedule& s) {
  return {{"t", s.t},
          {"t1", s.t1},
          {"t_seg", s.t_seg},
          {"r", s.r},
          {"t_rest", s.t_rest},
          {"boost", s.boost},
          {"bisection", s.bisection},
          {"segment_time", s.segment_time},
          {"segment_s", s.segment_s}};
}

}  // namespace anticomm
