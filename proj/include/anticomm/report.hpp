#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "anticomm/anticommuting.hpp"
#include "anticomm/bounds.hpp"
#include "anticomm/lcu.hpp"
#include "anticomm/structure.hpp"

namespace anticomm {

/// Numbers are printed in the shortest form that round-trips exactly, so
/// identical runs give identical bytes.
std::string format_number(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
  void write(std::ostream& os) const;
  void write(const std::filesystem::path& path) const;
};

/// One analyze row: structure masses, q-values and the anticommuting profile.
struct AnalyzeRow {
  CancellationReport report;
  AnticommutingProfile profile;
};
CsvTable analyze_table(const std::vector<AnalyzeRow>& rows);
nlohmann::json to_json(const CancellationReport& r);
nlohmann::json to_json(const AnticommutingProfile& p);

/// Columns molecule_label, scheme, K, t, r, delta, epsilon, ratio_vs_original.
CsvTable ratio_csv(const std::vector<RatioRow>& rows);

/// "K ratio" columns for one label and scheme, with a comment header.
void write_ratio_dat(const std::vector<RatioRow>& rows, const std::string& label, Scheme scheme,
                     const std::filesystem::path& path);

struct MinKRow {
  std::string label;
  double epsilon = 0.0;
  double t = 0.0;
  std::vector<Scheme> schemes;
  std::vector<MinKResult> results;  // parallel to schemes
};
CsvTable mink_csv(const std::vector<MinKRow>& rows);

nlohmann::json to_json(const LcuPlan& plan, const SegmentSchedule& seg, const GateCost* cost);
nlohmann::json to_json(const ExactSchedule& s);

}  // namespace anticomm
