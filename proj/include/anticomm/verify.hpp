#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "anticomm/hamiltonian.hpp"
#include "anticomm/report.hpp"

namespace anticomm {

struct VerifyOptions {
  std::vector<int> Ks{2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
  std::size_t dense_cap = kDefaultDenseCap;
  /// Multiplies every bound before comparison; values below 1 exercise the
  /// failure path.
  double bound_scale = 1.0;
  /// Block encodings above this total dimension are skipped.
  std::size_t max_block_dim = 2048;
};

struct VerifyRecord {
  std::string label;
  std::string check;
  int K = 0;
  double t = 0.0;
  double measured = 0.0;
  double bound = 0.0;
  bool pass = true;
  std::string note;
};

/// Dense checks of every bound and identity on one Hamiltonian. Throws
/// DenseCapExceeded when n exceeds the cap.
std::vector<VerifyRecord> verify_hamiltonian(const Hamiltonian& h, const VerifyOptions& opts = {});

CsvTable verify_csv(const std::vector<VerifyRecord>& records);

}  // namespace anticomm
