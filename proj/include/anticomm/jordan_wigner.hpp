#pragma once

#include <cstddef>
#include <filesystem>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "anticomm/hamiltonian.hpp"
#include "anticomm/pauli_sum.hpp"

namespace anticomm {

/// Real second-quantized integrals for
///   H = sum_pq h_pq a_p^+ a_q + 1/2 sum_pqrs h_pqrs a_p^+ a_q^+ a_r a_s.
struct FermionIntegrals {
  explicit FermionIntegrals(std::size_t n_modes);

  std::size_t n_modes;
  Eigen::MatrixXd one_body;
  std::vector<double> two_body;  // row-major [p][q][r][s]

  double& h2(std::size_t p, std::size_t q, std::size_t r, std::size_t s) {
    return two_body[((p * n_modes + q) * n_modes + r) * n_modes + s];
  }
  double h2(std::size_t p, std::size_t q, std::size_t r, std::size_t s) const {
    return two_body[((p * n_modes + q) * n_modes + r) * n_modes + s];
  }
};

/// a_p = (X_p + iY_p)/2 (x) Z_{p-1} ... Z_0, i.e. |0><1| on mode p.
PauliSum annihilation(std::size_t n_modes, std::size_t p);
PauliSum creation(std::size_t n_modes, std::size_t p);

struct JordanWignerOptions {
  double imaginary_tolerance = 1e-10;
  IngestOptions ingest;
};

/// Maps the integrals to a qubit Hamiltonian. Throws std::invalid_argument
/// when an imaginary coefficient survives (non-Hermitian input) or when the
/// result is identically zero.
Hamiltonian jordan_wigner(const FermionIntegrals& f, const JordanWignerOptions& options = {});

/// Integral text format: "# modes: N" header, then "p q value" (one-body)
/// and "p q r s value" (two-body) lines; '#' starts a comment.
FermionIntegrals load_integrals(std::string_view text);
FermionIntegrals load_integrals_file(const std::filesystem::path& path);

}  // namespace anticomm
