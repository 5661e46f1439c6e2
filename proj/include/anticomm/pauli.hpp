#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace anticomm {

using Complex = std::complex<double>;

/// Dense complex matrix of dimension 2^n. Qubit 0 is the most significant
/// tensor factor, so Z0 X1 is kron(Z, X).
using DenseOperator = Eigen::MatrixXcd;

inline constexpr std::size_t kDefaultDenseCap = 12;

/// An n-qubit Pauli operator i^phase * P_0 (x) P_1 (x) ... in symplectic form.
///
/// Qubit q carries Pauli letter (x_q, z_q): (0,0)=I, (1,0)=X, (0,1)=Z,
/// (1,1)=Y. Y is tied to the other letters by Y = i X Z, so the letter
/// encoding itself carries no hidden phase and phase_exp is the whole
/// global phase.
class PauliString {
 public:
  PauliString() = default;
  /// Identity on n qubits.
  explicit PauliString(std::size_t n_qubits);

  /// Parses whitespace-separated factors such as "X3 Y0 Z12". An empty list
  /// is the identity. When n_qubits is 0 the width is 1 + the largest index.
  static PauliString parse(std::string_view text, std::size_t n_qubits = 0);
  /// Dense letter form, qubit 0 first, e.g. "XIZ".
  static PauliString from_letters(std::string_view letters);
  static PauliString single(std::size_t n_qubits, std::size_t qubit, char letter);

  std::size_t n_qubits() const { return n_qubits_; }
  unsigned phase_exp() const { return phase_; }
  bool x(std::size_t qubit) const;
  bool z(std::size_t qubit) const;
  char letter(std::size_t qubit) const;
  void set(std::size_t qubit, char letter);

  std::span<const std::uint64_t> x_words() const { return x_; }
  std::span<const std::uint64_t> z_words() const { return z_; }

  /// Number of non-identity factors.
  std::size_t weight() const;
  /// True when every factor is I (the phase is ignored).
  bool is_identity() const;
  /// Largest qubit index with a non-identity factor, or -1 for the identity.
  long max_index() const;

  PauliString with_phase(unsigned phase_exp) const;
  PauliString phase_normalized() const { return with_phase(0); }
  /// Same letters on a different width; throws if a factor would be lost.
  PauliString resized(std::size_t n_qubits) const;

  /// Factor form without the phase, e.g. "X0 Z3"; "" for the identity.
  std::string factors() const;
  /// Factor form with a phase prefix ("", "i*", "-", "-i*").
  std::string str() const;

  std::size_t hash() const;

  friend bool operator==(const PauliString& a, const PauliString& b) = default;
  /// Total order on (n_qubits, x words, z words, phase) for deterministic sorts.
  friend bool operator<(const PauliString& a, const PauliString& b);

 private:
  std::size_t n_qubits_ = 0;
  unsigned phase_ = 0;
  std::vector<std::uint64_t> x_;
  std::vector<std::uint64_t> z_;

  friend PauliString multiply(const PauliString& p, const PauliString& q);
};

struct PauliHash {
  std::size_t operator()(const PauliString& p) const { return p.hash(); }
};

/// Exact product p*q, phase included. Throws std::invalid_argument on a
/// width mismatch.
PauliString multiply(const PauliString& p, const PauliString& q);
inline PauliString operator*(const PauliString& p, const PauliString& q) {
  return multiply(p, q);
}

/// True iff pq = qp: even parity of x_p.z_q xor z_p.x_q.
bool commutes(const PauliString& p, const PauliString& q);

/// i^phase_exp as a complex number.
Complex phase_value(unsigned phase_exp);

/// Kronecker product of the single-qubit matrices times i^phase_exp.
/// Throws DenseCapExceeded above dense_cap qubits.
DenseOperator to_dense(const PauliString& p, std::size_t dense_cap = kDefaultDenseCap);

/// m += coeff * P, O(2^n) work.
void add_to_dense(const PauliString& p, Complex coeff, DenseOperator& m);

/// out += coeff * P * in, touching only the nonzero pattern of P.
void add_pauli_times(const PauliString& p, Complex coeff, const DenseOperator& in,
                     DenseOperator& out);

}  // namespace anticomm

template <>
struct std::hash<anticomm::PauliString> {
  std::size_t operator()(const anticomm::PauliString& p) const { return p.hash(); }
};
