#include "anticomm/pauli.hpp"

#include <bit>
#include <cctype>
#include <charconv>
#include <stdexcept>

#include <fmt/format.h>

#include "anticomm/errors.hpp"

namespace anticomm {

namespace {

constexpr std::size_t kWordBits = 64;

std::size_t word_count(std::size_t n_qubits) { return (n_qubits + kWordBits - 1) / kWordBits; }

void check_width(const PauliString& p, const PauliString& q) {
  if (p.n_qubits() != q.n_qubits()) {
    throw std::invalid_argument(
        fmt::format("Pauli width mismatch: {} vs {} qubits", p.n_qubits(), q.n_qubits()));
  }
}

struct IndexMasks {
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  unsigned y_count = 0;
};

// Masks in basis-index space: qubit q lives at bit (n - 1 - q).
IndexMasks index_masks(const PauliString& p) {
  IndexMasks m;
  const std::size_t n = p.n_qubits();
  for (std::size_t q = 0; q < n; ++q) {
    const std::uint64_t bit = std::uint64_t{1} << (n - 1 - q);
    const bool xq = p.x(q);
    const bool zq = p.z(q);
    if (xq) m.x |= bit;
    if (zq) m.z |= bit;
    if (xq && zq) ++m.y_count;
  }
  return m;
}

}  // namespace

PauliString::PauliString(std::size_t n_qubits)
    : n_qubits_(n_qubits), x_(word_count(n_qubits), 0), z_(word_count(n_qubits), 0) {}

PauliString PauliString::parse(std::string_view text, std::size_t n_qubits) {
  std::vector<std::pair<std::size_t, char>> factors;
  std::size_t pos = 0;
  std::size_t widest = 0;
  while (pos < text.size()) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos >= text.size()) break;
    std::size_t end = pos;
    while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
    std::string_view token = text.substr(pos, end - pos);
    pos = end;

    const char letter = token.front();
    if ((letter != 'X' && letter != 'Y' && letter != 'Z') || token.size() < 2) {
      throw ParseError(fmt::format("bad Pauli factor '{}'", token));
    }
    std::size_t index = 0;
    auto digits = token.substr(1);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), index);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) {
      throw ParseError(fmt::format("bad qubit index in factor '{}'", token));
    }
    factors.emplace_back(index, letter);
    widest = std::max(widest, index + 1);
  }
  if (n_qubits == 0) n_qubits = std::max<std::size_t>(widest, 1);
  if (widest > n_qubits) {
    throw ParseError(fmt::format("qubit index {} exceeds width {}", widest - 1, n_qubits));
  }
  PauliString p(n_qubits);
  for (auto [q, letter] : factors) {
    if (p.letter(q) != 'I') throw ParseError(fmt::format("qubit {} appears twice", q));
    p.set(q, letter);
  }
  return p;
}

PauliString PauliString::from_letters(std::string_view letters) {
  PauliString p(letters.size());
  for (std::size_t q = 0; q < letters.size(); ++q) p.set(q, letters[q]);
  return p;
}

PauliString PauliString::single(std::size_t n_qubits, std::size_t qubit, char letter) {
  PauliString p(n_qubits);
  p.set(qubit, letter);
  return p;
}

bool PauliString::x(std::size_t qubit) const {
  return (x_[qubit / kWordBits] >> (qubit % kWordBits)) & 1u;
}

bool PauliString::z(std::size_t qubit) const {
  return (z_[qubit / kWordBits] >> (qubit % kWordBits)) & 1u;
}

char PauliString::letter(std::size_t qubit) const {
  static constexpr char kLetters[4] = {'I', 'X', 'Z', 'Y'};
  return kLetters[(x(qubit) ? 1 : 0) | (z(qubit) ? 2 : 0)];
}

void PauliString::set(std::size_t qubit, char letter) {
  if (qubit >= n_qubits_) {
    throw std::out_of_range(fmt::format("qubit {} out of range for width {}", qubit, n_qubits_));
  }
  bool xb = false;
  bool zb = false;
  switch (letter) {
    case 'I': break;
    case 'X': xb = true; break;
    case 'Z': zb = true; break;
    case 'Y': xb = zb = true; break;
    default: throw std::invalid_argument(fmt::format("unknown Pauli letter '{}'", letter));
  }
  const std::uint64_t bit = std::uint64_t{1} << (qubit % kWordBits);
  auto& xw = x_[qubit / kWordBits];
  auto& zw = z_[qubit / kWordBits];
  xw = xb ? (xw | bit) : (xw & ~bit);
  zw = zb ? (zw | bit) : (zw & ~bit);
}

std::size_t PauliString::weight() const {
  std::size_t w = 0;
  for (std::size_t i = 0; i < x_.size(); ++i) w += std::popcount(x_[i] | z_[i]);
  return w;
}

bool PauliString::is_identity() const {
  for (std::size_t i = 0; i < x_.size(); ++i) {
    if (x_[i] | z_[i]) return false;
  }
  return true;
}

long PauliString::max_index() const {
  for (std::size_t i = x_.size(); i-- > 0;) {
    const std::uint64_t w = x_[i] | z_[i];
    if (w) return static_cast<long>(i * kWordBits + (kWordBits - 1 - std::countl_zero(w)));
  }
  return -1;
}

PauliString PauliString::with_phase(unsigned phase_exp) const {
  PauliString p = *this;
  p.phase_ = phase_exp & 3u;
  return p;
}

PauliString PauliString::resized(std::size_t n_qubits) const {
  if (max_index() >= static_cast<long>(n_qubits)) {
    throw std::invalid_argument(
        fmt::format("cannot shrink {} to {} qubits", factors(), n_qubits));
  }
  PauliString p(n_qubits);
  p.phase_ = phase_;
  for (std::size_t q = 0; q < std::min(n_qubits, n_qubits_); ++q) p.set(q, letter(q));
  return p;
}

std::string PauliString::factors() const {
  std::string out;
  for (std::size_t q = 0; q < n_qubits_; ++q) {
    const char l = letter(q);
    if (l == 'I') continue;
    if (!out.empty()) out += ' ';
    out += l;
    out += std::to_string(q);
  }
  return out;
}

std::string PauliString::str() const {
  static constexpr const char* kPrefix[4] = {"", "i*", "-", "-i*"};
  std::string body = factors();
  return std::string(kPrefix[phase_]) + (body.empty() ? "I" : body);
}

std::size_t PauliString::hash() const {
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ n_qubits_;
  auto mix = [&h](std::uint64_t v) {
    v *= 0xbf58476d1ce4e5b9ull;
    v ^= v >> 31;
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  };
  for (std::size_t i = 0; i < x_.size(); ++i) {
    mix(x_[i]);
    mix(z_[i] ^ 0x94d049bb133111ebull);
  }
  mix(phase_);
  return static_cast<std::size_t>(h);
}

bool operator<(const PauliString& a, const PauliString& b) {
  if (a.n_qubits_ != b.n_qubits_) return a.n_qubits_ < b.n_qubits_;
  if (a.x_ != b.x_) return a.x_ < b.x_;
  if (a.z_ != b.z_) return a.z_ < b.z_;
  return a.phase_ < b.phase_;
}

PauliString multiply(const PauliString& p, const PauliString& q) {
  check_width(p, q);
  PauliString out(p.n_qubits_);
  // Per qubit, the cyclic products XY, YZ, ZX contribute +i and the reverse
  // order -i (with Y = iXZ).
  long log_i = static_cast<long>(p.phase_) + static_cast<long>(q.phase_);
  for (std::size_t i = 0; i < p.x_.size(); ++i) {
    const std::uint64_t x1 = p.x_[i], z1 = p.z_[i], x2 = q.x_[i], z2 = q.z_[i];
    const std::uint64_t plus = (x1 & ~z1 & x2 & z2) | (x1 & z1 & ~x2 & z2) | (~x1 & z1 & x2 & ~z2);
    const std::uint64_t minus = (x1 & z1 & x2 & ~z2) | (~x1 & z1 & x2 & z2) | (x1 & ~z1 & ~x2 & z2);
    log_i += std::popcount(plus);
    log_i -= std::popcount(minus);
    out.x_[i] = x1 ^ x2;
    out.z_[i] = z1 ^ z2;
  }
  out.phase_ = static_cast<unsigned>(((log_i % 4) + 4) % 4);
  return out;
}

bool commutes(const PauliString& p, const PauliString& q) {
  check_width(p, q);
  unsigned parity = 0;
  auto xp = p.x_words(), zp = p.z_words(), xq = q.x_words(), zq = q.z_words();
  for (std::size_t i = 0; i < xp.size(); ++i) {
    parity ^= static_cast<unsigned>(std::popcount((xp[i] & zq[i]) ^ (zp[i] & xq[i]))) & 1u;
  }
  return parity == 0;
}

Complex phase_value(unsigned phase_exp) {
  switch (phase_exp & 3u) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

DenseOperator to_dense(const PauliString& p, std::size_t dense_cap) {
  if (p.n_qubits() > dense_cap) {
    throw DenseCapExceeded(
        fmt::format("dense conversion of {} qubits exceeds cap {}", p.n_qubits(), dense_cap));
  }
  const std::size_t dim = std::size_t{1} << p.n_qubits();
  DenseOperator m = DenseOperator::Zero(dim, dim);
  const IndexMasks masks = index_masks(p);
  const Complex base = phase_value(p.phase_exp() + masks.y_count);
  for (std::size_t col = 0; col < dim; ++col) {
    const std::size_t row = col ^ masks.x;
    const bool flip = std::popcount(masks.z & col) & 1;
    m(row, col) = flip ? -base : base;
  }
  return m;
}

void add_to_dense(const PauliString& p, Complex coeff, DenseOperator& m) {
  const IndexMasks masks = index_masks(p);
  const Complex base = coeff * phase_value(p.phase_exp() + masks.y_count);
  const auto dim = static_cast<std::size_t>(m.rows());
  for (std::size_t col = 0; col < dim; ++col) {
    const bool flip = std::popcount(masks.z & col) & 1;
    m(col ^ masks.x, col) += flip ? -base : base;
  }
}

void add_pauli_times(const PauliString& p, Complex coeff, const DenseOperator& in,
                     DenseOperator& out) {
  const IndexMasks masks = index_masks(p);
  const Complex base = coeff * phase_value(p.phase_exp() + masks.y_count);
  const auto dim = static_cast<std::size_t>(in.rows());
  for (std::size_t row = 0; row < dim; ++row) {
    const std::size_t col = row ^ masks.x;
    const bool flip = std::popcount(masks.z & col) & 1;
    out.row(row) += (flip ? -base : base) * in.row(col);
  }
}

}  // namespace anticomm
