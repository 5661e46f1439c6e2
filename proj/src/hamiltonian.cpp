#include "anticomm/hamiltonian.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include <fmt/format.h>

#include "anticomm/errors.hpp"
#include "anticomm/parallel.hpp"

namespace anticomm {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool starts_with_ci(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(s[i])) != prefix[i]) return false;
  }
  return true;
}

}  // namespace

Hamiltonian::Hamiltonian(std::size_t n_qubits, std::vector<Term> terms, std::string label)
    : n_qubits_(n_qubits), terms_(std::move(terms)), label_(std::move(label)) {
  if (terms_.empty()) throw std::invalid_argument("Hamiltonian needs at least one term");
  std::unordered_map<PauliString, std::size_t, PauliHash> seen;
  for (std::size_t l = 0; l < terms_.size(); ++l) {
    const Term& t = terms_[l];
    if (!(t.alpha > 0.0) || !std::isfinite(t.alpha)) {
      throw std::invalid_argument(fmt::format("term {} has non-positive coefficient {}", l, t.alpha));
    }
    if (t.op.n_qubits() != n_qubits_) {
      throw std::invalid_argument(fmt::format("term {} has width {} (expected {})", l,
                                              t.op.n_qubits(), n_qubits_));
    }
    if (t.op.phase_exp() != 0) {
      throw std::invalid_argument(fmt::format("term {} carries a phase", l));
    }
    if (!seen.emplace(t.op, l).second) {
      throw std::invalid_argument(fmt::format("operator {} appears twice", t.op.factors()));
    }
  }
}

Hamiltonian Hamiltonian::from_signed(std::size_t n_qubits,
                                     const std::vector<std::pair<double, PauliString>>& terms,
                                     std::string label, const IngestOptions& options) {
  std::vector<PauliString> order;
  std::unordered_map<PauliString, double, PauliHash> sums;
  for (const auto& [c, p] : terms) {
    double sign = 1.0;
    switch (p.phase_exp()) {
      case 0: break;
      case 2: sign = -1.0; break;
      default:
        throw std::invalid_argument(
            fmt::format("term {} has an imaginary phase; coefficients must be real", p.str()));
    }
    const PauliString key = p.resized(n_qubits).phase_normalized();
    auto [it, inserted] = sums.emplace(key, 0.0);
    if (inserted) order.push_back(key);
    it->second += sign * c;
  }
  std::vector<Term> kept;
  for (const auto& p : order) {
    const double c = sums.at(p);
    if (!(std::abs(c) >= options.drop_tolerance)) continue;
    kept.push_back(Term{std::abs(c), p, c < 0.0});
  }
  if (kept.empty()) throw std::invalid_argument("Hamiltonian is identically zero");
  return Hamiltonian(n_qubits, std::move(kept), std::move(label));
}

double Hamiltonian::alpha() const {
  KahanSum s;
  for (const auto& t : terms_) s.add(t.alpha);
  return s.value();
}

double Hamiltonian::alpha_squared_sum() const {
  KahanSum s;
  for (const auto& t : terms_) s.add(t.alpha * t.alpha);
  return s.value();
}

std::size_t Hamiltonian::max_weight() const {
  std::size_t w = 0;
  for (const auto& t : terms_) w = std::max(w, t.op.weight());
  return w;
}

long Hamiltonian::find(const PauliString& p) const {
  const PauliString key = p.phase_normalized();
  for (std::size_t l = 0; l < terms_.size(); ++l) {
    if (terms_[l].op == key) return static_cast<long>(l);
  }
  return -1;
}

DenseOperator Hamiltonian::to_dense(std::size_t dense_cap) const {
  if (n_qubits_ > dense_cap) {
    throw DenseCapExceeded(
        fmt::format("dense Hamiltonian of {} qubits exceeds cap {}", n_qubits_, dense_cap));
  }
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n_qubits_);
  DenseOperator m = DenseOperator::Zero(dim, dim);
  for (const auto& t : terms_) add_to_dense(t.op, t.signed_coefficient(), m);
  return m;
}

std::string Hamiltonian::serialize() const {
  std::string out = fmt::format("# qubits: {}\n", n_qubits_);
  if (!label_.empty()) out += fmt::format("# label: {}\n", label_);
  for (const auto& t : terms_) {
    const std::string f = t.op.factors();
    out += fmt::format("{:.17g}{}{}\n", t.signed_coefficient(), f.empty() ? "" : " ", f);
  }
  return out;
}

Hamiltonian load_hamiltonian(std::string_view text, std::string label,
                             const IngestOptions& options) {
  std::size_t header_qubits = 0;
  std::size_t widest = 0;
  std::vector<std::pair<double, PauliString>> raw;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::string_view body = trim(line.substr(1));
      if (starts_with_ci(body, "qubits:")) {
        std::string_view v = trim(body.substr(7));
        auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), header_qubits);
        if (ec != std::errc() || ptr != v.data() + v.size() || header_qubits == 0) {
          throw ParseError(fmt::format("bad qubit header '{}'", line), line_no);
        }
      } else if (starts_with_ci(body, "label:") && label.empty()) {
        label = std::string(trim(body.substr(6)));
      }
      continue;
    }
    const auto split = line.find_first_of(" \t");
    std::string_view coeff_text = line.substr(0, split);
    std::string_view factor_text =
        split == std::string_view::npos ? std::string_view{} : line.substr(split + 1);
    double c = 0.0;
    if (!coeff_text.empty() && coeff_text.front() == '+') coeff_text.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(coeff_text.data(), coeff_text.data() + coeff_text.size(), c);
    if (ec != std::errc() || ptr != coeff_text.data() + coeff_text.size() || !std::isfinite(c)) {
      throw ParseError(fmt::format("bad coefficient '{}'", coeff_text), line_no);
    }
    try {
      PauliString p = PauliString::parse(factor_text, 4096);
      widest = std::max<std::size_t>(widest, static_cast<std::size_t>(p.max_index() + 1));
      raw.emplace_back(c, std::move(p));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  if (raw.empty()) throw ParseError("no terms found");
  if (header_qubits != 0 && widest > header_qubits) {
    throw ParseError(fmt::format("factor index {} exceeds header width {}", widest - 1,
                                 header_qubits));
  }
  const std::size_t n = header_qubits != 0 ? header_qubits : std::max<std::size_t>(widest, 1);
  std::vector<std::pair<double, PauliString>> sized;
  sized.reserve(raw.size());
  for (auto& [c, p] : raw) sized.emplace_back(c, p.resized(n));
  return Hamiltonian::from_signed(n, sized, std::move(label), options);
}

Hamiltonian load_hamiltonian_file(const std::filesystem::path& path, const IngestOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(fmt::format("cannot open '{}'", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    Hamiltonian h = load_hamiltonian(buf.str(), {}, options);
    if (h.label().empty()) h.set_label(path.stem().string());
    return h;
  } catch (const ParseError& e) {
    throw ParseError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

void save_hamiltonian_file(const Hamiltonian& h, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
  out << h.serialize();
}

}  // namespace anticomm
