#include "anticomm/jordan_wigner.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <fmt/format.h>

#include "anticomm/errors.hpp"

namespace anticomm {

FermionIntegrals::FermionIntegrals(std::size_t n)
    : n_modes(n),
      one_body(Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n))),
      two_body(n * n * n * n, 0.0) {}

namespace {

PauliSum ladder(std::size_t n_modes, std::size_t p, double y_sign) {
  if (p >= n_modes) throw std::out_of_range(fmt::format("mode {} out of range", p));
  PauliString x_part(n_modes);
  PauliString y_part(n_modes);
  for (std::size_t q = 0; q < p; ++q) {
    x_part.set(q, 'Z');
    y_part.set(q, 'Z');
  }
  x_part.set(p, 'X');
  y_part.set(p, 'Y');
  PauliSum out(n_modes);
  out.add(x_part, 0.5);
  out.add(y_part, Complex(0.0, 0.5 * y_sign));
  return out;
}

}  // namespace

PauliSum annihilation(std::size_t n_modes, std::size_t p) { return ladder(n_modes, p, 1.0); }
PauliSum creation(std::size_t n_modes, std::size_t p) { return ladder(n_modes, p, -1.0); }

Hamiltonian jordan_wigner(const FermionIntegrals& f, const JordanWignerOptions& options) {
  const std::size_t n = f.n_modes;
  if (n == 0) throw std::invalid_argument("no fermionic modes");
  std::vector<PauliSum> a, ad;
  for (std::size_t p = 0; p < n; ++p) {
    a.push_back(annihilation(n, p));
    ad.push_back(creation(n, p));
  }
  PauliSum h(n);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      const double v = f.one_body(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q));
      if (v != 0.0) h.add(ad[p] * a[q], v);
    }
  }
  std::vector<PauliSum> ad_ad(n * n), a_a(n * n);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      ad_ad[p * n + q] = ad[p] * ad[q];
      a_a[p * n + q] = a[p] * a[q];
    }
  }
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t s = 0; s < n; ++s) {
          const double v = f.h2(p, q, r, s);
          if (v != 0.0) h.add(ad_ad[p * n + q] * a_a[r * n + s], 0.5 * v);
        }
      }
    }
  }
  std::vector<std::pair<double, PauliString>> terms;
  for (const auto& [p, c] : h.sorted_terms()) {
    if (std::abs(c.imag()) > options.imaginary_tolerance) {
      throw std::invalid_argument(fmt::format(
          "non-Hermitian integrals: coefficient of {} has imaginary part {:.3e}", p.factors(),
          c.imag()));
    }
    terms.emplace_back(c.real(), p);
  }
  return Hamiltonian::from_signed(n, terms, "jordan_wigner", options.ingest);
}

FermionIntegrals load_integrals(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  std::size_t n_modes = 0;
  struct Entry {
    std::vector<std::size_t> idx;
    double value;
    std::size_t line;
  };
  std::vector<Entry> entries;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      std::string comment = line.substr(hash + 1);
      std::istringstream cs(comment);
      std::string key;
      cs >> key;
      if (key == "modes:") {
        if (!(cs >> n_modes) || n_modes == 0) throw ParseError("bad modes header", line_no);
      }
      line.resize(hash);
    }
    std::istringstream ls(line);
    std::vector<std::string> tokens;
    for (std::string tok; ls >> tok;) tokens.push_back(tok);
    if (tokens.empty()) continue;
    if (tokens.size() != 3 && tokens.size() != 5) {
      throw ParseError("expected 'p q value' or 'p q r s value'", line_no);
    }
    Entry e{{}, 0.0, line_no};
    try {
      for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
        std::size_t used = 0;
        const long v = std::stol(tokens[i], &used);
        if (used != tokens[i].size() || v < 0) throw std::invalid_argument("index");
        e.idx.push_back(static_cast<std::size_t>(v));
      }
      std::size_t used = 0;
      e.value = std::stod(tokens.back(), &used);
      if (used != tokens.back().size()) throw std::invalid_argument("value");
    } catch (const std::exception&) {
      throw ParseError("malformed integral line", line_no);
    }
    entries.push_back(std::move(e));
  }
  if (n_modes == 0) throw ParseError("missing '# modes: N' header");
  FermionIntegrals f(n_modes);
  for (const auto& e : entries) {
    for (auto i : e.idx) {
      if (i >= n_modes) throw ParseError(fmt::format("index {} out of range", i), e.line);
    }
    if (e.idx.size() == 2) {
      f.one_body(static_cast<Eigen::Index>(e.idx[0]), static_cast<Eigen::Index>(e.idx[1])) +=
          e.value;
    } else {
      f.h2(e.idx[0], e.idx[1], e.idx[2], e.idx[3]) += e.value;
    }
  }
  return f;
}

FermionIntegrals load_integrals_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(fmt::format("cannot open '{}'", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_integrals(buf.str());
}

}  // namespace anticomm
