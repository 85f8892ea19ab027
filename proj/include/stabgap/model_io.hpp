#pragma once

#include <cctype>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "stabgap/errors.hpp"
#include "stabgap/ordering.hpp"
#include "stabgap/pauli.hpp"
#include "stabgap/rational.hpp"
#include "stabgap/stabilizer_model.hpp"

namespace stabgap {

/// Parsed .stab file: the model plus optional descriptive metadata.
struct ModelDocument {
  StabilizerModel model;
  std::string name;
  std::string lattice;
};

namespace detail {

struct Token {
  std::string_view text;
  std::size_t column = 0;  // 1-based
};

inline std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

inline std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

inline std::size_t parse_count(const Token& t, std::size_t line) {
  std::size_t value = 0;
  if (t.text.empty()) throw ParseError("expected a nonnegative integer", line, t.column);
  for (std::size_t i = 0; i < t.text.size(); ++i) {
    const char c = t.text[i];
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw ParseError("expected a nonnegative integer, got '" + std::string(t.text) + "'", line, t.column + i);
    value = value * 10 + static_cast<std::size_t>(c - '0');
    if (value > (std::size_t{1} << 40)) throw ParseError("integer too large", line, t.column);
  }
  return value;
}

}  // namespace detail

/// Parses the line-oriented .stab format:
///
///   # comment
///   qubits <N>
///   term <J> <pauli-string>
///
/// `<J>` is a decimal or `p/q` rational; `<pauli-string>` has exactly N
/// characters from {I,X,Y,Z}. Optional `name <text>` and `lattice <text>`
/// lines carry metadata. Term order defines the generator index.
inline ModelDocument parse_model_document(std::string_view text) {
  ModelDocument doc;
  std::optional<std::size_t> n;
  std::vector<PauliOperator> gens;
  std::vector<Rational> couplings;
  std::size_t line_no = 0;
  for (auto line : detail::split_lines(text)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    const auto toks = detail::tokenize(line);
    if (toks.empty()) continue;
    const auto& key = toks[0].text;
    auto rest_of_line = [&](std::size_t from) {
      return std::string(line.substr(toks[from].column - 1));
    };
    if (key == "qubits") {
      if (n) throw ParseError("duplicate 'qubits' line", line_no, toks[0].column);
      if (toks.size() != 2) throw ParseError("expected 'qubits <N>'", line_no, toks[0].column);
      n = detail::parse_count(toks[1], line_no);
      if (*n == 0) throw ParseError("qubit count must be positive", line_no, toks[1].column);
    } else if (key == "term") {
      if (!n) throw ParseError("'term' before 'qubits'", line_no, toks[0].column);
      if (toks.size() != 3) throw ParseError("expected 'term <J> <pauli-string>'", line_no, toks[0].column);
      Rational j;
      try {
        j = Rational::parse(toks[1].text);
      } catch (const ValidationError& e) {
        throw ParseError(e.what(), line_no, toks[1].column);
      }
      if (j.sign() <= 0) throw ParseError("coupling must be positive, got " + j.str(), line_no, toks[1].column);
      const auto& ps = toks[2].text;
      for (std::size_t i = 0; i < ps.size(); ++i) {
        const char c = ps[i];
        if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z')
          throw ParseError(std::string("invalid Pauli character '") + c + "'", line_no, toks[2].column + i);
      }
      if (ps.size() != *n)
        throw ParseError("Pauli string has length " + std::to_string(ps.size()) + ", expected " + std::to_string(*n),
                         line_no, toks[2].column);
      gens.push_back(PauliOperator::from_string(ps));
      couplings.push_back(j);
    } else if (key == "name") {
      if (toks.size() < 2) throw ParseError("expected 'name <text>'", line_no, toks[0].column);
      doc.name = rest_of_line(1);
      while (!doc.name.empty() && std::isspace(static_cast<unsigned char>(doc.name.back()))) doc.name.pop_back();
    } else if (key == "lattice") {
      if (toks.size() < 2) throw ParseError("expected 'lattice <text>'", line_no, toks[0].column);
      doc.lattice = rest_of_line(1);
      while (!doc.lattice.empty() && std::isspace(static_cast<unsigned char>(doc.lattice.back())))
        doc.lattice.pop_back();
    } else {
      throw ParseError("unknown directive '" + std::string(key) + "'", line_no, toks[0].column);
    }
  }
  if (!n) throw ParseError("missing 'qubits' line", line_no, 0);
  if (gens.empty()) throw ParseError("model has no terms", line_no, 0);
  doc.model = StabilizerModel(*n, std::move(gens), std::move(couplings));
  return doc;
}

inline StabilizerModel parse_model(std::string_view text) { return parse_model_document(text).model; }

/// Byte-deterministic .stab serialization with canonical rational couplings.
inline std::string serialize_model(const StabilizerModel& model, std::string_view name = {},
                                   std::string_view lattice = {}) {
  std::ostringstream os;
  os << "# stab-format 1\n";
  if (!name.empty()) os << "name " << name << "\n";
  if (!lattice.empty()) os << "lattice " << lattice << "\n";
  os << "qubits " << model.n_qubits() << "\n";
  for (std::size_t k = 0; k < model.n_generators(); ++k)
    os << "term " << model.coupling(k).str() << " " << model.generator(k).str() << "\n";
  return os.str();
}

inline std::string serialize_document(const ModelDocument& doc) {
  return serialize_model(doc.model, doc.name, doc.lattice);
}

/// Link indexing of the L x L torus: horizontal link (r,c)-(r,c+1) and
/// vertical link (r,c)-(r+1,c), coordinates taken mod L.
struct ToricLayout {
  std::size_t L = 0;

  std::size_t n_qubits() const noexcept { return 2 * L * L; }
  std::size_t wrap(std::ptrdiff_t v) const noexcept {
    const auto l = static_cast<std::ptrdiff_t>(L);
    return static_cast<std::size_t>(((v % l) + l) % l);
  }
  std::size_t horizontal(std::ptrdiff_t r, std::ptrdiff_t c) const noexcept { return wrap(r) * L + wrap(c); }
  std::size_t vertical(std::ptrdiff_t r, std::ptrdiff_t c) const noexcept { return L * L + wrap(r) * L + wrap(c); }
};

/// Kitaev toric code on an L x L torus: L^2 vertex terms (Z on the four
/// incident links) followed by L^2 plaquette terms (X on the four boundary
/// links), all with J = 1. N = 2L^2 and the rank is 2L^2 - 2.
inline StabilizerModel build_toric(std::size_t L) {
  if (L < 2) throw ValidationError("toric code needs L >= 2");
  const ToricLayout t{L};
  const std::size_t n = t.n_qubits();
  std::vector<PauliOperator> gens;
  const auto l = static_cast<std::ptrdiff_t>(L);
  for (std::ptrdiff_t r = 0; r < l; ++r)
    for (std::ptrdiff_t c = 0; c < l; ++c) {
      PauliOperator g(n);
      for (auto q : {t.horizontal(r, c), t.horizontal(r, c - 1), t.vertical(r, c), t.vertical(r - 1, c)})
        g.set(q, LocalPauli::Z);
      gens.push_back(std::move(g));
    }
  for (std::ptrdiff_t r = 0; r < l; ++r)
    for (std::ptrdiff_t c = 0; c < l; ++c) {
      PauliOperator g(n);
      for (auto q : {t.horizontal(r, c), t.horizontal(r + 1, c), t.vertical(r, c), t.vertical(r, c + 1)})
        g.set(q, LocalPauli::X);
      gens.push_back(std::move(g));
    }
  std::vector<Rational> couplings(gens.size(), Rational(1));
  return StabilizerModel(n, std::move(gens), std::move(couplings));
}

/// Nearest-neighbour Z Z Ising model with J = 1 on a chain (dims = 1) or an
/// L x L square lattice (dims = 2), site (r,c) -> r*L + c. Periodic lattices
/// keep every bond, including repeated ones when L = 2.
inline StabilizerModel build_ising(int dims, std::size_t L, bool periodic) {
  if (dims != 1 && dims != 2) throw ValidationError("Ising dimension must be 1 or 2");
  if (L < 2) throw ValidationError("Ising model needs L >= 2");
  const std::size_t n = dims == 1 ? L : L * L;
  std::vector<PauliOperator> gens;
  auto bond = [&](std::size_t a, std::size_t b) {
    PauliOperator g(n);
    g.set(a, LocalPauli::Z);
    g.set(b, LocalPauli::Z);
    gens.push_back(std::move(g));
  };
  if (dims == 1) {
    for (std::size_t i = 0; i + 1 < L; ++i) bond(i, i + 1);
    if (periodic) bond(L - 1, 0);
  } else {
    for (std::size_t r = 0; r < L; ++r)
      for (std::size_t c = 0; c < L; ++c) {
        const std::size_t s = r * L + c;
        if (c + 1 < L)
          bond(s, r * L + c + 1);
        else if (periodic)
          bond(s, r * L);
        if (r + 1 < L)
          bond(s, (r + 1) * L + c);
        else if (periodic)
          bond(s, c);
      }
  }
  std::vector<Rational> couplings(gens.size(), Rational(1));
  return StabilizerModel(n, std::move(gens), std::move(couplings));
}

/// Side length L if the model is exactly build_toric(L), otherwise nullopt.
inline std::optional<std::size_t> detect_toric(const StabilizerModel& model) {
  const auto half = static_cast<std::size_t>(std::llround(std::sqrt(model.n_qubits() / 2.0)));
  if (half < 2 || 2 * half * half != model.n_qubits()) return std::nullopt;
  if (build_toric(half) == model) return half;
  return std::nullopt;
}

/// Two-pass toric ordering. Z factors: vertical links column by column
/// (top to bottom, columns left to right), then horizontal links row by
/// row (left to right, rows top to bottom). X factors: the same traversal
/// with the two link families exchanged.
inline SiteOrdering toric_zx_ordering(std::size_t L, bool swap_passes = false) {
  const ToricLayout t{L};
  std::vector<Slot> slots;
  const auto l = static_cast<std::ptrdiff_t>(L);
  auto columns = [&](bool vertical_links, Axis axis) {
    for (std::ptrdiff_t c = 0; c < l; ++c)
      for (std::ptrdiff_t r = 0; r < l; ++r)
        slots.push_back({vertical_links ? t.vertical(r, c) : t.horizontal(r, c), axis});
  };
  auto rows = [&](bool vertical_links, Axis axis) {
    for (std::ptrdiff_t r = 0; r < l; ++r)
      for (std::ptrdiff_t c = 0; c < l; ++c)
        slots.push_back({vertical_links ? t.vertical(r, c) : t.horizontal(r, c), axis});
  };
  const bool z_first_vertical = !swap_passes;
  columns(z_first_vertical, Axis::Z);
  rows(!z_first_vertical, Axis::Z);
  columns(!z_first_vertical, Axis::X);
  rows(z_first_vertical, Axis::X);
  return SiteOrdering(t.n_qubits(), std::move(slots));
}

/// All Z slots in site order, then all X slots in site order.
inline SiteOrdering lexicographic_zx_ordering(std::size_t n) {
  std::vector<Slot> slots;
  for (std::size_t j = 0; j < n; ++j) slots.push_back({j, Axis::Z});
  for (std::size_t j = 0; j < n; ++j) slots.push_back({j, Axis::X});
  return SiteOrdering(n, std::move(slots));
}

/// Site by site, Z slot immediately followed by the X slot.
inline SiteOrdering site_major_ordering(std::size_t n) {
  std::vector<Slot> slots;
  for (std::size_t j = 0; j < n; ++j) {
    slots.push_back({j, Axis::Z});
    slots.push_back({j, Axis::X});
  }
  return SiteOrdering(n, std::move(slots));
}

/// Names: toric-zx, toric-xz (passes exchanged), lexicographic-zx (alias lex-zx), site-major.
inline SiteOrdering builtin_ordering(std::string_view name, const StabilizerModel& model) {
  if (name == "toric-zx" || name == "toric-xz") {
    const auto L = detect_toric(model);
    if (!L) throw ValidationError("ordering '" + std::string(name) + "' needs a toric-code model built by build_toric");
    return toric_zx_ordering(*L, name == "toric-xz");
  }
  if (name == "lexicographic-zx" || name == "lex-zx") return lexicographic_zx_ordering(model.n_qubits());
  if (name == "site-major") return site_major_ordering(model.n_qubits());
  throw ValidationError("unknown builtin ordering '" + std::string(name) + "'");
}

/// Parses a .ord file: one `slot <site-index> <Z|X>` per line, 2N lines.
inline SiteOrdering parse_ordering(std::string_view text, const StabilizerModel& model) {
  std::vector<Slot> slots;
  std::size_t line_no = 0;
  for (auto line : detail::split_lines(text)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    const auto toks = detail::tokenize(line);
    if (toks.empty()) continue;
    if (toks[0].text != "slot" || toks.size() != 3)
      throw ParseError("expected 'slot <site-index> <Z|X>'", line_no, toks[0].column);
    const std::size_t site = detail::parse_count(toks[1], line_no);
    if (site >= model.n_qubits()) throw ParseError("site index out of range", line_no, toks[1].column);
    Axis axis;
    if (toks[2].text == "Z")
      axis = Axis::Z;
    else if (toks[2].text == "X")
      axis = Axis::X;
    else
      throw ParseError("axis must be Z or X", line_no, toks[2].column);
    slots.push_back({site, axis});
  }
  return SiteOrdering(model.n_qubits(), std::move(slots));
}

inline std::string serialize_ordering(const SiteOrdering& ordering) {
  std::ostringstream os;
  for (const auto& s : ordering.slots()) os << "slot " << s.site << " " << to_char(s.axis) << "\n";
  return os.str();
}

/// Parses a custom rate table: one `<omega> <rate>` pair per line, omega an
/// exact rational, rate a positive decimal.
inline std::map<Rational, double> parse_rate_table(std::string_view text) {
  std::map<Rational, double> table;
  std::size_t line_no = 0;
  for (auto line : detail::split_lines(text)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    const auto toks = detail::tokenize(line);
    if (toks.empty()) continue;
    if (toks.size() != 2) throw ParseError("expected '<omega> <rate>'", line_no, toks[0].column);
    Rational w;
    try {
      w = Rational::parse(toks[0].text);
    } catch (const ValidationError& e) {
      throw ParseError(e.what(), line_no, toks[0].column);
    }
    const std::string rs(toks[1].text);
    std::size_t used = 0;
    double rate = 0.0;
    try {
      rate = std::stod(rs, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != rs.size() || !(rate > 0.0) || !std::isfinite(rate))
      throw ParseError("rate must be a positive number, got '" + rs + "'", line_no, toks[1].column);
    if (!table.emplace(w, rate).second)
      throw ParseError("duplicate entry for omega = " + w.str(), line_no, toks[0].column);
  }
  return table;
}

}  // namespace stabgap
