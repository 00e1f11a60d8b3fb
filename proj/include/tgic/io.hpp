#pragma once
// Instance and code files; codeword rendering.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "tgic/error.hpp"
#include "tgic/field.hpp"
#include "tgic/model.hpp"
#include "tgic/verify.hpp"

namespace tgic {

namespace detail {

inline std::string strip_comment(std::string line) {
  if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
  while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
  std::size_t k = 0;
  while (k < line.size() && std::isspace(static_cast<unsigned char>(line[k]))) ++k;
  return line.substr(k);
}

inline std::uint64_t parse_uint(const std::string& tok, std::size_t line, const char* what) {
  if (tok.empty() || tok.size() > 9) throw ValidationError(std::string("bad ") + what + " '" + tok + "'", line);
  for (char c : tok)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw ValidationError(std::string("bad ") + what + " '" + tok + "'", line);
  return std::stoull(tok);
}

inline std::vector<std::size_t> parse_indices(std::istringstream& in, std::size_t line, std::size_t m,
                                              const char* what) {
  std::vector<std::size_t> v;
  std::string tok;
  while (in >> tok) {
    auto x = parse_uint(tok, line, what);
    if (x < 1 || x > m) throw ValidationError(std::string(what) + " index " + tok + " out of range 1.." + std::to_string(m), line);
    if (!v.empty() && x <= v.back())
      throw ValidationError(std::string(what) + " indices must be strictly increasing", line);
    v.push_back(static_cast<std::size_t>(x));
  }
  return v;
}

inline void append_list(std::ostringstream& os, const std::vector<std::size_t>& v) {
  for (auto x : v) os << ' ' << x;
}

}  // namespace detail

/// Grammar: `q <int>`, `m <int>`, `M1 <indices>`, `M2 <indices>`, then
/// `r <demand> | <side>` per receiver. `#` comments, blank lines ignored.
inline TgicpInstance parse_instance(std::string_view text) {
  TgicpInstance inst;
  std::istringstream all{std::string(text)};
  std::string raw;
  std::size_t lineno = 0, stage = 0;
  std::vector<std::size_t> receiver_line;
  while (std::getline(all, raw)) {
    ++lineno;
    std::string line = detail::strip_comment(raw);
    if (line.empty()) continue;
    std::istringstream in(line);
    std::string key;
    in >> key;
    static const char* kOrder[] = {"q", "m", "M1", "M2"};
    if (stage < 4) {
      if (key != kOrder[stage])
        throw ValidationError(std::string("expected '") + kOrder[stage] + "' line, found '" + key + "'", lineno);
      if (stage < 2) {
        std::string tok, extra;
        if (!(in >> tok) || (in >> extra)) throw ValidationError("expected one integer after '" + key + "'", lineno);
        auto v = detail::parse_uint(tok, lineno, key.c_str());
        if (stage == 0) {
          if (v < 2 || v > Field::kMaxOrder || !Field::is_prime(static_cast<std::uint32_t>(v)))
            throw ValidationError("field order " + tok + " is not a supported prime", lineno);
          inst.q = static_cast<std::uint32_t>(v);
        } else {
          if (v > 4096) throw ValidationError("m too large", lineno);
          inst.m = static_cast<std::size_t>(v);
        }
      } else {
        (stage == 2 ? inst.M1 : inst.M2) = detail::parse_indices(in, lineno, inst.m, key.c_str());
      }
      ++stage;
      continue;
    }
    if (key != "r") throw ValidationError("expected receiver line 'r <demand> | <side>'", lineno);
    std::string dem, bar;
    if (!(in >> dem)) throw ValidationError("receiver without demand", lineno);
    if (!(in >> bar) || bar != "|") throw ValidationError("expected '|' after the demand", lineno);
    Receiver r;
    auto d = detail::parse_uint(dem, lineno, "demand");
    if (d < 1 || d > inst.m) throw ValidationError("demand " + dem + " out of range 1.." + std::to_string(inst.m), lineno);
    r.demand = static_cast<std::size_t>(d);
    r.side = detail::parse_indices(in, lineno, inst.m, "side information");
    if (std::binary_search(r.side.begin(), r.side.end(), r.demand))
      throw ValidationError("receiver already knows its demand", lineno);
    inst.receivers.push_back(std::move(r));
    receiver_line.push_back(lineno);
  }
  if (stage < 4) throw ValidationError("incomplete header: missing q, m, M1 or M2", lineno);
  try {
    inst.validate();
  } catch (const ValidationError& e) {
    const std::size_t at = e.line() && e.line() <= receiver_line.size() ? receiver_line[e.line() - 1] : 0;
    throw ValidationError(e.message(), at);
  }
  return inst;
}

inline std::string serialize_instance(const TgicpInstance& inst) {
  std::ostringstream os;
  os << "q " << inst.q << "\n" << "m " << inst.m << "\n" << "M1";
  detail::append_list(os, inst.M1);
  os << "\nM2";
  detail::append_list(os, inst.M2);
  os << "\n";
  for (const auto& r : inst.receivers) {
    os << "r " << r.demand << " |";
    detail::append_list(os, r.side);
    os << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Codewords

/// One row as "x1+x3", coefficients other than 1 prefixed ("2x3"); "0" if empty.
inline std::string render_row(std::span<const Elem> row, const std::vector<std::size_t>& cols) {
  std::string s;
  for (std::size_t c = 0; c < row.size(); ++c) {
    if (!row[c]) continue;
    if (!s.empty()) s += '+';
    if (row[c] != 1) s += std::to_string(row[c]);
    s += "x" + std::to_string(cols.empty() ? c + 1 : cols[c]);
  }
  return s.empty() ? "0" : s;
}

/// Rows as "(x1+x3, x2)".
inline std::string render_rows(const Mat& g, const std::vector<std::size_t>& cols = {}) {
  std::string s = "(";
  for (std::size_t r = 0; r < g.rows(); ++r) {
    if (r) s += ", ";
    s += render_row(g.row(r), cols);
  }
  return s + ")";
}

/// Parses "x1+2x3" (also "2*x3" and "0") into a global row of length m.
inline std::vector<Elem> parse_row(std::string_view expr, std::size_t m, const Field& f, std::size_t line = 0) {
  std::vector<Elem> v(m, 0);
  std::string e;
  for (char c : expr)
    if (!std::isspace(static_cast<unsigned char>(c))) e += c;
  if (e == "0") return v;
  if (e.empty()) throw ValidationError("empty codeword", line);
  std::size_t pos = 0;
  while (pos <= e.size()) {
    std::size_t end = e.find('+', pos);
    if (end == std::string::npos) end = e.size();
    std::string term = e.substr(pos, end - pos);
    auto xpos = term.find_first_of("xX");
    if (term.empty() || xpos == std::string::npos) throw ValidationError("bad term '" + term + "'", line);
    std::string coef = term.substr(0, xpos);
    if (!coef.empty() && coef.back() == '*') coef.pop_back();
    std::uint64_t a = coef.empty() ? 1 : detail::parse_uint(coef, line, "coefficient");
    auto j = detail::parse_uint(term.substr(xpos + 1), line, "message index");
    if (j < 1 || j > m) throw ValidationError("message x" + std::to_string(j) + " out of range", line);
    v[j - 1] = f.add(v[j - 1], static_cast<Elem>(a % f.order()));
    pos = end + 1;
    if (end == e.size()) break;
  }
  return v;
}

/// Parses a tuple "(x1+x3, x2)" or "()" into rows over all m messages.
inline Mat parse_tuple(std::string_view text, std::size_t m, const Field& f, std::size_t line = 0) {
  std::string t = detail::strip_comment(std::string(text));
  if (t.size() < 2 || t.front() != '(' || t.back() != ')') throw ValidationError("expected '( ... )'", line);
  t = t.substr(1, t.size() - 2);
  Mat out(0, m);
  if (detail::strip_comment(t).empty()) return out;
  std::size_t pos = 0;
  while (true) {
    std::size_t end = t.find(',', pos);
    std::string part = t.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    out.append_row(parse_row(part, m, f, line));
    if (end == std::string::npos) break;
    pos = end + 1;
  }
  return out;
}

/// Code file: `S1 <expr>` / `S2 <expr>` lines, one codeword each, in order.
inline TwoSenderCode parse_code(std::string_view text, const TgicpInstance& inst) {
  const Field f(inst.q);
  Mat s1(0, inst.m), s2(0, inst.m);
  std::istringstream all{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(all, raw)) {
    ++lineno;
    std::string line = detail::strip_comment(raw);
    if (line.empty()) continue;
    std::istringstream in(line);
    std::string key;
    in >> key;
    if (key != "S1" && key != "S2") throw ValidationError("expected 'S1 <expr>' or 'S2 <expr>'", lineno);
    std::string rest;
    std::getline(in, rest);
    auto row = parse_row(rest, inst.m, f, lineno);
    const auto& held = key == "S1" ? inst.M1 : inst.M2;
    for (std::size_t j = 0; j < inst.m; ++j)
      if (row[j] && !std::binary_search(held.begin(), held.end(), j + 1))
        throw ValidationError("sender " + key.substr(1) + " does not hold x" + std::to_string(j + 1), lineno);
    (key == "S1" ? s1 : s2).append_row(row);
  }
  return TwoSenderCode::from_global(inst, s1, s2);
}

inline std::string serialize_code(const TwoSenderCode& c) {
  std::ostringstream os;
  for (std::size_t r = 0; r < c.G1.rows(); ++r) os << "S1 " << render_row(c.G1.row(r), c.cols1) << "\n";
  for (std::size_t r = 0; r < c.G2.rows(); ++r) os << "S2 " << render_row(c.G2.row(r), c.cols2) << "\n";
  return os.str();
}

inline std::string render_code(const TwoSenderCode& c) {
  return "S1 " + render_rows(c.G1, c.cols1) + "  S2 " + render_rows(c.G2, c.cols2);
}

/// Partial matrix as lines of 0/1/x.
inline std::string render_partial(const PartialMatrix& p) { return p.to_string(); }

inline std::string render_matrix(const Mat& m) {
  bool wide = false;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) wide = wide || m(r, c) >= 10;
  std::string s;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c && wide) s += ' ';
      s += std::to_string(m(r, c));
    }
    s += '\n';
  }
  return s;
}

}  // namespace tgic
