#pragma once
// Interaction digraph on the sub-problems {1, 2, J} and case labels.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tgic/error.hpp"
#include "tgic/model.hpp"

namespace tgic {

/// Edge order used for the bitmask: (1,2),(2,1),(1,J),(J,1),(2,J),(J,2).
inline constexpr std::array<std::pair<Part, Part>, 6> kEdges{{{Part::One, Part::Two},
                                                              {Part::Two, Part::One},
                                                              {Part::One, Part::Joint},
                                                              {Part::Joint, Part::One},
                                                              {Part::Two, Part::Joint},
                                                              {Part::Joint, Part::Two}}};

inline int edge_bit(Part a, Part b) {
  for (int k = 0; k < 6; ++k)
    if (kEdges[k].first == a && kEdges[k].second == b) return k;
  throw DimensionError("no edge from a part to itself");
}

enum class Participation { None, Partial, Full };

struct InteractionDigraph {
  std::uint8_t mask = 0;   ///< present edges
  std::uint8_t full = 0;   ///< subset of mask: fully-participated edges

  static InteractionDigraph from_mask(std::uint8_t mask, std::uint8_t full = 0) {
    if (mask > 63 || (full & ~mask)) throw ValidationError("bad digraph mask");
    return {mask, full};
  }
  static InteractionDigraph from_canonical(int index) {
    if (index < 1 || index > 64) throw ValidationError("canonical index must be in [1, 64]");
    return from_mask(static_cast<std::uint8_t>(index - 1));
  }

  int canonical() const noexcept { return mask + 1; }
  bool has(Part a, Part b) const { return (mask >> edge_bit(a, b)) & 1u; }
  bool is_full(Part a, Part b) const { return (full >> edge_bit(a, b)) & 1u; }
  bool two_cycle(Part a, Part b) const { return has(a, b) && has(b, a); }
  Participation label(Part a, Part b) const {
    return !has(a, b) ? Participation::None : is_full(a, b) ? Participation::Full : Participation::Partial;
  }
  bool out_edges(Part a) const {
    for (Part b : kParts)
      if (b != a && has(a, b)) return true;
    return false;
  }

  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    for (auto [a, b] : kEdges) {
      if (!has(a, b)) continue;
      if (!first) os << ", ";
      first = false;
      os << "(" << part_name(a) << "," << part_name(b) << ") " << (is_full(a, b) ? "FULL" : "PARTIAL");
    }
    if (first) os << "none";
    return os.str();
  }

  bool operator==(const InteractionDigraph&) const = default;
};

inline InteractionDigraph build_digraph(const PartitionedFitting& p) {
  InteractionDigraph d;
  for (int k = 0; k < 6; ++k) {
    const PartialMatrix& blk = p.cross(kEdges[k].first, kEdges[k].second);
    if (blk.rows() == 0 || blk.cols() == 0 || !blk.any(Cell::X)) continue;
    d.mask |= static_cast<std::uint8_t>(1u << k);
    if (blk.all(Cell::X)) d.full |= static_cast<std::uint8_t>(1u << k);
  }
  return d;
}

/// Kahn's algorithm, smallest available vertex first in the order 1, 2, J.
inline std::optional<std::array<Part, 3>> topological_order(const InteractionDigraph& d) {
  std::array<int, 3> indeg{};
  for (auto [a, b] : kEdges)
    if (d.has(a, b)) ++indeg[idx(b)];
  std::array<Part, 3> order{};
  std::array<bool, 3> used{};
  for (std::size_t pos = 0; pos < 3; ++pos) {
    int pick = -1;
    for (Part v : kParts)
      if (!used[idx(v)] && indeg[idx(v)] == 0) {
        pick = static_cast<int>(idx(v));
        break;
      }
    if (pick < 0) return std::nullopt;
    used[pick] = true;
    order[pos] = kParts[pick];
    for (Part b : kParts)
      if (b != kParts[pick] && d.has(kParts[pick], b)) --indeg[idx(b)];
  }
  return order;
}

inline bool is_acyclic(const InteractionDigraph& d) { return topological_order(d).has_value(); }

enum class Hint { None, IIA, IIB, IIC, IID, IIE };

inline const char* hint_name(Hint h) {
  switch (h) {
    case Hint::IIA: return "II-A";
    case Hint::IIB: return "II-B";
    case Hint::IIC: return "II-C";
    case Hint::IID: return "II-D";
    case Hint::IIE: return "II-E";
    default: return "-";
  }
}

/// Sub-case hint of a cyclic digraph; Hint::None for acyclic ones.
inline Hint subcase_hint(const InteractionDigraph& d) {
  if (is_acyclic(d)) return Hint::None;
  if (!d.out_edges(Part::Joint)) return Hint::IIA;
  bool c1 = d.two_cycle(Part::One, Part::Joint);
  bool c2 = d.two_cycle(Part::Two, Part::Joint);
  if (c1 && c2) return Hint::IIB;
  if (c1) return Hint::IIC;
  if (c2) return Hint::IID;
  return Hint::IIE;
}

struct CaseLabel {
  bool case_one = true;
  Hint hint = Hint::None;
  std::vector<std::string> applicable;  ///< construction ids whose predicate holds

  std::string name() const {
    return case_one ? std::string("Case I") : std::string("Case II (") + hint_name(hint) + ")";
  }
};

inline CaseLabel classify(const InteractionDigraph& d) {
  CaseLabel c;
  c.case_one = is_acyclic(d);
  c.hint = subcase_hint(d);
  return c;
}

inline CaseLabel classify(const PartitionedFitting& p) { return classify(build_digraph(p)); }

// ---------------------------------------------------------------------------
// Optional numbering overlay: canonical index -> figure number.

struct HNumbering {
  std::map<int, int> to_h;

  std::optional<int> h_of(int canonical) const {
    auto it = to_h.find(canonical);
    if (it == to_h.end()) return std::nullopt;
    return it->second;
  }

  /// Text format: one "canonical H" pair per line, '#' comments.
  static HNumbering parse(const std::string& text) {
    HNumbering t;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    std::map<int, int> seen_h;
    while (std::getline(in, line)) {
      ++lineno;
      if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
      std::istringstream ls(line);
      std::string a, b, extra;
      if (!(ls >> a)) continue;
      if (!(ls >> b) || (ls >> extra)) throw ValidationError("expected 'canonical H'", lineno);
      int c = 0, hn = 0;
      try {
        std::size_t pa = 0, pb = 0;
        c = std::stoi(a, &pa);
        if (b.size() > 1 && (b[0] == 'H' || b[0] == 'h')) b = b.substr(1);
        hn = std::stoi(b, &pb);
        if (pa != a.size() || pb != b.size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw ValidationError("non-numeric mapping entry", lineno);
      }
      if (c < 1 || c > 64 || hn < 1 || hn > 64) throw ValidationError("mapping entry out of [1, 64]", lineno);
      if (t.to_h.count(c)) throw ValidationError("canonical index listed twice", lineno);
      if (seen_h.count(hn)) throw ValidationError("figure number listed twice", lineno);
      t.to_h[c] = hn;
      seen_h[hn] = c;
    }
    return t;
  }

  std::string serialize() const {
    std::ostringstream os;
    for (auto [c, h] : to_h) os << c << " " << h << "\n";
    return os.str();
  }
};

/// Entries fixed by worked examples in the text; everything else is open.
inline const char* kDefaultMapping =
    "# canonical_index H_number\n"
    "# Only these entries are pinned by worked examples; all others are unverified.\n"
    "1 1     # no interactions\n"
    "34 16   # (1,2), (J,2)\n"
    "44 59   # (1,2), (2,1), (J,1), (J,2)\n"
    "40 62   # (1,2), (2,1), (1,J), (J,2)\n"
    "28 61   # (1,2), (2,1), (2,J), (J,1)\n";

inline HNumbering default_numbering() { return HNumbering::parse(kDefaultMapping); }

/// Anchor constraints a user table must not contradict. Returns messages.
inline std::vector<std::string> numbering_violations(const HNumbering& t) {
  std::vector<std::string> bad;
  auto pin = [&](int c, int h) {
    if (auto v = t.h_of(c); v && *v != h)
      bad.push_back("canonical " + std::to_string(c) + " must be H" + std::to_string(h));
    for (auto [cc, hh] : t.to_h)
      if (hh == h && cc != c) bad.push_back("H" + std::to_string(h) + " must be canonical " + std::to_string(c));
  };
  pin(1, 1);
  pin(34, 16);
  pin(44, 59);
  pin(40, 62);
  pin(28, 61);
  // H58 and H60 are {(1,2),(2,1),(J,1)} and {(1,2),(2,1),(J,2)} in some order.
  for (int h : {58, 60})
    for (auto [cc, hh] : t.to_h)
      if (hh == h && cc != 12 && cc != 36)
        bad.push_back("H" + std::to_string(h) + " must be canonical 12 or 36");
  return bad;
}

}  // namespace tgic
