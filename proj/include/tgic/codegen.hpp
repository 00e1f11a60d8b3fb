#pragma once
// Two-sender code constructions from sub-problem completions.

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tgic/error.hpp"
#include "tgic/field.hpp"
#include "tgic/interaction.hpp"
#include "tgic/joint_extension.hpp"
#include "tgic/minrank.hpp"
#include "tgic/model.hpp"
#include "tgic/verify.hpp"

namespace tgic {

/// Zero-pads the shorter codeword matrix and adds row by row.
inline Mat zp_add(const Mat& a, const Mat& b, const Field& f) {
  if (a.rows() == 0) return b;
  if (b.rows() == 0) return a;
  if (a.cols() != b.cols()) throw DimensionError("zp_add: codewords over different message sets");
  Mat out(std::max(a.rows(), b.rows()), a.cols());
  for (std::size_t r = 0; r < out.rows(); ++r)
    for (std::size_t c = 0; c < out.cols(); ++c) {
      Elem x = r < a.rows() ? a(r, c) : 0;
      Elem y = r < b.rows() ? b(r, c) : 0;
      out(r, c) = f.add(x, y);
    }
  return out;
}

/// Rows a..b (1-based, inclusive). a == b + 1 yields an empty slice.
inline Mat slice(const Mat& c, std::size_t a, std::size_t b) {
  if (a == b + 1 && b <= c.rows()) return Mat(0, c.cols());
  if (a < 1 || a > b || b > c.rows())
    throw DimensionError("slice [" + std::to_string(a) + ":" + std::to_string(b) + "] outside 1.." +
                         std::to_string(c.rows()));
  return row_range(c, a, b);
}

enum class Construction {
  Case1_2A,
  Case2B_Full,
  Case2B_JointExt,
  Case2B_RankInv,
  Case2C,
  Case2D,
  Case2E_Full,
  Case2E_JK,
  Case2E_H61,
  Case2E_H62,
  Fallback
};

inline const char* construction_id(Construction c) {
  switch (c) {
    case Construction::Case1_2A: return "case1_2a";
    case Construction::Case2B_Full: return "case2b_full";
    case Construction::Case2B_JointExt: return "case2b_jointext";
    case Construction::Case2B_RankInv: return "case2b_rankinv";
    case Construction::Case2C: return "case2c";
    case Construction::Case2D: return "case2d";
    case Construction::Case2E_Full: return "case2e_full";
    case Construction::Case2E_JK: return "case2e_jk";
    case Construction::Case2E_H61: return "case2e_h61";
    case Construction::Case2E_H62: return "case2e_h62";
    default: return "fallback";
  }
}

inline constexpr std::array<Construction, 11> kPlanOrder{
    Construction::Case1_2A,    Construction::Case2B_Full, Construction::Case2B_JointExt, Construction::Case2B_RankInv,
    Construction::Case2C,      Construction::Case2D,      Construction::Case2E_Full,     Construction::Case2E_JK,
    Construction::Case2E_H61,  Construction::Case2E_H62,  Construction::Fallback};

struct PlanOptions {
  Budget budget;
  RecognizeOptions recognize;
  bool joint_to_s2 = false;   ///< where the separable constructions send c^(J)
};

struct SubResult {
  MinrankResult mr;
  CompletionWitness w;
};

/// Everything the constructions share: the partition, digraph and one
/// normalized minimum-rank completion per sub-problem.
struct Analysis {
  TgicpInstance inst;
  Field f{2};
  PartitionedFitting part;
  InteractionDigraph digraph;
  PlanOptions opt;
  std::array<SubResult, 3> sub;

  bool exact() const { return sub[0].mr.exact && sub[1].mr.exact && sub[2].mr.exact; }
  std::size_t r(Part a) const { return sub[idx(a)].w.r; }
  std::size_t r_lower(Part a) const { return sub[idx(a)].mr.exact ? r(a) : sub[idx(a)].mr.lower; }

  /// Leading `len` rows of w (zero padded) over the global message columns.
  Mat code(Part a, const CompletionWitness& w, std::size_t len) const {
    if (part.m_of(a) == 0) return Mat(len, inst.m);
    Mat lead = leading_rows(w, len);
    if (len == 0) return Mat(0, inst.m);
    return embed(lead, inst.m, part.messages[idx(a)]);
  }
  Mat code(Part a, const CompletionWitness& w) const { return code(a, w, w.r); }
  Mat code(Part a) const { return code(a, sub[idx(a)].w); }
};

inline Analysis analyze(const TgicpInstance& inst, const PlanOptions& opt = {}) {
  inst.validate();
  Analysis an;
  an.inst = inst;
  an.f = Field(inst.q);
  an.opt = opt;
  an.part = partition(inst);
  an.digraph = build_digraph(an.part);
  for (Part a : kParts) {
    auto& s = an.sub[idx(a)];
    s.mr = minrank_search(an.part.diag(a), an.f, opt.budget);
    s.w = make_witness(s.mr.completion, an.f);
  }
  return an;
}

/// Same instance with the senders' roles exchanged.
inline TgicpInstance swap_senders(const TgicpInstance& inst) {
  TgicpInstance s = inst;
  std::swap(s.M1, s.M2);
  return s;
}

inline Analysis swap_analysis(const Analysis& an) {
  Analysis s = an;
  s.inst = swap_senders(an.inst);
  s.part = partition(s.inst);
  s.digraph = build_digraph(s.part);
  std::swap(s.sub[0], s.sub[1]);
  return s;
}

struct LowerBound {
  std::size_t value = 0;
  bool full_exact = false;   ///< minrank of the whole fitting matrix was computed exactly
  std::vector<std::string> terms;
};

inline LowerBound lower_bound(const Analysis& an) {
  LowerBound lb;
  auto take = [&](std::size_t v, const std::string& what) {
    lb.terms.push_back(what + " = " + std::to_string(v));
    lb.value = std::max(lb.value, v);
  };
  auto full = minrank_search(fitting_matrix(an.inst), an.f, an.opt.budget);
  lb.full_exact = full.exact;
  take(full.exact ? full.upper : full.lower, full.exact ? "mrk(F)" : "mrk(F) lower bound");
  const std::size_t r1 = an.r_lower(Part::One), r2 = an.r_lower(Part::Two), rJ = an.r_lower(Part::Joint);
  take(r1 + r2, "mrk1 + mrk2");
  take(rJ, "mrkJ");
  for (Part i : {Part::One, Part::Two})
    if (!an.digraph.has(i, Part::Joint) || !an.digraph.has(Part::Joint, i))
      take(an.r_lower(i) + rJ, std::string("mrk") + part_name(i) + " + mrkJ");
  return lb;
}

/// A construction's output before bounds are attached; codes over global columns.
struct Draft {
  Construction construction = Construction::Fallback;
  Mat S1, S2;
  bool claimed_optimal = false;   ///< optimal by a proven lower bound when the minranks are exact
  std::vector<std::string> notes;
};

struct Report {
  TwoSenderCode code;
  std::size_t upper = 0;
  std::size_t lower = 0;
  bool optimal = false;
  CaseLabel label;
  InteractionDigraph digraph;
  Construction construction = Construction::Fallback;
  std::array<std::size_t, 3> mrk{};
  bool mrk_exact = true;
  std::vector<std::string> notes;
};

namespace detail {

inline std::optional<std::map<Part, CompletionWitness>> joint_witnesses(
    const Analysis& an, const std::vector<Part>& blocks, const std::vector<std::pair<Part, Part>>& conds,
    bool min_rank_only, std::vector<std::string>& notes) {
  if (!an.exact()) {
    notes.push_back("recognition skipped: sub-problem minrank inexact");
    return std::nullopt;
  }
  JointProblem prob;
  std::map<Part, std::size_t> at;
  for (Part p : blocks) {
    at[p] = prob.diag.size();
    prob.diag.push_back(an.part.diag(p));
  }
  for (auto [a, b] : conds) prob.conditions.push_back({at.at(a), at.at(b), an.part.cross(a, b)});
  RecognizeOptions ro = an.opt.recognize;
  ro.min_rank_only = ro.min_rank_only || min_rank_only;
  RecognizeResult rr = recognize_joint(prob, an.f, an.opt.budget, ro);
  if (rr.status == RecognizeStatus::Unknown) notes.push_back("recognition inconclusive: " + rr.note);
  if (rr.status != RecognizeStatus::Found) return std::nullopt;
  if (!rr.note.empty()) notes.push_back(rr.note);
  std::map<Part, CompletionWitness> out;
  for (Part p : blocks) out[p] = rr.witnesses[at[p]];
  return out;
}

inline bool no_interaction_between(const InteractionDigraph& d, Part a, Part b) {
  return !d.has(a, b) || !d.has(b, a);
}

inline Part other(Part j) { return j == Part::One ? Part::Two : Part::One; }

/// Places g on sender j's slot of a draft.
inline void send(Draft& d, Part j, const Mat& g) { (j == Part::One ? d.S1 : d.S2) = g; }

}  // namespace detail

// ---------------------------------------------------------------------------
// Constructions. Each returns nullopt when its predicate does not hold.

/// Acyclic digraphs and cyclic ones where J has no out-edges: separate codes.
inline std::optional<Draft> construct_case1_2a(const Analysis& an) {
  const bool acyclic = is_acyclic(an.digraph);
  if (!acyclic && an.digraph.out_edges(Part::Joint)) return std::nullopt;
  Draft d;
  d.construction = Construction::Case1_2A;
  const Mat c1 = an.code(Part::One), c2 = an.code(Part::Two), cJ = an.code(Part::Joint);
  if (an.opt.joint_to_s2) {
    d.S1 = c1;
    d.S2 = vstack(c2, cJ);
  } else {
    d.S1 = vstack(c1, cJ);
    d.S2 = c2;
  }
  d.claimed_optimal = true;
  d.notes.push_back(acyclic ? "acyclic digraph" : "J has no out-edges");
  return d;
}

/// Both 2-cycles with J fully participated in all four directions.
inline std::optional<Draft> construct_case2b_full(const Analysis& an) {
  using P = Part;
  for (auto [a, b] : {std::pair{P::One, P::Joint}, {P::Joint, P::One}, {P::Two, P::Joint}, {P::Joint, P::Two}})
    if (!an.digraph.is_full(a, b)) return std::nullopt;
  const std::size_t r1 = an.r(P::One), r2 = an.r(P::Two), rJ = an.r(P::Joint);
  const Mat c1 = an.code(P::One), c2 = an.code(P::Two), cJ = an.code(P::Joint);
  Draft d;
  d.construction = Construction::Case2B_Full;
  d.claimed_optimal = true;
  if (rJ <= r1) {
    d.S1 = zp_add(c1, cJ, an.f);
    d.S2 = c2;
    d.notes.push_back("mrkJ <= mrk1");
  } else if (rJ <= r2) {
    d.S1 = c1;
    d.S2 = zp_add(c2, cJ, an.f);
    d.notes.push_back("mrkJ <= mrk2");
  } else {
    d.S1 = zp_add(c1, slice(cJ, 1, r1), an.f);
    d.S2 = zp_add(c2, slice(cJ, r1 + 1, rJ), an.f);
    d.notes.push_back(rJ >= r1 + r2 ? "mrkJ >= mrk1 + mrk2" : "max(mrk1, mrk2) < mrkJ < mrk1 + mrk2");
  }
  return d;
}

/// Both pairs (1,J) and (2,J) are joint extensions sharing the J completion.
inline std::optional<Draft> construct_case2b_jointext(const Analysis& an) {
  using P = Part;
  if (subcase_hint(an.digraph) != Hint::IIB) return std::nullopt;
  Draft d;
  d.construction = Construction::Case2B_JointExt;
  auto ws = detail::joint_witnesses(an, {P::One, P::Two, P::Joint},
                                    {{P::One, P::Joint}, {P::Joint, P::One}, {P::Two, P::Joint}, {P::Joint, P::Two}},
                                    true, d.notes);
  if (!ws) return std::nullopt;
  const auto& w = *ws;
  const P j = w.at(P::One).r >= w.at(P::Two).r ? P::One : P::Two;
  const P jc = detail::other(j);
  const Mat cj = an.code(j, w.at(j)), cjc = an.code(jc, w.at(jc)), cJ = an.code(P::Joint, w.at(P::Joint));
  if (w.at(P::Joint).r <= w.at(j).r) {
    detail::send(d, j, zp_add(cj, cJ, an.f));
    d.claimed_optimal = true;
    d.notes.push_back(std::string("mrkJ <= mrk") + part_name(j));
  } else {
    detail::send(d, j, zp_add(cJ, cj, an.f));
    d.notes.push_back(std::string("mrkJ > mrk") + part_name(j));
  }
  detail::send(d, jc, cjc);
  return d;
}

/// A sub-problem equal to F^(J) whose cross blocks are X on its support.
inline std::optional<Draft> construct_case2b_rankinv(const Analysis& an) {
  using P = Part;
  if (subcase_hint(an.digraph) != Hint::IIB) return std::nullopt;
  const PartialMatrix& fJ = an.part.diag(P::Joint);
  for (P i : {P::One, P::Two}) {
    const PartialMatrix& fi = an.part.diag(i);
    if (!(fi == fJ)) continue;
    if (!covers_support(an.part.cross(i, P::Joint), fi) || !covers_support(an.part.cross(P::Joint, i), fi)) continue;
    const auto& w = an.sub[idx(i)].w;
    Draft d;
    d.construction = Construction::Case2B_RankInv;
    detail::send(d, i, zp_add(an.code(i, w), an.code(P::Joint, w), an.f));
    detail::send(d, detail::other(i), an.code(detail::other(i)));
    d.claimed_optimal = true;
    d.notes.push_back(std::string("F^(") + part_name(i) + ") = F^(J), one completion serves both");
    return d;
  }
  return std::nullopt;
}

/// The pair (1,J) is a joint extension and 2, J interact in at most one direction.
inline std::optional<Draft> construct_case2c(const Analysis& an) {
  using P = Part;
  if (is_acyclic(an.digraph)) return std::nullopt;
  if (!detail::no_interaction_between(an.digraph, P::Two, P::Joint)) return std::nullopt;
  if (!an.digraph.has(P::One, P::Joint) && !an.digraph.has(P::Joint, P::One)) return std::nullopt;
  Draft d;
  d.construction = Construction::Case2C;
  auto ws = detail::joint_witnesses(an, {P::One, P::Joint}, {{P::One, P::Joint}, {P::Joint, P::One}}, false, d.notes);
  if (!ws) return std::nullopt;
  const auto& w1 = ws->at(P::One);
  const auto& wJ = ws->at(P::Joint);
  d.S1 = zp_add(an.code(P::One, w1), an.code(P::Joint, wJ), an.f);
  d.S2 = an.code(P::Two);
  d.claimed_optimal = true;
  return d;
}

/// Mirror image of construct_case2c.
inline std::optional<Draft> construct_case2d(const Analysis& an) {
  auto d = construct_case2c(swap_analysis(an));
  if (!d) return std::nullopt;
  std::swap(d->S1, d->S2);
  d->construction = Construction::Case2D;
  return d;
}

/// All six interactions fully participated.
inline std::optional<Draft> construct_case2e_full(const Analysis& an) {
  using P = Part;
  if (an.digraph.full != 63) return std::nullopt;
  const std::size_t r1 = an.r(P::One), r2 = an.r(P::Two), rJ = an.r(P::Joint);
  const Mat cJ = an.code(P::Joint);
  Draft d;
  d.construction = Construction::Case2E_Full;
  if (rJ <= std::min(r1, r2)) {
    d.S1 = zp_add(an.code(P::One), cJ, an.f);
    d.S2 = zp_add(an.code(P::Two), cJ, an.f);
    d.claimed_optimal = true;
    d.notes.push_back("mrkJ <= min(mrk1, mrk2)");
    return d;
  }
  const P j = r1 <= r2 ? P::One : P::Two;
  const P jc = detail::other(j);
  const std::size_t rj = an.r(j);
  const Mat head = slice(cJ, 1, rj);
  detail::send(d, j, zp_add(an.code(j), head, an.f));
  detail::send(d, jc, vstack(zp_add(an.code(jc), head, an.f), slice(cJ, rj + 1, rJ)));
  d.notes.push_back("length is the largest pairwise sum; optimal only when it meets the lower bound");
  return d;
}

/// (1,2) joint extension plus the induced (J,j) block; both senders carry c^(J).
inline std::optional<Draft> construct_case2e_jk(const Analysis& an) {
  using P = Part;
  if (is_acyclic(an.digraph)) return std::nullopt;
  std::optional<Draft> best;
  for (P j : {P::One, P::Two}) {
    if (!an.digraph.has(P::Joint, j)) continue;
    if (an.r(P::Joint) < an.r(j)) continue;
    Draft d;
    d.construction = Construction::Case2E_JK;
    auto ws = detail::joint_witnesses(an, {P::One, P::Two, P::Joint},
                                      {{P::One, P::Two}, {P::Two, P::One}, {P::Joint, j}}, true, d.notes);
    if (!ws) continue;
    const P jc = detail::other(j);
    const auto& w = *ws;
    const Mat cJ = an.code(P::Joint, w.at(P::Joint));
    detail::send(d, j, zp_add(cJ, an.code(j, w.at(j)), an.f));
    detail::send(d, jc, zp_add(cJ, an.code(jc, w.at(jc)), an.f));
    d.claimed_optimal = w.at(jc).r >= w.at(P::Joint).r && detail::no_interaction_between(an.digraph, jc, P::Joint);
    d.notes.push_back(std::string("j = ") + part_name(j));
    if (!best || (d.claimed_optimal && !best->claimed_optimal)) best = std::move(d);
    if (best->claimed_optimal) break;
  }
  return best;
}

namespace detail {

/// Shared shape of the two chained constructions: S_hi sends c_hi + c_J, S_lo sends c_lo + c_J.
inline std::optional<Draft> chained(const Analysis& an, Part hi, Construction id) {
  using P = Part;
  const P lo = other(hi);
  if (is_acyclic(an.digraph)) return std::nullopt;
  if (!(an.r(hi) >= an.r(P::Joint) && an.r(P::Joint) >= an.r(lo))) return std::nullopt;
  Draft d;
  d.construction = id;
  auto ws = joint_witnesses(an, {P::One, P::Two, P::Joint},
                            {{P::One, P::Two}, {P::Two, P::One}, {hi, P::Joint}, {P::Joint, lo}}, true, d.notes);
  if (!ws) return std::nullopt;
  const auto& w = *ws;
  const Mat cJ = an.code(P::Joint, w.at(P::Joint));
  send(d, hi, zp_add(an.code(hi, w.at(hi)), cJ, an.f));
  send(d, lo, zp_add(an.code(lo, w.at(lo)), cJ, an.f));
  d.claimed_optimal = no_interaction_between(an.digraph, hi, P::Joint);
  return d;
}

}  // namespace detail

/// mrk2 >= mrkJ >= mrk1 with induced (2,J) and (J,1) blocks.
inline std::optional<Draft> construct_case2e_h61(const Analysis& an) {
  return detail::chained(an, Part::Two, Construction::Case2E_H61);
}

/// mrk1 >= mrkJ >= mrk2 with induced (1,J) and (J,2) blocks.
inline std::optional<Draft> construct_case2e_h62(const Analysis& an) {
  return detail::chained(an, Part::One, Construction::Case2E_H62);
}

inline std::optional<Draft> construct_fallback(const Analysis& an) {
  Draft out;
  out.construction = Construction::Fallback;
  const Mat c1 = an.code(Part::One), c2 = an.code(Part::Two), cJ = an.code(Part::Joint);
  if (an.opt.joint_to_s2) {
    out.S1 = c1;
    out.S2 = vstack(c2, cJ);
  } else {
    out.S1 = vstack(c1, cJ);
    out.S2 = c2;
  }
  return out;
}

inline std::optional<Draft> construct(const Analysis& an, Construction c) {
  switch (c) {
    case Construction::Case1_2A: return construct_case1_2a(an);
    case Construction::Case2B_Full: return construct_case2b_full(an);
    case Construction::Case2B_JointExt: return construct_case2b_jointext(an);
    case Construction::Case2B_RankInv: return construct_case2b_rankinv(an);
    case Construction::Case2C: return construct_case2c(an);
    case Construction::Case2D: return construct_case2d(an);
    case Construction::Case2E_Full: return construct_case2e_full(an);
    case Construction::Case2E_JK: return construct_case2e_jk(an);
    case Construction::Case2E_H61: return construct_case2e_h61(an);
    case Construction::Case2E_H62: return construct_case2e_h62(an);
    default: return construct_fallback(an);
  }
}

/// Attaches bounds: a claimed optimum stands when every sub-minrank is exact,
/// otherwise the code is compared with the computed lower bound.
inline Report finalize(const Analysis& an, const Draft& d, const LowerBound* lb = nullptr) {
  Report rep;
  auto fix = [&](const Mat& g) { return g.rows() ? g : Mat(0, an.inst.m); };
  rep.code = TwoSenderCode::from_global(an.inst, fix(d.S1), fix(d.S2));
  rep.upper = rep.code.length();
  rep.construction = d.construction;
  rep.digraph = an.digraph;
  rep.label = classify(an.digraph);
  rep.notes = d.notes;
  rep.mrk_exact = an.exact();
  for (Part a : kParts) rep.mrk[idx(a)] = an.r(a);
  if (d.claimed_optimal && an.exact()) {
    rep.lower = rep.upper;
    rep.optimal = true;
    return rep;
  }
  LowerBound own;
  if (!lb) {
    own = lower_bound(an);
    lb = &own;
  }
  rep.lower = std::min(lb->value, rep.upper);
  rep.optimal = lb->value >= rep.upper;
  return rep;
}

inline Report construct_report(const Analysis& an, Construction c) {
  auto d = construct(an, c);
  if (!d) throw ValidationError(std::string("construction ") + construction_id(c) + " does not apply");
  return finalize(an, *d);
}

/// Ids of the constructions whose predicate holds.
inline std::vector<std::string> applicable_constructions(const Analysis& an) {
  std::vector<std::string> ids;
  for (Construction c : kPlanOrder)
    if (c != Construction::Fallback && construct(an, c)) ids.push_back(construction_id(c));
  return ids;
}

/// Tries the constructions in a fixed order. The first provably optimal code
/// wins; otherwise the shortest verified code (earliest on ties).
inline Report plan_and_construct(const Analysis& an) {
  std::optional<Report> best;
  std::optional<LowerBound> lb;
  std::vector<std::string> applicable, rejected;
  for (Construction c : kPlanOrder) {
    auto d = construct(an, c);
    if (!d) continue;
    if (c != Construction::Fallback) applicable.push_back(construction_id(c));
    if (!(d->claimed_optimal && an.exact()) && !lb) lb = lower_bound(an);
    Report rep = finalize(an, *d, lb ? &*lb : nullptr);
    if (!verify(rep.code, an.inst, an.f).overall) {
      rejected.push_back(std::string(construction_id(c)) + " failed verification");
      continue;
    }
    if (!best || rep.upper < best->upper || (rep.upper == best->upper && rep.optimal && !best->optimal))
      best = std::move(rep);
    if (best->optimal) break;
  }
  if (!best) throw Error("no verified construction");
  best->label.applicable = applicable;
  best->notes.insert(best->notes.end(), rejected.begin(), rejected.end());
  if (!best->mrk_exact) best->notes.push_back("sub-problem minranks not exact within budget");
  return *best;
}

inline Report plan_and_construct(const TgicpInstance& inst, const PlanOptions& opt = {}) {
  return plan_and_construct(analyze(inst, opt));
}

}  // namespace tgic
