// Acceptance suite: one PASS/FAIL line per criterion, exact comparisons only.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "tgic/tgic.hpp"

using namespace tgic;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [" << what << "]";
    }
  }
};

int failures = 0;

void criterion(int id, const char* title, double limit_s, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.require(false, std::string("exception: ") + e.what());
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (s >= limit_s) {
    std::ostringstream w;
    w << "took " << s << " s, limit " << limit_s << " s";
    out.require(false, w.str());
  }
  std::printf("%s %2d  %-58s %8.2f s%s\n", out.pass ? "PASS" : "FAIL", id, title, s, out.detail.str().c_str());
  std::fflush(stdout);
  failures += !out.pass;
}

bool respects_availability(const TwoSenderCode& c, const TgicpInstance& inst) {
  if (c.cols1 != inst.M1 || c.cols2 != inst.M2) return false;
  auto inside = [&](const Mat& g, const std::vector<std::size_t>& held) {
    for (std::size_t r = 0; r < g.rows(); ++r)
      for (std::size_t j = 0; j < g.cols(); ++j)
        if (g(r, j) && !std::binary_search(held.begin(), held.end(), j + 1)) return false;
    return true;
  };
  return inside(c.global1(inst.m), inst.M1) && inside(c.global2(inst.m), inst.M2);
}

TwoSenderCode printed_code(const CorpusInstance& c, const TgicpInstance& inst) {
  const Field f(inst.q);
  return TwoSenderCode::from_global(inst, parse_tuple(*c.S1, inst.m, f), parse_tuple(*c.S2, inst.m, f));
}

void worked_example(Outcome& o, const char* id) {
  const auto& c = corpus_instance(id);
  const auto inst = c.instance();
  const Field f(inst.q);
  auto rep = plan_and_construct(inst);
  o.require(rep.upper == c.lstar, std::string(id) + ": l* " + std::to_string(rep.upper) + " != " + std::to_string(c.lstar));
  o.require(rep.optimal, std::string(id) + ": not marked optimal");
  o.require(verify(rep.code, inst, f).overall, std::string(id) + ": constructed code fails verify");
  auto printed = verify(printed_code(c, inst), inst, f);
  std::string who;
  for (auto r : printed.failures()) who += " " + std::to_string(r);
  o.require(printed.overall, std::string(id) + ": printed code fails verify, receivers" + who);
}

ExtensionSpec spec_from_printed(const CorpusExtension& e, const Field& f) {
  ExtensionSpec spec = ExtensionSpec::from_matrix(e.matrix(), e.blocks);
  for (const auto& c : e.completions) spec.witness.push_back(make_witness(c, f));
  spec.minranks = e.mrk;
  return spec;
}

}  // namespace

int main() {
  const Field f2(2);

  criterion(1, "joint extension from optimal completions", 5, [&](Outcome& o) {
    const auto& e = corpus_extension("extension_optimal");
    auto spec = spec_from_printed(e, f2);
    o.require(minrank(spec.sub[0], f2) == 3, "mrk F1 != 3");
    o.require(minrank(spec.sub[1], f2) == 2, "mrk F2 != 2");
    auto w = build_extension(spec, f2);
    o.require(w.G == e.G_E, "G_E differs from the displayed matrix");
    o.require(verify_extension(w, e.matrix(), f2), "D_E G_E does not complete F^E");
    o.require(verify_single(w.G, sgicp_instance(e.matrix(), 2), f2).overall, "G_E not decodable");
  });

  criterion(2, "joint extension with a rank-3 block completion", 5, [&](Outcome& o) {
    const auto& e = corpus_extension("extension_suboptimal");
    auto spec = spec_from_printed(e, f2);
    o.require(spec.witness[1].r == 3, "F2 completion rank != 3");
    auto w = build_extension(spec, f2);
    o.require(w.G == e.G_E, "G_E differs from the displayed matrix");
    o.require(w.optimal.value_or(false), "r_1 != max mrk");
    o.require(verify_extension(w, e.matrix(), f2), "D_E G_E does not complete F^E");
    o.require(verify_single(w.G, sgicp_instance(e.matrix(), 2), f2).overall, "G_E not decodable");
  });

  criterion(3, "worked example II-B: l* = 4, printed code verifies", 60,
            [&](Outcome& o) { worked_example(o, "case2b_example"); });

  criterion(4, "worked example II-C: l* = 5, printed code verifies", 60,
            [&](Outcome& o) { worked_example(o, "case2c_example"); });

  criterion(5, "worked examples H59, H62: l* = 5, printed codes verify", 120, [&](Outcome& o) {
    worked_example(o, "h59_example");
    worked_example(o, "h62_example");
  });

  std::size_t optimal_checked = 0;
  criterion(6, "optimal=true implies oracle length (600 instances, m <= 6)", 600, [&](Outcome& o) {
    Rng rng(6006);
    for (int t = 0; t < 600; ++t) {
      RandomSpec spec;
      spec.mode = t % 3 == 2 ? RandomMode::Uniform : RandomMode::Structured;
      const auto inst = random_instance(rng, spec);
      auto rep = plan_and_construct(inst);
      o.require(verify(rep.code, inst, f2).overall, "instance " + std::to_string(t) + ": code fails verify");
      o.require(respects_availability(rep.code, inst), "instance " + std::to_string(t) + ": availability");
      if (!rep.optimal) continue;
      ++optimal_checked;
      const auto opt = oracle_optimum(inst).length;
      o.require(opt == rep.upper, "instance " + std::to_string(t) + ": claimed " + std::to_string(rep.upper) +
                                      " oracle " + std::to_string(opt));
    }
    o.detail << " " << optimal_checked << " optimal claims checked";
  });

  criterion(7, "block upper triangular minrank is additive (300 cases)", 600, [&](Outcome& o) {
    Rng rng(7007);
    for (int t = 0; t < 300; ++t) {
      auto tri = random_triangular(rng, rng.between(2, 3), 3, 10);
      o.require(tri.assembled.x_count() <= 10, "more than 10 X");
      std::size_t sum = 0;
      for (const auto& b : tri.blocks) sum += minrank(b, f2);
      o.require(minrank(tri.assembled, f2) == sum, "case " + std::to_string(t));
    }
  });

  criterion(8, "disjoint senders: oracle = mrk1 + mrk2 (300 cases)", 600, [&](Outcome& o) {
    Rng rng(8008);
    RandomSpec spec;
    spec.mode = RandomMode::Disjoint;
    for (int t = 0; t < 300; ++t) {
      const auto inst = random_instance(rng, spec);
      const auto p = partition(inst);
      const std::size_t s = minrank(p.diag(Part::One), f2) + minrank(p.diag(Part::Two), f2);
      o.require(oracle_optimum(inst).length == s, "case " + std::to_string(t));
    }
  });

  criterion(9, "single sender: sgicp_oracle = minrank (300 cases, m <= 5)", 600, [&](Outcome& o) {
    Rng rng(9009);
    for (int t = 0; t < 300; ++t) {
      const std::size_t m = rng.between(1, 5);
      auto fx = random_fitting(rng, m + rng.below(3), m, 14);
      o.require(sgicp_oracle(fx, 2) == minrank(fx, f2), "case " + std::to_string(t));
    }
  });

  criterion(10, "extension witnesses, availability, swap invariance", 600, [&](Outcome& o) {
    std::size_t witnesses = 0;
    for (const auto& e : corpus_extensions()) {
      o.require(verify_extension(build_extension(spec_from_printed(e, f2), f2), e.matrix(), f2), e.id);
      ++witnesses;
    }
    Rng rng(10010);
    for (int t = 0; t < 400; ++t) {
      std::vector<PartialMatrix> d;
      for (int k = 0; k < 2; ++k) {
        const std::size_t m = rng.between(1, 3);
        d.push_back(random_fitting(rng, m + rng.below(2), m, 5));
      }
      auto off = [&](std::size_t r, std::size_t c) {
        PartialMatrix p(r, c);
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t j = 0; j < c; ++j)
            if (rng.percent(65)) p(i, j) = Cell::X;
        return p;
      };
      BlockStructure bs{{d[0].rows(), d[1].rows()}, {d[0].cols(), d[1].cols()}};
      auto fx = assemble({{d[0], off(d[0].rows(), d[1].cols())}, {off(d[1].rows(), d[0].cols()), d[1]}});
      auto rec = recognize(fx, bs, f2);
      if (rec.status != RecognizeStatus::Found) continue;
      ++witnesses;
      o.require(verify_extension(*rec.witness, fx, f2), "recognized witness " + std::to_string(t));
    }
    o.require(witnesses >= 100, "fewer than 100 extension witnesses");
    o.detail << " " << witnesses << " witnesses";
    RandomSpec spec;
    for (int t = 0; t < 150; ++t) {
      const auto inst = random_instance(rng, spec);
      const auto sw = swap_senders(inst);
      const auto a = oracle_optimum(inst), b = oracle_optimum(sw);
      o.require(a.length == b.length, "swap changes the optimum, case " + std::to_string(t));
      o.require(respects_availability(a.code, inst) && respects_availability(b.code, sw), "oracle availability");
      for (const auto* in : {&inst, &sw}) {
        auto rep = plan_and_construct(*in);
        o.require(respects_availability(rep.code, *in), "planner availability, case " + std::to_string(t));
      }
    }
  });

  std::printf("%d of 10 criteria failed\n", failures);
  return failures ? 1 : 0;
}
