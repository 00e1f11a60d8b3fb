#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "tgic/tgic.hpp"

using namespace tgic;

namespace {

enum Exit { kOk = 0, kValidation = 1, kMismatch = 2, kBudget = 3 };

struct Globals {
  std::uint32_t field = 0;   // 0: keep the instance's q
  std::size_t budget_x = Budget{}.max_x;
  std::size_t oracle_cap = OracleCaps{}.max_m;
  unsigned threads = 1;
  std::uint64_t seed = 1;
  std::string mapping;
};

std::string slurp(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

TgicpInstance load(const std::string& path, const Globals& g) {
  TgicpInstance inst;
  try {
    inst = parse_instance(slurp(path));
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
  if (g.field) {
    inst.q = g.field;
    inst.validate();
  }
  return inst;
}

PlanOptions plan_options(const Globals& g) {
  PlanOptions o;
  o.budget.max_x = g.budget_x;
  return o;
}

HNumbering numbering(const Globals& g) {
  if (g.mapping.empty()) return default_numbering();
  HNumbering t = HNumbering::parse(slurp(g.mapping));
  for (const auto& v : numbering_violations(t)) std::cerr << "warning: mapping table: " << v << "\n";
  return t;
}

std::string digraph_line(const InteractionDigraph& d, const HNumbering& h) {
  std::string s = "canonical " + std::to_string(d.canonical());
  if (auto n = h.h_of(d.canonical())) s += " (H" + std::to_string(*n) + ")";
  return s + ": " + d.to_string();
}

void print_sizes(const Analysis& an) {
  std::cout << "instance: q=" << an.inst.q << " m=" << an.inst.m << " n=" << an.inst.n();
  for (Part a : kParts)
    std::cout << " |P" << part_name(a) << "|=" << an.part.m_of(a) << " |I" << part_name(a) << "|=" << an.part.n_of(a);
  std::cout << "\n";
}

void print_mrk(const Analysis& an) {
  std::cout << "mrk:";
  for (Part a : kParts) {
    const auto& mr = an.sub[idx(a)].mr;
    std::cout << " F" << part_name(a) << "=";
    if (mr.exact) std::cout << mr.upper;
    else std::cout << "[" << mr.lower << "," << mr.upper << "]";
  }
  std::cout << (an.exact() ? "" : " (inexact)") << "\n";
}

int cmd_classify(const std::string& path, const Globals& g) {
  Analysis an = analyze(load(path, g), plan_options(g));
  print_sizes(an);
  std::cout << "digraph: " << digraph_line(an.digraph, numbering(g)) << "\n";
  CaseLabel c = classify(an.digraph);
  std::cout << "case: " << c.name() << "\n";
  if (auto order = topological_order(an.digraph)) {
    std::cout << "topological order:";
    for (Part p : *order) std::cout << " " << part_name(p);
    std::cout << "\n";
  }
  print_mrk(an);
  std::cout << "applicable:";
  for (const auto& id : applicable_constructions(an)) std::cout << " " << id;
  std::cout << " fallback\n";
  return kOk;
}

int cmd_minrank(const std::string& path, const Globals& g) {
  TgicpInstance inst = load(path, g);
  Analysis an = analyze(inst, plan_options(g));
  print_mrk(an);
  auto full = minrank_search(fitting_matrix(inst), an.f, an.opt.budget);
  std::cout << "mrk(F):";
  if (full.exact) std::cout << " " << full.upper << "\n";
  else std::cout << " [" << full.lower << "," << full.upper << "] (inexact)\n";
  return an.exact() && full.exact ? kOk : kBudget;
}

void print_report(const Report& r, const HNumbering& h) {
  std::cout << "digraph: " << digraph_line(r.digraph, h) << "\n";
  std::cout << "case: " << r.label.name() << "\n";
  std::cout << "mrk: F1=" << r.mrk[0] << " F2=" << r.mrk[1] << " FJ=" << r.mrk[2] << (r.mrk_exact ? "" : " (inexact)")
            << "\n";
  std::cout << "construction: " << construction_id(r.construction) << "\n";
  std::cout << "length: " << r.upper << " lower: " << r.lower << " optimal: " << (r.optimal ? "yes" : "no") << "\n";
  std::cout << "S1 sends " << render_rows(r.code.G1, r.code.cols1) << "\n";
  std::cout << "S2 sends " << render_rows(r.code.G2, r.code.cols2) << "\n";
  for (const auto& n : r.notes) std::cout << "note: " << n << "\n";
}

int cmd_construct(const std::string& path, const std::string& code_out, const std::string& which, bool joint_to_s2,
                  const Globals& g) {
  PlanOptions o = plan_options(g);
  o.joint_to_s2 = joint_to_s2;
  Analysis an = analyze(load(path, g), o);
  Report r;
  if (which.empty()) {
    r = plan_and_construct(an);
  } else {
    bool known = false;
    for (Construction c : kPlanOrder)
      if (which == construction_id(c)) {
        r = construct_report(an, c);
        known = true;
      }
    if (!known) throw ValidationError("unknown construction '" + which + "'");
    if (!verify(r.code, an.inst, an.f).overall) {
      print_report(r, numbering(g));
      std::cout << "verify: FAIL\n";
      return kMismatch;
    }
  }
  print_report(r, numbering(g));
  if (!code_out.empty()) {
    std::ofstream out(code_out, std::ios::binary);
    if (!out) throw ValidationError("cannot write " + code_out);
    out << serialize_code(r.code);
  }
  return kOk;
}

int cmd_verify(const std::string& path, const std::string& code_path, const Globals& g) {
  TgicpInstance inst = load(path, g);
  TwoSenderCode code;
  try {
    code = parse_code(slurp(code_path), inst);
  } catch (const ValidationError& e) {
    throw ValidationError(code_path + ": " + e.what());
  }
  VerifyReport v = verify(code, inst, Field(inst.q));
  std::cout << "length: " << code.length() << " (S1 " << code.l1() << ", S2 " << code.l2() << ")\n";
  for (std::size_t i = 0; i < v.decodable.size(); ++i)
    std::cout << "receiver " << i + 1 << " (x" << inst.receivers[i].demand << "): "
              << (v.decodable[i] ? "decodable" : "NOT decodable") << "\n";
  std::cout << "verify: " << (v.overall ? "PASS" : "FAIL") << "\n";
  return v.overall ? kOk : kMismatch;
}

int cmd_oracle(const std::string& path, const Globals& g) {
  TgicpInstance inst = load(path, g);
  OracleCaps caps;
  caps.max_m = g.oracle_cap;
  caps.threads = g.threads;
  OracleResult r = oracle_optimum(inst, caps);
  std::cout << "optimum: " << r.length << "\n";
  std::cout << "S1 sends " << render_rows(r.code.G1, r.code.cols1) << "\n";
  std::cout << "S2 sends " << render_rows(r.code.G2, r.code.cols2) << "\n";
  std::cout << "pairs examined: " << r.pairs << "\n";
  return kOk;
}

int cmd_random(std::size_t count, const std::string& mode, std::size_t min_m, std::size_t max_m,
               const std::string& out_dir, const Globals& g) {
  RandomSpec spec;
  spec.q = g.field ? g.field : 2;
  spec.min_m = min_m;
  spec.max_m = max_m;
  if (mode == "uniform") spec.mode = RandomMode::Uniform;
  else if (mode == "structured") spec.mode = RandomMode::Structured;
  else if (mode == "disjoint") spec.mode = RandomMode::Disjoint;
  else throw ValidationError("unknown mode '" + mode + "'");
  if (!Field::is_prime(spec.q)) throw ValidationError("field order is not prime");
  Rng rng(g.seed);
  for (std::size_t k = 0; k < count; ++k) {
    std::string text = serialize_instance(random_instance(rng, spec));
    if (out_dir.empty()) {
      if (count > 1) std::cout << (k ? "\n" : "") << "# seed " << g.seed << " instance " << k + 1 << "\n";
      std::cout << text;
    } else {
      std::filesystem::create_directories(out_dir);
      std::ostringstream name;
      name << out_dir << "/random_" << g.seed << "_" << k + 1 << ".tgic";
      std::ofstream(name.str(), std::ios::binary) << text;
    }
  }
  return kOk;
}

int cmd_paper_suite(const std::string& emit_dir, const Globals& g) {
  if (!emit_dir.empty()) {
    std::filesystem::create_directories(emit_dir);
    for (const auto& c : corpus_instances()) {
      std::ofstream out(emit_dir + "/" + c.id + ".tgic", std::ios::binary);
      out << "# " << c.title << "\n" << serialize_instance(c.instance());
    }
  }
  const Field f(2);
  Budget b;
  b.max_x = g.budget_x;
  std::size_t fails = 0;
  auto check = [&](bool ok, const std::string& id, const std::string& what) {
    std::cout << (ok ? "PASS " : "FAIL ") << id << ": " << what << "\n";
    if (!ok) ++fails;
  };
  for (const auto& e : corpus_extensions()) {
    const PartialMatrix fx = e.matrix();
    ExtensionSpec spec = ExtensionSpec::from_matrix(fx, e.blocks);
    for (std::size_t i = 0; i < spec.u(); ++i) {
      auto mr = minrank_search(spec.sub[i], f, b);
      check(mr.exact && mr.upper == e.mrk[i], e.id,
            "mrk(F" + std::to_string(i + 1) + ") = " + std::to_string(e.mrk[i]) + " (got " + std::to_string(mr.upper) +
                ")");
    }
    for (const auto& c : e.completions) spec.witness.push_back(make_witness(c, f));
    spec.minranks = e.mrk;
    for (std::size_t i = 0; i < spec.u(); ++i) {
      const bool absent = !e.P[i].has_value();
      const bool ok = absent ? spec.witness[i].P.rows() == 0 : spec.witness[i].P == *e.P[i];
      check(ok, e.id, "P" + std::to_string(i + 1) + (absent ? " absent" : " as printed"));
    }
    try {
      ExtensionWitness w = build_extension(spec, f);
      check(w.G == e.G_E, e.id, "G_E as printed");
      check(verify_extension(w, fx, f), e.id, "D_E G_E completes F^E_x");
      check(w.optimal.value_or(false), e.id, "r_top = max mrk");
      check(verify_single(w.G, sgicp_instance(fx, 2), f).overall, e.id, "every receiver decodes from G_E");
      if (e.code) check(render_rows(w.G) == *e.code, e.id, "codeword " + *e.code);
    } catch (const ExtensionError& ex) {
      check(false, e.id, ex.what());
    }
  }
  for (const auto& c : corpus_instances()) {
    const TgicpInstance inst = c.instance();
    PlanOptions o;
    o.budget = b;
    Analysis an = analyze(inst, o);
    for (Part a : kParts)
      check(an.sub[idx(a)].mr.exact && an.r(a) == c.mrk[idx(a)], c.id,
            std::string("mrk(F") + part_name(a) + ") = " + std::to_string(c.mrk[idx(a)]) +
                (c.mrk_printed ? "" : " (derived)"));
    check(an.digraph.canonical() == c.canonical, c.id, "digraph canonical " + std::to_string(c.canonical));
    Report r = plan_and_construct(an);
    check(r.upper == c.lstar && r.optimal, c.id,
          "l* = " + std::to_string(c.lstar) + (c.lstar_printed ? "" : " (derived)") + " via " +
              construction_id(r.construction));
    check(verify(r.code, inst, an.f).overall, c.id, "constructed code decodes");
    auto printed = [&](const std::string& s1, const std::string& s2, const std::string& label) {
      Mat g1 = parse_tuple(s1, inst.m, an.f), g2 = parse_tuple(s2, inst.m, an.f);
      TwoSenderCode code = TwoSenderCode::from_global(inst, g1, g2);
      VerifyReport v = verify(code, inst, an.f);
      std::string what = label + " S1 " + s1 + " S2 " + s2 + " decodes";
      if (!v.overall) {
        what += " (receivers not decoding:";
        for (auto i : v.failures()) what += " " + std::to_string(i);
        what += ")";
      }
      check(v.overall && code.length() == c.lstar, c.id, what);
    };
    if (c.S1 && c.S2) printed(*c.S1, *c.S2, "printed");
    if (c.S1_fixed && c.S2) printed(*c.S1_fixed, *c.S2, "corrected");
  }
  std::cout << (fails ? "paper-suite: " + std::to_string(fails) + " mismatch(es)\n" : "paper-suite: all checks pass\n");
  return fails ? kMismatch : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-sender groupcast index coding toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--field", g.field, "Override the field order (prime)");
  app.add_option("--budget-x", g.budget_x, "X cells allowed for the exact span search");
  app.add_option("--oracle-cap", g.oracle_cap, "Largest m the oracle accepts");
  app.add_option("--threads", g.threads, "Oracle worker threads (output is identical)");
  app.add_option("--seed", g.seed, "Seed for random generation");
  app.add_option("--mapping-table", g.mapping, "Canonical index to figure number table");

  std::string path, code_path, code_out, which, mode = "structured", out_dir;
  bool joint_to_s2 = false;
  std::size_t count = 1, min_m = 2, max_m = 6;

  auto* classify_cmd = app.add_subcommand("classify", "Digraph, participation, case label");
  classify_cmd->add_option("instance", path, "Instance file ('-' for stdin)")->required();
  auto* minrank_cmd = app.add_subcommand("minrank", "Minrank of each sub-problem and of the whole fitting matrix");
  minrank_cmd->add_option("instance", path)->required();
  auto* construct_cmd = app.add_subcommand("construct", "Plan and construct a two-sender code");
  construct_cmd->add_option("instance", path)->required();
  construct_cmd->add_option("--code-out", code_out, "Write the code file here");
  construct_cmd->add_option("--construction", which, "Force one construction by id");
  construct_cmd->add_flag("--joint-to-s2", joint_to_s2, "Send c^(J) from S2 in separable constructions");
  auto* verify_cmd = app.add_subcommand("verify", "Check a code file against an instance");
  verify_cmd->add_option("instance", path)->required();
  verify_cmd->add_option("code", code_path)->required();
  auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive two-sender optimum");
  oracle_cmd->add_option("instance", path)->required();
  auto* random_cmd = app.add_subcommand("random", "Emit reproducible random instances");
  random_cmd->add_option("--count", count);
  random_cmd->add_option("--mode", mode, "uniform | structured | disjoint");
  random_cmd->add_option("--min-m", min_m);
  random_cmd->add_option("--max-m", max_m);
  random_cmd->add_option("--out-dir", out_dir);
  auto* suite_cmd = app.add_subcommand("paper-suite", "Replay the worked examples against their printed values");
  std::string emit_dir;
  suite_cmd->add_option("--emit-dir", emit_dir, "Also write the corpus instances as files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kValidation;
  }

  try {
    if (*classify_cmd) return cmd_classify(path, g);
    if (*minrank_cmd) return cmd_minrank(path, g);
    if (*construct_cmd) return cmd_construct(path, code_out, which, joint_to_s2, g);
    if (*verify_cmd) return cmd_verify(path, code_path, g);
    if (*oracle_cmd) return cmd_oracle(path, g);
    if (*random_cmd) return cmd_random(count, mode, min_m, max_m, out_dir, g);
    if (*suite_cmd) return cmd_paper_suite(emit_dir, g);
  } catch (const OracleRefused& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kBudget;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget: " << e.what() << "\n";
    return kBudget;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  }
  return kValidation;
}
