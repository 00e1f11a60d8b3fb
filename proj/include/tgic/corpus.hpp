#pragma once
// Worked examples with their printed values.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tgic/field.hpp"
#include "tgic/joint_extension.hpp"
#include "tgic/model.hpp"

namespace tgic {

struct CorpusInstance {
  std::string id;
  std::string title;
  std::vector<std::string_view> rows;   ///< fitting matrix, columns P1 | P2 | PJ
  std::vector<std::size_t> M1, M2;
  std::array<std::size_t, 3> mrk{};     ///< mrk of F^(1), F^(2), F^(J)
  bool mrk_printed = true;              ///< false: values re-derived, not stated in the text
  std::size_t lstar = 0;
  bool lstar_printed = true;
  int canonical = 0;                    ///< interaction digraph index
  std::optional<int> h_number;
  std::optional<std::string> S1, S2;    ///< printed codewords
  std::optional<std::string> S1_fixed;  ///< corrected S1 when the printed one fails
  std::string construction;             ///< expected planner choice

  TgicpInstance instance(std::uint32_t q = 2) const {
    return instance_from_fitting(PartialMatrix::from_rows(rows), q, M1, M2);
  }
};

struct CorpusExtension {
  std::string id;
  std::string title;
  std::vector<std::string_view> rows;   ///< F^E_x
  BlockStructure blocks;
  std::vector<Mat> completions;         ///< printed F^(i)
  std::vector<std::size_t> mrk;
  std::vector<std::optional<Mat>> P;    ///< printed P^(i), nullopt when absent
  Mat G_E;
  std::optional<std::string> code;      ///< printed joint codeword tuple

  PartialMatrix matrix() const { return PartialMatrix::from_rows(rows); }
};

inline const std::vector<CorpusInstance>& corpus_instances() {
  static const std::vector<CorpusInstance> v = [] {
    const std::vector<std::size_t> a1{1, 2, 3, 4, 8, 9}, a2{5, 6, 7, 8, 9};
    const std::vector<std::size_t> b1{1, 2, 3, 4, 5, 8, 9}, b2{6, 7, 8, 9};
    std::vector<CorpusInstance> out;
    {
      CorpusInstance c;
      c.id = "example1";
      c.title = "Case I groupcast, interactions 1->2 (partial) and J->2 (full)";
      c.rows = {"1x0xx000", "0x1x0000", "x10xx000", "10xxx000", "0001x000",
                "000x1000", "000xx10x", "000xxx10", "000xx0x1"};
      c.M1 = {1, 2, 3, 6, 7, 8};
      c.M2 = {4, 5, 6, 7, 8};
      c.mrk = {2, 1, 2};
      c.mrk_printed = false;
      c.lstar = 5;
      c.lstar_printed = false;
      c.canonical = 34;
      c.h_number = 16;
      c.construction = "case1_2a";
      out.push_back(c);
    }
    {
      CorpusInstance c;
      c.id = "case2b_example";
      c.title = "Case II-B, both pairs joint extensions";
      c.rows = {"1xx00xxxx", "01xx0xx00", "x01xx00xx", "xx01xxxxx", "xx001x0xx",
                "x0x001x00", "0xxxx01xx", "x0x0xx01x", "xxxxxxxx1"};
      c.M1 = a1;
      c.M2 = a2;
      c.mrk = {2, 2, 1};
      c.lstar = 4;
      c.canonical = 64;
      c.S1 = "(x1+x3+x8+x9, x2+x4)";
      c.S2 = "(x5+x6, x6+x7)";
      c.construction = "case2b_jointext";
      out.push_back(c);
    }
    {
      CorpusInstance c;
      c.id = "case2c_example";
      c.title = "Case II-C, (1,J) joint extension";
      c.rows = {"1xx00x0xx", "01xx00x00", "001xx00xx", "x001x0xxx", "xx001x0xx",
                "x00001x00", "0x0xx01xx", "xxx00001x", "xxx0x00x1"};
      c.M1 = b1;
      c.M2 = b2;
      c.mrk = {3, 2, 1};
      c.lstar = 5;
      c.canonical = 32;
      c.S1 = "(x1+x2+x3+x8+x9, x2+x4, x3+x5)";
      c.S2 = "(x6, x7)";
      c.construction = "case2c";
      out.push_back(c);
    }
    {
      CorpusInstance c;
      c.id = "h59_example";
      c.title = "Case II-E, digraph H59, j = 2";
      c.rows = {"1xx00xx00", "010x00000", "0010x0000", "x001xxx00", "xx001xx00",
                "xxx001x00", "xxxxxx100", "x0xx0xx1x", "0x00x0001"};
      c.M1 = b1;
      c.M2 = b2;
      c.mrk = {3, 1, 2};
      c.lstar = 5;
      c.canonical = 44;
      c.h_number = 59;
      c.S1 = "(x1+x2+x3, x2+x4, x3+x5)";
      c.S2 = "(x6+x7+x8, x9)";
      c.S1_fixed = "(x1+x2+x3+x8, x2+x4+x9, x3+x5)";
      c.construction = "case2e_jk";
      out.push_back(c);
    }
    {
      CorpusInstance c;
      c.id = "h62_example";
      c.title = "Case II-E, digraph H62";
      c.rows = {"1xx00xxx0", "010x0000x", "001xx0000", "x001xxxxx", "xx001xxxx",
                "xxx001x00", "xxxxxx100", "00000xx1x", "000000001"};
      c.M1 = b1;
      c.M2 = b2;
      c.mrk = {3, 1, 2};
      c.lstar = 5;
      c.canonical = 40;
      c.h_number = 62;
      c.S1 = "(x1+x2+x3+x8, x2+x4+x9, x3+x5)";
      c.S2 = "(x6+x7+x8, x9)";
      c.construction = "case2e_jk";
      out.push_back(c);
    }
    return out;
  }();
  return v;
}

inline const std::vector<CorpusExtension>& corpus_extensions() {
  static const std::vector<CorpusExtension> v = [] {
    const Mat F1{{1, 0, 1, 0, 0}, {0, 1, 0, 1, 0}, {0, 0, 1, 1, 1}, {1, 0, 0, 1, 1}, {1, 1, 0, 0, 1}};
    const Mat P1{{1, 0, 1}, {1, 1, 1}};
    std::vector<CorpusExtension> out;
    {
      CorpusExtension e;
      e.id = "extension_optimal";
      e.title = "joint extension from optimal completions";
      e.rows = {"1xx00x0x", "01xx0xx0", "001xx000", "x001xx0x", "xx0010xx",
                "x0x0010x", "0x0x0x10", "xxxx00x1", "xxxxxx01"};
      e.blocks = {{5, 4}, {5, 3}};
      e.completions = {F1, Mat{{1, 0, 1}, {1, 1, 0}, {0, 1, 1}, {1, 0, 1}}};
      e.mrk = {3, 2};
      e.P = {P1, Mat{{1, 1}, {1, 0}}};
      e.G_E = Mat{{1, 0, 1, 0, 0, 1, 0, 1}, {0, 1, 0, 1, 0, 1, 1, 0}, {0, 0, 1, 1, 1, 0, 0, 0}};
      e.code = "(x1+x3+x6+x8, x2+x4+x6+x7, x3+x4+x5)";
      out.push_back(e);
    }
    {
      CorpusExtension e;
      e.id = "extension_suboptimal";
      e.title = "joint extension using a rank-3 completion of a rank-2 block";
      e.rows = {"1xx00x00", "01xx00x0", "001xx00x", "x001xx0x", "xx001xxx",
                "x0x0010x", "0x0x0x10", "00xxx0x1"};
      e.blocks = {{5, 3}, {5, 3}};
      e.completions = {F1, Mat::identity(3)};
      e.mrk = {3, 2};
      e.P = {P1, std::nullopt};
      e.G_E = Mat{{1, 0, 1, 0, 0, 1, 0, 0}, {0, 1, 0, 1, 0, 0, 1, 0}, {0, 0, 1, 1, 1, 0, 0, 1}};
      out.push_back(e);
    }
    return out;
  }();
  return v;
}

inline const CorpusInstance& corpus_instance(std::string_view id) {
  for (const auto& c : corpus_instances())
    if (c.id == id) return c;
  throw ValidationError("unknown corpus entry '" + std::string(id) + "'");
}

inline const CorpusExtension& corpus_extension(std::string_view id) {
  for (const auto& c : corpus_extensions())
    if (c.id == id) return c;
  throw ValidationError("unknown corpus entry '" + std::string(id) + "'");
}

}  // namespace tgic
