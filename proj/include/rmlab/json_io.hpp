#pragma once

// JSON serialization of every domain object. Integers everywhere: field
// elements travel as their codes, so files are bit-exact and portable.

#include <fstream>
#include <string>
#include <variant>

#include <json.hpp>

#include "rmlab/bridge.hpp"
#include "rmlab/linset.hpp"
#include "rmlab/rmcode.hpp"

namespace rmlab {

using json = nlohmann::json;

inline json to_json(const FieldSpec& s) {
  return json{{"p", s.p}, {"h", s.h}, {"n", s.n}, {"modulus", s.modulus}};
}

inline FieldSpec field_spec_from_json(const json& j) {
  FieldSpec s;
  s.p = j.at("p").get<std::uint32_t>();
  s.h = j.at("h").get<int>();
  s.n = j.at("n").get<int>();
  s.modulus = j.at("modulus").get<std::vector<int>>();
  return s;
}

inline json to_json(const LinPoly& f) { return json{{"coeffs", f.c}}; }

inline LinPoly poly_from_json(const FieldPtr& F, const json& j) {
  auto c = j.at("coeffs").get<std::vector<Elem>>();
  for (Elem x : c)
    if (x >= F->order()) throw io_error("coefficient code out of range");
  return LinPoly(F, std::move(c));
}

inline json to_json(const SquareCode& C) {
  json basis = json::array();
  for (const auto& f : C.basis()) basis.push_back(f.c);
  json j{{"field", to_json(C.field()->spec())},
         {"kind", "square"},
         {"m", C.field()->n()},
         {"basis", basis}};
  if (C.lin_h() != C.field()->h()) j["linearity_h"] = C.lin_h();
  return j;
}

inline json to_json(const MatrixCode& C) {
  json basis = json::array();
  for (const auto& M : C.basis()) {
    json rows = json::array();
    for (int i = 0; i < C.m(); ++i)
      for (int j2 = 0; j2 < C.nc(); ++j2) rows.push_back(M.at(i, j2));
    basis.push_back(rows);
  }
  json j{{"field", to_json(C.field()->spec())},
         {"kind", "matrix"},
         {"m", C.m()},
         {"basis", basis}};
  if (C.nc() != C.field()->n()) j["nc"] = C.nc();
  return j;
}

using AnyCode = std::variant<SquareCode, MatrixCode>;

inline AnyCode code_from_json(const json& j) {
  FieldPtr F = make_field(field_spec_from_json(j.at("field")));
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "square") {
    int lin_h = j.value("linearity_h", F->h());
    std::vector<LinPoly> gens;
    for (const auto& row : j.at("basis")) gens.push_back(poly_from_json(F, json{{"coeffs", row}}));
    return SquareCode(F, gens, lin_h);
  }
  if (kind == "matrix") {
    int m = j.at("m").get<int>();
    int nc = j.value("nc", F->n());
    std::vector<FqMat> gens;
    for (const auto& row : j.at("basis")) {
      auto flat = row.get<std::vector<Elem>>();
      if (static_cast<int>(flat.size()) != m * nc)
        throw io_error("matrix basis entry has wrong length");
      FqMat M(F, m, nc);
      for (int i = 0; i < m; ++i)
        for (int c = 0; c < nc; ++c) M.at(i, c) = flat[static_cast<size_t>(i * nc + c)];
      gens.push_back(std::move(M));
    }
    return MatrixCode(F, m, nc, gens);
  }
  throw io_error("unknown code kind: " + kind);
}

inline json to_json(const Subspace& U) {
  json basis = json::array();
  for (const auto& v : U.basis()) basis.push_back(v);
  return json{{"field", to_json(U.field()->spec())},
              {"r", U.r()},
              {"basis", basis}};
}

inline Subspace subspace_from_json(const json& j) {
  FieldPtr F = make_field(field_spec_from_json(j.at("field")));
  int r = j.at("r").get<int>();
  std::vector<std::vector<Elem>> gens;
  for (const auto& row : j.at("basis")) {
    auto v = row.get<std::vector<Elem>>();
    for (Elem x : v)
      if (x >= F->order()) throw io_error("vector code out of range");
    gens.push_back(std::move(v));
  }
  return Subspace(F, r, gens);
}

inline json to_json(const CodeParams& P) {
  json j{{"m", P.m},       {"n", P.n},
         {"q", P.q},       {"d", P.d},
         {"dim", P.dim},   {"size_p_exp", P.size_p_exp},
         {"mrd", P.mrd}};
  return j;
}

inline json to_json(const CodeFingerprint& fp, std::uint32_t p) {
  return json{{"params", to_json(fp.params)},
              {"weights", fp.weights},
              {"left_idealiser_order", ipow64(p, static_cast<unsigned>(fp.left_order_p_exp))},
              {"right_idealiser_order", ipow64(p, static_cast<unsigned>(fp.right_order_p_exp))},
              {"left_is_field", fp.left_is_field},
              {"right_is_field", fp.right_is_field}};
}

inline json to_json(const CorrespondenceReport& rep) {
  return json{{"direction", rep.direction},
              {"scattered", rep.scattered},
              {"mrd", rep.mrd},
              {"agree", rep.agree},
              {"roundtrip_equal", rep.roundtrip_equal},
              {"code_params", to_json(rep.code_params)},
              {"subspace_rank", rep.subspace_rank}};
}

inline json to_json(const LinearSetSummary& S) {
  json spec = json::object();
  for (const auto& [w, c] : S.weight_spectrum) spec[std::to_string(w)] = c;
  json j{{"rank", S.rank},
         {"size", S.size},
         {"max_size", S.max_size},
         {"scattered", S.scattered},
         {"max_point_weight", S.max_point_weight},
         {"weight_spectrum", spec},
         {"linearity_exp", S.linearity_exp},
         {"subgeometry_case", S.subgeometry_case}};
  if (S.points.size() <= 1024) {
    json pts = json::array();
    for (const auto& [pt, w] : S.points)
      pts.push_back(json{{"point", pt}, {"weight", w}});
    j["points"] = pts;
  }
  return j;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw io_error("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

inline void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace rmlab
