#pragma once

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "rmlab/util.hpp"

namespace rmlab {

// Default modulus table: for each (p, degree) the lexicographically smallest
// monic irreducible polynomial over F_p, coefficients ascending ("smallest"
// compares sum c_i p^i over the non-leading coefficients). Regenerable by
// scanning candidates in that order and keeping the first that survives trial
// division; test_gf re-verifies every entry.
//
// Callers may override via the RMLAB_MODULI environment variable, pointing at
// a text file with lines "p degree c0 c1 ... cdeg".

struct ModulusEntry {
  std::uint32_t p;
  int degree;
  std::vector<int> coeffs;
};

inline const std::vector<ModulusEntry>& builtin_moduli() {
  static const std::vector<ModulusEntry> table = {
      {2, 1, {0, 1}},
      {2, 2, {1, 1, 1}},
      {2, 3, {1, 1, 0, 1}},
      {2, 4, {1, 1, 0, 0, 1}},
      {2, 5, {1, 0, 1, 0, 0, 1}},
      {2, 6, {1, 1, 0, 0, 0, 0, 1}},
      {2, 7, {1, 1, 0, 0, 0, 0, 0, 1}},
      {2, 8, {1, 1, 0, 1, 1, 0, 0, 0, 1}},
      {2, 9, {1, 1, 0, 0, 0, 0, 0, 0, 0, 1}},
      {2, 10, {1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1}},
      {2, 11, {1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
      {2, 12, {1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
      {2, 13, {1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
      {2, 14, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
      {2, 15, {1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
      {2, 16, {1, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
      {3, 1, {0, 1}},
      {3, 2, {1, 0, 1}},
      {3, 3, {1, 2, 0, 1}},
      {3, 4, {2, 1, 0, 0, 1}},
      {3, 5, {1, 2, 0, 0, 0, 1}},
      {3, 6, {2, 1, 0, 0, 0, 0, 1}},
      {3, 7, {2, 0, 1, 0, 0, 0, 0, 1}},
      {3, 8, {2, 0, 1, 0, 0, 0, 0, 0, 1}},
      {5, 1, {0, 1}},
      {5, 2, {2, 0, 1}},
      {5, 3, {1, 1, 0, 1}},
      {5, 4, {2, 0, 0, 0, 1}},
      {5, 5, {1, 4, 0, 0, 0, 1}},
      {5, 6, {2, 1, 0, 0, 0, 0, 1}},
      {7, 1, {0, 1}},
      {7, 2, {1, 0, 1}},
      {7, 3, {2, 0, 0, 1}},
      {7, 4, {1, 1, 0, 0, 1}},
  };
  return table;
}

inline std::vector<ModulusEntry> load_moduli_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open moduli file: " + path);
  std::vector<ModulusEntry> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    ModulusEntry e;
    int deg = 0;
    if (!(ss >> e.p >> deg)) throw io_error("bad moduli line: " + line);
    e.degree = deg;
    int c = 0;
    while (ss >> c) e.coeffs.push_back(c);
    if (static_cast<int>(e.coeffs.size()) != deg + 1)
      throw io_error("moduli line has wrong coefficient count: " + line);
    out.push_back(std::move(e));
  }
  return out;
}

// Default modulus for F_{p^degree}, honouring RMLAB_MODULI when set.
inline std::vector<int> default_modulus(std::uint32_t p, int degree) {
  if (const char* env = std::getenv("RMLAB_MODULI")) {
    for (const auto& e : load_moduli_file(env))
      if (e.p == p && e.degree == degree) return e.coeffs;
  }
  for (const auto& e : builtin_moduli())
    if (e.p == p && e.degree == degree) return e.coeffs;
  throw validation_error("no default modulus for p=" + std::to_string(p) +
                         ", degree=" + std::to_string(degree) +
                         " (supply one explicitly)");
}

}  // namespace rmlab
