#pragma once

// Hand-built seeds used across the suites. They are assembled entry by entry
// so that the document reader is not on the path of the algebra tests.

#include <fstream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "segre/glue.hpp"
#include "segre/laurent.hpp"
#include "segre/seed.hpp"

namespace segre::testing {

using ArrowSpec = std::tuple<std::string, std::string, Exponent>;

/// Builds a seed from names, frozen flags, arrows and degrees. Rows are the
/// variables in order; columns are the mutable ones in order.
inline Seed make_seed(const std::vector<std::string>& names, const std::vector<bool>& frozen,
                      const std::vector<ArrowSpec>& arrows, const GradingVector& degrees) {
  auto u = Universe::make(names);
  std::vector<VariableId> rows;
  std::vector<VariableId> cols;
  for (std::uint32_t i = 0; i < names.size(); ++i) {
    rows.push_back(VariableId{i});
    if (!frozen[i]) cols.push_back(VariableId{i});
  }
  ExchangeMatrix b(rows, cols);
  auto col_of = [&](VariableId v) -> std::optional<std::size_t> {
    for (std::size_t c = 0; c < cols.size(); ++c)
      if (cols[c] == v) return c;
    return std::nullopt;
  };
  for (const auto& [from, to, m] : arrows) {
    VariableId f = u->at(from);
    VariableId t = u->at(to);
    if (auto c = col_of(t)) b.set(f.index, *c, b.entry(f.index, *c) + m);
    if (auto c = col_of(f)) b.set(t.index, *c, b.entry(t.index, *c) - m);
  }
  return Seed(u, frozen, b, degrees);
}

/// x2 -> x1 -> x3, x2 and x3 frozen, all degrees 1.
inline Seed example_left() {
  return make_seed({"x1", "x2", "x3"}, {false, true, true}, {{"x2", "x1", 1}, {"x1", "x3", 1}},
                   {1, 1, 1});
}

/// y3 -> y1 -> y2, y2 and y3 frozen, all degrees 1.
inline Seed example_right() {
  return make_seed({"y1", "y2", "y3"}, {false, true, true}, {{"y3", "y1", 1}, {"y1", "y2", 1}},
                   {1, 1, 1});
}

/// A2 with a disconnected frozen vertex.
inline Seed a2_seed() {
  return make_seed({"a1", "a2", "f"}, {false, false, true}, {{"a1", "a2", 1}}, {0, 0, 1});
}

/// A3 linear orientation with a disconnected frozen vertex.
inline Seed a3_seed() {
  return make_seed({"a1", "a2", "a3", "f"}, {false, false, false, true},
                   {{"a1", "a2", 1}, {"a2", "a3", 1}}, {0, 0, 0, 1});
}

/// Double arrows around a 3-cycle with a disconnected frozen vertex.
inline Seed markov_seed() {
  return make_seed({"m1", "m2", "m3", "f"}, {false, false, false, true},
                   {{"m1", "m2", 2}, {"m2", "m3", 2}, {"m3", "m1", 2}}, {1, 1, 1, 1});
}

/// Only frozen vertices.
inline Seed frozen_only(const std::vector<std::string>& names) {
  return make_seed(names, std::vector<bool>(names.size(), true), {},
                   GradingVector(names.size(), 1));
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string data_path(const std::string& name) {
  return std::string(SEGRE_DATA_DIR) + "/" + name;
}

// Glued example with an extra arrow x1 -> y1; the z row is adjusted so that
// the grading condition still holds.
inline GluedSeed corrupted_glued_example() {
  Seed s1 = example_left();
  Seed s2 = example_right();
  auto g = glue(s1, "x3", s2, "y3");
  ExchangeMatrix b = g.seed.matrix();
  VariableId x1 = g.seed.id("x1");
  VariableId y1 = g.seed.id("y1");
  auto cx = *b.col_position(x1);
  auto cy = *b.col_position(y1);
  b.set(*b.row_position(x1), cy, 1);
  b.set(*b.row_position(y1), cx, -1);
  b.set(*b.row_position(g.z), cx, 0);
  b.set(*b.row_position(g.z), cy, 0);
  return with_seed(g, g.seed.with_matrix(b));
}

}  // namespace segre::testing
