#pragma once

// Gluing two graded seeds along a pair of frozen variables of equal degree.

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "segre/error.hpp"
#include "segre/laurent.hpp"
#include "segre/seed.hpp"

namespace segre {

enum class Side { left, right, proxy };

inline std::string_view to_string(Side s) {
  switch (s) {
    case Side::left: return "left";
    case Side::right: return "right";
    case Side::proxy: return "proxy";
  }
  return "?";
}

/// Where a glued slot came from. For the proxy, `origin` is unused.
struct Provenance {
  Side side = Side::left;
  VariableId origin;
  friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// Suffix appended to right-hand names that collide with left-hand ones.
inline constexpr std::string_view kRenameSuffix = "__r";
inline constexpr std::string_view kProxyName = "z";
inline constexpr std::string_view kProxySuffix = "__p";

namespace detail {

// `base + suffix`, then `base + suffix + 2`, ... until unused.
inline std::string fresh_name(const std::string& base, std::string_view suffix,
                              const std::unordered_set<std::string>& taken) {
  std::string candidate = base + std::string(suffix);
  for (int i = 2; taken.count(candidate); ++i)
    candidate = base + std::string(suffix) + std::to_string(i);
  return candidate;
}

}  // namespace detail

/// Names of the right factor after collision renaming, by right VariableId.
inline std::vector<std::string> right_names(const Universe& left,
                                            const Universe& right) {
  std::unordered_set<std::string> taken(left.names().begin(), left.names().end());
  taken.insert(right.names().begin(), right.names().end());
  std::vector<std::string> out;
  for (const auto& n : right.names()) {
    if (!left.find(n)) {
      out.push_back(n);
      continue;
    }
    out.push_back(detail::fresh_name(n, kRenameSuffix, taken));
    taken.insert(out.back());
  }
  return out;
}

/// Name of the proxy variable: "z" unless a factor already uses it.
inline std::string proxy_name(const Universe& left, const std::vector<std::string>& right) {
  std::unordered_set<std::string> taken(left.names().begin(), left.names().end());
  taken.insert(right.begin(), right.end());
  std::string base(kProxyName);
  return taken.count(base) ? detail::fresh_name(base, kProxySuffix, taken) : base;
}

struct GluedSeed {
  Seed seed;
  VariableId z;
  VariableId left_glued;   // x, in the left factor
  VariableId right_glued;  // y, in the right factor
  std::vector<Provenance> provenance;  // by glued VariableId
  UniversePtr left_universe;
  UniversePtr right_universe;

  /// Glued slot holding a given factor variable (x and y map to z).
  VariableId from_left(VariableId v) const { return locate(Side::left, v); }
  VariableId from_right(VariableId v) const { return locate(Side::right, v); }

  /// Common degree of the glued frozen pair.
  Exponent glued_degree() const { return seed.degree(z); }

 private:
  VariableId locate(Side side, VariableId v) const {
    if ((side == Side::left && v == left_glued) ||
        (side == Side::right && v == right_glued))
      return z;
    for (std::uint32_t i = 0; i < provenance.size(); ++i)
      if (provenance[i].side == side && provenance[i].origin == v)
        return VariableId{i};
    throw Error("factor variable has no glued counterpart");
  }
};

namespace detail {

inline LaurentPoly carry_over(const LaurentPoly& p, const GluedSeed& g, Side side) {
  const auto& src = *p.universe();
  std::vector<Monomial> images;
  for (std::uint32_t i = 0; i < src.size(); ++i)
    images.push_back(Monomial::variable(
        side == Side::left ? g.from_left(VariableId{i}) : g.from_right(VariableId{i})));
  return substitute_monomials(p, g.seed.universe(), images);
}

}  // namespace detail

/// Transports a left-factor Laurent polynomial into the glued universe (x -> z).
inline LaurentPoly glued_image_left(const GluedSeed& g, const LaurentPoly& p) {
  return detail::carry_over(p, g, Side::left);
}
/// Transports a right-factor Laurent polynomial into the glued universe (y -> z).
inline LaurentPoly glued_image_right(const GluedSeed& g, const LaurentPoly& p) {
  return detail::carry_over(p, g, Side::right);
}

/// Glues s1 at frozen x and s2 at frozen y. The glued cluster lists the
/// left variables other than x, then the right ones other than y, then z.
inline GluedSeed glue(const Seed& s1, VariableId x, const Seed& s2, VariableId y) {
  if (x.index >= s1.size() || !s1.is_frozen(x))
    throw Error("left glue variable must be frozen");
  if (y.index >= s2.size() || !s2.is_frozen(y))
    throw Error("right glue variable must be frozen");
  if (s1.degree(x) != s2.degree(y)) throw DegreeMismatch(s1.degree(x), s2.degree(y));

  const auto& lu = *s1.universe();
  const auto renamed = right_names(lu, *s2.universe());
  std::vector<std::string> names;
  std::vector<Provenance> provenance;
  GradingVector initial;
  GradingVector grading;
  std::vector<bool> frozen;
  for (std::uint32_t i = 0; i < s1.size(); ++i) {
    if (VariableId{i} == x) continue;
    names.push_back(lu.names()[i]);
    provenance.push_back({Side::left, VariableId{i}});
    initial.push_back(s1.initial_degrees()[i]);
    grading.push_back(s1.grading()[i]);
    frozen.push_back(s1.is_frozen(VariableId{i}));
  }
  for (std::uint32_t i = 0; i < s2.size(); ++i) {
    if (VariableId{i} == y) continue;
    names.push_back(renamed[i]);
    provenance.push_back({Side::right, VariableId{i}});
    initial.push_back(s2.initial_degrees()[i]);
    grading.push_back(s2.grading()[i]);
    frozen.push_back(s2.is_frozen(VariableId{i}));
  }
  names.push_back(proxy_name(lu, renamed));
  provenance.push_back({Side::proxy, VariableId{}});
  initial.push_back(s1.degree(x));
  grading.push_back(s1.degree(x));
  frozen.push_back(true);

  auto universe = Universe::make(names);
  const auto n = static_cast<std::uint32_t>(names.size());
  VariableId z{n - 1};

  // Block matrix: [\hat B_1^x 0; 0 \hat B_2^y; B_1^x B_2^y].
  const RowExcision left = excise_row(s1.matrix(), x);
  const RowExcision right = excise_row(s2.matrix(), y);
  std::vector<VariableId> rows;
  std::vector<VariableId> cols;
  for (std::uint32_t i = 0; i < n; ++i) {
    rows.push_back(VariableId{i});
    if (!frozen[i]) cols.push_back(VariableId{i});
  }
  ExchangeMatrix b(rows, cols);
  const std::size_t lc = left.remainder.col_count();
  const std::size_t lr = left.remainder.row_count();
  for (std::size_t r = 0; r < lr; ++r)
    for (std::size_t c = 0; c < lc; ++c) b.set(r, c, left.remainder.entry(r, c));
  for (std::size_t r = 0; r < right.remainder.row_count(); ++r)
    for (std::size_t c = 0; c < right.remainder.col_count(); ++c)
      b.set(lr + r, lc + c, right.remainder.entry(r, c));
  for (std::size_t c = 0; c < lc; ++c) b.set(n - 1, c, left.row[c]);
  for (std::size_t c = 0; c < right.row.size(); ++c) b.set(n - 1, lc + c, right.row[c]);

  GluedSeed g{Seed(universe, initial, frozen,
                   std::vector<LaurentPoly>(n, LaurentPoly(universe)), b, grading),
              z, x, y, provenance, s1.universe(), s2.universe()};
  std::vector<LaurentPoly> values;
  for (std::uint32_t i = 0; i < n; ++i) {
    const auto& p = provenance[i];
    if (p.side == Side::left)
      values.push_back(glued_image_left(g, s1.value(p.origin)));
    else if (p.side == Side::right)
      values.push_back(glued_image_right(g, s2.value(p.origin)));
    else
      values.push_back(LaurentPoly::variable(universe, z));
  }
  g.seed = Seed(universe, initial, frozen, std::move(values), b, grading);
  return g;
}

inline GluedSeed glue(const Seed& s1, std::string_view x, const Seed& s2,
                      std::string_view y) {
  return glue(s1, s1.id(x), s2, s2.id(y));
}

/// Builds a glued seed that differs from `g` only in its seed data.
inline GluedSeed with_seed(const GluedSeed& g, Seed s) {
  GluedSeed out = g;
  out.seed = std::move(s);
  return out;
}

/// True iff `a` (= A₁□A₂) and `b` (= A₂□A₁) carry the same seed once the
/// left and right blocks of one are swapped.
inline bool glued_seeds_match_swapped(const GluedSeed& a, const GluedSeed& b) {
  const auto n = a.seed.size();
  if (b.seed.size() != n || a.provenance.size() != n || b.provenance.size() != n)
    return false;
  std::vector<VariableId> perm(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    const auto& p = a.provenance[i];
    if (p.side == Side::proxy) {
      perm[i] = b.z;
    } else {
      Provenance want{p.side == Side::left ? Side::right : Side::left, p.origin};
      bool found = false;
      for (std::uint32_t j = 0; j < n; ++j)
        if (b.provenance[j] == want) {
          perm[i] = VariableId{j};
          found = true;
        }
      if (!found) return false;
    }
  }
  std::vector<Monomial> images;
  for (auto p : perm) images.push_back(Monomial::variable(p));
  for (std::uint32_t i = 0; i < n; ++i) {
    VariableId va{i};
    VariableId vb = perm[i];
    if (a.seed.is_frozen(va) != b.seed.is_frozen(vb)) return false;
    if (a.seed.degree(va) != b.seed.degree(vb)) return false;
    if (a.seed.initial_degrees()[i] != b.seed.initial_degrees()[vb.index]) return false;
    if (substitute_monomials(a.seed.value(va), b.seed.universe(), images) !=
        b.seed.value(vb))
      return false;
    for (auto k : a.seed.mutable_ids())
      if (a.seed.matrix().at(va, k) != b.seed.matrix().at(vb, perm[k.index]))
        return false;
  }
  return true;
}

inline bool glue_is_commutative_check(const Seed& s1, VariableId x, const Seed& s2,
                                      VariableId y) {
  return glued_seeds_match_swapped(glue(s1, x, s2, y), glue(s2, y, s1, x));
}

}  // namespace segre
