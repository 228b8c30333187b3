#pragma once

// Graded skew-symmetric seeds and their mutation.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "segre/error.hpp"
#include "segre/laurent.hpp"

namespace segre {

constexpr Exponent bracket_plus(Exponent n) noexcept { return n > 0 ? n : 0; }
constexpr Exponent bracket_minus(Exponent n) noexcept { return n < 0 ? -n : 0; }

/// Extended exchange matrix: rows are all cluster variables, columns the
/// mutable ones. Entry (j, k) > 0 means that many arrows j -> k.
class ExchangeMatrix {
 public:
  ExchangeMatrix() = default;

  ExchangeMatrix(std::vector<VariableId> rows, std::vector<VariableId> cols,
                 std::vector<Exponent> entries = {})
      : rows_(std::move(rows)), cols_(std::move(cols)), entries_(std::move(entries)) {
    if (entries_.empty()) entries_.assign(rows_.size() * cols_.size(), 0);
    if (entries_.size() != rows_.size() * cols_.size())
      throw Error("exchange matrix entry count does not match its shape");
    auto sorted = rows_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw Error("exchange matrix rows repeat a variable");
    for (auto c : cols_)
      if (!row_position(c))
        throw Error("exchange matrix column is not one of its rows");
    auto sc = cols_;
    std::sort(sc.begin(), sc.end());
    if (std::adjacent_find(sc.begin(), sc.end()) != sc.end())
      throw Error("exchange matrix columns repeat a variable");
  }

  const std::vector<VariableId>& rows() const noexcept { return rows_; }
  const std::vector<VariableId>& cols() const noexcept { return cols_; }
  std::size_t row_count() const noexcept { return rows_.size(); }
  std::size_t col_count() const noexcept { return cols_.size(); }

  std::optional<std::size_t> row_position(VariableId v) const {
    auto it = std::find(rows_.begin(), rows_.end(), v);
    if (it == rows_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - rows_.begin());
  }
  std::optional<std::size_t> col_position(VariableId v) const {
    auto it = std::find(cols_.begin(), cols_.end(), v);
    if (it == cols_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - cols_.begin());
  }
  bool is_mutable(VariableId v) const { return col_position(v).has_value(); }

  Exponent entry(std::size_t r, std::size_t c) const {
    return entries_[r * cols_.size() + c];
  }
  void set(std::size_t r, std::size_t c, Exponent value) {
    entries_[r * cols_.size() + c] = value;
  }

  /// B_{row,col} by variable; zero when col is frozen.
  Exponent at(VariableId row, VariableId col) const {
    auto r = row_position(row);
    if (!r) throw Error("row variable not in exchange matrix");
    auto c = col_position(col);
    return c ? entry(*r, *c) : 0;
  }

  std::span<const Exponent> entries() const noexcept { return entries_; }

  friend bool operator==(const ExchangeMatrix&, const ExchangeMatrix&) = default;

 private:
  std::vector<VariableId> rows_;
  std::vector<VariableId> cols_;
  std::vector<Exponent> entries_;  // row-major
};

/// Degrees indexed by VariableId.
using GradingVector = std::vector<Exponent>;

/// A matrix with one frozen row taken out: B^x and \hat B^x.
struct RowExcision {
  ExchangeMatrix source;
  VariableId excised;
  std::size_t position = 0;
  std::vector<Exponent> row;
  ExchangeMatrix remainder;

  ExchangeMatrix reassemble() const {
    auto rows = remainder.rows();
    rows.insert(rows.begin() + static_cast<std::ptrdiff_t>(position), excised);
    ExchangeMatrix out(rows, remainder.cols());
    for (std::size_t r = 0, src = 0; r < rows.size(); ++r) {
      for (std::size_t c = 0; c < out.col_count(); ++c)
        out.set(r, c, r == position ? row[c] : remainder.entry(src, c));
      if (r != position) ++src;
    }
    return out;
  }
};

inline RowExcision excise_row(const ExchangeMatrix& b, VariableId v) {
  auto pos = b.row_position(v);
  if (!pos) throw Error("cannot excise a row that is not present");
  if (b.is_mutable(v)) throw Error("only frozen rows can be excised");
  RowExcision out{b, v, *pos, {}, {}};
  std::vector<VariableId> rows;
  for (auto r : b.rows())
    if (r != v) rows.push_back(r);
  out.remainder = ExchangeMatrix(rows, b.cols());
  for (std::size_t c = 0; c < b.col_count(); ++c) out.row.push_back(b.entry(*pos, c));
  for (std::size_t r = 0, dst = 0; r < b.row_count(); ++r) {
    if (r == *pos) continue;
    for (std::size_t c = 0; c < b.col_count(); ++c)
      out.remainder.set(dst, c, b.entry(r, c));
    ++dst;
  }
  return out;
}

inline ExchangeMatrix mutate_matrix(const ExchangeMatrix& b, VariableId k,
                                    const Universe* names = nullptr) {
  auto ck = b.col_position(k);
  if (!ck)
    throw FrozenMutation(names ? names->name(k) : std::to_string(k.index));
  std::size_t rk = *b.row_position(k);
  ExchangeMatrix out = b;
  for (std::size_t r = 0; r < b.row_count(); ++r) {
    for (std::size_t c = 0; c < b.col_count(); ++c) {
      if (r == rk || c == *ck) {
        out.set(r, c, -b.entry(r, c));
        continue;
      }
      Exponent bjk = b.entry(r, *ck);
      Exponent bkl = b.entry(rk, c);
      out.set(r, c, b.entry(r, c) + bracket_plus(bjk) * bracket_plus(bkl) -
                        bracket_minus(bjk) * bracket_minus(bkl));
    }
  }
  return out;
}

/// A graded seed. Slot i holds the cluster variable with VariableId i; its
/// value is a Laurent polynomial in the initial variables of the universe.
class Seed {
 public:
  /// Initial seed: every slot holds its own variable.
  Seed(UniversePtr universe, std::vector<bool> frozen, ExchangeMatrix matrix,
       GradingVector grading)
      : universe_(std::move(universe)),
        initial_degrees_(grading),
        frozen_(std::move(frozen)),
        matrix_(std::move(matrix)),
        grading_(std::move(grading)) {
    for (std::uint32_t i = 0; i < universe_->size(); ++i)
      values_.push_back(LaurentPoly::variable(universe_, VariableId{i}));
    check_shape();
  }

  Seed(UniversePtr universe, GradingVector initial_degrees,
       std::vector<bool> frozen, std::vector<LaurentPoly> values,
       ExchangeMatrix matrix, GradingVector grading)
      : universe_(std::move(universe)),
        initial_degrees_(std::move(initial_degrees)),
        frozen_(std::move(frozen)),
        values_(std::move(values)),
        matrix_(std::move(matrix)),
        grading_(std::move(grading)) {
    check_shape();
  }

  const UniversePtr& universe() const noexcept { return universe_; }
  std::size_t size() const noexcept { return values_.size(); }
  const std::string& name(VariableId v) const { return universe_->name(v); }
  VariableId id(std::string_view name) const { return universe_->at(name); }

  bool is_frozen(VariableId v) const { return frozen_.at(v.index); }
  const std::vector<bool>& frozen() const noexcept { return frozen_; }
  const LaurentPoly& value(VariableId v) const { return values_.at(v.index); }
  const std::vector<LaurentPoly>& values() const noexcept { return values_; }
  const ExchangeMatrix& matrix() const noexcept { return matrix_; }
  const GradingVector& grading() const noexcept { return grading_; }
  Exponent degree(VariableId v) const { return grading_.at(v.index); }
  const GradingVector& initial_degrees() const noexcept { return initial_degrees_; }

  std::vector<VariableId> mutable_ids() const { return matrix_.cols(); }
  std::vector<VariableId> frozen_ids() const {
    std::vector<VariableId> out;
    for (std::uint32_t i = 0; i < frozen_.size(); ++i)
      if (frozen_[i]) out.push_back(VariableId{i});
    return out;
  }

  Seed with_matrix(ExchangeMatrix m) const {
    return Seed(universe_, initial_degrees_, frozen_, values_, std::move(m), grading_);
  }
  Seed with_grading(GradingVector g) const {
    return Seed(universe_, initial_degrees_, frozen_, values_, matrix_, std::move(g));
  }
  Seed with_value(VariableId v, LaurentPoly value, Exponent degree) const {
    Seed out = *this;
    out.values_.at(v.index) = std::move(value);
    out.grading_.at(v.index) = degree;
    return out;
  }

  friend bool operator==(const Seed& a, const Seed& b) {
    return same_universe(a.universe_, b.universe_) &&
           a.initial_degrees_ == b.initial_degrees_ && a.frozen_ == b.frozen_ &&
           a.values_ == b.values_ && a.matrix_ == b.matrix_ &&
           a.grading_ == b.grading_;
  }

 private:
  void check_shape() const {
    std::size_t n = universe_->size();
    if (frozen_.size() != n || values_.size() != n || grading_.size() != n ||
        initial_degrees_.size() != n)
      throw Error("seed components disagree on the number of variables");
    std::vector<VariableId> rows;
    std::vector<VariableId> cols;
    for (std::uint32_t i = 0; i < n; ++i) {
      rows.push_back(VariableId{i});
      if (!frozen_[i]) cols.push_back(VariableId{i});
    }
    if (matrix_.rows() != rows || matrix_.cols() != cols)
      throw Error("exchange matrix must have all variables as rows and the "
                  "mutable ones as columns, in order");
    for (const auto& v : values_)
      if (!same_universe(v.universe(), universe_)) throw UniverseMismatch();
  }

  UniversePtr universe_;
  GradingVector initial_degrees_;
  std::vector<bool> frozen_;
  std::vector<LaurentPoly> values_;
  ExchangeMatrix matrix_;
  GradingVector grading_;
};

struct Violation {
  enum class Kind {
    not_skew_symmetric,
    grading,
    not_homogeneous,
    degree_mismatch,
    frozen_value,
    no_frozen,
  };
  Kind kind;
  std::string message;
};

inline std::vector<Violation> validate_seed(const Seed& s) {
  std::vector<Violation> out;
  const auto& b = s.matrix();
  const auto& cols = b.cols();
  for (std::size_t i = 0; i < cols.size(); ++i) {
    for (std::size_t j = i; j < cols.size(); ++j) {
      Exponent bij = b.at(cols[i], cols[j]);
      Exponent bji = b.at(cols[j], cols[i]);
      if (bij != -bji)
        out.push_back({Violation::Kind::not_skew_symmetric,
                       "principal part not skew-symmetric at (" +
                           s.name(cols[i]) + ", " + s.name(cols[j]) + ")"});
    }
  }
  for (std::size_t c = 0; c < cols.size(); ++c) {
    Exponent sum = 0;
    for (std::size_t r = 0; r < b.row_count(); ++r)
      sum += b.entry(r, c) * s.grading()[b.rows()[r].index];
    if (sum != 0)
      out.push_back({Violation::Kind::grading,
                     "B^T G != 0 at column " + s.name(cols[c]) + " (sum " +
                         std::to_string(sum) + ")"});
  }
  for (std::uint32_t i = 0; i < s.size(); ++i) {
    VariableId v{i};
    auto wd = weighted_degree(s.value(v), s.initial_degrees());
    if (!wd.is_homogeneous())
      out.push_back({Violation::Kind::not_homogeneous,
                     "value of " + s.name(v) + " is not homogeneous"});
    else if (!wd.matches(s.degree(v)))
      out.push_back({Violation::Kind::degree_mismatch,
                     "value of " + s.name(v) + " has degree " +
                         std::to_string(wd.value) + " but grading says " +
                         std::to_string(s.degree(v))});
    if (s.is_frozen(v) &&
        (s.value(v) != LaurentPoly::variable(s.universe(), v) ||
         s.degree(v) != s.initial_degrees()[i]))
      out.push_back({Violation::Kind::frozen_value,
                     "frozen variable " + s.name(v) + " changed"});
  }
  if (s.frozen_ids().empty())
    out.push_back({Violation::Kind::no_frozen, "seed has no frozen variable"});
  return out;
}

inline Seed mutate_seed(const Seed& s, VariableId k) {
  const auto& b = s.matrix();
  auto ck = b.col_position(k);
  if (!ck) throw FrozenMutation(k.index < s.size() ? s.name(k) : std::to_string(k.index));

  const auto& u = s.universe();
  LaurentPoly plus = LaurentPoly::constant(u, 1);
  LaurentPoly minus = LaurentPoly::constant(u, 1);
  Exponent d_plus = 0;
  Exponent d_minus = 0;
  for (std::size_t r = 0; r < b.row_count(); ++r) {
    Exponent e = b.entry(r, *ck);
    VariableId j = b.rows()[r];
    if (e > 0) {
      plus = mul(plus, s.value(j).pow(e));
      d_plus += e * s.degree(j);
    } else if (e < 0) {
      minus = mul(minus, s.value(j).pow(-e));
      d_minus += -e * s.degree(j);
    }
  }
  if (d_plus != d_minus)
    throw InvalidSeed({"B^T G != 0 at column " + s.name(k)});

  auto value = try_div_exact(add(plus, minus), s.value(k));
  if (!value)
    throw InternalInconsistency("exchange relation at " + s.name(k) +
                                " is not a Laurent polynomial");
  Exponent degree = d_plus - s.degree(k);
  if (!weighted_degree(*value, s.initial_degrees()).matches(degree))
    throw InternalInconsistency("mutated value at " + s.name(k) +
                                " is not homogeneous of degree " +
                                std::to_string(degree));
  Seed out = s.with_value(k, std::move(*value), degree);
  return out.with_matrix(mutate_matrix(b, k, u.get()));
}

inline Seed mutate_seed(const Seed& s, std::string_view k) {
  auto id = s.universe()->find(k);
  if (!id) throw Error("unknown vertex '" + std::string(k) + "'");
  return mutate_seed(s, *id);
}

/// Left-to-right composition of mutations.
inline Seed apply_sequence(const Seed& s, std::span<const VariableId> ks) {
  Seed out = s;
  for (auto k : ks) out = mutate_seed(out, k);
  return out;
}

inline Seed apply_sequence(const Seed& s, std::span<const std::string> ks) {
  Seed out = s;
  for (const auto& k : ks) out = mutate_seed(out, k);
  return out;
}

/// Multiplies every degree (initial and current) by `factor`; BᵀG = 0 is kept.
inline Seed scale_grading(const Seed& s, Exponent factor) {
  GradingVector initial = s.initial_degrees();
  GradingVector current = s.grading();
  for (auto& d : initial) d *= factor;
  for (auto& d : current) d *= factor;
  return Seed(s.universe(), std::move(initial), s.frozen(), s.values(),
              s.matrix(), std::move(current));
}

struct Arrow {
  VariableId from;
  VariableId to;
  Exponent multiplicity = 1;
  friend bool operator==(const Arrow&, const Arrow&) = default;
};

struct QuiverVertex {
  VariableId id;
  bool frozen = false;
};

inline ExchangeMatrix quiver_to_matrix(std::span<const QuiverVertex> vertices,
                                       std::span<const Arrow> arrows) {
  std::vector<VariableId> rows;
  std::vector<VariableId> cols;
  for (const auto& v : vertices) {
    rows.push_back(v.id);
    if (!v.frozen) cols.push_back(v.id);
  }
  ExchangeMatrix b(rows, cols);
  for (const auto& a : arrows) {
    auto rf = b.row_position(a.from);
    auto rt = b.row_position(a.to);
    if (!rf || !rt) throw Error("arrow endpoint is not a vertex");
    if (a.from == a.to) throw Error("loops are not allowed");
    if (a.multiplicity <= 0) throw Error("arrow multiplicity must be positive");
    auto ct = b.col_position(a.to);
    auto cf = b.col_position(a.from);
    if (!ct && !cf) throw Error("arrow between two frozen vertices");
    if (ct) b.set(*rf, *ct, b.entry(*rf, *ct) + a.multiplicity);
    if (cf) b.set(*rt, *cf, b.entry(*rt, *cf) - a.multiplicity);
  }
  return b;
}

/// Arrows sorted by (source row, target row). Requires a skew-symmetric
/// principal part.
inline std::vector<Arrow> matrix_to_quiver(const ExchangeMatrix& b) {
  std::vector<std::pair<std::pair<std::size_t, std::size_t>, Arrow>> found;
  for (std::size_t c = 0; c < b.col_count(); ++c) {
    VariableId k = b.cols()[c];
    std::size_t rk = *b.row_position(k);
    for (std::size_t r = 0; r < b.row_count(); ++r) {
      VariableId j = b.rows()[r];
      Exponent e = b.entry(r, c);
      if (auto cj = b.col_position(j)) {
        if (b.entry(rk, *cj) != -e)
          throw Error("principal part is not skew-symmetric");
        if (r >= rk) continue;
      }
      if (e > 0) found.push_back({{r, rk}, Arrow{j, k, e}});
      if (e < 0) found.push_back({{rk, r}, Arrow{k, j, -e}});
    }
  }
  std::sort(found.begin(), found.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Arrow> out;
  for (auto& f : found) out.push_back(f.second);
  return out;
}

}  // namespace segre
