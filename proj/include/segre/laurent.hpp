#pragma once

// Exact multivariate Laurent polynomials with arbitrary-precision integer
// coefficients over a named, immutable variable universe.

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>
#include <boost/container_hash/hash.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "segre/error.hpp"

namespace segre {

using Coefficient = boost::multiprecision::cpp_int;
using Exponent = std::int64_t;

struct VariableId {
  std::uint32_t index = 0;
  friend constexpr auto operator<=>(VariableId, VariableId) = default;
};

inline bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto head = static_cast<unsigned char>(s.front());
  if (!(std::isalpha(head) || head == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || u == '_';
  });
}

/// An ordered list of distinct variable names; VariableId i names entry i.
class Universe {
 public:
  explicit Universe(std::vector<std::string> names) : names_(std::move(names)) {
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (!is_identifier(names_[i]))
        throw Error("invalid variable name '" + names_[i] + "'");
      if (!lookup_.emplace(names_[i], static_cast<std::uint32_t>(i)).second)
        throw Error("duplicate variable name '" + names_[i] + "'");
    }
  }

  static std::shared_ptr<const Universe> make(std::vector<std::string> names) {
    return std::make_shared<const Universe>(std::move(names));
  }

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  const std::string& name(VariableId v) const {
    if (v.index >= names_.size()) throw Error("variable id out of range");
    return names_[v.index];
  }

  std::optional<VariableId> find(std::string_view name) const {
    auto it = lookup_.find(std::string(name));
    if (it == lookup_.end()) return std::nullopt;
    return VariableId{it->second};
  }

  VariableId at(std::string_view name) const {
    if (auto v = find(name)) return *v;
    throw Error("unknown variable '" + std::string(name) + "'");
  }

  friend bool operator==(const Universe& a, const Universe& b) {
    return a.names_ == b.names_;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> lookup_;
};

using UniversePtr = std::shared_ptr<const Universe>;

inline bool same_universe(const UniversePtr& a, const UniversePtr& b) {
  return a == b || (a && b && *a == *b);
}

/// A Laurent monomial: sorted (id, nonzero exponent) pairs.
class Monomial {
 public:
  using Entry = std::pair<VariableId, Exponent>;

  Monomial() = default;

  static Monomial variable(VariableId v, Exponent e = 1) {
    Monomial m;
    if (e != 0) m.entries_.emplace_back(v, e);
    return m;
  }

  static Monomial from_entries(std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    Monomial m;
    for (const auto& [v, e] : entries) {
      if (!m.entries_.empty() && m.entries_.back().first == v)
        m.entries_.back().second += e;
      else
        m.entries_.emplace_back(v, e);
      if (m.entries_.back().second == 0) m.entries_.pop_back();
    }
    return m;
  }

  std::span<const Entry> entries() const noexcept { return {entries_.data(), entries_.size()}; }
  bool is_unit() const noexcept { return entries_.empty(); }

  Exponent exponent(VariableId v) const {
    for (const auto& [id, e] : entries_)
      if (id == v) return e;
    return 0;
  }

  Exponent weighted(std::span<const Exponent> weights) const {
    Exponent total = 0;
    for (const auto& [id, e] : entries_) total += e * weights[id.index];
    return total;
  }

  bool is_polynomial() const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const Entry& en) { return en.second > 0; });
  }

  /// Componentwise a >= b on exponents.
  bool dominates(const Monomial& b) const {
    for (const auto& [id, e] : b.entries_)
      if (exponent(id) < e) return false;
    return true;
  }

  Monomial inverse() const {
    Monomial m = *this;
    for (auto& en : m.entries_) en.second = -en.second;
    return m;
  }

  Monomial pow(Exponent k) const {
    if (k == 0) return {};
    Monomial m = *this;
    for (auto& en : m.entries_) en.second *= k;
    return m;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.entries_.reserve(a.entries_.size() + b.entries_.size());
    auto ia = a.entries_.begin();
    auto ib = b.entries_.begin();
    while (ia != a.entries_.end() || ib != b.entries_.end()) {
      if (ib == b.entries_.end() ||
          (ia != a.entries_.end() && ia->first < ib->first)) {
        out.entries_.push_back(*ia++);
      } else if (ia == a.entries_.end() || ib->first < ia->first) {
        out.entries_.push_back(*ib++);
      } else {
        Exponent e = ia->second + ib->second;
        if (e != 0) out.entries_.emplace_back(ia->first, e);
        ++ia;
        ++ib;
      }
    }
    return out;
  }

  /// Per-variable minimum of exponents (absent variables count as 0).
  static Monomial meet(const Monomial& a, const Monomial& b) {
    Storage out;
    auto ia = a.entries_.begin();
    auto ib = b.entries_.begin();
    while (ia != a.entries_.end() || ib != b.entries_.end()) {
      if (ib == b.entries_.end() ||
          (ia != a.entries_.end() && ia->first < ib->first)) {
        if (ia->second < 0) out.push_back(*ia);
        ++ia;
      } else if (ia == a.entries_.end() || ib->first < ia->first) {
        if (ib->second < 0) out.push_back(*ib);
        ++ib;
      } else {
        Exponent e = std::min(ia->second, ib->second);
        if (e != 0) out.emplace_back(ia->first, e);
        ++ia;
        ++ib;
      }
    }
    Monomial m;
    m.entries_ = std::move(out);
    return m;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;

  // Lexicographic order: the lowest id is most significant and a larger
  // exponent is larger.
  friend std::strong_ordering operator<=>(const Monomial& a,
                                          const Monomial& b) {
    auto ia = a.entries_.begin();
    auto ib = b.entries_.begin();
    while (ia != a.entries_.end() || ib != b.entries_.end()) {
      if (ib == b.entries_.end() ||
          (ia != a.entries_.end() && ia->first < ib->first))
        return ia->second <=> Exponent{0};
      if (ia == a.entries_.end() || ib->first < ia->first)
        return Exponent{0} <=> ib->second;
      if (ia->second != ib->second) return ia->second <=> ib->second;
      ++ia;
      ++ib;
    }
    return std::strong_ordering::equal;
  }

 std::size_t hash() const noexcept {
    std::size_t h = 0;
    for (const auto& [id, e] : entries_) {
      boost::hash_combine(h, id.index);
      boost::hash_combine(h, e);
    }
    return h;
  }

 private:
  using Storage = boost::container::small_vector<Entry, 6>;
  Storage entries_;
};

struct MonomialGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return a > b; }
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept { return m.hash(); }
};

class LaurentPoly;
LaurentPoly mul(const LaurentPoly& a, const LaurentPoly& b);

class LaurentPoly {
 public:
  struct Term {
    Monomial monomial;
    Coefficient coefficient;
    friend bool operator==(const Term&, const Term&) = default;
  };

  /// The zero polynomial.
  explicit LaurentPoly(UniversePtr universe) : universe_(std::move(universe)) {}

  static LaurentPoly constant(UniversePtr u, Coefficient c) {
    return monomial(std::move(u), Monomial{}, std::move(c));
  }

  static LaurentPoly variable(UniversePtr u, VariableId v, Exponent e = 1) {
    if (v.index >= u->size()) throw Error("variable id out of range");
    return monomial(std::move(u), Monomial::variable(v, e));
  }

  static LaurentPoly monomial(UniversePtr u, Monomial m, Coefficient c = 1) {
    LaurentPoly p(std::move(u));
    if (c != 0) p.terms_.push_back({std::move(m), std::move(c)});
    return p;
  }

  static LaurentPoly from_terms(UniversePtr u, std::vector<Term> terms) {
    LaurentPoly p(std::move(u));
    p.terms_ = std::move(terms);
    p.canonicalize();
    return p;
  }

  const UniversePtr& universe() const noexcept { return universe_; }
  std::span<const Term> terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_monomial() const noexcept { return terms_.size() == 1; }

  LaurentPoly operator-() const {
    LaurentPoly p = *this;
    for (auto& t : p.terms_) t.coefficient = -t.coefficient;
    return p;
  }

  LaurentPoly pow(Exponent k) const {
    if (k < 0) {
      if (!is_monomial() || abs(terms_[0].coefficient) != 1)
        throw Error("negative power of a non-unit polynomial");
      Coefficient c = (k % 2 != 0) ? terms_[0].coefficient : Coefficient{1};
      return monomial(universe_, terms_[0].monomial.pow(k), c);
    }
    if (is_monomial()) {
      Coefficient c = boost::multiprecision::pow(
          terms_[0].coefficient, static_cast<unsigned>(k));
      return monomial(universe_, terms_[0].monomial.pow(k), c);
    }
    LaurentPoly result = constant(universe_, 1);
    LaurentPoly base = *this;
    while (k > 0) {
      if (k & 1) result = mul(result, base);
      k >>= 1;
      if (k > 0) base = mul(base, base);
    }
    return result;
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return same_universe(a.universe_, b.universe_) && a.terms_ == b.terms_;
  }

  // Total order on canonical forms (universes assumed equal).
  friend std::strong_ordering operator<=>(const LaurentPoly& a,
                                          const LaurentPoly& b) {
    std::size_t n = std::min(a.terms_.size(), b.terms_.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (auto c = a.terms_[i].monomial <=> b.terms_[i].monomial; c != 0)
        return c;
      int cc = a.terms_[i].coefficient.compare(b.terms_[i].coefficient);
      if (cc != 0) return cc <=> 0;
    }
    return a.terms_.size() <=> b.terms_.size();
  }

  std::string to_string() const;

 private:
  friend LaurentPoly mul(const LaurentPoly&, const LaurentPoly&);

  void canonicalize() {
    std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) {
      return a.monomial > b.monomial;
    });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().monomial == t.monomial)
        out.back().coefficient += t.coefficient;
      else
        out.push_back(std::move(t));
      if (out.back().coefficient == 0) out.pop_back();
    }
    terms_ = std::move(out);
  }

  UniversePtr universe_;
  std::vector<Term> terms_;  // strictly descending monomials, nonzero coefficients
};

namespace detail {
inline void require_same(const LaurentPoly& a, const LaurentPoly& b) {
  if (!same_universe(a.universe(), b.universe())) throw UniverseMismatch();
}
}  // namespace detail

inline LaurentPoly add(const LaurentPoly& a, const LaurentPoly& b) {
  detail::require_same(a, b);
  std::vector<LaurentPoly::Term> terms;
  terms.reserve(a.size() + b.size());
  auto ia = a.terms().begin();
  auto ib = b.terms().begin();
  while (ia != a.terms().end() || ib != b.terms().end()) {
    if (ib == b.terms().end() ||
        (ia != a.terms().end() && ia->monomial > ib->monomial)) {
      terms.push_back(*ia++);
    } else if (ia == a.terms().end() || ib->monomial > ia->monomial) {
      terms.push_back(*ib++);
    } else {
      Coefficient c = ia->coefficient + ib->coefficient;
      if (c != 0) terms.push_back({ia->monomial, std::move(c)});
      ++ia;
      ++ib;
    }
  }
  return LaurentPoly::from_terms(a.universe(), std::move(terms));
}

inline LaurentPoly sub(const LaurentPoly& a, const LaurentPoly& b) {
  return add(a, -b);
}

inline LaurentPoly mul(const LaurentPoly& a, const LaurentPoly& b) {
  detail::require_same(a, b);
  LaurentPoly out(a.universe());
  if (a.is_zero() || b.is_zero()) return out;
  std::unordered_map<Monomial, Coefficient, MonomialHash> acc;
  acc.reserve(a.size() * b.size());
  for (const auto& ta : a.terms())
    for (const auto& tb : b.terms()) {
      auto [it, inserted] = acc.try_emplace(ta.monomial * tb.monomial, 0);
      it->second += ta.coefficient * tb.coefficient;
    }
  out.terms_.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) out.terms_.push_back({m, std::move(c)});
  std::sort(out.terms_.begin(), out.terms_.end(),
            [](const LaurentPoly::Term& x, const LaurentPoly::Term& y) {
              return x.monomial > y.monomial;
            });
  return out;
}

inline LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
  return add(a, b);
}
inline LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
  return sub(a, b);
}
inline LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  return mul(a, b);
}

namespace detail {

inline Monomial monomial_content(const LaurentPoly& p) {
  Monomial g = p.terms().front().monomial;
  for (const auto& t : p.terms().subspan(1)) g = Monomial::meet(g, t.monomial);
  return g;
}

inline LaurentPoly shift(const LaurentPoly& p, const Monomial& m) {
  std::vector<LaurentPoly::Term> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms()) terms.push_back({t.monomial * m, t.coefficient});
  return LaurentPoly::from_terms(p.universe(), std::move(terms));
}

// Division of polynomials (non-negative exponents) by a single divisor in
// lex order; a single polynomial is a Gröbner basis of its ideal, so a
// nonzero remainder means "not a factor".
inline std::optional<std::vector<LaurentPoly::Term>> divide_polynomials(
    const LaurentPoly& num, const LaurentPoly& den) {
  std::map<Monomial, Coefficient, MonomialGreater> rem;
  for (const auto& t : num.terms()) rem.emplace(t.monomial, t.coefficient);
  const auto& lead = den.terms().front();
  std::vector<LaurentPoly::Term> quotient;
  while (!rem.empty()) {
    auto top = rem.begin();
    if (!top->first.dominates(lead.monomial)) return std::nullopt;
    Coefficient q;
    Coefficient r;
    boost::multiprecision::divide_qr(top->second, lead.coefficient, q, r);
    if (r != 0) return std::nullopt;
    Monomial qm = top->first * lead.monomial.inverse();
    for (const auto& dt : den.terms()) {
      Monomial m = qm * dt.monomial;
      auto [it, inserted] = rem.try_emplace(m, 0);
      it->second -= q * dt.coefficient;
      if (it->second == 0) rem.erase(it);
    }
    quotient.push_back({std::move(qm), std::move(q)});
  }
  return quotient;
}

}  // namespace detail

/// Exact quotient num / den, or nullopt when den is not an exact factor
/// with integer coefficients.
inline std::optional<LaurentPoly> try_div_exact(const LaurentPoly& num,
                                                const LaurentPoly& den) {
  detail::require_same(num, den);
  if (den.is_zero()) throw DivisionByZero();
  if (num.is_zero()) return num;
  const auto& u = num.universe();
  if (den.is_monomial()) {
    const auto& d = den.terms().front();
    Monomial inv = d.monomial.inverse();
    std::vector<LaurentPoly::Term> terms;
    terms.reserve(num.size());
    for (const auto& t : num.terms()) {
      Coefficient q;
      Coefficient r;
      boost::multiprecision::divide_qr(t.coefficient, d.coefficient, q, r);
      if (r != 0) return std::nullopt;
      terms.push_back({t.monomial * inv, std::move(q)});
    }
    return LaurentPoly::from_terms(u, std::move(terms));
  }
  Monomial num_content = detail::monomial_content(num);
  Monomial den_content = detail::monomial_content(den);
  auto quotient = detail::divide_polynomials(
      detail::shift(num, num_content.inverse()),
      detail::shift(den, den_content.inverse()));
  if (!quotient) return std::nullopt;
  Monomial offset = num_content * den_content.inverse();
  for (auto& t : *quotient) t.monomial = t.monomial * offset;
  return LaurentPoly::from_terms(u, std::move(*quotient));
}

inline LaurentPoly div_exact(const LaurentPoly& num, const LaurentPoly& den) {
  if (auto q = try_div_exact(num, den)) return std::move(*q);
  throw NotDivisible();
}

/// Result of weighing every monomial of a polynomial by variable degrees.
struct WeightedDegree {
  enum class Kind { homogeneous, zero, mixed };
  Kind kind = Kind::zero;
  Exponent value = 0;

  bool is_homogeneous() const noexcept { return kind != Kind::mixed; }
  /// The zero polynomial is homogeneous of every degree.
  bool matches(Exponent d) const noexcept {
    return kind == Kind::zero || (kind == Kind::homogeneous && value == d);
  }
  friend bool operator==(const WeightedDegree&, const WeightedDegree&) = default;
};

/// `degrees` is indexed by VariableId; variables past its end have no entry.
inline WeightedDegree weighted_degree(const LaurentPoly& p,
                                      std::span<const Exponent> degrees) {
  WeightedDegree out;
  for (const auto& t : p.terms()) {
    for (const auto& [id, e] : t.monomial.entries())
      if (id.index >= degrees.size())
        throw MissingDegree(p.universe()->name(id));
    Exponent d = t.monomial.weighted(degrees);
    if (out.kind == WeightedDegree::Kind::zero) {
      out = {WeightedDegree::Kind::homogeneous, d};
    } else if (d != out.value) {
      return {WeightedDegree::Kind::mixed, 0};
    }
  }
  return out;
}

/// Applies the ring homomorphism sending variable i to images[i].
inline LaurentPoly substitute_monomials(const LaurentPoly& p, UniversePtr target,
                                        std::span<const Monomial> images) {
  if (images.size() != p.universe()->size())
    throw Error("substitution must give an image for every variable");
  std::vector<LaurentPoly::Term> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms()) {
    Monomial m;
    for (const auto& [id, e] : t.monomial.entries())
      m = m * images[id.index].pow(e);
    terms.push_back({std::move(m), t.coefficient});
  }
  return LaurentPoly::from_terms(std::move(target), std::move(terms));
}

inline std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    bool negative = t.coefficient < 0;
    Coefficient mag = negative ? Coefficient(-t.coefficient) : t.coefficient;
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;
    std::string factors;
    for (const auto& [id, e] : t.monomial.entries()) {
      if (!factors.empty()) factors += '*';
      factors += universe_->name(id);
      if (e != 1) factors += '^' + std::to_string(e);
    }
    if (factors.empty()) {
      out += mag.str();
    } else if (mag == 1) {
      out += factors;
    } else {
      out += mag.str() + '*' + factors;
    }
  }
  return out;
}

namespace detail {

class LaurentParser {
 public:
  LaurentParser(UniversePtr u, std::string_view text)
      : u_(std::move(u)), s_(text) {}

  LaurentPoly parse() {
    std::vector<LaurentPoly::Term> terms;
    skip();
    bool negative = false;
    if (peek('-') || peek('+')) negative = s_[pos_++] == '-';
    while (true) {
      skip();
      auto term = parse_term();
      if (negative) term.coefficient = -term.coefficient;
      terms.push_back(std::move(term));
      skip();
      if (pos_ == s_.size()) break;
      if (!peek('+') && !peek('-')) fail("expected '+' or '-'");
      negative = s_[pos_++] == '-';
    }
    return LaurentPoly::from_terms(u_, std::move(terms));
  }

 private:
  LaurentPoly::Term parse_term() {
    LaurentPoly::Term term{Monomial{}, 1};
    while (true) {
      skip();
      if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        term.coefficient *= Coefficient(digits());
      } else {
        std::size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
                s_[pos_] == '_'))
          ++pos_;
        if (start == pos_) fail("expected a variable or integer");
        std::string_view name = s_.substr(start, pos_ - start);
        auto id = u_->find(name);
        if (!id) {
          pos_ = start;
          fail("unknown variable '" + std::string(name) + "'");
        }
        Exponent e = 1;
        skip();
        if (peek('^')) {
          ++pos_;
          skip();
          bool neg = false;
          if (peek('-')) {
            neg = true;
            ++pos_;
          }
          std::string d = digits();
          e = std::stoll(d) * (neg ? -1 : 1);
        }
        term.monomial = term.monomial * Monomial::variable(*id, e);
      }
      skip();
      if (!peek('*')) break;
      ++pos_;
    }
    return term;
  }

  std::string digits() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(s_.substr(start, pos_ - start));
  }

  bool peek(char c) const { return pos_ < s_.size() && s_[pos_] == c; }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, 1, pos_ + 1);
  }

  UniversePtr u_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses the text rendering produced by LaurentPoly::to_string.
inline LaurentPoly parse_laurent(UniversePtr u, std::string_view text) {
  return detail::LaurentParser(std::move(u), text).parse();
}

}  // namespace segre
