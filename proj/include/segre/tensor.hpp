#pragma once

// Elements of A₁ ⊗ A₂ as Laurent polynomials over the disjoint union of the
// two factor universes, and the substitution maps from the glued algebra.

#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "segre/error.hpp"
#include "segre/glue.hpp"
#include "segre/laurent.hpp"

namespace segre {

/// The tensor universe: left factor variables, then (renamed) right ones.
struct TensorContext {
  UniversePtr universe;
  std::vector<Side> side;  // Side::left or Side::right, by tensor VariableId
  GradingVector degrees;   // factor initial degrees, by tensor VariableId
  std::uint32_t right_offset = 0;
  VariableId x;  // left glued frozen
  VariableId y;  // right glued frozen

  VariableId left(VariableId v) const { return v; }
  VariableId right(VariableId v) const { return VariableId{right_offset + v.index}; }

  LaurentPoly embed_left(const LaurentPoly& p) const { return embed(p, 0); }
  LaurentPoly embed_right(const LaurentPoly& p) const { return embed(p, right_offset); }

 private:
  LaurentPoly embed(const LaurentPoly& p, std::uint32_t offset) const {
    std::vector<Monomial> images;
    for (std::uint32_t i = 0; i < p.universe()->size(); ++i)
      images.push_back(Monomial::variable(VariableId{offset + i}));
    return substitute_monomials(p, universe, images);
  }
};

inline std::shared_ptr<const TensorContext> make_tensor_context(const GluedSeed& g) {
  auto ctx = std::make_shared<TensorContext>();
  std::vector<std::string> names = g.left_universe->names();
  auto right = right_names(*g.left_universe, *g.right_universe);
  ctx->right_offset = static_cast<std::uint32_t>(names.size());
  names.insert(names.end(), right.begin(), right.end());
  ctx->universe = Universe::make(std::move(names));
  const auto& initial = g.seed.initial_degrees();
  for (std::uint32_t i = 0; i < g.left_universe->size(); ++i) {
    ctx->side.push_back(Side::left);
    ctx->degrees.push_back(initial[g.from_left(VariableId{i}).index]);
  }
  for (std::uint32_t i = 0; i < g.right_universe->size(); ++i) {
    ctx->side.push_back(Side::right);
    ctx->degrees.push_back(initial[g.from_right(VariableId{i}).index]);
  }
  ctx->x = g.left_glued;
  ctx->y = ctx->right(g.right_glued);
  return ctx;
}

struct Bidegree {
  Exponent left = 0;
  Exponent right = 0;
  friend bool operator==(const Bidegree&, const Bidegree&) = default;
};

class SegreTensor {
 public:
  SegreTensor(LaurentPoly value, std::shared_ptr<const TensorContext> ctx)
      : value_(std::move(value)), ctx_(std::move(ctx)) {
    if (!same_universe(value_.universe(), ctx_->universe)) throw UniverseMismatch();
  }

  const LaurentPoly& value() const noexcept { return value_; }
  const TensorContext& context() const noexcept { return *ctx_; }

  /// (left degree, right degree) of every monomial, in term order.
  std::vector<Bidegree> bidegrees() const {
    std::vector<Bidegree> out;
    for (const auto& t : value_.terms()) {
      Bidegree b;
      for (const auto& [id, e] : t.monomial.entries()) {
        Exponent w = e * ctx_->degrees[id.index];
        (ctx_->side[id.index] == Side::left ? b.left : b.right) += w;
      }
      out.push_back(b);
    }
    return out;
  }

  std::string to_string() const { return value_.to_string(); }

  friend bool operator==(const SegreTensor& a, const SegreTensor& b) {
    return a.value_ == b.value_;
  }
  friend SegreTensor operator*(const SegreTensor& a, const SegreTensor& b) {
    return SegreTensor(mul(a.value_, b.value_), a.ctx_);
  }

 private:
  LaurentPoly value_;
  std::shared_ptr<const TensorContext> ctx_;
};

/// Membership in ⊕ᵢ (A₁)ᵢ ⊗ (A₂)ᵢ: every monomial has equal left and right degree.
inline bool segre_membership(const SegreTensor& t) {
  for (const auto& b : t.bidegrees())
    if (b.left != b.right) return false;
  return true;
}

enum class MapKind { phi, naive };

inline std::string_view to_string(MapKind k) {
  return k == MapKind::phi ? "phi" : "naive";
}

struct MapOptions {
  MapKind kind = MapKind::phi;
  /// Skip the degree-1 hypothesis on the glued frozens (phi only).
  bool force = false;
  /// Degrees of x and y used by the naive map; default to the glued degree.
  std::optional<Exponent> deg_x;
  std::optional<Exponent> deg_y;
};

/// The substitution homomorphism from the glued Laurent ring to the tensor
/// Laurent ring. For MapKind::phi:
///   x_j -> x_j y^{deg x_j},  y_j -> x^{deg y_j} y_j,  z -> x y.
/// For MapKind::naive:
///   x_j -> x_j^{deg y} y^{deg x_j},  y_j -> x^{deg y_j} y_j^{deg x},
///   z -> x^{deg y} y^{deg x}.
class SegreMap {
 public:
  explicit SegreMap(const GluedSeed& g, MapOptions opts = {})
      : glued_(g), ctx_(make_tensor_context(g)), opts_(opts) {
    const Exponent d = g.glued_degree();
    deg_x_ = opts.deg_x.value_or(d);
    deg_y_ = opts.deg_y.value_or(d);
    if (opts.kind == MapKind::phi) {
      if ((deg_x_ != 1 || deg_y_ != 1) && !opts.force)
        throw Error("phi requires glued frozen variables of degree 1, got " +
                    std::to_string(d));
      deg_x_ = deg_y_ = 1;
    } else if (deg_x_ <= 0 || deg_y_ <= 0) {
      throw Error("the modified map requires positive glued degrees");
    }
    const auto& initial = g.seed.initial_degrees();
    for (std::uint32_t i = 0; i < g.seed.size(); ++i) {
      const auto& p = g.provenance[i];
      const Exponent deg = initial[i];
      switch (p.side) {
        case Side::left:
          images_.push_back(Monomial::variable(ctx_->left(p.origin), deg_y_) *
                            Monomial::variable(ctx_->y, deg));
          break;
        case Side::right:
          images_.push_back(Monomial::variable(ctx_->x, deg) *
                            Monomial::variable(ctx_->right(p.origin), deg_x_));
          break;
        case Side::proxy:
          images_.push_back(Monomial::variable(ctx_->x, deg_y_) *
                            Monomial::variable(ctx_->y, deg_x_));
          break;
      }
    }
  }

  SegreTensor operator()(const LaurentPoly& v) const {
    if (!same_universe(v.universe(), glued_.seed.universe())) throw UniverseMismatch();
    return SegreTensor(substitute_monomials(v, ctx_->universe, images_), ctx_);
  }

  /// Applies the map after checking `v` is homogeneous of the claimed degree.
  SegreTensor apply_checked(const LaurentPoly& v, Exponent claimed_degree) const {
    auto wd = weighted_degree(v, glued_.seed.initial_degrees());
    if (!wd.matches(claimed_degree))
      throw InternalInconsistency("claimed degree " + std::to_string(claimed_degree) +
                                  " disagrees with the weighted degree of " +
                                  v.to_string());
    return (*this)(v);
  }

  /// Expected image of a left cluster variable v of degree d:
  /// v ⊗ y^d (phi) or v^{deg y} ⊗ y^d (naive).
  SegreTensor left_tensor(const LaurentPoly& v, Exponent d) const {
    auto y = LaurentPoly::variable(ctx_->universe, ctx_->y, d);
    return SegreTensor(mul(ctx_->embed_left(v).pow(deg_y_), y), ctx_);
  }
  /// Expected image of a right cluster variable v of degree d:
  /// x^d ⊗ v (phi) or x^d ⊗ v^{deg x} (naive).
  SegreTensor right_tensor(const LaurentPoly& v, Exponent d) const {
    auto x = LaurentPoly::variable(ctx_->universe, ctx_->x, d);
    return SegreTensor(mul(x, ctx_->embed_right(v).pow(deg_x_)), ctx_);
  }
  SegreTensor proxy_tensor() const {
    return SegreTensor(LaurentPoly::monomial(ctx_->universe,
                                             Monomial::variable(ctx_->x, deg_y_) *
                                                 Monomial::variable(ctx_->y, deg_x_)),
                       ctx_);
  }

  /// The map is injective on Laurent monomials with a split image lattice iff
  /// its exponent matrix has full column rank and its maximal minors are coprime.
  bool is_unimodular_embedding() const;

  const std::vector<Monomial>& images() const noexcept { return images_; }
  const std::shared_ptr<const TensorContext>& context() const noexcept { return ctx_; }
  const GluedSeed& glued() const noexcept { return glued_; }
  const MapOptions& options() const noexcept { return opts_; }

 private:
  GluedSeed glued_;
  std::shared_ptr<const TensorContext> ctx_;
  MapOptions opts_;
  Exponent deg_x_ = 1;
  Exponent deg_y_ = 1;
  std::vector<Monomial> images_;
};

namespace detail {

// Fraction-free (Bareiss) determinant.
inline Coefficient determinant(std::vector<std::vector<Coefficient>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  Coefficient sign = 1;
  Coefficient prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

}  // namespace detail

inline bool SegreMap::is_unimodular_embedding() const {
  const std::size_t rows = ctx_->universe->size();
  const std::size_t cols = images_.size();
  if (cols > rows) return false;
  std::vector<std::vector<Coefficient>> m(rows, std::vector<Coefficient>(cols, 0));
  for (std::size_t c = 0; c < cols; ++c)
    for (const auto& [id, e] : images_[c].entries()) m[id.index][c] = e;
  // Maximal minors: choose `cols` of the `rows` rows.
  Coefficient g = 0;
  std::vector<bool> pick(rows, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(cols), true);
  do {
    std::vector<std::vector<Coefficient>> sub;
    for (std::size_t r = 0; r < rows; ++r)
      if (pick[r]) sub.push_back(m[r]);
    Coefficient d = abs(detail::determinant(std::move(sub)));
    g = boost::multiprecision::gcd(g, d);
    if (g == 1) return true;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return g == 1;
}

inline SegreTensor phi(const GluedSeed& g, const LaurentPoly& v,
                       std::optional<Exponent> claimed_degree = std::nullopt,
                       bool force = false) {
  SegreMap map(g, {MapKind::phi, force, {}, {}});
  return claimed_degree ? map.apply_checked(v, *claimed_degree) : map(v);
}

inline SegreTensor phi_naive(const GluedSeed& g, const LaurentPoly& v,
                             std::optional<Exponent> deg_x = std::nullopt,
                             std::optional<Exponent> deg_y = std::nullopt) {
  return SegreMap(g, {MapKind::naive, false, deg_x, deg_y})(v);
}

struct SurjectivityWitness {
  SegreTensor phi_a;       // φ(a) = a ⊗ y^d
  SegreTensor phi_b;       // φ(b) = x^d ⊗ b
  SegreTensor phi_z_power; // φ(z)^{-d}
  SegreTensor product;
  SegreTensor target;      // a ⊗ b
  bool holds = false;
};

/// Writes a ⊗ b (a, b homogeneous of degree d in the left and right factor)
/// as φ(a) φ(b) φ(z)^{-d}.
inline SurjectivityWitness surjectivity_witness(const GluedSeed& g, const LaurentPoly& a,
                                                Exponent deg_a, const LaurentPoly& b,
                                                Exponent deg_b) {
  if (deg_a != deg_b) throw DegreeMismatch(deg_a, deg_b);
  SegreMap map(g);
  const auto& ctx = *map.context();
  if (!same_universe(a.universe(), g.left_universe) ||
      !same_universe(b.universe(), g.right_universe))
    throw UniverseMismatch();
  GradingVector left_deg(ctx.degrees.begin(), ctx.degrees.begin() + ctx.right_offset);
  GradingVector right_deg(ctx.degrees.begin() + ctx.right_offset, ctx.degrees.end());
  if (!weighted_degree(a, left_deg).matches(deg_a))
    throw Error("left element is not homogeneous of degree " + std::to_string(deg_a));
  if (!weighted_degree(b, right_deg).matches(deg_b))
    throw Error("right element is not homogeneous of degree " + std::to_string(deg_b));

  auto phi_a = map(glued_image_left(g, a));
  auto phi_b = map(glued_image_right(g, b));
  auto phi_z = SegreTensor(
      map(LaurentPoly::variable(g.seed.universe(), g.z)).value().pow(-deg_a),
      map.context());
  auto product = phi_a * phi_b * phi_z;
  SegreTensor target(mul(ctx.embed_left(a), ctx.embed_right(b)), map.context());
  bool holds = product == target;
  return {std::move(phi_a), std::move(phi_b), std::move(phi_z), std::move(product),
          std::move(target), holds};
}

}  // namespace segre
