#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "toric/int_matrix.hpp"
#include "toric/integer.hpp"

namespace toric {

/// The vector divided by the gcd of its entries. Throws InputError on zero.
IntVector primitive(const IntVector& v);

/// H-description of a finitely generated cone: { x : E x = 0, H x >= 0 }.
struct DualDescription {
  std::vector<IntVector> equations;
  std::vector<IntVector> inequalities;
};

/// Fourier-Motzkin elimination of the multipliers in x = sum lambda_i g_i,
/// lambda >= 0. The generators need not span a pointed cone.
DualDescription dual_description(std::size_t rank, const std::vector<IntVector>& generators);

/// Facet data of a pointed cone. Facet normals lie in the linear span of the
/// cone and are primitive; facet_rays[i] lists the ray indices on facet i.
struct FacetData {
  std::vector<IntVector> equations;
  std::vector<IntVector> normals;
  std::vector<std::vector<std::size_t>> facet_rays;
};

/// Strongly convex rational polyhedral cone, stored by its primitive minimal
/// generators in lexicographic order. Equality is structural.
class Cone {
 public:
  Cone() = default;

  static Cone zero(std::size_t rank);

  std::size_t ambient_rank() const { return rank_; }
  const std::vector<IntVector>& rays() const { return rays_; }
  std::size_t dim() const { return dim_; }
  bool is_zero() const { return rays_.empty(); }

  /// Computed once on first use; safe to call concurrently.
  const FacetData& facets() const;

  bool contains(const RationalVector& p) const;
  bool contains(const IntVector& p) const;
  bool relint_contains(const RationalVector& p) const;
  bool relint_contains(const IntVector& p) const;

  /// Ray index subsets (into rays()) of every face, zero face and the cone itself included.
  std::vector<std::vector<std::size_t>> face_ray_sets() const;
  std::vector<Cone> faces() const;

  /// The face spanned by a subset of this cone's rays (caller guarantees it is a face).
  Cone subcone(const std::vector<std::size_t>& ray_indices) const;

  bool is_simplicial() const { return dim_ == rays_.size(); }
  bool is_smooth() const;

  friend bool operator==(const Cone& a, const Cone& b) {
    return a.rank_ == b.rank_ && a.rays_ == b.rays_;
  }
  friend bool operator<(const Cone& a, const Cone& b) {
    if (a.rank_ != b.rank_) return a.rank_ < b.rank_;
    return a.rays_ < b.rays_;
  }

 private:
  friend Cone cone_from_rays(std::size_t rank, const std::vector<IntVector>& generators);
  Cone(std::size_t rank, std::vector<IntVector> canonical_rays);

  struct Cache {
    std::once_flag once;
    FacetData data;
  };

  std::size_t rank_ = 0;
  std::size_t dim_ = 0;
  std::vector<IntVector> rays_;
  std::shared_ptr<Cache> cache_;
};

/// Primitivize, drop redundant generators, verify strong convexity, and sort.
/// Throws InputError("not strongly convex") when the generators span a line.
Cone cone_from_rays(std::size_t rank, const std::vector<IntVector>& generators);

Cone intersect(const Cone& a, const Cone& b);

/// Cyclic quotient type 1/d(1,k) of a two-dimensional cone in a rank-2 lattice.
struct QuotientType {
  Integer order;   // d
  Integer weight;  // k, 0 <= k < d, gcd(k, d) = 1 when d > 1

  bool is_smooth() const { return order == 1; }
  /// Du Val A_{d-1} point: k = d - 1.
  bool is_a_type() const { return order > 1 && weight == order - 1; }

  friend bool operator==(const QuotientType&, const QuotientType&) = default;
};

QuotientType quotient_type_2d(const Cone& c);

}  // namespace toric
