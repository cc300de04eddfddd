#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "toric/cone.hpp"
#include "toric/int_matrix.hpp"

namespace toric {

/// Sorted ray indices naming a cone of a fan. The empty set is the zero cone.
using RaySet = std::vector<std::size_t>;

/// A finite collection of cones over one list of rays. Construction closes
/// the given cones under faces and makes every listed ray a 1-cone; the
/// remaining fan axioms are checked by validate().
class Fan {
 public:
  Fan() = default;
  Fan(std::size_t rank, std::vector<IntVector> rays, const std::vector<RaySet>& cones,
      std::vector<std::string> labels = {});

  std::size_t rank() const { return rank_; }
  const std::vector<IntVector>& rays() const { return rays_; }
  const std::vector<std::string>& labels() const { return labels_; }

  /// All cones, zero cone first, ordered by size then lexicographically.
  const std::vector<RaySet>& cones() const { return cones_; }
  std::optional<std::size_t> find_cone(const RaySet& s) const;
  std::optional<std::size_t> ray_index(const IntVector& v) const;

  /// Geometric cone for cones()[i]; absent when its generators are not strongly convex.
  const std::optional<Cone>& geometry(std::size_t i) const { return geometry_.at(i); }
  const Cone& cone(std::size_t i) const;
  std::size_t cone_dim(std::size_t i) const;

  std::vector<std::size_t> maximal_cones() const;
  std::vector<RaySet> maximal_ray_sets() const;

  bool is_simplicial() const;
  bool is_smooth() const;

  /// Subfan generated by the given cones, keeping only the rays they use.
  Fan restrict_to(const std::vector<RaySet>& cones) const;

  /// Rays sorted lexicographically, cones re-indexed; labels follow their rays.
  Fan canonical() const;

  friend bool operator==(const Fan& a, const Fan& b) {
    return a.rank_ == b.rank_ && a.rays_ == b.rays_ && a.cones_ == b.cones_;
  }

 private:
  std::size_t rank_ = 0;
  std::vector<IntVector> rays_;
  std::vector<std::string> labels_;
  std::vector<RaySet> cones_;
  std::vector<std::optional<Cone>> geometry_;
  std::map<RaySet, std::size_t> index_;
};

struct FanViolation {
  std::string kind;
  std::vector<RaySet> cones;
  std::string detail;
};

struct FanValidation {
  bool valid = true;
  std::vector<FanViolation> violations;
  std::size_t pairs_checked = 0;
};

FanValidation validate(const Fan& f);

struct Wall {
  RaySet wall;
  RaySet first;
  RaySet second;
};

struct CompletenessResult {
  bool complete = false;
  std::string reason;
  std::vector<Wall> walls;
};

/// Wall-pairing criterion: every maximal cone is full-dimensional and every
/// facet of a maximal cone lies in exactly one other maximal cone.
CompletenessResult is_complete(const Fan& f);

struct SamplingResult {
  bool covered = true;
  std::size_t samples = 0;
  std::optional<IntVector> uncovered;
};

inline constexpr std::uint64_t kDefaultSamplingSeed = 0x5eed2024u;

/// 200 lattice-rule directions plus 100 pseudorandom points, each checked for
/// membership in some cone.
SamplingResult completeness_by_sampling(const Fan& f, std::uint64_t seed = kDefaultSamplingSeed);

/// Seed from TORIC_PURITY_SEED when set, otherwise the default.
std::uint64_t sampling_seed_from_env();

Fan rays_subfan(const Fan& f);
Fan smooth_subfan(const Fan& f);

/// Smallest dimension among cones of f missing from sub; absent means sub == f.
/// Throws InputError when sub is not a subfan of f.
std::optional<std::size_t> complement_codim(const Fan& f, const Fan& sub);

bool is_subfan(const Fan& f, const Fan& sub);

/// Index of the cone whose relative interior contains p.
std::optional<std::size_t> minimal_cone_containing(const Fan& f, const RationalVector& p);
std::optional<std::size_t> minimal_cone_containing(const Fan& f, const IntVector& p);

struct FanMorphism {
  IntMatrix matrix;
  Fan source;
  Fan target;
  /// assignment[i] is the target cone index receiving source cone i.
  std::vector<std::size_t> assignment;
};

struct MorphismCheck {
  std::optional<FanMorphism> morphism;
  /// Source cone indices whose image lies in no target cone.
  std::vector<std::size_t> violations;
};

MorphismCheck check_morphism(const IntMatrix& m, const Fan& src, const Fan& dst);

/// Unimodular T with T * a.rays[i] = b.rays[i] for every i, mapping cones to
/// cones, if one exists.
std::optional<IntMatrix> match_fans(const Fan& a, const Fan& b);

std::string to_string(const RaySet& s);

}  // namespace toric
