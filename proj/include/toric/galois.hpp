#pragma once

#include <optional>
#include <string>
#include <vector>

#include "toric/fan.hpp"

namespace toric {

inline constexpr std::size_t kMaxGroupOrder = 10000;

/// Finite group of lattice automorphisms given by generators.
class GroupAction {
 public:
  GroupAction() = default;
  GroupAction(std::size_t rank, std::vector<IntMatrix> generators, std::vector<unsigned> orders = {});

  static GroupAction trivial(std::size_t rank) { return GroupAction(rank, {}); }

  std::size_t rank() const { return rank_; }
  const std::vector<IntMatrix>& generators() const { return generators_; }
  const std::vector<unsigned>& orders() const { return orders_; }

 private:
  std::size_t rank_ = 0;
  std::vector<IntMatrix> generators_;
  std::vector<unsigned> orders_;
};

/// All group elements, identity first, in breadth-first order over the
/// generators. Throws InputError past kMaxGroupOrder elements.
std::vector<IntMatrix> group_elements(const GroupAction& g);

/// Smallest k >= 1 with m^k = I, if at most `cap`.
std::optional<unsigned> element_order(const IntMatrix& m, unsigned cap = kMaxGroupOrder);

/// An element generating the whole group, when the group is cyclic.
std::optional<IntMatrix> cyclic_generator(const GroupAction& g);

struct ActionValidation {
  bool valid = true;
  std::vector<std::string> violations;
  std::vector<IntMatrix> elements;
  /// permutations[k][i] = j when elements[k] * u_i = u_j.
  std::vector<std::vector<std::size_t>> permutations;
};

ActionValidation validate_action(const GroupAction& g, const Fan& f);

struct InvariantSublattice {
  std::vector<IntVector> basis;
  bool anisotropic = false;
};

InvariantSublattice invariant_sublattice(const GroupAction& g);

/// e = -A * sum of the rays.
IntVector e_vector(const Fan& f, const Integer& a);

bool is_invariant(const std::vector<IntMatrix>& elements, const IntVector& v);

RaySet permute(const RaySet& s, const std::vector<std::size_t>& perm);

struct InvariantCone {
  std::size_t cone_index = 0;
  RaySet rays;
  bool invariant = false;
};

/// The cone whose relative interior contains e. Throws InputError when e is outside the support.
InvariantCone choose_invariant_cone(const Fan& f, const std::vector<std::vector<std::size_t>>& permutations,
                                    const IntVector& e);

struct InvariantConeSolution {
  Integer A = 1;
  RaySet sigma;
  /// c_t for every ray, zero off sigma.
  IntVector c;
  RationalVector c_rational;
  bool anisotropic = false;
  bool unique = true;
  /// The solver's vertex was not invariant and was replaced by its group average.
  bool averaged = false;
};

/// Nonnegative rational c with -sum u_i = sum_{t in sigma} c_t u_t, cleared by
/// the least common denominator A (or by `a_override`, which must clear it).
InvariantConeSolution solve_coefficients(const Fan& f, const std::vector<std::vector<std::size_t>>& permutations,
                                         const RaySet& sigma, bool anisotropic,
                                         std::optional<Integer> a_override = std::nullopt);

}  // namespace toric
