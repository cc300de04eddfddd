#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "toric/fan.hpp"

namespace toric {

/// Finitely generated abelian group Z^rank + sum Z/t_i. The projection maps
/// the ambient coordinates onto (torsion coordinates, then free coordinates).
struct AbelianGroupPresentation {
  std::size_t rank = 0;
  std::vector<Integer> torsion;
  IntMatrix projection;
  std::vector<std::string> warnings;

  /// Image of x with torsion coordinates reduced into [0, t_i).
  IntVector project(const IntVector& x) const;
  bool is_trivial() const { return rank == 0 && torsion.empty(); }
  std::string describe() const;
};

/// Quotient L / S where L has the given basis (rows) and S is generated by
/// vectors of L. The projection acts on L-coordinates.
AbelianGroupPresentation quotient_group(const std::vector<IntVector>& lattice_basis,
                                        const std::vector<IntVector>& sub_generators);

/// Coordinates of v in a lattice basis (rows); absent when v is outside the lattice.
std::optional<IntVector> lattice_coordinates(const std::vector<IntVector>& basis, const IntVector& v);

/// d x n matrix whose rows are the rays.
IntMatrix pairing_matrix(const Fan& f);

/// Coefficients <u_i, chi> of div(chi), aligned with the ray order.
IntVector div_of_character(const Fan& f, const IntVector& chi);

AbelianGroupPresentation class_group(const Fan& f);

struct CartierData {
  bool cartier = false;
  /// m_sigma for each maximal cone, with <u_i, m_sigma> = -a_i for i in sigma.
  std::vector<std::pair<RaySet, IntVector>> local_data;
  std::optional<RaySet> failing_cone;
};

CartierData is_cartier(const Fan& f, const IntVector& divisor);

struct PicardGroup {
  AbelianGroupPresentation pic;
  AbelianGroupPresentation cl;
  /// Z-basis (rows) of the lattice of torus-invariant Cartier divisors.
  std::vector<IntVector> cartier_basis;
  /// [Cl : Pic], when finite.
  std::optional<Integer> index;
  /// Index of the image of Pic in Cl modulo torsion, when finite.
  std::optional<Integer> degree_index;
};

PicardGroup picard_group(const Fan& f);

/// H^1 of the cyclic group generated by sigma (of the declared order) acting
/// on M = Z^r / relations: ker(1 + sigma + ... + sigma^(n-1)) / im(sigma - 1).
AbelianGroupPresentation h1_cyclic(const IntMatrix& sigma, unsigned order,
                                   const std::vector<IntVector>& relations = {});

}  // namespace toric
