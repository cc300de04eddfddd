#pragma once

#include <optional>
#include <vector>

#include "toric/int_matrix.hpp"
#include "toric/integer.hpp"

namespace toric {

/// Column-style Hermite form: A * U = H with U unimodular. H is lower
/// triangular column echelon: each nonzero column has a positive pivot,
/// pivot rows strictly increase left to right, entries left of a pivot are
/// reduced into [0, pivot), and zero columns come last.
struct HermiteDecomposition {
  IntMatrix H;
  IntMatrix U;
  std::size_t rank = 0;
};

HermiteDecomposition hermite_normal_form(const IntMatrix& a);

/// Row-style Hermite form: U * A = H, H upper echelon with reduced entries
/// above each pivot. Transpose of the column form of A^T.
HermiteDecomposition row_hermite_normal_form(const IntMatrix& a);

/// U * A * V = S with U, V unimodular and S diagonal with d1 | d2 | ... | dk.
struct SmithDecomposition {
  IntMatrix S;
  IntMatrix U;
  IntMatrix V;

  /// Diagonal of S, length min(rows, cols).
  std::vector<Integer> invariant_factors() const;
  std::size_t rank() const;
};

SmithDecomposition smith_normal_form(const IntMatrix& a);

struct DiophantineSolution {
  IntVector particular;
  /// Columns form a Z-basis of ker(A), in canonical echelon form.
  IntMatrix kernel;
};

/// Integer solutions of A x = b. Absent when b is not in the integer image of A.
std::optional<DiophantineSolution> solve_diophantine(const IntMatrix& a, const IntVector& b);

/// Z-basis of the integer kernel of A as canonical echelon rows.
std::vector<IntVector> integer_kernel(const IntMatrix& a);

/// Canonical Z-basis (row Hermite form, zero rows dropped) of the lattice
/// spanned by the given vectors in Z^dim.
std::vector<IntVector> lattice_basis(const std::vector<IntVector>& generators, std::size_t dim);

/// Some rational solution of A x = b (free variables set to zero), if any.
std::optional<RationalVector> rational_solve(const IntMatrix& a, const IntVector& b);
std::optional<RationalVector> rational_solve(const std::vector<std::vector<Rational>>& a,
                                             const RationalVector& b);

/// Basis of the rational kernel of A, scaled to primitive integer vectors.
std::vector<IntVector> rational_kernel(const IntMatrix& a);

/// Nonnegative rational solution of A c = b found by phase-one simplex with
/// Bland's rule, so the returned vertex is a deterministic function of (A, b).
std::optional<RationalVector> nonneg_rational_solve(const IntMatrix& a, const IntVector& b);

/// Divide by the gcd of the entries; rational vectors are first cleared of denominators.
IntVector primitive_integer(const RationalVector& v);

}  // namespace toric
