#include "toric/divisor.hpp"

#include <sstream>

#include "toric/exact_linalg.hpp"

namespace toric {

IntVector AbelianGroupPresentation::project(const IntVector& x) const {
  IntVector y = projection * x;
  for (std::size_t i = 0; i < torsion.size(); ++i) {
    mpz_fdiv_r(y[i].get_mpz_t(), y[i].get_mpz_t(), torsion[i].get_mpz_t());
  }
  return y;
}

std::string AbelianGroupPresentation::describe() const {
  if (is_trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  if (rank > 0) {
    os << "Z";
    if (rank > 1) os << "^" << rank;
    first = false;
  }
  for (const auto& t : torsion) {
    os << (first ? "" : " + ") << "Z/" << t.get_str();
    first = false;
  }
  return os.str();
}

std::optional<IntVector> lattice_coordinates(const std::vector<IntVector>& basis, const IntVector& v) {
  if (basis.empty()) {
    if (is_zero(v)) return IntVector{};
    return std::nullopt;
  }
  IntMatrix bt = IntMatrix::from_columns(basis, v.size());
  auto sol = solve_diophantine(bt, v);
  if (!sol) return std::nullopt;
  return sol->particular;
}

AbelianGroupPresentation quotient_group(const std::vector<IntVector>& lattice_basis,
                                        const std::vector<IntVector>& sub_generators) {
  AbelianGroupPresentation out;
  const std::size_t k = lattice_basis.size();
  std::vector<IntVector> coords;
  for (const auto& g : sub_generators) {
    auto c = lattice_coordinates(lattice_basis, g);
    if (!c) throw ConsistencyError("quotient_group: generator " + to_string(g) + " lies outside the lattice");
    if (!is_zero(*c)) coords.push_back(std::move(*c));
  }
  if (k == 0) {
    out.projection = IntMatrix(0, 0);
    return out;
  }
  if (coords.empty()) {
    out.rank = k;
    out.projection = IntMatrix::identity(k);
    return out;
  }
  IntMatrix q = IntMatrix::from_columns(coords, k);
  SmithDecomposition snf = smith_normal_form(q);
  auto factors = snf.invariant_factors();
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i] > 1) {
      out.torsion.push_back(factors[i]);
      rows.push_back(snf.U.row(i));
    }
  }
  auto free_rows = integer_kernel(q.transpose());
  out.rank = free_rows.size();
  for (auto& r : free_rows) rows.push_back(std::move(r));
  out.projection = IntMatrix::from_rows(rows, k);
  return out;
}

IntMatrix pairing_matrix(const Fan& f) { return IntMatrix::from_rows(f.rays(), f.rank()); }

IntVector div_of_character(const Fan& f, const IntVector& chi) {
  if (chi.size() != f.rank()) throw InputError("div_of_character: character dimension mismatch");
  IntVector out;
  out.reserve(f.rays().size());
  for (const auto& u : f.rays()) out.push_back(dot(u, chi));
  return out;
}

AbelianGroupPresentation class_group(const Fan& f) {
  const std::size_t d = f.rays().size();
  IntMatrix p = pairing_matrix(f);
  std::vector<IntVector> basis = IntMatrix::identity(d).row_vectors();
  AbelianGroupPresentation out = quotient_group(basis, p.column_vectors());
  if (toric::rank(p) < f.rank()) out.warnings.push_back("div not injective: rays do not span N");
  return out;
}

CartierData is_cartier(const Fan& f, const IntVector& divisor) {
  if (divisor.size() != f.rays().size()) throw InputError("is_cartier: coefficient count does not match ray count");
  CartierData out;
  for (const auto& sigma : f.maximal_ray_sets()) {
    if (sigma.empty()) {
      out.local_data.emplace_back(sigma, IntVector(f.rank(), Integer(0)));
      continue;
    }
    std::vector<IntVector> rows;
    IntVector rhs;
    for (auto i : sigma) {
      rows.push_back(f.rays()[i]);
      rhs.push_back(-divisor[i]);
    }
    auto sol = solve_diophantine(IntMatrix::from_rows(rows, f.rank()), rhs);
    if (!sol) {
      out.failing_cone = sigma;
      out.local_data.clear();
      return out;
    }
    out.local_data.emplace_back(sigma, sol->particular);
  }
  out.cartier = true;
  return out;
}

PicardGroup picard_group(const Fan& f) {
  const std::size_t d = f.rays().size();
  const std::size_t n = f.rank();
  PicardGroup out;
  out.cl = class_group(f);

  auto maximal = f.maximal_ray_sets();
  std::vector<IntVector> equations;
  const std::size_t vars = d + maximal.size() * n;
  for (std::size_t s = 0; s < maximal.size(); ++s) {
    for (auto i : maximal[s]) {
      IntVector row(vars, Integer(0));
      row[i] = 1;
      for (std::size_t c = 0; c < n; ++c) row[d + s * n + c] = f.rays()[i][c];
      equations.push_back(std::move(row));
    }
  }
  std::vector<IntVector> gens;
  if (equations.empty()) {
    gens = IntMatrix::identity(d).row_vectors();
  } else {
    for (const auto& k : integer_kernel(IntMatrix::from_rows(equations, vars)))
      gens.emplace_back(k.begin(), k.begin() + static_cast<std::ptrdiff_t>(d));
  }
  out.cartier_basis = lattice_basis(gens, d);

  IntMatrix p = pairing_matrix(f);
  out.pic = quotient_group(out.cartier_basis, p.column_vectors());

  if (out.cartier_basis.size() == d) {
    out.index = d == 0 ? Integer(1) : Integer(abs(determinant(IntMatrix::from_rows(out.cartier_basis, d))));
  }
  const std::size_t fr = out.cl.rank;
  const std::size_t tors = out.cl.torsion.size();
  std::vector<IntVector> images;
  for (const auto& b : out.cartier_basis) {
    IntVector y = out.cl.projection * b;
    images.emplace_back(y.begin() + static_cast<std::ptrdiff_t>(tors), y.end());
  }
  auto img = lattice_basis(images, fr);
  if (img.size() == fr)
    out.degree_index = fr == 0 ? Integer(1) : Integer(abs(determinant(IntMatrix::from_rows(img, fr))));
  return out;
}

AbelianGroupPresentation h1_cyclic(const IntMatrix& sigma, unsigned order,
                                   const std::vector<IntVector>& relations) {
  if (!sigma.is_square()) throw InputError("h1_cyclic: action matrix is not square");
  if (order == 0) throw InputError("h1_cyclic: order must be positive");
  const std::size_t r = sigma.rows();
  for (const auto& rel : relations)
    if (rel.size() != r) throw InputError("h1_cyclic: relation dimension mismatch");
  std::vector<IntVector> rel_basis = lattice_basis(relations, r);
  auto in_relations = [&](const IntVector& v) { return lattice_coordinates(rel_basis, v).has_value(); };

  for (const auto& b : rel_basis)
    if (!in_relations(sigma * b)) throw InputError("h1_cyclic: action does not preserve the relations");
  IntMatrix id = IntMatrix::identity(r);
  IntMatrix top = power(sigma, order) - id;
  for (const auto& c : top.column_vectors())
    if (!in_relations(c)) throw InputError("h1_cyclic: declared order is wrong (sigma^n != identity)");

  IntMatrix norm(r, r);
  IntMatrix pw = id;
  for (unsigned i = 0; i < order; ++i) {
    norm = norm + pw;
    pw = pw * sigma;
  }

  std::vector<IntVector> cocycles;
  if (r > 0) {
    // x with N x in span(relations): kernel of [N | -R].
    const std::size_t cols = r + rel_basis.size();
    IntMatrix big(r, cols);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < r; ++j) big(i, j) = norm(i, j);
      for (std::size_t j = 0; j < rel_basis.size(); ++j) big(i, r + j) = -rel_basis[j][i];
    }
    std::vector<IntVector> gens;
    for (const auto& k : integer_kernel(big)) gens.emplace_back(k.begin(), k.begin() + static_cast<std::ptrdiff_t>(r));
    cocycles = lattice_basis(gens, r);
  }

  std::vector<IntVector> boundaries = (sigma - id).column_vectors();
  for (const auto& b : rel_basis) boundaries.push_back(b);
  return quotient_group(cocycles, boundaries);
}

}  // namespace toric
