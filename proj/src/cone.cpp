#include "toric/cone.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "toric/exact_linalg.hpp"

namespace toric {
namespace {

struct Constraint {
  IntVector coef;                // x-part then lambda-part
  std::vector<bool> origin;      // which lambda_j >= 0 rows were combined
};

void make_primitive(IntVector& v) {
  Integer g = gcd(v);
  if (g > 1)
    for (auto& x : v) x /= g;
}

std::size_t popcount(const std::vector<bool>& bits) {
  return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), true));
}

int sign(const Integer& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

// row <- |p_j| * row - sign(p_j) * row_j * p, which zeroes coefficient j and
// multiplies row by a positive scalar.
void eliminate_with(IntVector& row, const IntVector& pivot, std::size_t j) {
  if (row[j] == 0) return;
  Integer pj = pivot[j] < 0 ? Integer(-pivot[j]) : pivot[j];
  Integer f = sign(pivot[j]) * row[j];
  for (std::size_t i = 0; i < row.size(); ++i) row[i] = pj * row[i] - f * pivot[i];
  make_primitive(row);
}

}  // namespace

IntVector primitive(const IntVector& v) {
  if (is_zero(v)) throw InputError("primitive: zero vector");
  IntVector out = v;
  make_primitive(out);
  return out;
}

DualDescription dual_description(std::size_t n, const std::vector<IntVector>& gens) {
  const std::size_t k = gens.size();
  for (const auto& g : gens)
    if (g.size() != n) throw InputError("dual_description: generator dimension mismatch");

  std::vector<IntVector> eqs;
  for (std::size_t i = 0; i < n; ++i) {
    IntVector row(n + k, Integer(0));
    row[i] = 1;
    for (std::size_t j = 0; j < k; ++j) row[n + j] = -gens[j][i];
    eqs.push_back(std::move(row));
  }
  std::vector<Constraint> ineqs;
  for (std::size_t j = 0; j < k; ++j) {
    Constraint c{IntVector(n + k, Integer(0)), std::vector<bool>(k, false)};
    c.coef[n + j] = 1;
    c.origin[j] = true;
    ineqs.push_back(std::move(c));
  }

  // Multipliers determined by the equalities are substituted away first.
  std::vector<bool> eliminated(k, false);
  for (std::size_t j = 0; j < k; ++j) {
    auto it = std::find_if(eqs.begin(), eqs.end(),
                           [&](const IntVector& e) { return e[n + j] != 0; });
    if (it == eqs.end()) continue;
    IntVector pivot = *it;
    eqs.erase(it);
    for (auto& e : eqs) eliminate_with(e, pivot, n + j);
    for (auto& c : ineqs) eliminate_with(c.coef, pivot, n + j);
    eliminated[j] = true;
  }

  std::size_t steps = 0;
  for (std::size_t j = 0; j < k; ++j) {
    if (eliminated[j]) continue;
    const std::size_t col = n + j;
    std::vector<Constraint> pos, neg, next;
    for (auto& c : ineqs) {
      if (c.coef[col] > 0) pos.push_back(std::move(c));
      else if (c.coef[col] < 0) neg.push_back(std::move(c));
      else next.push_back(std::move(c));
    }
    for (const auto& p : pos)
      for (const auto& q : neg) {
        std::vector<bool> origin(k);
        for (std::size_t t = 0; t < k; ++t) origin[t] = p.origin[t] || q.origin[t];
        // Chernikov: after s eliminations a non-redundant row combines <= s+1 originals.
        if (popcount(origin) > steps + 2) continue;
        IntVector row(n + k);
        Integer a = -q.coef[col];
        const Integer& b = p.coef[col];
        for (std::size_t t = 0; t < n + k; ++t) row[t] = a * p.coef[t] + b * q.coef[t];
        make_primitive(row);
        next.push_back({std::move(row), std::move(origin)});
      }
    std::map<IntVector, std::vector<bool>> unique;
    for (auto& c : next) {
      if (is_zero(c.coef)) continue;
      auto [it, inserted] = unique.emplace(c.coef, c.origin);
      if (!inserted && popcount(c.origin) < popcount(it->second)) it->second = c.origin;
    }
    ineqs.clear();
    for (auto& [coef, origin] : unique) ineqs.push_back({coef, origin});
    ++steps;
  }

  DualDescription out;
  std::set<IntVector> seen;
  for (const auto& e : eqs) {
    IntVector x(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(n));
    if (is_zero(x)) continue;
    make_primitive(x);
    if (seen.insert(x).second) out.equations.push_back(x);
  }
  seen.clear();
  for (const auto& c : ineqs) {
    IntVector x(c.coef.begin(), c.coef.begin() + static_cast<std::ptrdiff_t>(n));
    if (is_zero(x)) continue;
    make_primitive(x);
    if (seen.insert(x).second) out.inequalities.push_back(x);
  }
  return out;
}

Cone::Cone(std::size_t rank, std::vector<IntVector> canonical_rays)
    : rank_(rank),
      dim_(toric::rank(canonical_rays, rank)),
      rays_(std::move(canonical_rays)),
      cache_(std::make_shared<Cache>()) {}

Cone Cone::zero(std::size_t rank) { return Cone(rank, {}); }

const FacetData& Cone::facets() const {
  if (!cache_) throw InputError("Cone: default-constructed cone has no facet data");
  std::call_once(cache_->once, [this] {
    FacetData& fd = cache_->data;
    if (rays_.empty()) {
      fd.equations = IntMatrix::identity(rank_).row_vectors();
      return;
    }
    if (dim_ < rank_)
      fd.equations = lattice_basis(rational_kernel(IntMatrix::from_rows(rays_, rank_)), rank_);

    // Basis of the linear span, used to pick the canonical normal of each facet.
    std::vector<IntVector> span;
    for (const auto& r : rays_) {
      span.push_back(r);
      if (toric::rank(span, rank_) < span.size()) span.pop_back();
    }

    DualDescription dd = dual_description(rank_, rays_);
    std::set<std::vector<std::size_t>> seen;
    std::vector<std::pair<std::vector<std::size_t>, IntVector>> found;
    for (const auto& h : dd.inequalities) {
      std::vector<std::size_t> zero_set;
      std::vector<IntVector> zero_rays;
      for (std::size_t i = 0; i < rays_.size(); ++i)
        if (dot(h, rays_[i]) == 0) {
          zero_set.push_back(i);
          zero_rays.push_back(rays_[i]);
        }
      if (zero_set.size() == rays_.size()) continue;
      if (toric::rank(zero_rays, rank_) + 1 != dim_) continue;
      if (!seen.insert(zero_set).second) continue;

      IntVector normal;
      if (zero_rays.empty()) {
        normal = span.front();
      } else {
        IntMatrix gram(zero_rays.size(), span.size());
        for (std::size_t z = 0; z < zero_rays.size(); ++z)
          for (std::size_t b = 0; b < span.size(); ++b) gram(z, b) = dot(span[b], zero_rays[z]);
        auto ker = rational_kernel(gram);
        if (ker.size() != 1) throw ConsistencyError("Cone::facets: facet normal not unique");
        normal = IntVector(rank_, Integer(0));
        for (std::size_t b = 0; b < span.size(); ++b)
          for (std::size_t t = 0; t < rank_; ++t) normal[t] += ker[0][b] * span[b][t];
        normal = primitive(normal);
      }
      for (std::size_t i = 0; i < rays_.size(); ++i) {
        Integer v = dot(normal, rays_[i]);
        if (v != 0) {
          if (v < 0) normal = negate(normal);
          break;
        }
      }
      found.emplace_back(std::move(zero_set), std::move(normal));
    }
    std::sort(found.begin(), found.end());
    for (auto& [zs, nv] : found) {
      fd.facet_rays.push_back(zs);
      fd.normals.push_back(nv);
    }
  });
  return cache_->data;
}

bool Cone::contains(const RationalVector& p) const {
  if (p.size() != rank_) throw InputError("Cone::contains: dimension mismatch");
  const FacetData& fd = facets();
  for (const auto& e : fd.equations)
    if (dot(e, p) != 0) return false;
  for (const auto& h : fd.normals)
    if (dot(h, p) < 0) return false;
  return true;
}

bool Cone::contains(const IntVector& p) const { return contains(to_rational(p)); }

bool Cone::relint_contains(const RationalVector& p) const {
  if (p.size() != rank_) throw InputError("Cone::relint_contains: dimension mismatch");
  const FacetData& fd = facets();
  for (const auto& e : fd.equations)
    if (dot(e, p) != 0) return false;
  for (const auto& h : fd.normals)
    if (dot(h, p) <= 0) return false;
  return true;
}

bool Cone::relint_contains(const IntVector& p) const { return relint_contains(to_rational(p)); }

std::vector<std::vector<std::size_t>> Cone::face_ray_sets() const {
  std::vector<std::size_t> all(rays_.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  std::set<std::vector<std::size_t>> found{all};
  std::vector<std::vector<std::size_t>> queue{all};
  const FacetData& fd = facets();
  while (!queue.empty()) {
    auto face = std::move(queue.back());
    queue.pop_back();
    for (const auto& fr : fd.facet_rays) {
      std::vector<std::size_t> meet;
      std::set_intersection(face.begin(), face.end(), fr.begin(), fr.end(),
                            std::back_inserter(meet));
      if (found.insert(meet).second) queue.push_back(std::move(meet));
    }
  }
  std::vector<std::vector<std::size_t>> out(found.begin(), found.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

Cone Cone::subcone(const std::vector<std::size_t>& ray_indices) const {
  std::vector<IntVector> r;
  for (auto i : ray_indices) r.push_back(rays_.at(i));
  std::sort(r.begin(), r.end());
  return Cone(rank_, std::move(r));
}

std::vector<Cone> Cone::faces() const {
  std::vector<Cone> out;
  for (const auto& s : face_ray_sets()) out.push_back(subcone(s));
  return out;
}

bool Cone::is_smooth() const {
  if (!is_simplicial()) return false;
  if (rays_.empty()) return true;
  SmithDecomposition snf = smith_normal_form(IntMatrix::from_rows(rays_, rank_));
  for (const auto& d : snf.invariant_factors())
    if (d != 1) return false;
  return true;
}

Cone cone_from_rays(std::size_t rank, const std::vector<IntVector>& generators) {
  std::vector<IntVector> prim;
  for (const auto& g : generators) {
    if (g.size() != rank) throw InputError("cone_from_rays: generator dimension mismatch");
    if (is_zero(g)) throw InputError("cone_from_rays: zero generator");
    prim.push_back(primitive(g));
  }
  std::sort(prim.begin(), prim.end());
  prim.erase(std::unique(prim.begin(), prim.end()), prim.end());
  if (prim.empty() || toric::rank(prim, rank) == prim.size()) return Cone(rank, std::move(prim));

  IntMatrix all = IntMatrix::from_columns(prim, rank);
  for (const auto& r : prim)
    if (nonneg_rational_solve(all, negate(r))) throw InputError("not strongly convex");

  std::vector<IntVector> keep = prim;
  for (const auto& r : prim) {
    std::vector<IntVector> others;
    for (const auto& o : keep)
      if (o != r) others.push_back(o);
    if (others.empty()) continue;
    if (nonneg_rational_solve(IntMatrix::from_columns(others, rank), r)) keep = std::move(others);
  }
  return Cone(rank, std::move(keep));
}

Cone intersect(const Cone& a, const Cone& b) {
  if (a.ambient_rank() != b.ambient_rank()) throw InputError("intersect: rank mismatch");
  const std::size_t n = a.ambient_rank();
  std::vector<IntVector> dual_gens;
  for (const Cone* c : {&a, &b}) {
    const FacetData& fd = c->facets();
    for (const auto& h : fd.normals) dual_gens.push_back(h);
    for (const auto& e : fd.equations) {
      dual_gens.push_back(e);
      dual_gens.push_back(negate(e));
    }
  }
  if (dual_gens.empty()) return Cone::zero(n);
  DualDescription dd = dual_description(n, dual_gens);
  // a and b are pointed, so the dual generators span a full-dimensional cone.
  if (!dd.equations.empty()) throw ConsistencyError("intersect: dual cone not full-dimensional");
  if (dd.inequalities.empty()) return Cone::zero(n);
  return cone_from_rays(n, dd.inequalities);
}

QuotientType quotient_type_2d(const Cone& c) {
  if (c.ambient_rank() != 2 || c.dim() != 2)
    throw InputError("quotient_type_2d: need a 2-dimensional cone in a rank-2 lattice");
  const IntVector& u1 = c.rays()[0];
  const IntVector& u2 = c.rays()[1];
  // e with det(e, u1) = 1, from s*x + t*y = 1 for u1 = (x, y).
  Integer g, s, t;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), u1[0].get_mpz_t(), u1[1].get_mpz_t());
  IntVector e{t, -s};
  // u2 = a e + b u1 with a = det(u2, u1); flip e so that a = d > 0.
  Integer a = u2[0] * u1[1] - u2[1] * u1[0];
  if (a < 0) {
    e = negate(e);
    a = -a;
  }
  // b from the coordinate where u1 is nonzero.
  std::size_t idx = u1[0] != 0 ? 0 : 1;
  Integer b = (u2[idx] - a * e[idx]) / u1[idx];
  const Integer& d = a;
  if (d == 1) return {Integer(1), Integer(0)};
  Integer k;
  mpz_fdiv_r(k.get_mpz_t(), Integer(-b).get_mpz_t(), d.get_mpz_t());
  Integer kinv;
  if (mpz_invert(kinv.get_mpz_t(), k.get_mpz_t(), d.get_mpz_t()) == 0)
    throw ConsistencyError("quotient_type_2d: weight not invertible mod order");
  return {d, std::min(k, kinv)};
}

}  // namespace toric
