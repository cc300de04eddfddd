#include "toric/galois.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "toric/exact_linalg.hpp"

namespace toric {

namespace {

std::vector<Integer> flatten(const IntMatrix& m) {
  std::vector<Integer> out;
  out.reserve(m.rows() * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out.push_back(m(r, c));
  return out;
}

}  // namespace

GroupAction::GroupAction(std::size_t rank, std::vector<IntMatrix> generators, std::vector<unsigned> orders)
    : rank_(rank), generators_(std::move(generators)), orders_(std::move(orders)) {
  for (const auto& g : generators_)
    if (g.rows() != rank_ || g.cols() != rank_) throw InputError("GroupAction: generator shape does not match rank");
  if (!orders_.empty() && orders_.size() != generators_.size())
    throw InputError("GroupAction: order count does not match generator count");
}

std::vector<IntMatrix> group_elements(const GroupAction& g) {
  IntMatrix id = IntMatrix::identity(g.rank());
  std::vector<IntMatrix> out{id};
  std::set<std::vector<Integer>> seen{flatten(id)};
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (const auto& gen : g.generators()) {
      IntMatrix next = gen * out[head];
      if (seen.insert(flatten(next)).second) {
        if (out.size() >= kMaxGroupOrder)
          throw InputError("group closure exceeds " + std::to_string(kMaxGroupOrder) + " elements");
        out.push_back(std::move(next));
      }
    }
  }
  return out;
}

std::optional<unsigned> element_order(const IntMatrix& m, unsigned cap) {
  IntMatrix id = IntMatrix::identity(m.rows());
  IntMatrix p = m;
  for (unsigned k = 1; k <= cap; ++k) {
    if (p == id) return k;
    p = p * m;
  }
  return std::nullopt;
}

std::optional<IntMatrix> cyclic_generator(const GroupAction& g) {
  auto elements = group_elements(g);
  for (const auto& e : elements) {
    auto k = element_order(e, static_cast<unsigned>(elements.size()));
    if (k && *k == elements.size()) return e;
  }
  return std::nullopt;
}

ActionValidation validate_action(const GroupAction& g, const Fan& f) {
  if (g.rank() != f.rank()) throw InputError("validate_action: action rank does not match fan rank");
  ActionValidation out;
  auto fail = [&](std::string msg) {
    out.valid = false;
    out.violations.push_back(std::move(msg));
  };
  for (std::size_t k = 0; k < g.generators().size(); ++k) {
    Integer det = determinant(g.generators()[k]);
    if (det != 1 && det != -1) fail("generator " + std::to_string(k) + " is not unimodular (det " + det.get_str() + ")");
  }
  if (!out.valid) return out;
  for (std::size_t k = 0; k < g.orders().size(); ++k) {
    auto ord = element_order(g.generators()[k], g.orders()[k]);
    if (!ord || *ord != g.orders()[k])
      fail("generator " + std::to_string(k) + " does not have declared order " + std::to_string(g.orders()[k]));
  }
  try {
    out.elements = group_elements(g);
  } catch (const InputError& e) {
    fail(e.what());
    return out;
  }
  for (std::size_t k = 0; k < out.elements.size(); ++k) {
    const IntMatrix& m = out.elements[k];
    std::vector<std::size_t> perm;
    bool ok = true;
    for (std::size_t i = 0; i < f.rays().size() && ok; ++i) {
      IntVector image = m * f.rays()[i];
      auto j = f.ray_index(image);
      if (!j) {
        fail("element " + std::to_string(k) + " maps ray " + std::to_string(i) + " " + to_string(f.rays()[i]) +
             " to " + to_string(image) + ", which is not a ray");
        ok = false;
      } else {
        perm.push_back(*j);
      }
    }
    if (!ok) {
      out.permutations.emplace_back();
      continue;
    }
    for (const auto& s : f.cones()) {
      RaySet image = permute(s, perm);
      if (!f.find_cone(image)) {
        fail("element " + std::to_string(k) + " maps cone " + to_string(s) + " to " + to_string(image) +
             ", which is not a cone");
        break;
      }
    }
    out.permutations.push_back(std::move(perm));
  }
  if (!out.valid) out.permutations.clear();
  return out;
}

InvariantSublattice invariant_sublattice(const GroupAction& g) {
  InvariantSublattice out;
  const std::size_t n = g.rank();
  if (g.generators().empty()) {
    out.basis = IntMatrix::identity(n).row_vectors();
  } else {
    IntMatrix id = IntMatrix::identity(n);
    std::vector<IntVector> rows;
    for (const auto& gen : g.generators())
      for (auto& r : (gen - id).row_vectors()) rows.push_back(std::move(r));
    out.basis = integer_kernel(IntMatrix::from_rows(rows, n));
  }
  out.anisotropic = out.basis.empty();
  return out;
}

IntVector e_vector(const Fan& f, const Integer& a) {
  IntVector sum(f.rank(), Integer(0));
  for (const auto& u : f.rays()) sum = add(sum, u);
  return scale(-a, sum);
}

bool is_invariant(const std::vector<IntMatrix>& elements, const IntVector& v) {
  return std::all_of(elements.begin(), elements.end(), [&](const IntMatrix& m) { return m * v == v; });
}

RaySet permute(const RaySet& s, const std::vector<std::size_t>& perm) {
  RaySet out;
  for (auto i : s) out.push_back(perm.at(i));
  std::sort(out.begin(), out.end());
  return out;
}

InvariantCone choose_invariant_cone(const Fan& f, const std::vector<std::vector<std::size_t>>& permutations,
                                    const IntVector& e) {
  auto idx = minimal_cone_containing(f, e);
  if (!idx) throw InputError("choose_invariant_cone: e = " + to_string(e) + " lies outside the support of the fan");
  InvariantCone out;
  out.cone_index = *idx;
  out.rays = f.cones()[*idx];
  out.invariant = std::all_of(permutations.begin(), permutations.end(),
                              [&](const auto& p) { return permute(out.rays, p) == out.rays; });
  return out;
}

InvariantConeSolution solve_coefficients(const Fan& f, const std::vector<std::vector<std::size_t>>& permutations,
                                         const RaySet& sigma, bool anisotropic, std::optional<Integer> a_override) {
  const std::size_t d = f.rays().size();
  InvariantConeSolution out;
  out.sigma = sigma;
  out.anisotropic = anisotropic;
  out.c.assign(d, Integer(0));
  out.c_rational.assign(d, Rational(0));
  if (a_override && *a_override <= 0) throw InputError("solve_coefficients: A must be positive");

  IntVector sum_u(f.rank(), Integer(0));
  for (const auto& u : f.rays()) sum_u = add(sum_u, u);

  if (!anisotropic && !sigma.empty()) {
    std::vector<IntVector> cols;
    for (auto t : sigma) cols.push_back(f.rays().at(t));
    auto sol = nonneg_rational_solve(IntMatrix::from_columns(cols, f.rank()), negate(sum_u));
    if (!sol) throw ConsistencyError("solve_coefficients: e is not a nonnegative combination of the rays of sigma");
    for (std::size_t k = 0; k < sigma.size(); ++k) out.c_rational[sigma[k]] = (*sol)[k];
    out.unique = rank(cols, f.rank()) == cols.size();

    auto invariant = [&](const RationalVector& c) {
      for (const auto& p : permutations)
        for (std::size_t i = 0; i < d; ++i)
          if (c[p[i]] != c[i]) return false;
      return true;
    };
    if (!invariant(out.c_rational) && !permutations.empty()) {
      RationalVector avg(d, Rational(0));
      for (const auto& p : permutations)
        for (std::size_t i = 0; i < d; ++i) avg[i] += out.c_rational[p[i]];
      for (auto& x : avg) x /= static_cast<long>(permutations.size());
      out.c_rational = std::move(avg);
      out.averaged = true;
    }
  }

  Integer a_min = common_denominator(out.c_rational);
  out.A = a_override ? *a_override : a_min;
  for (std::size_t i = 0; i < d; ++i) {
    Rational v = out.c_rational[i] * out.A;
    if (v.get_den() != 1)
      throw InputError("solve_coefficients: A = " + out.A.get_str() + " does not clear the denominators of c");
    out.c[i] = v.get_num();
  }

  IntVector check = scale(out.A, sum_u);
  for (std::size_t i = 0; i < d; ++i) check = add(check, scale(out.c[i], f.rays()[i]));
  if (!is_zero(check))
    throw ConsistencyError("solve_coefficients: A * sum u_i + sum c_t u_t = " + to_string(check) + " != 0");
  return out;
}

}  // namespace toric
