#include "toric/corpus.hpp"

#include "toric/divisor.hpp"
#include "toric/exact_linalg.hpp"

namespace toric {

namespace {

std::vector<RaySet> omit_one(std::size_t m) {
  std::vector<RaySet> cones;
  for (std::size_t skip = 0; skip < m; ++skip) {
    RaySet s;
    for (std::size_t i = 0; i < m; ++i)
      if (i != skip) s.push_back(i);
    cones.push_back(s);
  }
  return cones;
}

IntVector unit(std::size_t n, std::size_t i) {
  IntVector v(n, Integer(0));
  v[i] = 1;
  return v;
}

}  // namespace

Fan projective_space_fan(std::size_t n) {
  if (n == 0) throw InputError("projective_space_fan: n must be positive");
  std::vector<IntVector> rays;
  for (std::size_t i = 0; i < n; ++i) rays.push_back(unit(n, i));
  rays.push_back(IntVector(n, Integer(-1)));
  return Fan(n, rays, omit_one(n + 1));
}

Fan p1xp1_fan() {
  return Fan(2, {make_vector({1, 0}), make_vector({0, 1}), make_vector({-1, 0}), make_vector({0, -1})},
             {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
}

GroupAction swap_action() { return GroupAction(2, {IntMatrix{{0, 1}, {1, 0}}}, {2}); }

GroupAction negation_action(std::size_t rank) {
  IntMatrix m = IntMatrix::identity(rank);
  for (std::size_t i = 0; i < rank; ++i) m(i, i) = -1;
  return GroupAction(rank, {m}, {2});
}

Fan cubic_3a2_fan() {
  const Fan p2 = projective_space_fan(2);
  // 3 N' = 3 Z^2 + Z (1, 2); coordinates of 3u in a basis of 3 N' are those of u in N'.
  const auto basis = lattice_basis({make_vector({3, 0}), make_vector({0, 3}), make_vector({1, 2})}, 2);
  std::vector<IntVector> rays;
  for (const auto& u : p2.rays()) {
    auto x = lattice_coordinates(basis, scale(Integer(3), u));
    if (!x) throw ConsistencyError("cubic_3a2_fan: ray outside the overlattice");
    rays.push_back(primitive(*x));
  }
  Fan f(2, rays, p2.maximal_ray_sets());
  for (std::size_t i = 0; i < f.cones().size(); ++i) {
    if (f.cone_dim(i) != 2) continue;
    QuotientType t = quotient_type_2d(f.cone(i));
    if (t.order != 3 || t.weight != 2)
      throw ConsistencyError("cubic_3a2_fan: cone " + to_string(f.cones()[i]) + " has type (" + t.order.get_str() +
                             ", " + t.weight.get_str() + ")");
  }
  return f;
}

std::vector<CorpusFile> corpus_files() {
  std::vector<CorpusFile> out;
  auto fan = [&](const std::string& name, const Fan& f) { out.push_back({"fans/" + name + ".json", fan_to_json(f)}); };
  for (std::size_t n = 1; n <= 4; ++n) fan("p" + std::to_string(n), projective_space_fan(n));
  fan("p112", wps_fan_unit_chart(Weights{1, 1, 2}));
  fan("p123", wps_fan_unit_chart(Weights{1, 2, 3}));
  fan("p234", wps_fan(Weights{2, 3, 4}));
  fan("p1xp1", p1xp1_fan());
  fan("cubic_3a2", cubic_3a2_fan());

  auto action = [&](const std::string& name, const GroupAction& g) {
    out.push_back({"actions/" + name + ".json", action_to_json(g)});
  };
  for (std::size_t r = 1; r <= 4; ++r) action("trivial" + std::to_string(r), GroupAction::trivial(r));
  action("p1xp1_swap", swap_action());
  action("p1_negation", negation_action(1));
  action("p2_negation", negation_action(2));

  for (const Weights& w : {Weights{1, 1, 1}, Weights{1, 1, 2}, Weights{1, 2, 2}, Weights{1, 2, 3}, Weights{2, 3, 4}}) {
    std::string name;
    for (const auto& x : w.values()) name += x.get_str();
    out.push_back({"weights/w" + name + ".json", Json{{"weights", weights_to_json(w)}}});
  }

  out.push_back({"modules/z1.json", Json{{"rank", 1}, {"relations", Json::array()}}});
  out.push_back({"modules/z2.json", Json{{"rank", 2}, {"relations", Json::array()}}});
  return out;
}

}  // namespace toric
