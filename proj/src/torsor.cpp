#include "toric/torsor.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "toric/exact_linalg.hpp"

namespace toric {

TorsorData build_dtilde(const Fan& f, const InvariantConeSolution& sol) {
  TorsorData td;
  td.d = f.rays().size();
  if (sol.c.size() != td.d) throw InputError("build_dtilde: coefficient count does not match ray count");
  td.A = sol.A;
  td.c = sol.c;
  td.sigma = sol.sigma;
  td.dtilde0.resize(td.d);
  td.relation.assign(1, Integer(1));
  for (std::size_t i = 0; i < td.d; ++i) {
    td.dtilde0[i] = -(td.A + td.c[i]);
    td.relation.push_back(td.A + td.c[i]);
  }
  return td;
}

IntMatrix induced_matrix(const std::vector<std::size_t>& perm) {
  IntMatrix p(perm.size(), perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) p(perm[i], i) = 1;
  return p;
}

DtildeInvariance check_dtilde_invariance(const TorsorData& td,
                                         const std::vector<std::vector<std::size_t>>& permutations,
                                         bool simplicial_sigma, bool anisotropic) {
  DtildeInvariance out;
  bool split = std::all_of(permutations.begin(), permutations.end(), [](const auto& p) {
    for (std::size_t i = 0; i < p.size(); ++i)
      if (p[i] != i) return false;
    return true;
  });
  if (split) out.cases.push_back("split");
  if (anisotropic) out.cases.push_back("anisotropic");
  if (simplicial_sigma) out.cases.push_back("simplicial");
  for (std::size_t k = 0; k < permutations.size(); ++k) {
    IntMatrix p = induced_matrix(permutations[k]);
    IntVector image = p * td.dtilde0;
    if (image != td.dtilde0 && out.invariant) {
      out.invariant = false;
      out.counterexample = k;
      out.moved_to = image;
    }
    out.induced.push_back(std::move(p));
  }
  return out;
}

Fan build_delta(const TorsorData& td) {
  const std::size_t d = td.d;
  if (d == 0) throw InputError("build_delta: the base fan has no rays");
  std::vector<IntVector> rays{primitive(td.dtilde0)};
  for (auto& e : IntMatrix::identity(d).row_vectors()) rays.push_back(std::move(e));
  std::vector<RaySet> maximal;
  for (std::size_t omit = 0; omit <= d; ++omit) {
    RaySet s;
    std::vector<IntVector> gens;
    for (std::size_t i = 0; i <= d; ++i) {
      if (i == omit) continue;
      s.push_back(i);
      gens.push_back(rays[i]);
    }
    if (rank(gens, d) != d) throw InputError("build_delta: proper subset " + to_string(s) + " is degenerate");
    maximal.push_back(std::move(s));
  }
  return Fan(d, std::move(rays), maximal);
}

DeltaCertificate certify_delta(const Fan& delta, const TorsorData& td, std::size_t generic_limit) {
  DeltaCertificate cert;
  const std::size_t d = td.d;
  auto rel = integer_kernel(IntMatrix::from_columns(delta.rays(), d));
  if (rel.size() == 1) {
    IntVector w = rel[0];
    if (w[0] < 0) w = negate(w);
    cert.positive_relation = std::all_of(w.begin(), w.end(), [](const Integer& x) { return x > 0; });
  }
  std::vector<IntVector> tail(delta.rays().begin() + 1, delta.rays().end());
  cert.basis_spans = abs(determinant(IntMatrix::from_rows(tail, d))) == 1;
  bool cheap = cert.positive_relation && cert.basis_spans;
  cert.valid = cert.complete = cheap;
  if (d <= generic_limit) {
    cert.generic_checked = true;
    cert.generic_valid = validate(delta).valid;
    cert.generic_complete = is_complete(delta).complete;
    if (cert.generic_valid != cheap || cert.generic_complete != cheap)
      throw ConsistencyError("certify_delta: generic fan checks disagree with the relation certificate");
  }
  cert.simplicial = delta.is_simplicial();
  return cert;
}

TorsorWeights torsor_weights(const Fan& delta) {
  auto rel = integer_kernel(IntMatrix::from_columns(delta.rays(), delta.rank()));
  if (rel.size() != 1)
    throw InputError("torsor_weights: relation space has rank " + std::to_string(rel.size()) + ", expected 1");
  IntVector w = rel[0];
  if (w[0] < 0) w = negate(w);
  for (const auto& x : w)
    if (x <= 0) throw InputError("torsor_weights: relation " + to_string(w) + " is not positive");
  TorsorWeights out{Weights(w), std::nullopt};
  out.isomorphism = match_fans(delta, wps_fan(out.weights));
  return out;
}

GtildeResult build_gtilde(const Fan& f, const Fan& delta, const TorsorData& td) {
  GtildeResult out;
  out.matrix = IntMatrix::from_columns(f.rays(), f.rank());
  out.image_of_dtilde0 = out.matrix * td.dtilde0;
  out.delta_prime = rays_subfan(delta);
  out.sigma_prime = rays_subfan(f);
  out.to_sigma_prime = check_morphism(out.matrix, out.delta_prime, out.sigma_prime);
  out.into_sigma = check_morphism(out.matrix, out.delta_prime, f);
  return out;
}

std::vector<DominanceRow> dominance_table(const Fan& f, const TorsorData& td, const IntMatrix& gtilde) {
  std::vector<DominanceRow> rows;
  DominanceRow zero;
  zero.index = 0;
  zero.image = gtilde * primitive(td.dtilde0);
  zero.kind = "collapse";
  zero.multiple = 0;
  zero.pass = is_zero(zero.image);
  rows.push_back(std::move(zero));
  IntMatrix id = IntMatrix::identity(td.d);
  for (std::size_t i = 0; i < td.d; ++i) {
    DominanceRow row;
    row.index = i + 1;
    row.image = gtilde * id.column(i);
    row.kind = "ray";
    const IntVector& u = f.rays()[i];
    row.multiple = 0;
    for (std::size_t k = 0; k < u.size(); ++k) {
      if (u[k] != 0) {
        if (row.image[k] % u[k] == 0) row.multiple = row.image[k] / u[k];
        break;
      }
    }
    row.pass = row.multiple > 0 && scale(row.multiple, u) == row.image;
    rows.push_back(std::move(row));
  }
  return rows;
}

bool TorsorReport::has_internal_error() const {
  return std::any_of(stages.begin(), stages.end(), [](const StageVerdict& s) { return s.internal_error; });
}

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

}  // namespace

TorsorReport run_pipeline(const Fan& f, const GroupAction& g, const PipelineOptions& opts) {
  TorsorReport rep;
  rep.notes = {
      "the translation normalizing the torsor is not modeled",
      "descent of Y to the base field is not certified; only invariance of Delta under the induced action is checked",
      "flatness over the dense torus orbit is an assumption, not a computation",
      "Z is modeled as a union of torus-orbit closures given by cones of dimension >= 2",
  };

  auto run = [&](const std::string& name, const std::function<Outcome()>& body) {
    StageVerdict v;
    v.name = name;
    try {
      Outcome o = body();
      v.pass = o.pass;
      v.detail = std::move(o.detail);
    } catch (const InputError& e) {
      v.pass = false;
      v.detail = e.what();
    } catch (const ConsistencyError& e) {
      v.pass = false;
      v.internal_error = true;
      v.detail = std::string("internal consistency error: ") + e.what();
    } catch (const std::exception& e) {
      v.pass = false;
      v.internal_error = true;
      v.detail = std::string("internal error: ") + e.what();
    }
    bool ok = v.pass;
    rep.stages.push_back(std::move(v));
    if (!ok) rep.failed_stage = name;
    return ok;
  };

  if (!run("validate_fan", [&]() -> Outcome {
        rep.fan_validation = validate(f);
        if (rep.fan_validation->valid) return {true, "fan axioms hold"};
        return {false, rep.fan_validation->violations.front().kind + ": " + rep.fan_validation->violations.front().detail};
      }))
    return rep;

  if (!run("completeness", [&]() -> Outcome {
        rep.completeness = is_complete(f);
        rep.sampling = completeness_by_sampling(f, opts.seed);
        if (rep.completeness->complete != rep.sampling->covered) {
          std::string d = "wall criterion and sampling disagree";
          if (rep.sampling->uncovered) d += "; uncovered point " + to_string(*rep.sampling->uncovered);
          throw ConsistencyError(d);
        }
        return {rep.completeness->complete, rep.completeness->reason};
      }))
    return rep;

  if (g.rank() != f.rank()) {
    run("validate_action", [&]() -> Outcome {
      return {false, "action rank " + std::to_string(g.rank()) + " does not match fan rank " + std::to_string(f.rank())};
    });
    return rep;
  }

  if (!run("validate_action", [&]() -> Outcome {
        rep.action = validate_action(g, f);
        if (rep.action->valid)
          return {true, std::to_string(rep.action->elements.size()) + " group elements preserve the fan"};
        return {false, rep.action->violations.front()};
      }))
    return rep;
  const auto& perms = rep.action->permutations;
  const auto& elements = rep.action->elements;

  if (!run("invariant_sublattice", [&]() -> Outcome {
        rep.invariant_lattice = invariant_sublattice(g);
        return {true, "rank " + std::to_string(rep.invariant_lattice->basis.size()) +
                          (rep.invariant_lattice->anisotropic ? ", anisotropic" : "")};
      }))
    return rep;
  const bool anisotropic = rep.invariant_lattice->anisotropic;

  if (!run("e_vector", [&]() -> Outcome {
        rep.e = e_vector(f, Integer(1));
        if (!is_invariant(elements, *rep.e)) throw ConsistencyError("e = " + to_string(*rep.e) + " is not invariant");
        if (anisotropic && !is_zero(*rep.e))
          throw ConsistencyError("e = " + to_string(*rep.e) + " is nonzero although N^G = 0");
        return {true, "e = " + to_string(*rep.e)};
      }))
    return rep;

  if (!run("choose_invariant_cone", [&]() -> Outcome {
        if (opts.cone) {
          RaySet s = *opts.cone;
          std::sort(s.begin(), s.end());
          auto idx = f.find_cone(s);
          if (!idx) return {false, "override " + to_string(s) + " is not a cone of the fan"};
          InvariantCone ic;
          ic.cone_index = *idx;
          ic.rays = s;
          ic.invariant = std::all_of(perms.begin(), perms.end(), [&](const auto& p) { return permute(s, p) == s; });
          rep.cone = ic;
          if (!f.cone(*idx).contains(*rep.e)) return {false, "override cone " + to_string(s) + " does not contain e"};
        } else {
          rep.cone = choose_invariant_cone(f, perms, *rep.e);
        }
        if (!rep.cone->invariant) {
          if (!opts.cone) throw ConsistencyError("minimal cone containing e is not invariant");
          return {false, "cone " + to_string(rep.cone->rays) + " is not invariant"};
        }
        return {true, "sigma = " + to_string(rep.cone->rays)};
      }))
    return rep;

  if (!run("solve_coefficients", [&]() -> Outcome {
        rep.solution = solve_coefficients(f, perms, rep.cone->rays, anisotropic, opts.A);
        std::string d = "A = " + rep.solution->A.get_str() + ", c = " + to_string(rep.solution->c);
        if (!rep.solution->unique) d += " (not unique: sigma is not simplicial)";
        if (rep.solution->averaged) d += " (group-averaged)";
        return {true, d};
      }))
    return rep;

  if (!run("build_dtilde", [&]() -> Outcome {
        rep.data = build_dtilde(f, *rep.solution);
        IntVector sum = rep.data->dtilde0;
        for (std::size_t i = 0; i < rep.data->d; ++i) sum[i] += rep.data->relation[i + 1];
        if (!is_zero(sum)) throw ConsistencyError("defining relation fails: " + to_string(sum));
        return {true, "D~0 = " + to_string(rep.data->dtilde0) + ", relation " + to_string(rep.data->relation)};
      }))
    return rep;

  if (!run("dtilde_invariance", [&]() -> Outcome {
        bool simplicial = f.cone(rep.cone->cone_index).is_simplicial();
        rep.invariance = check_dtilde_invariance(*rep.data, perms, simplicial, anisotropic);
        std::string cases;
        for (const auto& c : rep.invariance->cases) cases += (cases.empty() ? "" : ", ") + c;
        if (cases.empty()) cases = "none";
        if (rep.invariance->invariant) return {true, "D~0 is invariant; cases: " + cases};
        return {false, "element " + std::to_string(*rep.invariance->counterexample) + " moves D~0 to " +
                           to_string(rep.invariance->moved_to) + "; cases: " + cases};
      }))
    return rep;

  if (!run("build_delta", [&]() -> Outcome {
        rep.delta = build_delta(*rep.data);
        rep.delta_certificate = certify_delta(*rep.delta, *rep.data, opts.generic_delta_limit);
        const auto& c = *rep.delta_certificate;
        bool ok = c.valid && c.complete && c.simplicial;
        return {ok, std::string("valid ") + (c.valid ? "yes" : "no") + ", complete " + (c.complete ? "yes" : "no") +
                        ", simplicial " + (c.simplicial ? "yes" : "no") +
                        (c.generic_checked ? " (generic checks agree)" : "")};
      }))
    return rep;

  if (!run("torsor_weights", [&]() -> Outcome {
        rep.weights = torsor_weights(*rep.delta);
        std::string d = "weights " + to_string(rep.weights->weights);
        if (!rep.weights->isomorphism) return {false, d + "; no unimodular match with the weighted projective fan"};
        return {true, d + "; unimodular match with the weighted projective fan"};
      }))
    return rep;

  if (!run("build_gtilde", [&]() -> Outcome {
        rep.gtilde = build_gtilde(f, *rep.delta, *rep.data);
        const auto& gt = *rep.gtilde;
        if (!is_zero(gt.image_of_dtilde0))
          throw ConsistencyError("g~(D~0) = " + to_string(gt.image_of_dtilde0) + " != 0");
        if (!gt.to_sigma_prime.morphism)
          return {false, "Delta' -> Sigma' fails at cone " +
                             to_string(gt.delta_prime.cones()[gt.to_sigma_prime.violations.front()])};
        if (!gt.into_sigma.morphism)
          return {false, "Delta' -> Sigma fails at cone " + to_string(gt.delta_prime.cones()[gt.into_sigma.violations.front()])};
        return {true, "g~(D~0) = 0; Delta' -> Sigma' and Delta' -> Sigma are fan morphisms"};
      }))
    return rep;

  if (!run("dominance_table", [&]() -> Outcome {
        rep.dominance = dominance_table(f, *rep.data, rep.gtilde->matrix);
        for (const auto& r : rep.dominance)
          if (!r.pass) return {false, "row " + std::to_string(r.index) + " image " + to_string(r.image)};
        return {true, std::to_string(rep.dominance.size() - 1) + " ray rows and one collapse row"};
      }))
    return rep;

  if (!run("equivariance", [&]() -> Outcome {
        const IntMatrix& gt = rep.gtilde->matrix;
        for (std::size_t k = 0; k < elements.size(); ++k) {
          if (gt * rep.invariance->induced[k] != elements[k] * gt) {
            rep.equivariant = false;
            return {false, "element " + std::to_string(k) + " does not intertwine g~"};
          }
        }
        rep.equivariant = true;
        return {true, "g~ intertwines the induced action for all " + std::to_string(elements.size()) + " elements"};
      }))
    return rep;

  if (!run("delta_invariance", [&]() -> Outcome {
        const Fan& delta = *rep.delta;
        for (std::size_t k = 0; k < elements.size(); ++k) {
          const IntMatrix& p = rep.invariance->induced[k];
          std::vector<std::size_t> perm;
          for (const auto& r : delta.rays()) {
            auto j = delta.ray_index(p * r);
            if (!j) {
              rep.delta_invariant = false;
              return {false, "element " + std::to_string(k) + " maps ray " + to_string(r) + " off Delta"};
            }
            perm.push_back(*j);
          }
          for (const auto& s : delta.maximal_ray_sets()) {
            if (!delta.find_cone(permute(s, perm))) {
              rep.delta_invariant = false;
              return {false, "element " + std::to_string(k) + " maps cone " + to_string(s) + " off Delta"};
            }
          }
        }
        rep.delta_invariant = true;
        return {true, "Delta is invariant under the induced action"};
      }))
    return rep;

  if (!run("codimension", [&]() -> Outcome {
        const Fan& sp = rep.gtilde->sigma_prime;
        const Fan& dp = rep.gtilde->delta_prime;
        auto cert = [&](std::string name, const Fan& big, const Fan& sub) {
          CodimCertificate c{std::move(name), complement_codim(big, sub), false};
          c.pass = !c.codim || *c.codim >= 2;
          rep.codims.push_back(c);
        };
        cert("Sigma \\ Sigma'", f, sp);
        cert("Sigma_sm \\ Sigma'", smooth_subfan(f), sp);
        cert("Delta_sm \\ Delta'", smooth_subfan(*rep.delta), dp);
        for (const auto& c : rep.codims)
          if (!c.pass) return {false, c.name + " has codimension " + std::to_string(*c.codim)};
        return {true, "all complements have codimension >= 2"};
      }))
    return rep;

  run("preimage_rule", [&]() -> Outcome {
    if (opts.z) {
      for (RaySet s : *opts.z) {
        std::sort(s.begin(), s.end());
        auto idx = f.find_cone(s);
        if (!idx) return {false, "Z entry " + to_string(s) + " is not a cone of the fan"};
        if (f.cone_dim(*idx) < 2) return {false, "Z entry " + to_string(s) + " has dimension < 2"};
        rep.z.push_back(s);
      }
    } else {
      for (std::size_t i = 0; i < f.cones().size(); ++i)
        if (f.cone_dim(i) >= 2) rep.z.push_back(f.cones()[i]);
    }
    const auto& m = *rep.gtilde->into_sigma.morphism;
    const Fan& dp = rep.gtilde->delta_prime;
    for (std::size_t i = 0; i < dp.cones().size(); ++i) {
      const RaySet& target = f.cones()[m.assignment[i]];
      bool hit = std::any_of(rep.z.begin(), rep.z.end(), [&](const RaySet& z) {
        return std::includes(target.begin(), target.end(), z.begin(), z.end());
      });
      if (hit) rep.z_preimage.push_back(dp.cones()[i]);
    }
    for (const auto& s : rep.z_preimage) {
      auto idx = dp.find_cone(s);
      if (dp.cone_dim(*idx) < 2)
        return {false, "cone " + to_string(s) + " of Delta' maps into Z with codimension " +
                           std::to_string(dp.cone_dim(*idx))};
    }
    if (rep.z_preimage.empty())
      return {true, "preimage of Z in Y_Delta' is empty (" + std::to_string(rep.z.size()) + " cones in Z)"};
    return {true, "preimage of Z in Y_Delta' has codimension >= 2 (" + std::to_string(rep.z_preimage.size()) +
                      " cones of Delta')"};
  });
  return rep;
}

}  // namespace toric
