#include "toric/report.hpp"

#include <numeric>
#include <sstream>

#include "toric/divisor.hpp"

namespace toric {

namespace {

Json optional_integer(const std::optional<Integer>& x) { return x ? to_json(*x) : Json(nullptr); }

Json ray_sets(const std::vector<RaySet>& v) {
  Json a = Json::array();
  for (const auto& s : v) a.push_back(to_json(s));
  return a;
}

Json vectors(const std::vector<IntVector>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

Json validation_json(const FanValidation& v) {
  Json j;
  j["valid"] = v.valid;
  j["pairs_checked"] = v.pairs_checked;
  j["violations"] = Json::array();
  for (const auto& x : v.violations) {
    Json e;
    e["kind"] = x.kind;
    e["cones"] = ray_sets(x.cones);
    e["detail"] = x.detail;
    j["violations"].push_back(e);
  }
  return j;
}

Json completeness_json(const CompletenessResult& c, const SamplingResult& s) {
  Json j;
  j["complete"] = c.complete;
  j["reason"] = c.reason;
  j["walls"] = c.walls.size();
  Json js;
  js["covered"] = s.covered;
  js["samples"] = s.samples;
  js["uncovered"] = s.uncovered ? to_json(*s.uncovered) : Json(nullptr);
  j["sampling"] = js;
  j["agree"] = c.complete == s.covered;
  return j;
}

Json class_group_json(const AbelianGroupPresentation& g) {
  Json j = group_to_json(g);
  j["text"] = g.describe();
  j["warnings"] = g.warnings;
  return j;
}

std::string quotient_label(const QuotientType& t) {
  if (t.is_smooth()) return "smooth";
  if (t.is_a_type()) return "A" + Integer(t.order - 1).get_str();
  return "1/" + t.order.get_str() + "(1," + t.weight.get_str() + ")";
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace

Report analyze_fan_report(const Fan& input, std::uint64_t seed) {
  const Fan f = input.canonical();
  Report rep;
  Json& j = rep.json;
  std::ostringstream out;
  j["fan"] = fan_to_json(f);

  FanValidation v = validate(f);
  j["validation"] = validation_json(v);
  if (!v.valid) {
    j["verdict"] = "invalid fan";
    out << "verdict: invalid fan\n";
    for (const auto& x : v.violations) out << "  " << x.kind << ": " << x.detail << "\n";
    rep.summary = out.str();
    return rep;
  }
  j["verdict"] = "valid fan";
  out << "verdict: valid fan (rank " << f.rank() << ", " << f.rays().size() << " rays, "
      << f.maximal_cones().size() << " maximal cones)\n";

  CompletenessResult c = is_complete(f);
  SamplingResult s = completeness_by_sampling(f, seed);
  j["completeness"] = completeness_json(c, s);
  out << "complete: " << yes_no(c.complete) << " (" << c.reason << "; sampling "
      << (c.complete == s.covered ? "agrees" : "DISAGREES") << ")\n";

  j["simplicial"] = f.is_simplicial();
  j["smooth"] = f.is_smooth();
  out << "simplicial: " << yes_no(f.is_simplicial()) << ", smooth: " << yes_no(f.is_smooth()) << "\n";

  Fan sm = smooth_subfan(f);
  std::vector<RaySet> removed;
  for (const auto& cone : f.cones())
    if (!sm.find_cone(cone)) removed.push_back(cone);
  Json jsm;
  jsm["maximal_cones"] = ray_sets(sm.maximal_ray_sets());
  jsm["removed_cones"] = ray_sets(removed);
  auto cd = complement_codim(f, sm);
  jsm["complement_codim"] = cd ? Json(*cd) : Json("infinity");
  j["smooth_subfan"] = jsm;
  out << "smooth subfan: " << removed.size() << " cones removed\n";

  AbelianGroupPresentation cl = class_group(f);
  j["class_group"] = class_group_json(cl);
  out << "Cl = " << cl.describe() << "\n";

  PicardGroup pic = picard_group(f);
  Json jp = group_to_json(pic.pic);
  jp["text"] = pic.pic.describe();
  jp["index"] = optional_integer(pic.index);
  jp["degree_index"] = optional_integer(pic.degree_index);
  jp["cartier_basis"] = vectors(pic.cartier_basis);
  j["picard"] = jp;
  out << "Pic = " << pic.pic.describe();
  if (pic.index) out << ", [Cl:Pic] = " << pic.index->get_str();
  if (pic.degree_index) out << ", index of Pic in Cl/torsion = " << pic.degree_index->get_str();
  out << "\n";

  Json sing = Json::array();
  if (f.rank() == 2) {
    for (std::size_t i = 0; i < f.cones().size(); ++i) {
      if (f.cone_dim(i) != 2) continue;
      QuotientType t = quotient_type_2d(f.cone(i));
      Json e;
      e["cone"] = to_json(f.cones()[i]);
      e["order"] = to_json(t.order);
      e["weight"] = to_json(t.weight);
      e["type"] = quotient_label(t);
      sing.push_back(e);
      if (!t.is_smooth()) out << "singular cone " << to_string(f.cones()[i]) << ": " << quotient_label(t) << "\n";
    }
  }
  j["singularities"] = sing;
  rep.summary = out.str();
  return rep;
}

Json certificate_to_json(const ChartCertificate& c) {
  Json j;
  j["vacuous"] = c.vacuous;
  j["pass"] = c.passed();
  if (c.vacuous) return j;
  const Prop21Step& st = *c.step;
  Json js;
  js["input"] = weights_to_json(st.input);
  js["sorted"] = weights_to_json(st.sorted);
  js["permutation"] = st.permutation;
  js["mu"] = st.mu;
  js["next"] = weights_to_json(st.next);
  js["dropped_weight"] = to_json(st.dropped_weight);
  j["step"] = js;
  j["charts"] = Json::array();
  for (const auto& ch : c.charts) {
    Json e;
    e["label"] = ch.label;
    e["generators"] = Json::array();
    for (const auto& g : ch.generators) e["generators"].push_back(to_string(g));
    j["charts"].push_back(e);
  }
  j["rows"] = Json::array();
  for (const auto& r : c.rows) {
    Json e;
    e["index"] = r.index;
    e["source"] = monomial_to_json(r.source);
    e["image"] = monomial_to_json(r.image);
    e["decomposition"] = r.decomposition ? to_json(*r.decomposition) : Json(nullptr);
    e["y0_exponent"] = to_json(r.y0_exponent);
    j["rows"].push_back(e);
  }
  Json checks;
  checks["inclusion"] = {{"pass", c.inclusion_pass},
                         {"offender", c.inclusion_offender ? Json(*c.inclusion_offender) : Json(nullptr)}};
  checks["image_identity"] = {{"pass", c.image_identity_pass}, {"expected", monomial_to_json(c.expected_mu_image)}};
  checks["dominance"] = {{"pass", c.dominance_pass}};
  checks["codimension"] = {{"pass", c.codim_pass}, {"r_input", c.r_of_input}, {"r_normalized", c.r_normalized}};
  j["checks"] = checks;
  return j;
}

Report wps_report(const Weights& q, const std::string& mode) {
  Report rep;
  Json& j = rep.json;
  std::ostringstream out;
  j["mode"] = mode;
  j["weights"] = weights_to_json(q);
  j["reduced_by"] = to_json(q.reduced_by());
  out << "weights " << to_string(q);
  if (q.reduced_by() != 1) out << " (divided by " << q.reduced_by().get_str() << ")";
  out << "\n";

  auto normalization_json = [](const Normalization& n) {
    Json jn;
    jn["result"] = weights_to_json(n.result);
    jn["steps"] = Json::array();
    for (const auto& s : n.steps) jn["steps"].push_back({{"index", s.index}, {"divisor", to_json(s.divisor)}});
    return jn;
  };

  if (mode == "normalize") {
    Normalization n = normalize_weights(q);
    j["normalization"] = normalization_json(n);
    for (const auto& s : n.steps)
      out << "  divide all weights except q_" << s.index << " by " << s.divisor.get_str() << "\n";
    out << "normalized: " << to_string(n.result) << "\n";
  } else if (mode == "strata") {
    Json js = Json::array();
    for (const auto& s : s_h_strata(q)) {
      js.push_back({{"h", to_json(s.h)}, {"indices", s.indices}});
      out << "  h = " << s.h.get_str() << ": J_h = " << to_string(RaySet(s.indices)) << "\n";
    }
    j["strata"] = js;
    j["r"] = r_invariant(q);
    j["xi"] = xi_invariant(q);
    j["normalized"] = r_invariant(q) > 1;
    out << "r = " << r_invariant(q) << ", Xi = " << xi_invariant(q) << "\n";
  } else if (mode == "weak-locus") {
    Fan full = wps_fan(q);
    Fan weak = weak_locus_subfan(q);
    Fan sm = smooth_subfan(full);
    auto in_full = [&](const Fan& sub) {
      std::vector<RaySet> out_sets;
      for (const auto& s : sub.maximal_ray_sets()) {
        RaySet t;
        for (auto i : s) t.push_back(*full.ray_index(sub.rays()[i]));
        std::sort(t.begin(), t.end());
        out_sets.push_back(t);
      }
      std::sort(out_sets.begin(), out_sets.end());
      return out_sets;
    };
    AStarCodim a = a_star_complement_codim(q);
    j["rays"] = vectors(full.rays());
    j["weak_locus_cones"] = ray_sets(in_full(weak));
    j["smooth_cones"] = ray_sets(in_full(sm));
    j["weak_in_smooth"] = is_subfan(sm, weak);
    j["complement_codim"] = a.codim;
    j["pic_is_z"] = a.pic_is_z;
    out << "weak locus: " << weak.maximal_cones().size() << " maximal cones, contained in smooth locus: "
        << yes_no(is_subfan(sm, weak)) << "\n";
    out << "complement codimension " << a.codim << ", Pic = Z: " << yes_no(a.pic_is_z) << "\n";
  } else if (mode == "prop21-chain") {
    Prop21Chain ch = prop21_chain(q);
    j["normalization"] = normalization_json(ch.normalization);
    j["chain"] = Json::array();
    for (const auto& t : ch.tuples) j["chain"].push_back(weights_to_json(t));
    j["certificates"] = Json::array();
    bool all = true;
    for (const auto& c : ch.certificates) {
      j["certificates"].push_back(certificate_to_json(c));
      all = all && c.passed();
    }
    j["all_pass"] = all;
    out << "chain:";
    for (std::size_t i = 0; i < ch.tuples.size(); ++i) out << (i ? " -> " : " ") << to_string(ch.tuples[i]);
    out << "\n" << ch.certificates.size() << " certificates, " << (all ? "all pass" : "FAILURES") << "\n";
  } else {
    throw InputError("unknown wps mode " + mode);
  }
  rep.summary = out.str();
  return rep;
}

namespace {

std::size_t brute_force_r(const Weights& q) {
  Integer l = 1;
  for (const auto& x : q.values()) l = lcm(l, x);
  std::size_t best = q.size();
  for (Integer h = 2; h <= l; ++h) {
    std::size_t missed = 0;
    for (const auto& x : q.values())
      if (x % h != 0) ++missed;
    if (missed < q.size()) best = std::min(best, missed);
  }
  return best;
}

}  // namespace

Report wps_sweep_report(const SweepOptions& opts) {
  Report rep;
  std::size_t checked = 0;
  Json failures = Json::array();
  for (std::size_t n = 1; n <= opts.max_n; ++n) {
    std::vector<long> t(n + 1, 1);
    while (true) {
      Weights q(std::vector<Integer>(t.begin(), t.end()));
      ++checked;
      std::vector<std::string> bad;
      if (r_invariant(q) != brute_force_r(q)) bad.push_back("r_invariant");
      if (!is_subfan(smooth_subfan(wps_fan(q)), weak_locus_subfan(q))) bad.push_back("weak locus not smooth");
      Normalization nz = normalize_weights(q);
      AbelianGroupPresentation cl = class_group(wps_fan(nz.result));
      if (cl.rank != 1 || !cl.torsion.empty()) bad.push_back("Cl of normalized tuple is " + cl.describe());
      Prop21Chain ch = prop21_chain(q);
      const std::size_t xi = xi_invariant(nz.result);
      if (ch.certificates.size() != xi) bad.push_back("chain length differs from Xi");
      for (std::size_t k = 0; k + 1 < ch.tuples.size(); ++k)
        if (xi_invariant(ch.tuples[k + 1]) + 1 != xi_invariant(ch.tuples[k])) bad.push_back("Xi did not drop by 1");
      if (xi_invariant(ch.tuples.back()) != 0) bad.push_back("chain does not end at all ones");
      for (const auto& c : ch.certificates)
        if (!c.passed()) bad.push_back("certificate fails at " + to_string(c.step ? c.step->input : q));
      if (!bad.empty()) failures.push_back({{"weights", weights_to_json(q)}, {"failures", bad}});

      std::size_t i = 1;
      while (i <= n && t[i] == static_cast<long>(opts.max_weight)) t[i++] = 1;
      if (i > n) break;
      ++t[i];
    }
  }
  rep.json["checked"] = checked;
  rep.json["max_weight"] = opts.max_weight;
  rep.json["max_n"] = opts.max_n;
  rep.json["failures"] = failures;
  rep.json["all_pass"] = failures.empty();
  rep.summary = "sweep q_0 = 1, q_i <= " + std::to_string(opts.max_weight) + ", n <= " + std::to_string(opts.max_n) +
                ": " + std::to_string(checked) + " tuples, " + std::to_string(failures.size()) + " failures\n";
  return rep;
}

Json torsor_report_to_json(const TorsorReport& r) {
  Json j;
  j["notes"] = r.notes;
  j["passed"] = r.passed();
  j["failed_stage"] = r.failed_stage ? Json(*r.failed_stage) : Json(nullptr);
  j["verdict"] = r.passed() ? "pass" : "fail at " + *r.failed_stage;
  j["internal_error"] = r.has_internal_error();
  j["stages"] = Json::array();
  for (const auto& s : r.stages)
    j["stages"].push_back({{"name", s.name}, {"pass", s.pass}, {"detail", s.detail}, {"internal_error", s.internal_error}});

  if (r.fan_validation) j["fan_validation"] = validation_json(*r.fan_validation);
  if (r.completeness && r.sampling) j["completeness"] = completeness_json(*r.completeness, *r.sampling);
  if (r.action) {
    Json ja;
    ja["valid"] = r.action->valid;
    ja["violations"] = r.action->violations;
    ja["group_order"] = r.action->elements.size();
    ja["elements"] = Json::array();
    for (const auto& m : r.action->elements) ja["elements"].push_back(to_json(m));
    ja["ray_permutations"] = r.action->permutations;
    j["action"] = ja;
  }
  if (r.invariant_lattice)
    j["invariant_sublattice"] = {{"basis", vectors(r.invariant_lattice->basis)},
                                 {"anisotropic", r.invariant_lattice->anisotropic}};
  if (r.e) j["e"] = to_json(*r.e);
  if (r.cone) j["invariant_cone"] = {{"rays", to_json(r.cone->rays)}, {"invariant", r.cone->invariant}};
  if (r.solution) {
    const auto& s = *r.solution;
    j["coefficients"] = {{"A", to_json(s.A)},          {"sigma", to_json(s.sigma)},
                         {"c", to_json(s.c)},          {"c_rational", to_json(s.c_rational)},
                         {"anisotropic", s.anisotropic}, {"unique", s.unique},
                         {"averaged", s.averaged}};
  }
  if (r.data) {
    j["dtilde"] = {{"d", r.data->d},
                   {"dtilde0", to_json(r.data->dtilde0)},
                   {"relation", to_json(r.data->relation)},
                   {"relation_exact", true}};
  }
  if (r.invariance) {
    Json ji;
    ji["invariant"] = r.invariance->invariant;
    ji["cases"] = r.invariance->cases;
    ji["induced_action"] = Json::array();
    for (const auto& m : r.invariance->induced) ji["induced_action"].push_back(to_json(m));
    ji["counterexample"] = r.invariance->counterexample ? Json(*r.invariance->counterexample) : Json(nullptr);
    ji["moved_to"] = r.invariance->counterexample ? to_json(r.invariance->moved_to) : Json(nullptr);
    j["dtilde_invariance"] = ji;
  }
  if (r.delta) {
    Json jd;
    jd["fan"] = fan_to_json(*r.delta);
    jd["rays"] = vectors(r.delta->rays());
    if (r.delta_certificate) {
      const auto& c = *r.delta_certificate;
      jd["certificate"] = {{"positive_relation", c.positive_relation}, {"basis_spans", c.basis_spans},
                           {"generic_checked", c.generic_checked},     {"generic_valid", c.generic_valid},
                           {"generic_complete", c.generic_complete},   {"valid", c.valid},
                           {"complete", c.complete},                   {"simplicial", c.simplicial}};
    }
    j["delta"] = jd;
  }
  if (r.weights) {
    j["weights"] = weights_to_json(r.weights->weights);
    j["weights_isomorphism"] = r.weights->isomorphism ? to_json(*r.weights->isomorphism) : Json(nullptr);
  }
  if (r.gtilde) {
    const auto& g = *r.gtilde;
    j["gtilde"] = {{"matrix", to_json(g.matrix)},
                   {"image_of_dtilde0", to_json(g.image_of_dtilde0)},
                   {"delta_prime_cones", ray_sets(g.delta_prime.maximal_ray_sets())},
                   {"sigma_prime", fan_to_json(g.sigma_prime)},
                   {"morphism_to_sigma_prime", g.to_sigma_prime.morphism.has_value()},
                   {"morphism_into_sigma", g.into_sigma.morphism.has_value()}};
  }
  if (!r.dominance.empty()) {
    Json jd = Json::array();
    for (const auto& d : r.dominance)
      jd.push_back({{"index", d.index},
                    {"image", to_json(d.image)},
                    {"kind", d.kind},
                    {"multiple", to_json(d.multiple)},
                    {"pass", d.pass}});
    j["dominance"] = jd;
  }
  if (r.equivariant) j["equivariant"] = *r.equivariant;
  if (r.delta_invariant) j["delta_invariant"] = *r.delta_invariant;
  if (!r.codims.empty()) {
    Json jc = Json::array();
    for (const auto& c : r.codims)
      jc.push_back({{"name", c.name}, {"codim", c.codim ? Json(*c.codim) : Json("infinity")}, {"pass", c.pass}});
    j["codimensions"] = jc;
  }
  if (r.stages.size() > 0 && r.stages.back().name == "preimage_rule") {
    j["z"] = ray_sets(r.z);
    j["z_preimage"] = ray_sets(r.z_preimage);
  }
  return j;
}

Report torsor_report(const Fan& input, const GroupAction& g, const PipelineOptions& opts) {
  const Fan f = input.canonical();
  TorsorReport r = run_pipeline(f, g, opts);
  Report rep;
  rep.json = torsor_report_to_json(r);
  rep.json["fan"] = fan_to_json(f);
  rep.json["group_action"] = action_to_json(g);
  std::ostringstream out;
  for (const auto& s : r.stages)
    out << (s.pass ? "  pass " : "  FAIL ") << s.name << ": " << s.detail << "\n";
  if (r.weights) out << "torsor weights " << to_string(r.weights->weights) << "\n";
  out << "verdict: " << rep.json["verdict"].get<std::string>() << "\n";
  rep.summary = out.str();
  return rep;
}

Report cohomology_report(const GroupAction& g, const ModulePresentation& module) {
  if (module.rank != g.rank())
    throw InputError("module rank " + std::to_string(module.rank) + " differs from action rank " +
                     std::to_string(g.rank()));
  Report rep;
  Json& j = rep.json;
  j["module"] = {{"rank", module.rank}, {"relations", vectors(module.relations)}};
  j["group_action"] = action_to_json(g);

  IntMatrix sigma;
  unsigned order = 1;
  if (g.generators().size() == 1 && g.orders().size() == 1) {
    sigma = g.generators()[0];
    order = g.orders()[0];
  } else if (g.generators().empty()) {
    sigma = IntMatrix::identity(g.rank());
  } else {
    auto gen = cyclic_generator(g);
    if (!gen) {
      j["verdict"] = "unsupported";
      j["reason"] = "group is not cyclic";
      rep.summary = "H^1: unsupported (group is not cyclic)\n";
      return rep;
    }
    sigma = *gen;
    auto o = element_order(sigma);
    if (!o) throw InputError("generator has infinite or excessive order");
    order = *o;
  }
  AbelianGroupPresentation h = h1_cyclic(sigma, order, module.relations);
  j["verdict"] = "ok";
  j["generator"] = to_json(sigma);
  j["order"] = order;
  j["h1"] = group_to_json(h);
  j["h1"]["text"] = h.describe();
  rep.summary = "H^1 = " + h.describe() + "\n";
  return rep;
}

}  // namespace toric
