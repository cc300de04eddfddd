#include <cstdlib>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "toric/report.hpp"

using namespace toric;

namespace {

enum Exit { kOk = 0, kInputFailure = 2, kInternal = 3 };

RaySet parse_index_list(const std::string& text, const std::string& flag) {
  RaySet s;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw SchemaError(flag + ": expected comma-separated ray indices, got \"" + text + "\"");
    s.push_back(std::stoul(item));
  }
  std::sort(s.begin(), s.end());
  return s;
}

std::vector<RaySet> parse_cone_list(const std::string& text) {
  std::vector<RaySet> out;
  std::stringstream ss(text);
  std::string cone;
  while (std::getline(ss, cone, ';'))
    if (!cone.empty()) out.push_back(parse_index_list(cone, "--z"));
  return out;
}

Integer parse_integer(const std::string& text, const std::string& flag) {
  try {
    return integer_from_json(Json(text), flag);
  } catch (const SchemaError&) {
    throw SchemaError(flag + ": expected an integer, got \"" + text + "\"");
  }
}

void emit(const Report& r, const std::string& out_path) {
  const std::string text = canonical_dump(r.json);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_text_file(out_path, text);
    std::cout << r.summary;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Toric fan, weighted projective space and torsor analysis"};
  app.require_subcommand(1);
  std::string out_path;

  auto* analyze = app.add_subcommand("analyze-fan", "Validity, completeness, smooth locus, Cl, Pic and 2-d singularities");
  std::string fan_path;
  analyze->add_option("fan", fan_path, "fan JSON file")->required();
  analyze->add_option("--out", out_path, "write the JSON report here and print a summary");

  auto* wps = app.add_subcommand("wps", "Weighted projective space invariants");
  std::string weights_path, mode;
  std::optional<unsigned> sweep_max;
  wps->add_option("weights", weights_path, "weights JSON file")->required();
  wps->add_option("mode", mode, "normalize | strata | weak-locus | prop21-chain")
      ->required()
      ->check(CLI::IsMember({"normalize", "strata", "weak-locus", "prop21-chain"}));
  wps->add_option("--sweep-max", sweep_max, "also sweep all q_0 = 1 tuples with q_i up to this bound, n <= 4")
      ->check(CLI::Range(1u, 12u));
  wps->add_option("--out", out_path, "write the JSON report here and print a summary");

  auto* torsor = app.add_subcommand("torsor", "Run the torsor pipeline");
  std::string torsor_fan, action_path;
  std::optional<std::string> a_text, cone_text, z_text;
  torsor->add_option("fan", torsor_fan, "fan JSON file")->required();
  torsor->add_option("action", action_path, "group action JSON file")->required();
  torsor->add_option("--A", a_text, "override the denominator-clearing integer A");
  torsor->add_option("--cone", cone_text, "override the invariant cone, e.g. 0,1 (canonical ray order)");
  torsor->add_option("--z", z_text, "cones spanning Z, e.g. \"0,1;1,2\" (canonical ray order)");
  torsor->add_option("--out", out_path, "write the JSON report here and print a summary");

  auto* cohomology = app.add_subcommand("cohomology", "H^1 of a cyclic action on a lattice module");
  std::string coh_action;
  std::optional<std::string> module_path;
  cohomology->add_option("action", coh_action, "group action JSON file")->required();
  cohomology->add_option("--module", module_path, "module JSON file (default: the lattice itself)");
  cohomology->add_option("--out", out_path, "write the JSON report here and print a summary");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputFailure;
  }

  try {
    if (analyze->parsed()) {
      Fan f = fan_from_json(read_json_file(fan_path));
      emit(analyze_fan_report(f, sampling_seed_from_env()), out_path);
    } else if (wps->parsed()) {
      Weights q = weights_from_json(read_json_file(weights_path));
      Report r = wps_report(q, mode);
      if (sweep_max) {
        Report s = wps_sweep_report({*sweep_max, 4});
        r.json["sweep"] = s.json;
        r.summary += s.summary;
      }
      emit(r, out_path);
    } else if (torsor->parsed()) {
      Fan f = fan_from_json(read_json_file(torsor_fan));
      GroupAction g = action_from_json(read_json_file(action_path), f.rank());
      PipelineOptions opts;
      opts.seed = sampling_seed_from_env();
      if (a_text) opts.A = parse_integer(*a_text, "--A");
      if (cone_text) opts.cone = parse_index_list(*cone_text, "--cone");
      if (z_text) opts.z = parse_cone_list(*z_text);
      Report r = torsor_report(f, g, opts);
      emit(r, out_path);
      if (r.json["internal_error"].get<bool>()) return kInternal;
    } else if (cohomology->parsed()) {
      Json ja = read_json_file(coh_action);
      ModulePresentation m;
      if (module_path) {
        m = module_from_json(read_json_file(*module_path));
      } else {
        m.rank = action_rank(ja);
      }
      emit(cohomology_report(action_from_json(ja, m.rank), m), out_path);
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputFailure;
  } catch (const SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputFailure;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputFailure;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kOk;
}
