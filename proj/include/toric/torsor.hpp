#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "toric/fan.hpp"
#include "toric/galois.hpp"
#include "toric/wps.hpp"

namespace toric {

/// Vectors of the torsor construction in Ntilde = Z^d, where D~_i = e_i.
struct TorsorData {
  std::size_t d = 0;
  Integer A = 1;
  IntVector c;
  RaySet sigma;
  IntVector dtilde0;
  /// (1, A + c_1, ..., A + c_d): 1 * D~_0 + sum (A + c_i) D~_i = 0.
  IntVector relation;
};

TorsorData build_dtilde(const Fan& f, const InvariantConeSolution& sol);

/// Permutation matrix on Ntilde with P e_i = e_{perm[i]}.
IntMatrix induced_matrix(const std::vector<std::size_t>& perm);

struct DtildeInvariance {
  bool invariant = true;
  /// Applicable cases among "split", "anisotropic", "simplicial"; empty means none.
  std::vector<std::string> cases;
  std::vector<IntMatrix> induced;
  std::optional<std::size_t> counterexample;
  IntVector moved_to;
};

DtildeInvariance check_dtilde_invariance(const TorsorData& td,
                                         const std::vector<std::vector<std::size_t>>& permutations,
                                         bool simplicial_sigma, bool anisotropic);

/// Rays (D~_0, D~_1, ..., D~_d) primitivized; cones are all proper subsets.
/// Throws InputError naming a proper subset that fails to be strongly convex.
Fan build_delta(const TorsorData& td);

struct DeltaCertificate {
  bool positive_relation = false;
  bool basis_spans = false;
  bool generic_checked = false;
  bool generic_valid = false;
  bool generic_complete = false;
  bool valid = false;
  bool complete = false;
  bool simplicial = false;
};

/// Complete and simplicial follow from a positive relation among d + 1 vectors
/// of which d form a basis; small cases are also run through the generic checks.
DeltaCertificate certify_delta(const Fan& delta, const TorsorData& td, std::size_t generic_limit = 5);

struct TorsorWeights {
  Weights weights;
  std::optional<IntMatrix> isomorphism;  // T * delta.rays[i] = wps_fan(weights).rays[i]
};

TorsorWeights torsor_weights(const Fan& delta);

struct GtildeResult {
  IntMatrix matrix;
  IntVector image_of_dtilde0;
  Fan delta_prime;
  Fan sigma_prime;
  MorphismCheck to_sigma_prime;
  MorphismCheck into_sigma;
};

GtildeResult build_gtilde(const Fan& f, const Fan& delta, const TorsorData& td);

struct DominanceRow {
  std::size_t index;  // 0 for D~_0
  IntVector image;
  std::string kind;   // "ray" or "collapse"
  Integer multiple;   // image = multiple * u_i for ray rows
  bool pass = false;
};

std::vector<DominanceRow> dominance_table(const Fan& f, const TorsorData& td, const IntMatrix& gtilde);

struct StageVerdict {
  std::string name;
  bool pass = false;
  std::string detail;
  bool internal_error = false;
};

struct PipelineOptions {
  std::optional<Integer> A;
  std::optional<RaySet> cone;
  std::optional<std::vector<RaySet>> z;
  std::uint64_t seed = kDefaultSamplingSeed;
  std::size_t generic_delta_limit = 5;
};

struct CodimCertificate {
  std::string name;
  std::optional<std::size_t> codim;  // absent means infinite
  bool pass = false;
};

struct TorsorReport {
  std::vector<std::string> notes;
  std::vector<StageVerdict> stages;
  std::optional<std::string> failed_stage;

  std::optional<FanValidation> fan_validation;
  std::optional<CompletenessResult> completeness;
  std::optional<SamplingResult> sampling;
  std::optional<ActionValidation> action;
  std::optional<InvariantSublattice> invariant_lattice;
  std::optional<IntVector> e;
  std::optional<InvariantCone> cone;
  std::optional<InvariantConeSolution> solution;
  std::optional<TorsorData> data;
  std::optional<DtildeInvariance> invariance;
  std::optional<Fan> delta;
  std::optional<DeltaCertificate> delta_certificate;
  std::optional<TorsorWeights> weights;
  std::optional<GtildeResult> gtilde;
  std::vector<DominanceRow> dominance;
  std::optional<bool> equivariant;
  std::optional<bool> delta_invariant;
  std::vector<CodimCertificate> codims;
  std::vector<RaySet> z;
  std::vector<RaySet> z_preimage;

  bool passed() const { return !failed_stage; }
  bool has_internal_error() const;
};

TorsorReport run_pipeline(const Fan& f, const GroupAction& g, const PipelineOptions& opts = {});

}  // namespace toric
