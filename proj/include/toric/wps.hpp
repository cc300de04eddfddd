#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "toric/fan.hpp"

namespace toric {

/// Positive integer weights (q_0, ..., q_n), n >= 1, divided by their gcd on construction.
class Weights {
 public:
  Weights() = default;
  explicit Weights(std::vector<Integer> q);
  Weights(std::initializer_list<long> q);

  const std::vector<Integer>& values() const { return q_; }
  std::size_t size() const { return q_.size(); }
  const Integer& operator[](std::size_t i) const { return q_[i]; }
  /// The common factor removed on construction.
  const Integer& reduced_by() const { return reduced_by_; }

  friend bool operator==(const Weights& a, const Weights& b) { return a.q_ == b.q_; }

 private:
  std::vector<Integer> q_;
  Integer reduced_by_ = 1;
};

std::string to_string(const Weights& w);

/// Fan of P(q) on N = Z^(n+1) / Z q. The basis of N is dual to the row-Hermite
/// basis of the relation lattice {m : m.q = 0}; ray i is the primitive image of e_i.
Fan wps_fan(const Weights& q);

/// Presentation for q_0 = 1 on the lattice Z^n obtained by dropping coordinate 0:
/// u_i = e_i for i >= 1 and u_0 = -(q_1 e_1 + ... + q_n e_n).
Fan wps_fan_unit_chart(const Weights& q);

struct NormalizationStep {
  std::size_t index;  // j
  Integer divisor;    // a_j = gcd(q_i : i != j)
};

struct Normalization {
  Weights result;
  std::vector<NormalizationStep> steps;
};

Normalization normalize_weights(const Weights& q);

struct Stratum {
  Integer h;
  std::vector<std::size_t> indices;  // J_h = {i : h does not divide q_i}
};

/// Distinct J_h over divisors h > 1 of the weights, keyed by the smallest h.
std::vector<Stratum> s_h_strata(const Weights& q);

/// min |J_h|, or n + 1 when every weight is 1.
std::size_t r_invariant(const Weights& q);

std::size_t xi_invariant(const Weights& q);

/// Cones sigma_I of wps_fan(q) with I containing no J_h.
Fan weak_locus_subfan(const Weights& q);

struct AStarCodim {
  std::size_t codim;
  bool pic_is_z;
};

AStarCodim a_star_complement_codim(const Weights& q);

/// Laurent monomial in named variables; multiplication adds exponents.
class LaurentMonomial {
 public:
  LaurentMonomial() = default;
  LaurentMonomial(std::string prefix, std::size_t count);

  static LaurentMonomial variable(std::string prefix, std::size_t count, std::size_t i);

  const std::string& prefix() const { return prefix_; }
  const IntVector& exponents() const { return exp_; }
  IntVector& exponents() { return exp_; }

  LaurentMonomial operator*(const LaurentMonomial& o) const;
  LaurentMonomial pow(const Integer& k) const;
  LaurentMonomial inverse() const { return pow(Integer(-1)); }

  friend bool operator==(const LaurentMonomial& a, const LaurentMonomial& b) {
    return a.prefix_ == b.prefix_ && a.exp_ == b.exp_;
  }

 private:
  std::string prefix_;
  IntVector exp_;
};

std::string to_string(const LaurentMonomial& m);

struct ChartPresentation {
  std::string label;
  std::vector<LaurentMonomial> generators;
};

struct Prop21Step {
  Weights input;                         // as given
  Weights sorted;                        // ascending
  std::vector<std::size_t> permutation;  // sorted[k] = input[permutation[k]]
  std::size_t mu = 0;
  Weights next;
  Integer dropped_weight;  // q_mu, which does not reappear in q'
};

/// One induction step q -> q'. Throws InputError when no weight is 1 or all are 1.
Prop21Step prop21_step(const Weights& q);

struct ChartImageRow {
  std::size_t index;                 // i, for the generator X_i / X_0^{q_i}
  LaurentMonomial source;
  LaurentMonomial image;             // phi-hat of the source
  std::optional<IntVector> decomposition;  // exponents over the D+(Y_1) generators
  Integer y0_exponent;
};

struct ChartCertificate {
  bool vacuous = false;
  std::optional<Prop21Step> step;
  std::vector<ChartPresentation> charts;  // D+(X_0), D+(Y_0), D+(Y_1)
  std::vector<ChartImageRow> rows;

  bool inclusion_pass = true;                  // (a)
  std::optional<std::string> inclusion_offender;
  bool image_identity_pass = true;             // (b)
  LaurentMonomial expected_mu_image;
  bool dominance_pass = true;                  // Y_0 divides the image of X_mu / X_0^{q_mu}
  std::size_t r_of_input = 0;
  std::size_t r_normalized = 0;
  bool codim_pass = true;                      // (c)

  bool passed() const { return inclusion_pass && image_identity_pass && dominance_pass && codim_pass; }
};

ChartCertificate verify_chart_extension(const Weights& q);

struct Prop21Chain {
  Normalization normalization;
  std::vector<Weights> tuples;  // starting at the normalized tuple, ending at all ones
  std::vector<ChartCertificate> certificates;
};

Prop21Chain prop21_chain(const Weights& q);

}  // namespace toric
