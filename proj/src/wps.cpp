#include "toric/wps.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "toric/exact_linalg.hpp"

namespace toric {

Weights::Weights(std::vector<Integer> q) : q_(std::move(q)) {
  if (q_.size() < 2) throw InputError("Weights: need at least two weights");
  for (const auto& x : q_)
    if (x <= 0) throw InputError("Weights: weights must be positive");
  reduced_by_ = gcd(q_);
  if (reduced_by_ != 1)
    for (auto& x : q_) x /= reduced_by_;
}

Weights::Weights(std::initializer_list<long> q) : Weights(make_vector(q)) {}

std::string to_string(const Weights& w) { return to_string(w.values()); }

Fan wps_fan(const Weights& q) {
  const std::size_t m = q.size();
  IntMatrix rel(1, m);
  for (std::size_t i = 0; i < m; ++i) rel(0, i) = q[i];
  std::vector<IntVector> dual = integer_kernel(rel);
  const std::size_t n = dual.size();
  if (n != m - 1) throw ConsistencyError("wps_fan: relation lattice has unexpected rank");
  std::vector<IntVector> rays;
  for (std::size_t i = 0; i < m; ++i) {
    IntVector u(n);
    for (std::size_t k = 0; k < n; ++k) u[k] = dual[k][i];
    rays.push_back(primitive(u));
  }
  std::vector<RaySet> cones;
  for (std::size_t omit = 0; omit < m; ++omit) {
    RaySet s;
    for (std::size_t i = 0; i < m; ++i)
      if (i != omit) s.push_back(i);
    cones.push_back(std::move(s));
  }
  return Fan(n, std::move(rays), cones);
}

Fan wps_fan_unit_chart(const Weights& q) {
  if (q[0] != 1) throw InputError("wps_fan_unit_chart: q_0 must be 1");
  const std::size_t n = q.size() - 1;
  std::vector<IntVector> rays;
  IntVector u0(n);
  for (std::size_t i = 0; i < n; ++i) u0[i] = -q[i + 1];
  rays.push_back(std::move(u0));
  for (auto& e : IntMatrix::identity(n).row_vectors()) rays.push_back(std::move(e));
  std::vector<RaySet> cones;
  for (std::size_t omit = 0; omit <= n; ++omit) {
    RaySet s;
    for (std::size_t i = 0; i <= n; ++i)
      if (i != omit) s.push_back(i);
    cones.push_back(std::move(s));
  }
  return Fan(n, std::move(rays), cones);
}

Normalization normalize_weights(const Weights& q) {
  Normalization out;
  std::vector<Integer> cur = q.values();
  for (;;) {
    bool changed = false;
    for (std::size_t j = 0; j < cur.size() && !changed; ++j) {
      Integer a = 0;
      for (std::size_t i = 0; i < cur.size(); ++i)
        if (i != j) a = toric::gcd(IntVector{a, cur[i]});
      if (a > 1) {
        for (std::size_t i = 0; i < cur.size(); ++i)
          if (i != j) cur[i] /= a;
        out.steps.push_back({j, a});
        changed = true;
      }
    }
    if (!changed) break;
  }
  out.result = Weights(cur);
  return out;
}

std::vector<Stratum> s_h_strata(const Weights& q) {
  std::set<Integer> hs;
  for (const auto& x : q.values()) {
    if (!x.fits_ulong_p()) throw InputError("s_h_strata: weight too large to factor");
    unsigned long v = x.get_ui();
    for (unsigned long d = 1; d * d <= v; ++d) {
      if (v % d) continue;
      if (d > 1) hs.insert(Integer(d));
      if (v / d > 1) hs.insert(Integer(v / d));
    }
  }
  std::vector<Stratum> out;
  std::set<std::vector<std::size_t>> seen;
  for (const auto& h : hs) {
    std::vector<std::size_t> j;
    for (std::size_t i = 0; i < q.size(); ++i)
      if (!mpz_divisible_p(q[i].get_mpz_t(), h.get_mpz_t())) j.push_back(i);
    if (seen.insert(j).second) out.push_back({h, std::move(j)});
  }
  return out;
}

std::size_t r_invariant(const Weights& q) {
  std::size_t r = q.size();
  for (const auto& s : s_h_strata(q)) r = std::min(r, s.indices.size());
  return r;
}

std::size_t xi_invariant(const Weights& q) {
  return static_cast<std::size_t>(
      std::count_if(q.values().begin(), q.values().end(), [](const Integer& x) { return x > 1; }));
}

Fan weak_locus_subfan(const Weights& q) {
  Fan full = wps_fan(q);
  auto strata = s_h_strata(q);
  const std::size_t m = q.size();
  if (m >= 63) throw InputError("weak_locus_subfan: too many weights");
  std::vector<RaySet> keep;
  for (std::uint64_t mask = 0; mask + 1 < (std::uint64_t{1} << m); ++mask) {
    RaySet s;
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1) s.push_back(i);
    bool ok = std::none_of(strata.begin(), strata.end(), [&](const Stratum& st) {
      return std::includes(s.begin(), s.end(), st.indices.begin(), st.indices.end());
    });
    if (ok) keep.push_back(std::move(s));
  }
  return full.restrict_to(keep);
}

AStarCodim a_star_complement_codim(const Weights& q) {
  std::size_t r = r_invariant(q);
  return {r, r > 1};
}

LaurentMonomial::LaurentMonomial(std::string prefix, std::size_t count)
    : prefix_(std::move(prefix)), exp_(count, Integer(0)) {}

LaurentMonomial LaurentMonomial::variable(std::string prefix, std::size_t count, std::size_t i) {
  LaurentMonomial m(std::move(prefix), count);
  m.exp_.at(i) = 1;
  return m;
}

LaurentMonomial LaurentMonomial::operator*(const LaurentMonomial& o) const {
  if (prefix_ != o.prefix_ || exp_.size() != o.exp_.size())
    throw InputError("LaurentMonomial: incompatible variable sets");
  LaurentMonomial r = *this;
  for (std::size_t i = 0; i < exp_.size(); ++i) r.exp_[i] += o.exp_[i];
  return r;
}

LaurentMonomial LaurentMonomial::pow(const Integer& k) const {
  LaurentMonomial r = *this;
  for (auto& e : r.exp_) e *= k;
  return r;
}

std::string to_string(const LaurentMonomial& m) {
  std::ostringstream os;
  bool any = false;
  for (std::size_t i = 0; i < m.exponents().size(); ++i) {
    const Integer& e = m.exponents()[i];
    if (e == 0) continue;
    if (any) os << '*';
    os << m.prefix() << i;
    if (e != 1) os << '^' << e.get_str();
    any = true;
  }
  return any ? os.str() : "1";
}

Prop21Step prop21_step(const Weights& q) {
  Prop21Step out;
  out.input = q;
  const std::size_t m = q.size();
  std::vector<std::size_t> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return q[a] < q[b]; });
  std::vector<Integer> s;
  for (auto p : perm) s.push_back(q[p]);
  if (s[0] != 1) throw InputError("prop21_step: q_0 != 1 after normalization (no unit weight)");
  std::size_t mu = 0;
  while (mu < m && s[mu] == 1) ++mu;
  if (mu == m) throw InputError("prop21_step: all weights are 1 (Xi = 0), no step needed");
  const std::size_t n = m - 1;
  std::vector<Integer> next(n + 2);
  for (std::size_t j = 0; j <= n + 1; ++j) next[j] = j <= mu + 1 ? Integer(1) : s[j - 1];
  out.sorted = Weights(s);
  out.permutation = std::move(perm);
  out.mu = mu;
  out.next = Weights(next);
  out.dropped_weight = s[mu];
  return out;
}

ChartCertificate verify_chart_extension(const Weights& q) {
  ChartCertificate cert;
  if (xi_invariant(q) == 0) {
    cert.vacuous = true;
    return cert;
  }
  cert.step = prop21_step(q);
  const Weights& s = cert.step->sorted;
  const Weights& t = cert.step->next;
  const std::size_t mu = cert.step->mu;
  const std::size_t nx = s.size();
  const std::size_t ny = t.size();
  auto X = [&](std::size_t i) { return LaurentMonomial::variable("X", nx, i); };
  auto Y = [&](std::size_t i) { return LaurentMonomial::variable("Y", ny, i); };

  ChartPresentation dx{"D+(X0)", {}};
  for (std::size_t i = 0; i < nx; ++i) dx.generators.push_back(X(i) * X(0).pow(-s[i]));
  ChartPresentation dy0{"D+(Y0)", {}};
  for (std::size_t j = 1; j < ny; ++j) dy0.generators.push_back(Y(j) * Y(0).pow(-t[j]));
  ChartPresentation dy1{"D+(Y1)", {}};
  dy1.generators.push_back(Y(0) * Y(1).inverse());
  for (std::size_t j = 1; j < ny; ++j) dy1.generators.push_back(Y(j) * Y(1).pow(-t[j]));

  // phi(X_i) = Y_{i+1} / Y_0^{q'_{i+1}}
  auto phi = [&](std::size_t i) { return Y(i + 1) * Y(0).pow(-t[i + 1]); };

  for (std::size_t i = 0; i < nx; ++i) {
    ChartImageRow row;
    row.index = i;
    row.source = dx.generators[i];
    row.image = phi(i) * phi(0).pow(-s[i]);
    row.y0_exponent = row.image.exponents()[0];

    // Y_j (j != 1) appears only in the j-th D+(Y_1) generator, so its exponent is forced.
    IntVector c(ny, Integer(0));
    c[0] = row.image.exponents()[0];
    for (std::size_t j = 2; j < ny; ++j) c[j] = row.image.exponents()[j];
    LaurentMonomial rebuilt("Y", ny);
    for (std::size_t g = 0; g < ny; ++g) rebuilt = rebuilt * dy1.generators[g].pow(c[g]);
    bool nonneg = std::all_of(c.begin(), c.end(), [](const Integer& e) { return e >= 0; });
    if (nonneg && rebuilt == row.image) {
      row.decomposition = c;
    } else if (cert.inclusion_pass) {
      cert.inclusion_pass = false;
      cert.inclusion_offender = to_string(row.source) + " -> " + to_string(row.image);
    }
    cert.rows.push_back(std::move(row));
  }

  cert.expected_mu_image = (Y(mu + 1) * Y(1).inverse()) * (Y(0) * Y(1).inverse()).pow(s[mu] - 1);
  cert.image_identity_pass = cert.rows[mu].image == cert.expected_mu_image;
  cert.dominance_pass = cert.rows[mu].y0_exponent > 0;
  cert.r_of_input = r_invariant(s);
  cert.r_normalized = r_invariant(normalize_weights(s).result);
  cert.codim_pass = cert.r_normalized >= 2;
  cert.charts = {std::move(dx), std::move(dy0), std::move(dy1)};
  return cert;
}

Prop21Chain prop21_chain(const Weights& q) {
  Prop21Chain out;
  out.normalization = normalize_weights(q);
  Weights cur = out.normalization.result;
  out.tuples.push_back(cur);
  while (xi_invariant(cur) > 0) {
    out.certificates.push_back(verify_chart_extension(cur));
    cur = out.certificates.back().step->next;
    out.tuples.push_back(cur);
  }
  return out;
}

}  // namespace toric
