#include "toric/fan.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "toric/exact_linalg.hpp"

namespace toric {

namespace {

bool by_size_then_lex(const RaySet& a, const RaySet& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

bool is_subset(const RaySet& small, const RaySet& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

std::optional<Cone> try_cone(std::size_t rank, const std::vector<IntVector>& gens) {
  try {
    return cone_from_rays(rank, gens);
  } catch (const InputError&) {
    return std::nullopt;
  }
}

// Global ray indices in `s` sorted by the position of their primitive vector
// inside c.rays(); absent when the minimal generators differ from the listed rays.
std::optional<std::vector<std::size_t>> local_to_global(const std::vector<IntVector>& rays,
                                                        const RaySet& s, const Cone& c) {
  if (c.rays().size() != s.size()) return std::nullopt;
  std::vector<std::size_t> out(s.size(), 0);
  std::vector<bool> used(s.size(), false);
  for (std::size_t idx : s) {
    if (is_zero(rays[idx])) return std::nullopt;
    IntVector p = primitive(rays[idx]);
    auto it = std::lower_bound(c.rays().begin(), c.rays().end(), p);
    if (it == c.rays().end() || *it != p) return std::nullopt;
    std::size_t pos = static_cast<std::size_t>(it - c.rays().begin());
    if (used[pos]) return std::nullopt;
    used[pos] = true;
    out[pos] = idx;
  }
  return out;
}

bool is_face_of(const Cone& sigma, const Cone& f) {
  if (f.is_zero()) return true;
  std::vector<std::size_t> local;
  for (const auto& r : f.rays()) {
    auto it = std::lower_bound(sigma.rays().begin(), sigma.rays().end(), r);
    if (it == sigma.rays().end() || *it != r) return false;
    local.push_back(static_cast<std::size_t>(it - sigma.rays().begin()));
  }
  std::sort(local.begin(), local.end());
  if (sigma.is_simplicial()) return true;
  auto sets = sigma.face_ray_sets();
  return std::find(sets.begin(), sets.end(), local) != sets.end();
}

}  // namespace

std::string to_string(const RaySet& s) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
  os << '}';
  return os.str();
}

Fan::Fan(std::size_t rank, std::vector<IntVector> rays, const std::vector<RaySet>& cones,
         std::vector<std::string> labels)
    : rank_(rank), rays_(std::move(rays)), labels_(std::move(labels)) {
  for (const auto& r : rays_)
    if (r.size() != rank_) throw InputError("Fan: ray dimension does not match rank");
  if (!labels_.empty() && labels_.size() != rays_.size())
    throw InputError("Fan: label count does not match ray count");

  std::set<RaySet> all{RaySet{}};
  for (std::size_t i = 0; i < rays_.size(); ++i) all.insert(RaySet{i});

  for (RaySet s : cones) {
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      throw InputError("Fan: repeated ray index in cone " + to_string(s));
    for (auto i : s)
      if (i >= rays_.size()) throw InputError("Fan: ray index out of range in cone " + to_string(s));
    if (all.count(s)) continue;
    all.insert(s);

    std::vector<IntVector> gens;
    for (auto i : s) gens.push_back(rays_[i]);
    auto c = try_cone(rank_, gens);
    if (!c) continue;
    auto map = local_to_global(rays_, s, *c);
    if (!map) continue;
    if (c->is_simplicial()) {
      std::size_t k = s.size();
      if (k >= 63) throw InputError("Fan: cone has too many rays");
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
        RaySet sub;
        for (std::size_t b = 0; b < k; ++b)
          if (mask >> b & 1) sub.push_back(s[b]);
        all.insert(sub);
      }
    } else {
      for (const auto& loc : c->face_ray_sets()) {
        RaySet g;
        for (auto l : loc) g.push_back((*map)[l]);
        std::sort(g.begin(), g.end());
        all.insert(g);
      }
    }
  }

  cones_.assign(all.begin(), all.end());
  std::sort(cones_.begin(), cones_.end(), by_size_then_lex);
  geometry_.reserve(cones_.size());
  for (std::size_t i = 0; i < cones_.size(); ++i) {
    index_.emplace(cones_[i], i);
    if (cones_[i].empty()) {
      geometry_.push_back(Cone::zero(rank_));
      continue;
    }
    std::vector<IntVector> gens;
    for (auto r : cones_[i]) gens.push_back(rays_[r]);
    geometry_.push_back(try_cone(rank_, gens));
  }
}

std::optional<std::size_t> Fan::find_cone(const RaySet& s) const {
  auto it = index_.find(s);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Fan::ray_index(const IntVector& v) const {
  for (std::size_t i = 0; i < rays_.size(); ++i)
    if (rays_[i] == v) return i;
  return std::nullopt;
}

const Cone& Fan::cone(std::size_t i) const {
  const auto& g = geometry_.at(i);
  if (!g) throw InputError("Fan: cone " + to_string(cones_[i]) + " is not strongly convex");
  return *g;
}

std::size_t Fan::cone_dim(std::size_t i) const {
  if (geometry_.at(i)) return geometry_[i]->dim();
  std::vector<IntVector> gens;
  for (auto r : cones_[i]) gens.push_back(rays_[r]);
  return toric::rank(gens, rank_);
}

std::vector<std::size_t> Fan::maximal_cones() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cones_.size(); ++i) {
    bool maximal = true;
    for (std::size_t j = i + 1; j < cones_.size() && maximal; ++j)
      if (cones_[j].size() > cones_[i].size() && is_subset(cones_[i], cones_[j])) maximal = false;
    if (maximal) out.push_back(i);
  }
  return out;
}

std::vector<RaySet> Fan::maximal_ray_sets() const {
  std::vector<RaySet> out;
  for (auto i : maximal_cones()) out.push_back(cones_[i]);
  return out;
}

bool Fan::is_simplicial() const {
  return std::all_of(geometry_.begin(), geometry_.end(),
                     [](const auto& g) { return g && g->is_simplicial(); });
}

bool Fan::is_smooth() const {
  return std::all_of(geometry_.begin(), geometry_.end(),
                     [](const auto& g) { return g && g->is_smooth(); });
}

Fan Fan::restrict_to(const std::vector<RaySet>& cones) const {
  std::set<std::size_t> used;
  for (const auto& s : cones) used.insert(s.begin(), s.end());
  std::vector<std::size_t> remap(rays_.size(), 0);
  std::vector<IntVector> rays;
  std::vector<std::string> labels;
  for (auto i : used) {
    remap[i] = rays.size();
    rays.push_back(rays_[i]);
    if (!labels_.empty()) labels.push_back(labels_[i]);
  }
  std::vector<RaySet> mapped;
  for (const auto& s : cones) {
    RaySet m;
    for (auto i : s) m.push_back(remap[i]);
    std::sort(m.begin(), m.end());
    mapped.push_back(std::move(m));
  }
  return Fan(rank_, std::move(rays), mapped, std::move(labels));
}

Fan Fan::canonical() const {
  std::vector<std::size_t> order(rays_.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return rays_[a] < rays_[b]; });
  std::vector<std::size_t> remap(rays_.size());
  std::vector<IntVector> rays;
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < order.size(); ++k) {
    remap[order[k]] = k;
    rays.push_back(rays_[order[k]]);
    if (!labels_.empty()) labels.push_back(labels_[order[k]]);
  }
  std::vector<RaySet> mapped;
  for (const auto& s : maximal_ray_sets()) {
    RaySet m;
    for (auto i : s) m.push_back(remap[i]);
    std::sort(m.begin(), m.end());
    mapped.push_back(std::move(m));
  }
  return Fan(rank_, std::move(rays), mapped, std::move(labels));
}

FanValidation validate(const Fan& f) {
  FanValidation out;
  auto violate = [&](std::string kind, std::vector<RaySet> cones, std::string detail) {
    out.valid = false;
    out.violations.push_back({std::move(kind), std::move(cones), std::move(detail)});
  };

  const auto& rays = f.rays();
  for (std::size_t i = 0; i < rays.size(); ++i) {
    if (is_zero(rays[i])) {
      violate("zero ray", {{i}}, "ray " + std::to_string(i) + " is the zero vector");
      continue;
    }
    if (gcd(rays[i]) != 1)
      violate("non-primitive ray", {{i}}, "ray " + std::to_string(i) + " = " + to_string(rays[i]));
    for (std::size_t j = i + 1; j < rays.size(); ++j)
      if (!is_zero(rays[j]) && primitive(rays[i]) == primitive(rays[j]))
        violate("duplicate ray", {{i}, {j}}, "rays " + std::to_string(i) + " and " + std::to_string(j));
  }

  const auto& cones = f.cones();
  for (std::size_t i = 0; i < cones.size(); ++i) {
    const auto& g = f.geometry(i);
    if (!g) {
      violate("not strongly convex", {cones[i]}, "cone " + to_string(cones[i]));
      continue;
    }
    if (cones[i].empty()) continue;
    auto map = local_to_global(rays, cones[i], *g);
    if (!map) {
      violate("generator mismatch", {cones[i]},
              "minimal generators of cone " + to_string(cones[i]) + " differ from its listed rays");
      continue;
    }
    for (const auto& loc : g->face_ray_sets()) {
      RaySet face;
      for (auto l : loc) face.push_back((*map)[l]);
      std::sort(face.begin(), face.end());
      if (!f.find_cone(face))
        violate("missing face", {cones[i], face}, "face " + to_string(face) + " of " + to_string(cones[i]));
    }
  }

  auto maximal = f.maximal_cones();
  for (std::size_t a = 0; a < maximal.size(); ++a) {
    const auto& ga = f.geometry(maximal[a]);
    if (!ga) continue;
    for (std::size_t b = a + 1; b < maximal.size(); ++b) {
      const auto& gb = f.geometry(maximal[b]);
      if (!gb) continue;
      ++out.pairs_checked;
      Cone meet = intersect(*ga, *gb);
      bool fa = is_face_of(*ga, meet);
      bool fb = is_face_of(*gb, meet);
      if (!fa || !fb) {
        std::ostringstream os;
        os << "intersection of " << to_string(cones[maximal[a]]) << " and "
           << to_string(cones[maximal[b]]) << " has rays";
        for (const auto& r : meet.rays()) os << ' ' << to_string(r);
        os << " and is not a face of " << (!fa ? "the first" : "the second");
        violate("intersection not a face", {cones[maximal[a]], cones[maximal[b]]}, os.str());
      }
    }
  }
  return out;
}

CompletenessResult is_complete(const Fan& f) {
  CompletenessResult out;
  if (f.rank() == 0) {
    out.complete = true;
    out.reason = "rank 0";
    return out;
  }
  auto maximal = f.maximal_cones();
  for (auto m : maximal) {
    if (!f.geometry(m)) {
      out.reason = "cone " + to_string(f.cones()[m]) + " is not strongly convex";
      return out;
    }
    if (f.cone_dim(m) != f.rank()) {
      out.reason = "maximal cone " + to_string(f.cones()[m]) + " has dimension " +
                   std::to_string(f.cone_dim(m)) + " < " + std::to_string(f.rank());
      return out;
    }
  }
  std::set<std::tuple<RaySet, RaySet, RaySet>> seen;
  for (auto m : maximal) {
    const RaySet& sigma = f.cones()[m];
    const Cone& c = *f.geometry(m);
    auto map = local_to_global(f.rays(), sigma, c);
    if (!map) {
      out.reason = "cone " + to_string(sigma) + " has redundant listed rays";
      return out;
    }
    for (const auto& fr : c.facets().facet_rays) {
      RaySet wall;
      for (auto l : fr) wall.push_back((*map)[l]);
      std::sort(wall.begin(), wall.end());
      std::vector<std::size_t> partners;
      for (auto o : maximal)
        if (o != m && is_subset(wall, f.cones()[o])) partners.push_back(o);
      if (partners.size() != 1) {
        out.reason = "wall " + to_string(wall) + " of " + to_string(sigma) + " lies in " +
                     std::to_string(partners.size()) + " other maximal cones";
        out.walls.clear();
        return out;
      }
      const RaySet& tau = f.cones()[partners[0]];
      auto key = sigma < tau ? std::make_tuple(wall, sigma, tau) : std::make_tuple(wall, tau, sigma);
      if (seen.insert(key).second)
        out.walls.push_back({wall, std::get<1>(key), std::get<2>(key)});
    }
  }
  out.complete = true;
  out.reason = "every wall is shared by exactly two maximal cones";
  return out;
}

SamplingResult completeness_by_sampling(const Fan& f, std::uint64_t seed) {
  SamplingResult out;
  const std::size_t n = f.rank();
  if (n == 0) return out;
  std::vector<const Cone*> maximal;
  for (auto m : f.maximal_cones())
    if (f.geometry(m)) maximal.push_back(&*f.geometry(m));

  auto covered = [&](const IntVector& p) {
    return std::any_of(maximal.begin(), maximal.end(), [&](const Cone* c) { return c->contains(p); });
  };

  static constexpr long kPrimes[] = {2,  5,  7,  11, 13, 17, 19, 23, 29, 31,
                                     37, 41, 43, 47, 53, 59, 61, 71, 73, 79};
  std::vector<IntVector> points;
  for (long k = 1; k <= 200; ++k) {
    IntVector p(n);
    for (std::size_t i = 0; i < n; ++i) {
      long mult = kPrimes[i % std::size(kPrimes)] + 201 * static_cast<long>(i / std::size(kPrimes));
      p[i] = (k * mult) % 201 - 100;
    }
    points.push_back(std::move(p));
  }
  std::mt19937_64 rng(seed);
  for (int k = 0; k < 100; ++k) {
    IntVector p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<long>(rng() % 2001) - 1000;
    points.push_back(std::move(p));
  }
  for (const auto& p : points) {
    ++out.samples;
    if (!covered(p)) {
      out.covered = false;
      out.uncovered = p;
      return out;
    }
  }
  return out;
}

std::uint64_t sampling_seed_from_env() {
  const char* s = std::getenv("TORIC_PURITY_SEED");
  if (!s || !*s) return kDefaultSamplingSeed;
  try {
    return std::stoull(s, nullptr, 0);
  } catch (const std::exception&) {
    throw InputError(std::string("TORIC_PURITY_SEED is not an integer: ") + s);
  }
}

Fan rays_subfan(const Fan& f) {
  std::vector<RaySet> singles;
  for (std::size_t i = 0; i < f.rays().size(); ++i) singles.push_back({i});
  return Fan(f.rank(), f.rays(), singles, f.labels());
}

Fan smooth_subfan(const Fan& f) {
  std::vector<RaySet> keep;
  for (std::size_t i = 0; i < f.cones().size(); ++i)
    if (f.geometry(i) && f.geometry(i)->is_smooth()) keep.push_back(f.cones()[i]);
  return Fan(f.rank(), f.rays(), keep, f.labels());
}

namespace {

std::optional<std::set<RaySet>> embed(const Fan& f, const Fan& sub) {
  if (f.rank() != sub.rank()) return std::nullopt;
  std::vector<std::size_t> remap;
  for (const auto& r : sub.rays()) {
    auto idx = f.ray_index(r);
    if (!idx) return std::nullopt;
    remap.push_back(*idx);
  }
  std::set<RaySet> out;
  for (const auto& s : sub.cones()) {
    RaySet m;
    for (auto i : s) m.push_back(remap[i]);
    std::sort(m.begin(), m.end());
    if (!f.find_cone(m)) return std::nullopt;
    out.insert(std::move(m));
  }
  return out;
}

}  // namespace

bool is_subfan(const Fan& f, const Fan& sub) { return embed(f, sub).has_value(); }

std::optional<std::size_t> complement_codim(const Fan& f, const Fan& sub) {
  auto image = embed(f, sub);
  if (!image) throw InputError("complement_codim: not a subfan");
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < f.cones().size(); ++i) {
    if (image->count(f.cones()[i])) continue;
    std::size_t d = f.cone_dim(i);
    if (!best || d < *best) best = d;
  }
  return best;
}

std::optional<std::size_t> minimal_cone_containing(const Fan& f, const RationalVector& p) {
  if (p.size() != f.rank()) throw InputError("minimal_cone_containing: dimension mismatch");
  for (std::size_t i = 0; i < f.cones().size(); ++i)
    if (f.geometry(i) && f.geometry(i)->relint_contains(p)) return i;
  return std::nullopt;
}

std::optional<std::size_t> minimal_cone_containing(const Fan& f, const IntVector& p) {
  return minimal_cone_containing(f, to_rational(p));
}

MorphismCheck check_morphism(const IntMatrix& m, const Fan& src, const Fan& dst) {
  if (m.rows() != dst.rank() || m.cols() != src.rank())
    throw InputError("check_morphism: matrix shape does not match fan ranks");
  MorphismCheck out;
  std::vector<IntVector> images;
  for (const auto& r : src.rays()) images.push_back(m * r);
  std::vector<std::size_t> assignment;
  for (std::size_t i = 0; i < src.cones().size(); ++i) {
    const RaySet& s = src.cones()[i];
    IntVector sum(dst.rank(), Integer(0));
    for (auto r : s) sum = add(sum, images[r]);
    auto tau = minimal_cone_containing(dst, sum);
    bool ok = tau.has_value();
    if (ok) {
      const Cone& t = dst.cone(*tau);
      for (auto r : s)
        if (!t.contains(images[r])) ok = false;
    }
    if (ok)
      assignment.push_back(*tau);
    else
      out.violations.push_back(i);
  }
  if (out.violations.empty()) out.morphism = FanMorphism{m, src, dst, std::move(assignment)};
  return out;
}

std::optional<IntMatrix> match_fans(const Fan& a, const Fan& b) {
  const std::size_t n = a.rank();
  if (b.rank() != n || a.rays().size() != b.rays().size()) return std::nullopt;
  if (a.cones() != b.cones()) return std::nullopt;

  std::vector<std::size_t> basis;
  std::vector<IntVector> chosen;
  for (std::size_t i = 0; i < a.rays().size() && basis.size() < n; ++i) {
    chosen.push_back(a.rays()[i]);
    if (rank(chosen, n) == chosen.size())
      basis.push_back(i);
    else
      chosen.pop_back();
  }
  if (basis.size() != n) return std::nullopt;

  // Rows of T solve (A_J)^T t = (B_J row k)^T.
  IntMatrix at(n, n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < n; ++r) at(c, r) = a.rays()[basis[c]][r];
  IntMatrix t(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    IntVector rhs(n);
    for (std::size_t c = 0; c < n; ++c) rhs[c] = b.rays()[basis[c]][k];
    auto sol = rational_solve(at, rhs);
    if (!sol) return std::nullopt;
    for (std::size_t r = 0; r < n; ++r) {
      if ((*sol)[r].get_den() != 1) return std::nullopt;
      t(k, r) = (*sol)[r].get_num();
    }
  }
  if (n > 0 && abs(determinant(t)) != 1) return std::nullopt;
  for (std::size_t i = 0; i < a.rays().size(); ++i)
    if (t * a.rays()[i] != b.rays()[i]) return std::nullopt;
  return t;
}

}  // namespace toric
