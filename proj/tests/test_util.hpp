#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "toric/int_matrix.hpp"

inline toric::IntVector V(std::initializer_list<long> v) { return toric::make_vector(v); }

inline std::vector<std::vector<toric::Integer>> nested(const toric::IntMatrix& m) {
  std::vector<std::vector<toric::Integer>> out(m.rows(), std::vector<toric::Integer>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  return out;
}

inline bool unimodular(const toric::IntMatrix& m) {
  if (m.rows() != m.cols()) return false;
  return abs(oracle::bareiss_determinant(nested(m))) == 1;
}

inline std::mt19937_64 seeded(std::uint64_t salt = 0) { return std::mt19937_64(0x70121c + salt); }

inline bool column_hermite(const toric::IntMatrix& h) {
  std::optional<std::size_t> last;
  bool seen_zero = false;
  for (std::size_t c = 0; c < h.cols(); ++c) {
    std::size_t r = 0;
    while (r < h.rows() && h(r, c) == 0) ++r;
    if (r == h.rows()) {
      seen_zero = true;
      continue;
    }
    if (seen_zero || h(r, c) <= 0) return false;
    if (last && r <= *last) return false;
    last = r;
    for (std::size_t k = 0; k < c; ++k)
      if (h(r, k) < 0 || h(r, k) >= h(r, c)) return false;
  }
  return true;
}

inline bool smith_chain(const std::vector<toric::Integer>& f) {
  for (std::size_t i = 0; i + 1 < f.size(); ++i) {
    if (f[i] < 0) return false;
    if (f[i] == 0 && f[i + 1] != 0) return false;
    if (f[i] != 0 && f[i + 1] % f[i] != 0) return false;
  }
  return true;
}

inline std::vector<toric::Integer> nonzero(std::vector<toric::Integer> f) {
  f.erase(std::remove(f.begin(), f.end(), toric::Integer(0)), f.end());
  return f;
}
