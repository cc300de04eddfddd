#pragma once

#include <string>
#include <vector>

#include "toric/serialize.hpp"

namespace toric {

Fan projective_space_fan(std::size_t n);
Fan p1xp1_fan();

/// Coordinate swap on Z^2, order 2.
GroupAction swap_action();
/// -I on Z^rank, order 2.
GroupAction negation_action(std::size_t rank);

/// Fan of the cubic surface with three A2 points: the fan of P^2 read in the
/// overlattice Z^2 + Z (1/3)(1, 2). Throws ConsistencyError unless every
/// two-dimensional cone has quotient type (3, 2).
Fan cubic_3a2_fan();

struct CorpusFile {
  std::string path;  // relative to the data directory
  Json content;
};

std::vector<CorpusFile> corpus_files();

}  // namespace toric
