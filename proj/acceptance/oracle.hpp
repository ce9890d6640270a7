#pragma once

#include <cstdint>
#include <vector>

#include "momentforge/sequence.hpp"

namespace momentforge {

// Randomized search for a Hankel nonnegative definite one-step extension, in double
// precision and independent of the library's canonical construction. Even kappa = 2n:
// s_{2n+1} ranges over Hermitian matrices solving the kernel constraints of H_n
// (least-squares particular solution plus random null-space directions); odd kappa:
// s_{2n+2} = y* H_n^+ y plus random Hermitian offsets.
bool brute_force_extendable(const MatrixSeq& seq, int trials, std::uint64_t seed, long* used = nullptr);

struct ExtensionStats {
  int instances = 0;
  int extendable = 0;
  std::vector<int> disagreeing;
  long trials = 0;
};

// Instance i of the agreement corpus.
MatrixSeq oracle_instance(int i, std::uint64_t seed);

// Small instances (q <= 2, n <= 2): exact moment data, bumped even moments and
// perturbed last moments, compared against is_hnnd_extendable.
ExtensionStats extension_oracle_agreement(int count, int trials, std::uint64_t seed);

}  // namespace momentforge
