#pragma once

// Seeded random damped systems for the gen subcommand and the test corpora.

#include <random>

#include "cassini/matdense.hpp"

namespace cassini {

struct GenOptions {
  Index n = 3;
  double damping_scale = 1.0;  ///< γ in C = γBBᵀ
  bool overdamped = false;     ///< double C until the exact test passes
};

/// M = AAᵀ + nI, K = A′A′ᵀ + nI, C = γBBᵀ with standard normal A, A′, B.
DampedSystem random_system(std::mt19937_64& rng, const GenOptions& options);

/// Standard normal n × m matrix.
Matrix normal_matrix(std::mt19937_64& rng, Index rows, Index cols);

}  // namespace cassini
