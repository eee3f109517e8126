#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "sqvar/linalg.hpp"

namespace sqvar {

using Rng = std::mt19937_64;

/// Independent stream for (seed, stream). Trials keyed by seed draw the same
/// numbers regardless of how many other trials ran before them.
Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0);

Vector normal_vector(Rng& rng, Index n);
Vector uniform_vector(Rng& rng, Index n, double lo = 0.0, double hi = 1.0);
Matrix normal_matrix(Rng& rng, Index rows, Index cols);
Matrix uniform_matrix(Rng& rng, Index rows, Index cols, double lo = 0.0, double hi = 1.0);

/// Random orthogonal matrix from the QR factorization of a standard normal
/// matrix, with column signs fixed so the distribution is Haar.
Matrix random_orthogonal(Rng& rng, Index n);

/// k distinct indices from {0, ..., n-1}, returned sorted.
std::vector<Index> sample_without_replacement(Rng& rng, Index n, Index k);

}  // namespace sqvar
