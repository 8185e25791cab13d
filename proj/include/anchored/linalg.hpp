#pragma once

#include "anchored/types.hpp"

#include <cstdint>

namespace anchored {

struct PowerIterationOptions {
    double tol = 1e-10;
    int max_iter = 10000;
    std::uint64_t seed = 0;
};

/// Largest singular value of M by power iteration on MᵀM.
/// Stops once the eigen-residual ‖MᵀMv − σ²v‖ falls below tol·σ²; throws
/// NumericError (carrying the last estimate) if max_iter is exhausted.
double spectral_norm(const Matrix& M, const PowerIterationOptions& opts = {});

/// Scale each column to unit Euclidean norm (zero columns are left alone).
void normalize_columns(Matrix& M);

}  // namespace anchored
