#pragma once

#include "anchored/operators.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace anchored {

struct InstanceMeta {
    std::string generator;
    std::uint64_t seed = 0;
    std::vector<long> dims;
};

struct ProblemInstance {
    OperatorSpec op;
    std::optional<Vector> solution;
    double l_estimate = 0.0;
    Vector y0;
    InstanceMeta meta;
    Matrix data;  // P (least squares) or K (saddle problems)
    Vector rhs;   // b (least squares)
};

/// P is n x p standard Gaussian with unit columns, y_true and y0 standard Gaussian,
/// b = P y_true + N(0, noise_var). Draw order: P (column-major), y_true, noise, y0.
/// The reference solution solves the normal equations (n >= p), or for n < p is the
/// least-squares solution closest to y0.
ProblemInstance gen_least_squares(long n, long p, std::uint64_t seed, double noise_var);

/// K is m x n standard Gaussian with unit columns, lam = rho_w = |K|, eps = 0.05,
/// unknowns (u, v) in R^n x R^m, y* = 0, y0 standard Gaussian (drawn after K).
ProblemInstance gen_minimax_huber(long m, long n, std::uint64_t seed);

/// Bilinear saddle G(u, v) = (K^T v, -K u) with K as in gen_minimax_huber, y* = 0.
ProblemInstance gen_bilinear(long m, long n, std::uint64_t seed);

/// G(y) = y on R^dim, y0 = fill (scalar identity demo with dim = 1, fill = 1).
ProblemInstance gen_identity(long dim, double fill);

/// Every coordinate of y0 set to `fill`, keeping the rest of the instance.
void set_start(ProblemInstance& inst, double fill);

/// Checks |G y*| <= 1e-8 l_estimate (1 + |y*|).
bool solution_consistent(const ProblemInstance& inst);

}  // namespace anchored
