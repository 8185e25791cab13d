#pragma once

#include "anchored/types.hpp"

#include <cstdint>
#include <random>

namespace anchored {

/// Seedable generator: std::mt19937_64 for the raw stream, 53-bit uniforms,
/// and Marsaglia's polar method for standard normals (the spare value is kept).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1) built from the top 53 bits of one engine output.
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double normal();

    Vector normal_vector(Eigen::Index n);
    Vector uniform_vector(Eigen::Index n, double lo, double hi);
    /// Column-major fill, column by column.
    Matrix normal_matrix(Eigen::Index rows, Eigen::Index cols);

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace anchored
