#include "anchored/linalg.hpp"
#include "anchored/random.hpp"

#include <cmath>

namespace anchored {

double spectral_norm(const Matrix& M, const PowerIterationOptions& opts) {
    if (M.size() == 0) throw InputError("spectral_norm: empty matrix");
    if (!(opts.tol > 0.0)) throw InputError("spectral_norm: tol must be positive");
    if (M.norm() == 0.0) return 0.0;

    Rng rng(opts.seed);
    Vector v = rng.normal_vector(M.cols());
    v.normalize();

    double lambda = 0.0;
    for (int it = 0; it < opts.max_iter; ++it) {
        const Vector Mv = M * v;
        const Vector w = M.transpose() * Mv;
        lambda = Mv.squaredNorm();  // Rayleigh quotient v^T M^T M v with |v| = 1
        const double residual = (w - lambda * v).norm();
        if (residual <= opts.tol * lambda) return std::sqrt(lambda);
        const double wn = w.norm();
        if (wn == 0.0) {
            // v landed in the kernel; restart from a fresh direction
            v = rng.normal_vector(M.cols());
            v.normalize();
            continue;
        }
        v = w / wn;
    }
    throw NumericError("spectral_norm: power iteration did not converge", std::nullopt,
                       std::sqrt(lambda));
}

void normalize_columns(Matrix& M) {
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
        const double n = M.col(j).norm();
        if (n > 0.0) M.col(j) /= n;
    }
}

}  // namespace anchored
