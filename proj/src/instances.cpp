#include "anchored/instances.hpp"
#include "anchored/linalg.hpp"
#include "anchored/random.hpp"

#include <Eigen/Cholesky>

#include <cmath>

namespace anchored {

ProblemInstance gen_least_squares(long n, long p, std::uint64_t seed, double noise_var) {
    if (n < 1 || p < 1) throw InputError("gen_least_squares: dimensions must be positive");
    if (noise_var < 0.0) throw InputError("gen_least_squares: negative noise variance");
    Rng rng(seed);
    Matrix P = rng.normal_matrix(n, p);
    normalize_columns(P);
    const Vector y_true = rng.normal_vector(p);
    const Vector noise = rng.normal_vector(n) * std::sqrt(noise_var);
    const Vector b = P * y_true + noise;
    const Vector y0 = rng.normal_vector(p);

    ProblemInstance inst;
    inst.op = least_squares_operator(P, b);
    inst.l_estimate = *inst.op.lipschitz;
    inst.y0 = y0;
    if (n >= p) {
        Eigen::LLT<Matrix> llt(P.transpose() * P);
        if (llt.info() == Eigen::Success) inst.solution = llt.solve(P.transpose() * b);
    } else {
        Eigen::LLT<Matrix> llt(P * P.transpose());
        if (llt.info() == Eigen::Success)
            inst.solution = y0 + P.transpose() * llt.solve(b - P * y0);
    }
    inst.meta = {"least_squares", seed, {n, p}};
    inst.data = std::move(P);
    inst.rhs = b;
    return inst;
}

namespace {

Matrix unit_gaussian(long m, long n, Rng& rng) {
    Matrix K = rng.normal_matrix(m, n);
    normalize_columns(K);
    return K;
}

}  // namespace

ProblemInstance gen_minimax_huber(long m, long n, std::uint64_t seed) {
    if (m < 1 || n < 1) throw InputError("gen_minimax_huber: dimensions must be positive");
    Rng rng(seed);
    Matrix K = unit_gaussian(m, n, rng);
    const double knorm = spectral_norm(K);
    ProblemInstance inst;
    inst.op = huber_saddle_operator(K, knorm, knorm, 0.05);
    inst.l_estimate = *inst.op.lipschitz;
    inst.solution = Vector::Zero(m + n);
    inst.y0 = rng.normal_vector(m + n);
    inst.meta = {"huber", seed, {m, n}};
    inst.data = std::move(K);
    return inst;
}

ProblemInstance gen_bilinear(long m, long n, std::uint64_t seed) {
    if (m < 1 || n < 1) throw InputError("gen_bilinear: dimensions must be positive");
    Rng rng(seed);
    Matrix K = unit_gaussian(m, n, rng);
    ProblemInstance inst;
    inst.op = bilinear_saddle_operator(K);
    inst.l_estimate = *inst.op.lipschitz;
    inst.solution = Vector::Zero(m + n);
    inst.y0 = rng.normal_vector(m + n);
    inst.meta = {"bilinear", seed, {m, n}};
    inst.data = std::move(K);
    return inst;
}

ProblemInstance gen_identity(long dim, double fill) {
    if (dim < 1) throw InputError("gen_identity: dimension must be positive");
    ProblemInstance inst;
    inst.op = identity_operator(dim);
    inst.l_estimate = 1.0;
    inst.solution = Vector::Zero(dim);
    inst.y0 = Vector::Constant(dim, fill);
    inst.meta = {"identity", 0, {dim}};
    return inst;
}

void set_start(ProblemInstance& inst, double fill) { inst.y0 = Vector::Constant(inst.op.dim, fill); }

bool solution_consistent(const ProblemInstance& inst) {
    if (!inst.solution) return true;
    const double r = inst.op(*inst.solution).norm();
    return r <= 1e-8 * inst.l_estimate * (1.0 + inst.solution->norm());
}

}  // namespace anchored
