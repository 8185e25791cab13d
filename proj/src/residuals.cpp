#include "anchored/residuals.hpp"
#include "anchored/random.hpp"

#include <cmath>
#include <limits>

namespace anchored {

double splitting_modulus(double lambda, double L) {
    if (!(lambda > 0.0) || !(L >= 0.0) || !(lambda * L < 4.0))
        throw InputError("splitting_modulus: need 0 < lambda < 4/L");
    return lambda * (4.0 - lambda * L) / 4.0;
}

OperatorSpec yosida(const ResolventKind& A, double lambda) {
    auto J = std::make_shared<const Resolvent>(A, lambda);
    OperatorSpec op;
    op.dim = kind_dim(A);
    op.eval_fn = [J, lambda](const Vector& y) -> Vector { return (y - J->apply(y)) / lambda; };
    op.cocoercivity = lambda;
    op.comonotonicity = lambda;
    op.lipschitz = 1.0 / lambda;
    op.monotone = true;
    op.name = "yosida(" + kind_name(A) + ")";
    return op;
}

OperatorSpec fb_residual(const SplittingSpec& spec) {
    if (spec.C) throw InputError("fb_residual: C must be absent; use tos_residual");
    const auto* B = std::get_if<OperatorSpec>(&spec.B);
    if (!B) throw InputError("fb_residual: B must be single-valued");
    const double lambda = spec.lambda;
    auto J = std::make_shared<const Resolvent>(spec.A, lambda);
    auto Bp = std::make_shared<const OperatorSpec>(*B);
    OperatorSpec op;
    op.dim = B->dim;
    if (kind_dim(spec.A) != 0 && kind_dim(spec.A) != B->dim)
        throw InputError("fb_residual: A and B dimensions differ");
    op.eval_fn = [J, Bp, lambda](const Vector& y) -> Vector {
        return (y - J->apply(y - lambda * (*Bp)(y))) / lambda;
    };
    op.monotone = true;
    op.name = "fb_residual";
    const double L = spec.l_forward;
    if (lambda > 0.0 && lambda * L < 4.0) {
        op.cocoercivity = splitting_modulus(lambda, L);
        op.comonotonicity = op.cocoercivity;
        op.lipschitz = 1.0 / *op.cocoercivity;
    } else {
        op.flags.push_back("lambda outside (0, 4/L): no co-coercivity modulus");
        op.lipschitz = (2.0 + lambda * L) / lambda;
    }
    return op;
}

struct ThreeOperatorResidual::Impl {
    Resolvent JA;
    Resolvent JB;
    std::optional<OperatorSpec> C;
    double lambda;
};

ThreeOperatorResidual::ThreeOperatorResidual(const SplittingSpec& spec) : lambda_(spec.lambda) {
    const auto* Bk = std::get_if<ResolventKind>(&spec.B);
    if (!Bk)
        throw InputError("tos_residual: B needs a resolvent; pass it as a resolvent kind");
    Eigen::Index dim = kind_dim(spec.A);
    const Eigen::Index db = kind_dim(*Bk);
    const Eigen::Index dc = spec.C ? spec.C->dim : 0;
    for (Eigen::Index d : {db, dc}) {
        if (d == 0) continue;
        if (dim != 0 && dim != d) throw InputError("tos_residual: operator dimensions differ");
        dim = d;
    }
    if (dim == 0) throw InputError("tos_residual: dimension cannot be inferred from the data");
    impl_ = std::make_shared<const Impl>(
        Impl{Resolvent(spec.A, lambda_), Resolvent(*Bk, lambda_), spec.C, lambda_});

    auto impl = impl_;
    op_.dim = dim;
    op_.eval_fn = [impl](const Vector& u) -> Vector {
        const Vector z = impl->JB.apply(u);
        Vector arg = 2.0 * z - u;
        if (impl->C) arg -= impl->lambda * (*impl->C)(z);
        return (z - impl->JA.apply(arg)) / impl->lambda;
    };
    op_.monotone = true;
    op_.name = "tos_residual";
    if (spec.C) {
        const double L = spec.l_forward;
        if (lambda_ * L < 4.0) {
            op_.cocoercivity = splitting_modulus(lambda_, L);
        } else {
            op_.flags.push_back("lambda outside (0, 4/L): no co-coercivity modulus");
        }
    } else {
        op_.cocoercivity = lambda_;
        op_.flags.push_back("modulus lambda derived from firm nonexpansiveness (C absent)");
    }
    if (op_.cocoercivity) {
        op_.comonotonicity = op_.cocoercivity;
        op_.lipschitz = 1.0 / *op_.cocoercivity;
    }
}

ThreeOperatorParts ThreeOperatorResidual::parts(const Vector& u) const {
    if (u.size() != op_.dim) throw InputError("tos_residual: dimension mismatch");
    ThreeOperatorParts p;
    p.z = impl_->JB.apply(u);
    Vector arg = 2.0 * p.z - u;
    if (impl_->C) arg -= lambda_ * (*impl_->C)(p.z);
    p.w = impl_->JA.apply(arg);
    p.value = (p.z - p.w) / lambda_;
    return p;
}

OperatorSpec tos_residual(const SplittingSpec& spec) { return ThreeOperatorResidual(spec).spec(); }

InequalityReport cocoercivity_report(const OperatorSpec& G, double modulus, long n_pairs,
                                     std::uint64_t seed, double scale) {
    if (n_pairs < 1) throw InputError("cocoercivity_report: n_pairs must be positive");
    if (G.dim < 1) throw InputError("cocoercivity_report: operator needs a fixed dimension");
    InequalityReport r;
    r.name = "cocoercivity";
    r.worst_margin = std::numeric_limits<double>::infinity();
    Rng rng(seed);
    for (long i = 0; i < n_pairs; ++i) {
        const Vector x = rng.uniform_vector(G.dim, -scale, scale);
        const Vector y = rng.uniform_vector(G.dim, -scale, scale);
        const Vector dg = G(x) - G(y);
        const double g2 = dg.squaredNorm();
        const double margin = dg.dot(x - y) - modulus * g2 + 1e-10 * (1.0 + g2);
        ++r.pairs;
        if (margin < 0.0) ++r.violations;
        r.worst_margin = std::min(r.worst_margin, margin);
    }
    return r;
}

InequalityReport fb_inequality_report(const SplittingSpec& spec, long n_pairs, std::uint64_t seed,
                                      double scale) {
    const OperatorSpec R = fb_residual(spec);
    const auto& B = std::get<OperatorSpec>(spec.B);
    const double lambda = spec.lambda;
    InequalityReport r;
    r.name = "forward_backward_inequality";
    r.worst_margin = std::numeric_limits<double>::infinity();
    Rng rng(seed);
    for (long i = 0; i < n_pairs; ++i) {
        const Vector x = rng.uniform_vector(R.dim, -scale, scale);
        const Vector y = rng.uniform_vector(R.dim, -scale, scale);
        const Vector dr = R(x) - R(y);
        const Vector db = B(x) - B(y);
        const Vector dx = x - y;
        const double lhs = dr.dot(dx + lambda * db);
        const double rhs = lambda * dr.squaredNorm() + db.dot(dx);
        const double margin = lhs - rhs + 1e-10 * (1.0 + dr.squaredNorm());
        ++r.pairs;
        if (margin < 0.0) ++r.violations;
        r.worst_margin = std::min(r.worst_margin, margin);
    }
    return r;
}

}  // namespace anchored
