#include "anchored/operators.hpp"
#include "anchored/linalg.hpp"
#include "anchored/random.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

namespace anchored {

Vector OperatorSpec::operator()(const Vector& y) const {
    if (dim > 0 && y.size() != dim)
        throw InputError(name + ": expected dimension " + std::to_string(dim) + ", got " +
                         std::to_string(y.size()));
    return eval_fn(y);
}

BoxKind box_kind(Eigen::Index dim, double lo, double hi) {
    if (lo > hi) throw InputError("box: lo > hi");
    return BoxKind{Vector::Constant(dim, lo), Vector::Constant(dim, hi)};
}

std::string kind_name(const ResolventKind& kind) {
    struct V {
        std::string operator()(const ZeroKind&) const { return "zero"; }
        std::string operator()(const L1Kind&) const { return "l1"; }
        std::string operator()(const BoxKind&) const { return "box"; }
        std::string operator()(const AffineKind&) const { return "affine"; }
    };
    return std::visit(V{}, kind);
}

Eigen::Index kind_dim(const ResolventKind& kind) {
    if (auto* b = std::get_if<BoxKind>(&kind)) return b->lo.size();
    if (auto* a = std::get_if<AffineKind>(&kind)) return a->M.rows();
    return 0;
}

Resolvent::Resolvent(ResolventKind kind, double lambda) : kind_(std::move(kind)), lambda_(lambda) {
    if (!(lambda > 0.0)) throw InputError("resolvent: lambda must be positive");
    if (auto* l1 = std::get_if<L1Kind>(&kind_)) {
        if (l1->weight < 0.0) throw InputError("resolvent: l1 weight must be nonnegative");
    } else if (auto* box = std::get_if<BoxKind>(&kind_)) {
        if (box->lo.size() != box->hi.size()) throw InputError("resolvent: box bound size mismatch");
        if ((box->lo.array() > box->hi.array()).any()) throw InputError("resolvent: box lo > hi");
    } else if (auto* aff = std::get_if<AffineKind>(&kind_)) {
        const auto n = aff->M.rows();
        if (aff->M.cols() != n || aff->c.size() != n)
            throw InputError("resolvent: affine kind needs square M and matching c");
        Matrix S = Matrix::Identity(n, n) + lambda * aff->M;
        auto lu = std::make_shared<Eigen::PartialPivLU<Matrix>>(S);
        if (!(lu->rcond() > 1e-14)) throw NumericError("resolvent: I + lambda M is singular");
        lu_ = std::move(lu);
    }
}

Vector Resolvent::apply(const Vector& y) const {
    if (std::holds_alternative<ZeroKind>(kind_)) return y;
    if (auto* l1 = std::get_if<L1Kind>(&kind_)) {
        const double thr = lambda_ * l1->weight;
        Vector out(y.size());
        for (Eigen::Index i = 0; i < y.size(); ++i) {
            const double a = std::abs(y[i]) - thr;
            out[i] = a > 0.0 ? std::copysign(a, y[i]) : 0.0;
        }
        return out;
    }
    if (auto* box = std::get_if<BoxKind>(&kind_)) {
        if (y.size() != box->lo.size()) throw InputError("resolvent: box dimension mismatch");
        return y.cwiseMax(box->lo).cwiseMin(box->hi);
    }
    const auto& aff = std::get<AffineKind>(kind_);
    if (y.size() != aff.M.rows()) throw InputError("resolvent: affine dimension mismatch");
    return lu_->solve(y - lambda_ * aff.c);
}

Vector resolvent_apply(const Resolvent& res, const Vector& y) { return res.apply(y); }

OperatorSpec least_squares_operator(const Matrix& P, const Vector& b) {
    if (P.rows() != b.size())
        throw InputError("least_squares_operator: P has " + std::to_string(P.rows()) +
                         " rows but b has " + std::to_string(b.size()) + " entries");
    if (P.size() == 0 || P.norm() == 0.0) throw InputError("least_squares_operator: P is zero");
    const double s = spectral_norm(P);
    const double L = s * s;
    auto data = std::make_shared<const std::pair<Matrix, Vector>>(P, b);
    OperatorSpec op;
    op.dim = P.cols();
    op.eval_fn = [data](const Vector& y) -> Vector {
        return data->first.transpose() * (data->first * y - data->second);
    };
    op.lipschitz = L;
    op.cocoercivity = 1.0 / L;
    op.comonotonicity = 1.0 / L;
    op.monotone = true;
    op.name = "least_squares";
    return op;
}

double huber_clip(double tau, double eps) {
    if (std::abs(tau) < eps) return tau;
    return tau > 0.0 ? eps : -eps;
}

OperatorSpec huber_saddle_operator(const Matrix& K, double lam, double rho_w, double eps) {
    if (!(eps > 0.0) || !(lam > 0.0) || !(rho_w > 0.0))
        throw InputError("huber_saddle_operator: lam, rho_w and eps must be positive");
    const Eigen::Index m = K.rows();
    const Eigen::Index n = K.cols();
    const double knorm = K.norm() == 0.0 ? 0.0 : spectral_norm(K);
    auto Kp = std::make_shared<const Matrix>(K);
    OperatorSpec op;
    op.dim = n + m;
    op.eval_fn = [Kp, lam, rho_w, eps, m, n](const Vector& y) -> Vector {
        const auto u = y.head(n);
        const auto v = y.tail(m);
        Vector out(n + m);
        out.head(n) = u.unaryExpr([eps](double t) { return huber_clip(t, eps); }) * lam +
                      Kp->transpose() * v;
        out.tail(m) = v.unaryExpr([eps](double t) { return huber_clip(t, eps); }) * rho_w -
                      (*Kp) * u;
        return out;
    };
    op.lipschitz = std::sqrt(2.0) * std::sqrt(std::max(lam * lam, rho_w * rho_w) + knorm * knorm);
    op.monotone = true;
    op.comonotonicity = 0.0;
    op.name = "huber_saddle";
    return op;
}

OperatorSpec bilinear_saddle_operator(const Matrix& K) {
    const Eigen::Index m = K.rows();
    const Eigen::Index n = K.cols();
    auto Kp = std::make_shared<const Matrix>(K);
    OperatorSpec op;
    op.dim = n + m;
    op.eval_fn = [Kp, m, n](const Vector& y) -> Vector {
        Vector out(n + m);
        out.head(n) = Kp->transpose() * y.tail(m);
        out.tail(m) = -((*Kp) * y.head(n));
        return out;
    };
    op.lipschitz = K.norm() == 0.0 ? 0.0 : spectral_norm(K);
    op.monotone = true;
    op.comonotonicity = 0.0;
    op.name = "bilinear_saddle";
    return op;
}

OperatorSpec affine_operator(const Matrix& M, const Vector& c) {
    const auto n = M.rows();
    if (M.cols() != n || c.size() != n)
        throw InputError("affine_operator: need square M and matching c");
    auto data = std::make_shared<const std::pair<Matrix, Vector>>(M, c);
    OperatorSpec op;
    op.dim = n;
    op.eval_fn = [data](const Vector& y) -> Vector { return data->first * y + data->second; };
    op.name = "affine";
    if (M.norm() == 0.0) {
        op.lipschitz = 0.0;
        op.monotone = true;
        return op;
    }
    op.lipschitz = spectral_norm(M);
    const Matrix sym = 0.5 * (M + M.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
    const double lmin = es.eigenvalues().minCoeff();
    const double lmax = es.eigenvalues().maxCoeff();
    op.monotone = lmin >= -1e-14 * std::max(1.0, std::abs(lmax));
    Eigen::FullPivLU<Matrix> lu(M);
    if (lu.isInvertible()) {
        const Matrix Minv = lu.inverse();
        Eigen::SelfAdjointEigenSolver<Matrix> ei(0.5 * (Minv + Minv.transpose()),
                                                 Eigen::EigenvaluesOnly);
        const double rho = ei.eigenvalues().minCoeff();
        op.comonotonicity = rho;
        if (rho > 0.0) op.cocoercivity = rho;
    } else if ((M - M.transpose()).norm() <= 1e-14 * M.norm() && op.monotone) {
        op.cocoercivity = 1.0 / lmax;
        op.comonotonicity = 1.0 / lmax;
    }
    return op;
}

OperatorSpec identity_operator(Eigen::Index dim) {
    OperatorSpec op;
    op.dim = dim;
    op.eval_fn = [](const Vector& y) -> Vector { return y; };
    op.lipschitz = 1.0;
    op.cocoercivity = 1.0;
    op.comonotonicity = 1.0;
    op.monotone = true;
    op.name = "identity";
    return op;
}

OperatorSpec zero_operator(Eigen::Index dim) {
    OperatorSpec op;
    op.dim = dim;
    op.eval_fn = [dim](const Vector&) -> Vector { return Vector::Zero(dim); };
    op.lipschitz = 0.0;
    op.monotone = true;
    op.name = "zero";
    return op;
}

OperatorSpec from_nonexpansive(Map T, Eigen::Index dim, std::string name) {
    OperatorSpec op;
    op.dim = dim;
    op.eval_fn = [T = std::move(T)](const Vector& y) -> Vector { return y - T(y); };
    op.lipschitz = 2.0;
    op.cocoercivity = 0.5;
    op.comonotonicity = 0.5;
    op.monotone = true;
    op.name = std::move(name);
    return op;
}

OperatorSpec counting_operator(const OperatorSpec& G, std::shared_ptr<long> counter) {
    OperatorSpec op = G;
    op.eval_fn = [inner = G.eval_fn, counter](const Vector& y) -> Vector {
        ++*counter;
        return inner(y);
    };
    op.name = G.name + "[counted]";
    return op;
}

bool RegularityReport::ok() const {
    auto clean = [](const std::optional<InequalityReport>& r) { return !r || r->violations == 0; };
    return clean(lipschitz) && clean(cocoercivity) && clean(comonotonicity);
}

namespace {

InequalityReport make_report(const std::string& name) {
    InequalityReport r;
    r.name = name;
    r.worst_margin = std::numeric_limits<double>::infinity();
    return r;
}

void record(InequalityReport& r, double margin) {
    ++r.pairs;
    if (margin < 0.0) ++r.violations;
    r.worst_margin = std::min(r.worst_margin, margin);
}

}  // namespace

RegularityReport check_regularity(const OperatorSpec& G, long n_pairs, std::uint64_t seed,
                                  double scale) {
    if (G.dim < 1) throw InputError("check_regularity: operator needs a fixed dimension");
    RegularityReport rep;
    if (G.lipschitz) rep.lipschitz = make_report("lipschitz");
    if (G.cocoercivity) rep.cocoercivity = make_report("cocoercivity");
    if (G.comonotonicity) rep.comonotonicity = make_report("comonotonicity");
    Rng rng(seed);
    for (long i = 0; i < n_pairs; ++i) {
        const Vector x = rng.uniform_vector(G.dim, -scale, scale);
        const Vector y = rng.uniform_vector(G.dim, -scale, scale);
        const Vector dg = G(x) - G(y);
        const Vector dx = x - y;
        const double inner = dg.dot(dx);
        const double g2 = dg.squaredNorm();
        if (rep.lipschitz)
            record(*rep.lipschitz, *G.lipschitz * (1.0 + 1e-12) * dx.norm() - dg.norm());
        if (rep.cocoercivity)
            record(*rep.cocoercivity, inner - *G.cocoercivity * g2 + 1e-10 * (1.0 + g2));
        if (rep.comonotonicity)
            record(*rep.comonotonicity, inner - *G.comonotonicity * g2 + 1e-10 * (1.0 + g2));
    }
    return rep;
}

InequalityReport firm_nonexpansive_report(const Resolvent& J, Eigen::Index dim, long n_pairs,
                                          std::uint64_t seed, double scale) {
    auto rep = make_report("firm_nonexpansive");
    Rng rng(seed);
    for (long i = 0; i < n_pairs; ++i) {
        const Vector u = rng.uniform_vector(dim, -scale, scale);
        const Vector v = rng.uniform_vector(dim, -scale, scale);
        const Vector dj = J.apply(u) - J.apply(v);
        record(rep, dj.dot(u - v) - dj.squaredNorm() + 1e-10);
    }
    return rep;
}

}  // namespace anchored
