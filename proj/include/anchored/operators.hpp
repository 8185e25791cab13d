#pragma once

#include "anchored/types.hpp"

#include <Eigen/LU>

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace anchored {

using Map = std::function<Vector(const Vector&)>;

/// A single-valued map y -> Gy on R^dim together with declared regularity.
/// The metadata is not inferred; use check_regularity to sample it.
/// dim = 0 accepts inputs of any size.
struct OperatorSpec {
    Eigen::Index dim = 0;
    Map eval_fn;
    std::optional<double> lipschitz;
    std::optional<double> cocoercivity;    // c in <Gx-Gy,x-y> >= c|Gx-Gy|^2
    std::optional<double> comonotonicity;  // rho, may be negative
    bool monotone = false;
    std::string name;
    std::vector<std::string> flags;

    Vector operator()(const Vector& y) const;
};

// Resolvent catalog ----------------------------------------------------------

struct ZeroKind {};
struct L1Kind {
    double weight = 1.0;
};
struct BoxKind {
    Vector lo;
    Vector hi;
};
struct AffineKind {
    Matrix M;
    Vector c;
};

/// Maximally monotone operator A described through a closed-form resolvent.
using ResolventKind = std::variant<ZeroKind, L1Kind, BoxKind, AffineKind>;

BoxKind box_kind(Eigen::Index dim, double lo, double hi);
std::string kind_name(const ResolventKind& kind);
/// Dimension fixed by the kind, or 0 for dimension-free kinds (zero, l1).
Eigen::Index kind_dim(const ResolventKind& kind);

/// J_{lambda A} = (I + lambda A)^{-1}. Affine kinds factor I + lambda M once.
class Resolvent {
public:
    Resolvent(ResolventKind kind, double lambda);

    Vector apply(const Vector& y) const;
    const ResolventKind& kind() const { return kind_; }
    double lambda() const { return lambda_; }

private:
    ResolventKind kind_;
    double lambda_;
    std::shared_ptr<const Eigen::PartialPivLU<Matrix>> lu_;
};

Vector resolvent_apply(const Resolvent& res, const Vector& y);

// Operator catalog -----------------------------------------------------------

/// G(y) = P^T (P y - b), co-coercive with L = |P^T P|.
OperatorSpec least_squares_operator(const Matrix& P, const Vector& b);

/// Huber derivative: tau if |tau| < eps, else eps * sign(tau).
double huber_clip(double tau, double eps);

/// Saddle operator of lam*sum huber(u) + <Ku, v> - rho_w*sum huber(v) for
/// K of shape m x n, acting on (u, v) in R^n x R^m:
/// G(u, v) = (lam clip(u) + K^T v, rho_w clip(v) - K u).
OperatorSpec huber_saddle_operator(const Matrix& K, double lam, double rho_w, double eps);

/// G(u, v) = (K^T v, -K u): monotone, L = |K|, no co-coercivity.
OperatorSpec bilinear_saddle_operator(const Matrix& K);

/// G(y) = M y + c with metadata computed from M: Lipschitz |M|, monotonicity from
/// the symmetric part, and for invertible M the sharp co-monotonicity modulus
/// lambda_min(sym(M^{-1})) (also reported as co-coercivity when positive).
OperatorSpec affine_operator(const Matrix& M, const Vector& c);

OperatorSpec identity_operator(Eigen::Index dim);
OperatorSpec zero_operator(Eigen::Index dim);

/// G = I - T for a nonexpansive T: 1/2-co-coercive and 2-Lipschitz.
OperatorSpec from_nonexpansive(Map T, Eigen::Index dim, std::string name = "nonexpansive");

/// Wraps G so that each evaluation increments a shared counter.
OperatorSpec counting_operator(const OperatorSpec& G, std::shared_ptr<long> counter);

// Sampled checks -------------------------------------------------------------

struct InequalityReport {
    std::string name;
    long pairs = 0;
    long violations = 0;
    double worst_margin = 0.0;  // most negative slack-adjusted margin observed
};

struct RegularityReport {
    std::optional<InequalityReport> lipschitz;
    std::optional<InequalityReport> cocoercivity;
    std::optional<InequalityReport> comonotonicity;
    bool ok() const;
};

/// Draws n_pairs pairs uniformly from [-scale, scale]^dim and checks every declared
/// inequality of the spec with slack 1e-12 (Lipschitz) and 1e-10 (others).
RegularityReport check_regularity(const OperatorSpec& G, long n_pairs, std::uint64_t seed,
                                  double scale = 1.0);

/// <Ju - Jv, u - v> >= |Ju - Jv|^2 - 1e-10 on sampled pairs.
InequalityReport firm_nonexpansive_report(const Resolvent& J, Eigen::Index dim, long n_pairs,
                                          std::uint64_t seed, double scale = 1.0);

}  // namespace anchored
