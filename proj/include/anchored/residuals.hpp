#pragma once

#include "anchored/operators.hpp"

#include <memory>
#include <optional>
#include <variant>

namespace anchored {

/// Data of the inclusion 0 in A y + B y + C y.
struct SplittingSpec {
    ResolventKind A = ZeroKind{};
    /// Single-valued B (forward step) or a resolvent kind (backward step).
    std::variant<OperatorSpec, ResolventKind> B = ResolventKind{ZeroKind{}};
    std::optional<OperatorSpec> C;
    double lambda = 1.0;
    /// Co-coercivity constant L of the forward operator (B for the
    /// forward-backward residual, C for the three-operator residual).
    double l_forward = 0.0;
};

/// Modulus lambda(4 - lambda L)/4, valid for 0 < lambda < 4/L.
double splitting_modulus(double lambda, double L);

/// G(y) = (y - J_{lambda A} y)/lambda, lambda-co-coercive.
OperatorSpec yosida(const ResolventKind& A, double lambda);

/// G(y) = (y - J_{lambda A}(y - lambda B y))/lambda. Requires single-valued B and
/// no C. Outside 0 < lambda < 4/L the modulus is dropped and a flag recorded.
OperatorSpec fb_residual(const SplittingSpec& spec);

struct ThreeOperatorParts {
    Vector z;      // J_{lambda B} u
    Vector w;      // J_{lambda A}(2z - u - lambda C z)
    Vector value;  // (z - w)/lambda
};

/// E(u) = (J_{lambda B}u - J_{lambda A}(2 J_{lambda B}u - u - lambda C J_{lambda B}u))/lambda.
class ThreeOperatorResidual {
public:
    explicit ThreeOperatorResidual(const SplittingSpec& spec);

    ThreeOperatorParts parts(const Vector& u) const;
    Vector operator()(const Vector& u) const { return parts(u).value; }
    /// Operator view with modulus lambda(4 - lambda L)/4 when C is present;
    /// with C absent the modulus lambda is attached and flagged as derived.
    const OperatorSpec& spec() const { return op_; }
    double lambda() const { return lambda_; }

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
    OperatorSpec op_;
    double lambda_;
};

OperatorSpec tos_residual(const SplittingSpec& spec);

/// Counts pairs with <Gx - Gy, x - y> - modulus |Gx - Gy|^2 < -1e-10 (1 + |Gx - Gy|^2).
InequalityReport cocoercivity_report(const OperatorSpec& G, double modulus, long n_pairs,
                                     std::uint64_t seed, double scale = 1.0);

/// Checks <Rx - Ry, x - y + lambda(Bx - By)> >= lambda |Rx - Ry|^2 + <Bx - By, x - y>
/// for the forward-backward residual R of spec.
InequalityReport fb_inequality_report(const SplittingSpec& spec, long n_pairs, std::uint64_t seed,
                                      double scale = 1.0);

}  // namespace anchored
