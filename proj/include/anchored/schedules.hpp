#pragma once

#include "anchored/types.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace anchored {

/// Per-iteration parameters. Fields a scheme does not use stay empty.
struct ScheduleParams {
    long k = 0;
    std::optional<double> beta, eta, eta_hat, gamma, gamma_hat, theta, nu, kappa, zeta, tau, t;
    /// Lyapunov weights shipped with schedules that define them.
    std::optional<double> a, b;
    // constants
    std::optional<double> omega, mu, sigma, rho, lambda, L, M;
    std::string note;
};

/// Reads a required field, throwing InputError naming it when absent.
double require(const std::optional<double>& field, const char* name);

enum class ScheduleKind {
    halpern_fast,
    halpern_slow,
    halpern_corollary2,
    nesterov_corollary1_a,
    nesterov_corollary1_b,
    nesterov_theorem3,
    eag_constant,
    eag_varying,
    comono_eag,
    peag_theorem7,
    peag_legacy,
    nag_eag,
    nag_comono,
    nag_peag,
};

enum class SchemeKind { halpern, nesterov, eag, nag_eag, comono_eag, nag_comono, peag, nag_peag };

std::string to_string(ScheduleKind kind);
std::string to_string(SchemeKind kind);
ScheduleKind parse_schedule_kind(const std::string& name);
SchemeKind parse_scheme_kind(const std::string& name);
const std::vector<ScheduleKind>& all_schedule_kinds();
/// The step each schedule kind parameterizes.
SchemeKind scheme_for(ScheduleKind kind);

// Closed-form rules -----------------------------------------------------------

enum class HalpernVariant { fast, slow };

ScheduleParams halpern_schedule(long k, double L, HalpernVariant variant);
ScheduleParams halpern_omega_schedule(long k, double L, double gamma, double omega);

/// gamma = 1/L with the a/b coefficient sets matching slow/fast anchoring.
ScheduleParams nesterov_halpern_schedule(long k, double L, HalpernVariant variant);

/// theta = (k+1)/(k+2w+2), nu = (k+w+2)/(k+2w+2), t = (k+2w+1)/w, mu = 1.
/// omega in [1, 2] is accepted with a note; omega < 1 is rejected.
ScheduleParams nesterov_omega_schedule(long k, double omega);

/// Step-wise Halpern -> two-correction Nesterov map. cur carries (beta, eta, gamma)
/// at index k, prev those at k-1 (nullptr at k = 0, where theta = kappa = 0 and
/// nu = 1 - eta/gamma).
ScheduleParams transform_step(const ScheduleParams* prev, const ScheduleParams& cur);

std::vector<ScheduleParams> transform_halpern_to_nesterov(std::span<const double> beta,
                                                          std::span<const double> eta,
                                                          std::span<const double> gamma);

ScheduleParams eag_constant(long k, double L, double eta);
/// eta_{k+1} = (1 - L^2 eta_k^2 / ((1 - L^2 eta_k^2)(k+1)(k+3))) eta_k.
double eag_varying_next(long k, double L, double eta_k);
/// Parameters at k, carrying eta_k forward from eta0 (O(k)).
ScheduleParams eag_varying(long k, double L, double eta0);

ScheduleParams nag_eag_schedule(long k, double L);

ScheduleParams comono_schedule(long k, double L, double rho);
/// Nesterov form of the co-monotone scheme: theta = (k-1)/(k+1), nu = k/(k+1) for
/// k >= 1, and theta = 0, nu = 1 at k = 0.
ScheduleParams nag_comono_schedule(long k, double L, double rho);

ScheduleParams peag_schedule(long k, double L, double sigma);
/// eta_{k+1} = (1 - b_k^2 - 2L^2 eta_k^2) b_{k+1} eta_k / ((1 - 2L^2 eta_k^2)(1 - b_k) b_k).
double peag_legacy_next(long k, double L, double eta_k);
ScheduleParams peag_legacy(long k, double L, double eta0);

/// Three-correction coefficients at index k from the PEAG parameters at indices
/// k, k-1, k-2 (base(j) is never called with j < 0). Stepsizes before index 0
/// are zero, which makes the three-correction iterates coincide with PEAG from k = 0.
ScheduleParams peag_transform(long k, const std::function<ScheduleParams(long)>& base);

/// Exact three-correction parameters for the PEAG stepsizes with constant sigma.
ScheduleParams nag_peag_schedule(long k, double L, double sigma);
/// Published closed forms for sigma = 1: gamma_hat = 1/L, theta = k/(k+2),
/// nu = (k+1)/(k+2), kappa = k/(2(k+2)), zeta = (k-1)/(2(k+2)) (k >= 1, else 0).
/// These match nag_peag_schedule for k >= 3 only.
ScheduleParams nag_peag_closed_form(long k, double L);

// Streams ---------------------------------------------------------------------

struct ScheduleConstants {
    std::optional<double> L;
    double omega = 3.0;
    double mu = 1.0;
    double sigma = 1.0;
    double rho = 0.0;
    std::optional<double> gamma;  // default 0.9/L (nesterov_theorem3, halpern_corollary2)
    std::optional<double> eta;    // eag_constant; default 1/(8L)
    std::optional<double> eta0;   // eag_varying (default 0.5/L), peag_legacy (default 0.25/L)
    bool closed_form = false;     // nag_peag: use the published closed forms
};

/// True when `scheme` can be driven by `kind`: the native pairing, a Halpern
/// schedule feeding the two-correction Nesterov step, or a PEAG schedule
/// feeding the three-correction step.
bool compatible(SchemeKind scheme, ScheduleKind kind);

/// Sequential parameter source for one run, producing parameters for `target`.
/// Carries the two stepsize recursions and the short history the transforms need.
class ScheduleStream {
public:
    ScheduleStream(ScheduleKind kind, ScheduleConstants constants);
    ScheduleStream(ScheduleKind kind, ScheduleConstants constants, SchemeKind target);

    ScheduleParams next();
    ScheduleKind kind() const { return kind_; }
    SchemeKind target() const { return target_; }
    const ScheduleConstants& constants() const { return c_; }
    long index() const { return k_; }

private:
    ScheduleParams base(long k);

    ScheduleKind kind_;
    SchemeKind target_;
    ScheduleConstants c_;
    long k_ = 0;
    double eta_state_ = 0.0;
    std::vector<ScheduleParams> history_;  // base params, most recent last
};

}  // namespace anchored
