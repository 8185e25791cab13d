#pragma once

#include "anchored/schemes.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace anchored {

struct LyapunovCoeffs {
    double a = 0.0, b = 0.0;  // weights of |G y_{k-1}|^2 and <G y_{k-1}, x_k - y_k>
    double p = 0.0, q = 0.0;  // Halpern weights p_k = q0 k(k+1), q_k = q0 (k+1)
    double t = 1.0;
    double mu = 0.0;
};

/// Nesterov-form weights with t = (k+2w+1)/w, b = 2 gamma t(t-1), a = gamma^2 t(t-1).
LyapunovCoeffs nesterov_coeffs(long k, double gamma, double omega, double mu = 1.0);
/// t = k+1, b = k(k+1)/L, a = k(k+2)/(2L^2), mu = 0.
LyapunovCoeffs nag_eag_coeffs(long k, double L);
LyapunovCoeffs halpern_coeffs(long k, double q0 = 1.0);
/// Weights (a_{k+1}, b_{k+1}, t_{k+1}) under which V_{k+1} - |y0 - y*|^2 equals
/// (4 p_k/(L q_k^2)) L_k along a Halpern run with beta_k, eta_k, mu = 0.
LyapunovCoeffs halpern_to_nesterov_coeffs(long k, double beta_k, double eta_k, double L,
                                          double q0 = 1.0);

/// (p/L)|G y_k|^2 + q <G y_k, y_k - y0>.
double lyapunov_L(const IterateState& s, double p, double q, double L);
/// a|G y_{k-1}|^2 + b<G y_{k-1}, x_k - y_k> + |x_k + t(y_k - x_k) - y*|^2 + mu|x_k - y*|^2,
/// with G y_{-1} read as G y_0.
double lyapunov_V(const IterateState& s, const LyapunovCoeffs& c, const Vector& y_star);
/// Same form with z_k in place of y_k.
double lyapunov_Q(const IterateState& s, const LyapunovCoeffs& c, const Vector& y_star);
/// |V_{k+1} - |y0 - y*|^2 - (4 p_k/(L q_k^2)) L_k| / (1 + |V_{k+1}|), where V_{k+1} is
/// evaluated at x_{k+1} = y_k - gamma_k G y_k with gamma_k = eta_k/(1 - beta_k) and the
/// Halpern iterate y_{k+1}. Both states come from one Halpern run.
double lyapunov_correspondence_gap(const IterateState& at_k, const IterateState& at_k1,
                                   double beta_k, double eta_k, double L, const Vector& y_star,
                                   double q0 = 1.0);
/// a_k|G y_k|^2 + b_k<G y_k, y_k - y0> + (L^2 b_k eta_k/(2 beta_k))|z_k - y_k|^2
/// + b0 sqrt(2M)|y0 - y*|^2 for PEAG with beta_k = 1/(k+2), eta_k = (1 - beta_k)/sqrt(2M),
/// b_k = b0 (k+1), a_k = b_k eta_k/(2 beta_k), M = L^2(1 + sigma).
double lyapunov_E(const IterateState& s, double sigma, double L, const Vector& y_star,
                  double b0 = 1.0);

struct BoundReport {
    std::string name;
    std::vector<double> values;  // theoretical value per checked index
    long checked = 0;
    long violations = 0;
    double worst_excess = 0.0;  // max of (lhs - rhs)/max(rhs, tiny); <= 0 when satisfied
    std::optional<long> first_violation;
    bool skipped = false;
    bool approximate = false;
    std::string flag;
    bool ok() const { return skipped ? false : violations == 0; }
};

enum class BoundKind {
    halpern_fast,
    halpern_slow,
    eag_anchored,
    eag_constant,
    eag_varying,
    comono,
    peag,
};

std::string to_string(BoundKind kind);
BoundKind parse_bound_kind(const std::string& name);

struct BoundSpec {
    BoundKind kind = BoundKind::halpern_fast;
    double L = 1.0;
    double dist0 = 0.0;
    double rho = 0.0;    // comono
    double sigma = 1.0;  // peag
    double eta = 0.0;    // eag_constant stepsize; eag_varying initial stepsize
    double eta_limit = 0.0;  // eag_varying: proxy for lim eta_k (the last stepsize used)
};

/// Upper bound on |G y_k| implied by the kind at index k (empty where the bound
/// does not apply, e.g. k = 0 for comono).
std::optional<double> residual_bound(const BoundSpec& spec, long k);

/// Compares the trace against the bound at every record with relative slack 1e-9.
/// peag yields two reports (the combined y/z bound and the G z bound).
std::vector<BoundReport> bound_check(const RunTrace& trace, const BoundSpec& spec);

/// The four partial-sum budgets of the omega-parameterized Nesterov family (mu = 1).
/// Needs stride-1 snapshots. A nonpositive coefficient skips that budget with a flag.
std::vector<BoundReport> summability_check(const RunTrace& trace, double gamma, double omega,
                                           double L, double V0, double mu = 1.0);

/// sum_k (k+1)(k+2)|G y_{k+1} - G y_k|^2 <= 2 L^2 dist0^2 along a Halpern trace.
BoundReport halpern_summability_check(const RunTrace& trace, double L, double dist0);

/// (L^2 (sigma-1) b0/(2 sqrt(2M))) sum_k (k+1)(k+2)|z_{k+1} - y_{k+1}|^2 <= E0.
BoundReport peag_weighted_sum_check(const RunTrace& trace, double L, double sigma, double E0,
                                    double b0 = 1.0);

/// Counts k with v_{k+1} - v_k > slack (1 + |v_k|).
BoundReport decrease_check(std::span<const double> values, const std::string& name,
                           double slack = 1e-10);

/// Counts k with lhs_k < rhs_k - slack.
BoundReport lower_bound_check(std::span<const double> lhs, std::span<const double> rhs,
                              const std::string& name, double slack);

/// max_k |a_k - b_k| / (1 + |a_k|).
double equivalence_report(const std::vector<Vector>& a, const std::vector<Vector>& b);

struct RateReport {
    double slope = 0.0;
    double intercept = 0.0;
    long k_lo = 0, k_hi = 0;
    double residual = 0.0;  // root mean square of the fit residual
};

/// Least-squares fit of log(series[k]) against log(k+1) for k in [k_lo, k_hi].
RateReport rate_fit(std::span<const double> series, long k_lo, long k_hi);
/// Default window [K/4, K] with K = series.size() - 1.
RateReport rate_fit(std::span<const double> series);

struct TrendReport {
    double early_max = 0.0;  // max over [K/10, K/5] of (k+1)^2 r_k^2
    double late_max = 0.0;   // max over [K/2, K]
    bool ok() const { return late_max <= early_max; }
};

/// Finite-horizon stand-in for |G y_k|^2 = o(1/k^2).
TrendReport little_o_trend(std::span<const double> norms);

}  // namespace anchored
