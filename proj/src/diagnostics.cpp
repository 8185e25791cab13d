#include "anchored/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace anchored {

LyapunovCoeffs nesterov_coeffs(long k, double gamma, double omega, double mu) {
    LyapunovCoeffs c;
    c.t = (static_cast<double>(k) + 2.0 * omega + 1.0) / omega;
    c.b = 2.0 * gamma * c.t * (c.t - 1.0);
    c.a = gamma * gamma * c.t * (c.t - 1.0);
    c.mu = mu;
    return c;
}

LyapunovCoeffs nag_eag_coeffs(long k, double L) {
    const double kk = static_cast<double>(k);
    LyapunovCoeffs c;
    c.t = kk + 1.0;
    c.b = kk * (kk + 1.0) / L;
    c.a = kk * (kk + 2.0) / (2.0 * L * L);
    c.mu = 0.0;
    return c;
}

LyapunovCoeffs halpern_coeffs(long k, double q0) {
    const double kk = static_cast<double>(k);
    LyapunovCoeffs c;
    c.p = q0 * kk * (kk + 1.0);
    c.q = q0 * (kk + 1.0);
    return c;
}

LyapunovCoeffs halpern_to_nesterov_coeffs(long k, double beta_k, double eta_k, double L, double q0) {
    const LyapunovCoeffs h = halpern_coeffs(k, q0);
    LyapunovCoeffs c = h;
    const double p = h.p, q = h.q;
    c.a = 4.0 * p * p / (L * L * q * q) + 4.0 * p * eta_k / (L * q * (1.0 - beta_k));
    c.b = 4.0 * p / (L * q * beta_k);
    c.t = 1.0 / beta_k;
    c.mu = 0.0;
    return c;
}

namespace {

const Vector& require_vec(const std::optional<Vector>& v, const char* what) {
    if (!v) throw DataError(std::string("trace point is missing ") + what);
    return *v;
}

const Vector& previous_g_y(const IterateState& s) {
    if (s.g_y_prev) return *s.g_y_prev;
    if (s.k == 0) return require_vec(s.g_y, "G y_0");
    throw DataError("trace point is missing G y_{k-1}");
}

double lyapunov_form(const Vector& g_prev, const Vector& x, const Vector& v, const LyapunovCoeffs& c,
                     const Vector& y_star) {
    if (y_star.size() != x.size()) throw DataError("reference solution dimension mismatch");
    return c.a * g_prev.squaredNorm() + c.b * g_prev.dot(x - v) +
           (x + c.t * (v - x) - y_star).squaredNorm() + c.mu * (x - y_star).squaredNorm();
}

}  // namespace

double lyapunov_L(const IterateState& s, double p, double q, double L) {
    const Vector& g = require_vec(s.g_y, "G y_k");
    return (p / L) * g.squaredNorm() + q * g.dot(s.y - s.y0);
}

double lyapunov_V(const IterateState& s, const LyapunovCoeffs& c, const Vector& y_star) {
    return lyapunov_form(previous_g_y(s), s.x, s.y, c, y_star);
}

double lyapunov_Q(const IterateState& s, const LyapunovCoeffs& c, const Vector& y_star) {
    return lyapunov_form(previous_g_y(s), s.x, s.z, c, y_star);
}

double lyapunov_correspondence_gap(const IterateState& at_k, const IterateState& at_k1,
                                   double beta_k, double eta_k, double L, const Vector& y_star,
                                   double q0) {
    const Vector& g = require_vec(at_k.g_y, "G y_k");
    const LyapunovCoeffs h = halpern_coeffs(at_k.k, q0);
    const LyapunovCoeffs c = halpern_to_nesterov_coeffs(at_k.k, beta_k, eta_k, L, q0);
    const Vector x1 = at_k.y - (eta_k / (1.0 - beta_k)) * g;
    const double V1 = lyapunov_form(g, x1, at_k1.y, c, y_star);
    const double Lk = lyapunov_L(at_k, h.p, h.q, L);
    const double rhs = (h.q > 0.0 ? 4.0 * h.p / (L * h.q * h.q) : 0.0) * Lk;
    const double lhs = V1 - (at_k.y0 - y_star).squaredNorm();
    return std::abs(lhs - rhs) / (1.0 + std::abs(V1));
}

double lyapunov_E(const IterateState& s, double sigma, double L, const Vector& y_star, double b0) {
    const Vector& g = require_vec(s.g_y, "G y_k");
    const double kk = static_cast<double>(s.k);
    const double M = L * L * (1.0 + sigma);
    const double r = std::sqrt(2.0 * M);
    const double beta = 1.0 / (kk + 2.0);
    const double eta = (1.0 - beta) / r;
    const double b = b0 * (kk + 1.0);
    const double a = b * eta / (2.0 * beta);
    return a * g.squaredNorm() + b * g.dot(s.y - s.y0) +
           (L * L * b * eta / (2.0 * beta)) * (s.z - s.y).squaredNorm() +
           b0 * r * (s.y0 - y_star).squaredNorm();
}

std::string to_string(BoundKind kind) {
    switch (kind) {
        case BoundKind::halpern_fast: return "halpern_fast";
        case BoundKind::halpern_slow: return "halpern_slow";
        case BoundKind::eag_anchored: return "eag_anchored";
        case BoundKind::eag_constant: return "eag_constant";
        case BoundKind::eag_varying: return "eag_varying";
        case BoundKind::comono: return "comono";
        case BoundKind::peag: return "peag";
    }
    return "unknown";
}

BoundKind parse_bound_kind(const std::string& name) {
    for (auto k : {BoundKind::halpern_fast, BoundKind::halpern_slow, BoundKind::eag_anchored,
                   BoundKind::eag_constant, BoundKind::eag_varying, BoundKind::comono,
                   BoundKind::peag})
        if (to_string(k) == name) return k;
    throw InputError("unknown bound kind: " + name);
}

namespace {

// Squared bound on |G y_k| (and for PEAG on |G y_k|^2 + 2L^2|z_k - y_k|^2).
std::optional<double> squared_bound(const BoundSpec& b, long k) {
    const double kk = static_cast<double>(k);
    const double L = b.L, d2 = b.dist0 * b.dist0;
    switch (b.kind) {
        case BoundKind::halpern_fast: return L * L * d2 / ((kk + 1.0) * (kk + 1.0));
        case BoundKind::halpern_slow: return 4.0 * L * L * d2 / ((kk + 1.0) * (kk + 3.0));
        case BoundKind::eag_anchored: return 4.0 * L * L * d2 / ((kk + 1.0) * (kk + 1.0));
        case BoundKind::eag_constant: {
            const double e = b.eta * L;
            const double C = 4.0 * (1.0 + e + e * e) / (b.eta * b.eta * (1.0 + e));
            return C * d2 / ((kk + 1.0) * (kk + 1.0));
        }
        case BoundKind::eag_varying: {
            const double es = b.eta_limit;
            if (!(es > 0.0)) return std::nullopt;
            const double C = 4.0 * (1.0 + b.eta * es * L * L) / (es * es);
            return C * d2 / ((kk + 1.0) * (kk + 2.0));
        }
        case BoundKind::comono:
            if (k < 1) return std::nullopt;
            return 4.0 * L * L * d2 / ((1.0 + 2.0 * b.rho * L) * kk * kk);
        case BoundKind::peag: {
            const double M = L * L * (1.0 + b.sigma);
            return 2.0 * (1.0 + 4.0 * M) * d2 / ((kk + 1.0) * (kk + 1.0));
        }
    }
    return std::nullopt;
}

void compare(BoundReport& rep, long k, double lhs, double rhs) {
    rep.values.push_back(rhs);
    ++rep.checked;
    const bool bad = lhs > rhs * (1.0 + 1e-9);
    if (rhs > 0.0) rep.worst_excess = std::max(rep.worst_excess, (lhs - rhs) / rhs);
    else if (lhs > 0.0) rep.worst_excess = std::numeric_limits<double>::infinity();
    if (bad) {
        ++rep.violations;
        if (!rep.first_violation) rep.first_violation = k;
    }
}

BoundReport fresh(const std::string& name) {
    BoundReport r;
    r.name = name;
    r.worst_excess = -std::numeric_limits<double>::infinity();
    return r;
}

}  // namespace

std::optional<double> residual_bound(const BoundSpec& spec, long k) {
    auto s = squared_bound(spec, k);
    if (!s) return std::nullopt;
    return std::sqrt(*s);
}

std::vector<BoundReport> bound_check(const RunTrace& trace, const BoundSpec& spec) {
    std::vector<BoundReport> out;
    BoundReport main = fresh(to_string(spec.kind));
    if (spec.kind == BoundKind::eag_varying) {
        main.approximate = true;
        main.flag = "limit stepsize replaced by the last stepsize used";
    }
    BoundReport gz = fresh("peag_gz");
    const double M = spec.L * spec.L * (1.0 + spec.sigma);
    for (const auto& r : trace.records) {
        const auto rhs = squared_bound(spec, r.k);
        if (!rhs) continue;
        if (spec.kind == BoundKind::halpern_fast) {
            compare(main, r.k, r.norm_g_y, std::sqrt(*rhs));
        } else if (spec.kind == BoundKind::peag) {
            if (!r.norm_zy || !r.norm_g_z)
                throw DataError("bound_check: peag bound needs z-iterates in the trace");
            const double lhs = r.norm_g_y * r.norm_g_y + 2.0 * spec.L * spec.L * *r.norm_zy * *r.norm_zy;
            compare(main, r.k, lhs, *rhs);
            const double kk = static_cast<double>(r.k);
            const double rz = 3.0 * (1.0 + 4.0 * M) * spec.dist0 * spec.dist0 / ((kk + 1.0) * (kk + 1.0));
            compare(gz, r.k, *r.norm_g_z * *r.norm_g_z, rz);
        } else {
            compare(main, r.k, r.norm_g_y * r.norm_g_y, *rhs);
        }
    }
    out.push_back(std::move(main));
    if (spec.kind == BoundKind::peag) out.push_back(std::move(gz));
    return out;
}

namespace {

const std::vector<IterateState>& stride_one(const RunTrace& trace, const char* who) {
    if (trace.snapshots.size() != trace.records.size() || trace.snapshots.empty())
        throw DataError(std::string(who) + ": needs stride-1 snapshots");
    return trace.snapshots;
}

void partial_sums(BoundReport& rep, const std::vector<double>& terms, double coeff, double budget) {
    double sum = 0.0;
    for (std::size_t k = 0; k < terms.size(); ++k) {
        sum += coeff * terms[k];
        compare(rep, static_cast<long>(k), sum, budget);
    }
}

}  // namespace

std::vector<BoundReport> summability_check(const RunTrace& trace, double gamma, double omega,
                                           double L, double V0, double mu) {
    const auto& S = stride_one(trace, "summability_check");
    const std::size_t N = S.size();
    auto t_of = [omega](long k) { return (static_cast<double>(k) + 2.0 * omega + 1.0) / omega; };
    auto gy = [](const IterateState& s) -> const Vector& {
        if (!s.g_y) throw DataError("summability_check: snapshot without G y_k");
        return *s.g_y;
    };

    std::vector<double> t1, t2, t3, t4;
    for (std::size_t k = 0; k + 1 < N; ++k) {
        const double t = t_of(static_cast<long>(k));
        const Vector dx = S[k + 1].x - S[k].x;
        t1.push_back((2.0 * t - 1.0 - mu) * dx.squaredNorm());
        const Vector& gk = gy(S[k]);
        const Vector& gprev = k == 0 ? gk : gy(S[k - 1]);
        t3.push_back(t * (t - 1.0) * (gk - gprev).squaredNorm());
        Vector corr = dx;
        if (k > 0) {
            const double theta_prev = static_cast<double>(k) / (static_cast<double>(k) + 2.0 * omega + 1.0);
            corr -= theta_prev * (S[k].x - S[k - 1].x);
        }
        t4.push_back(t * (t - 1.0) * corr.squaredNorm());
    }
    for (std::size_t k = 0; k < N; ++k) t2.push_back(gy(S[k]).squaredNorm());

    std::vector<BoundReport> out;
    const double c1 = mu;
    const double c2 = gamma * (omega - 1.0) / (L * omega);
    const double c3 = 2.0 * gamma * (1.0 - L * gamma) / L;
    const double c4 = gamma * gamma;
    const char* names[] = {"sum_dx", "sum_gy", "sum_dgy", "sum_dx_corrected"};
    const double coeffs[] = {c1, c2, c3, c4};
    const std::vector<double>* terms[] = {&t1, &t2, &t3, &t4};
    for (int i = 0; i < 4; ++i) {
        BoundReport r = fresh(names[i]);
        if (!(coeffs[i] > 0.0)) {
            r.skipped = true;
            r.flag = "nonpositive coefficient: budget not applicable";
            out.push_back(std::move(r));
            continue;
        }
        partial_sums(r, *terms[i], coeffs[i], V0);
        out.push_back(std::move(r));
    }
    return out;
}

BoundReport halpern_summability_check(const RunTrace& trace, double L, double dist0) {
    const auto& S = stride_one(trace, "halpern_summability_check");
    std::vector<double> terms;
    for (std::size_t k = 0; k + 1 < S.size(); ++k) {
        if (!S[k].g_y || !S[k + 1].g_y) throw DataError("halpern_summability_check: missing G y");
        const double kk = static_cast<double>(k);
        terms.push_back((kk + 1.0) * (kk + 2.0) * (*S[k + 1].g_y - *S[k].g_y).squaredNorm());
    }
    BoundReport r = fresh("halpern_summability");
    partial_sums(r, terms, 1.0, 2.0 * L * L * dist0 * dist0);
    return r;
}

BoundReport peag_weighted_sum_check(const RunTrace& trace, double L, double sigma, double E0,
                                    double b0) {
    BoundReport r = fresh("peag_weighted_sum");
    if (!(sigma > 1.0)) {
        r.skipped = true;
        r.flag = "weighted sum only controlled for sigma > 1";
        return r;
    }
    const double M = L * L * (1.0 + sigma);
    const double c = L * L * (sigma - 1.0) * b0 / (2.0 * std::sqrt(2.0 * M));
    std::vector<double> terms;
    for (std::size_t k = 0; k + 1 < trace.records.size(); ++k) {
        const auto& nz = trace.records[k + 1].norm_zy;
        if (!nz) throw DataError("peag_weighted_sum_check: trace lacks |z - y|");
        const double kk = static_cast<double>(k);
        terms.push_back((kk + 1.0) * (kk + 2.0) * *nz * *nz);
    }
    partial_sums(r, terms, c, E0);
    return r;
}

BoundReport decrease_check(std::span<const double> values, const std::string& name, double slack) {
    BoundReport r = fresh(name);
    for (std::size_t k = 0; k + 1 < values.size(); ++k) {
        const double allowed = values[k] + slack * (1.0 + std::abs(values[k]));
        compare(r, static_cast<long>(k + 1), values[k + 1], allowed);
    }
    return r;
}

BoundReport lower_bound_check(std::span<const double> lhs, std::span<const double> rhs,
                              const std::string& name, double slack) {
    if (lhs.size() != rhs.size()) throw InputError("lower_bound_check: length mismatch");
    BoundReport r = fresh(name);
    for (std::size_t k = 0; k < lhs.size(); ++k) {
        r.values.push_back(rhs[k]);
        ++r.checked;
        const double margin = lhs[k] - (rhs[k] - slack);
        r.worst_excess = std::max(r.worst_excess, -margin);
        if (margin < 0.0) {
            ++r.violations;
            if (!r.first_violation) r.first_violation = static_cast<long>(k);
        }
    }
    return r;
}

double equivalence_report(const std::vector<Vector>& a, const std::vector<Vector>& b) {
    if (a.size() != b.size()) throw InputError("equivalence_report: length mismatch");
    double worst = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k].size() != b[k].size()) throw InputError("equivalence_report: dimension mismatch");
        worst = std::max(worst, (a[k] - b[k]).norm() / (1.0 + a[k].norm()));
    }
    return worst;
}

RateReport rate_fit(std::span<const double> series, long k_lo, long k_hi) {
    if (k_lo < 0 || k_hi < k_lo || k_hi >= static_cast<long>(series.size()))
        throw InputError("rate_fit: window outside the series");
    const long n = k_hi - k_lo + 1;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::vector<double> lx, ly;
    for (long k = k_lo; k <= k_hi; ++k) {
        const double v = series[static_cast<std::size_t>(k)];
        if (!(v > 0.0)) throw DataError("rate_fit: nonpositive value at k = " + std::to_string(k));
        const double x = std::log(static_cast<double>(k) + 1.0);
        const double y = std::log(v);
        lx.push_back(x);
        ly.push_back(y);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    RateReport r;
    r.k_lo = k_lo;
    r.k_hi = k_hi;
    const double nn = static_cast<double>(n);
    const double den = nn * sxx - sx * sx;
    r.slope = den > 0.0 ? (nn * sxy - sx * sy) / den : 0.0;
    r.intercept = (sy - r.slope * sx) / nn;
    double ss = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double e = ly[i] - (r.intercept + r.slope * lx[i]);
        ss += e * e;
    }
    r.residual = std::sqrt(ss / nn);
    return r;
}

RateReport rate_fit(std::span<const double> series) {
    if (series.empty()) throw InputError("rate_fit: empty series");
    const long K = static_cast<long>(series.size()) - 1;
    return rate_fit(series, K / 4, K);
}

TrendReport little_o_trend(std::span<const double> norms) {
    if (norms.size() < 11) throw InputError("little_o_trend: series too short");
    const long K = static_cast<long>(norms.size()) - 1;
    auto wmax = [&](long lo, long hi) {
        double m = 0.0;
        for (long k = lo; k <= hi; ++k) {
            const double v = (static_cast<double>(k) + 1.0) * norms[static_cast<std::size_t>(k)];
            m = std::max(m, v * v);
        }
        return m;
    };
    TrendReport t;
    t.early_max = wmax(K / 10, K / 5);
    t.late_max = wmax(K / 2, K);
    return t;
}

}  // namespace anchored
