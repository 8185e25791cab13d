#include "anchored/schedules.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace anchored {

double require(const std::optional<double>& field, const char* name) {
    if (!field) throw InputError(std::string("missing schedule parameter: ") + name);
    return *field;
}

namespace {

const std::vector<std::pair<ScheduleKind, const char*>>& schedule_names() {
    static const std::vector<std::pair<ScheduleKind, const char*>> names = {
        {ScheduleKind::halpern_fast, "halpern_fast"},
        {ScheduleKind::halpern_slow, "halpern_slow"},
        {ScheduleKind::halpern_corollary2, "halpern_corollary2"},
        {ScheduleKind::nesterov_corollary1_a, "nesterov_corollary1_a"},
        {ScheduleKind::nesterov_corollary1_b, "nesterov_corollary1_b"},
        {ScheduleKind::nesterov_theorem3, "nesterov_theorem3"},
        {ScheduleKind::eag_constant, "eag_constant"},
        {ScheduleKind::eag_varying, "eag_varying"},
        {ScheduleKind::comono_eag, "comono_eag"},
        {ScheduleKind::peag_theorem7, "peag_theorem7"},
        {ScheduleKind::peag_legacy, "peag_legacy"},
        {ScheduleKind::nag_eag, "nag_eag"},
        {ScheduleKind::nag_comono, "nag_comono"},
        {ScheduleKind::nag_peag, "nag_peag"},
    };
    return names;
}

const std::vector<std::pair<SchemeKind, const char*>>& scheme_names() {
    static const std::vector<std::pair<SchemeKind, const char*>> names = {
        {SchemeKind::halpern, "halpern"},       {SchemeKind::nesterov, "nesterov"},
        {SchemeKind::eag, "eag"},               {SchemeKind::nag_eag, "nag_eag"},
        {SchemeKind::comono_eag, "comono_eag"}, {SchemeKind::nag_comono, "nag_comono"},
        {SchemeKind::peag, "peag"},             {SchemeKind::nag_peag, "nag_peag"},
    };
    return names;
}

void require_positive_L(double L) {
    if (!(L > 0.0)) throw InputError("schedule: L must be positive");
}

void require_index(long k) {
    if (k < 0) throw InputError("schedule: k must be nonnegative");
}

bool is_halpern(ScheduleKind kind) {
    return kind == ScheduleKind::halpern_fast || kind == ScheduleKind::halpern_slow ||
           kind == ScheduleKind::halpern_corollary2;
}

bool is_peag(ScheduleKind kind) {
    return kind == ScheduleKind::peag_theorem7 || kind == ScheduleKind::peag_legacy;
}

}  // namespace

std::string to_string(ScheduleKind kind) {
    for (const auto& [k, n] : schedule_names())
        if (k == kind) return n;
    return "unknown";
}

std::string to_string(SchemeKind kind) {
    for (const auto& [k, n] : scheme_names())
        if (k == kind) return n;
    return "unknown";
}

ScheduleKind parse_schedule_kind(const std::string& name) {
    for (const auto& [k, n] : schedule_names())
        if (name == n) return k;
    throw InputError("unknown schedule kind: " + name);
}

SchemeKind parse_scheme_kind(const std::string& name) {
    for (const auto& [k, n] : scheme_names())
        if (name == n) return k;
    throw InputError("unknown scheme kind: " + name);
}

const std::vector<ScheduleKind>& all_schedule_kinds() {
    static const std::vector<ScheduleKind> kinds = [] {
        std::vector<ScheduleKind> out;
        for (const auto& [k, n] : schedule_names()) out.push_back(k);
        return out;
    }();
    return kinds;
}

SchemeKind scheme_for(ScheduleKind kind) {
    switch (kind) {
        case ScheduleKind::halpern_fast:
        case ScheduleKind::halpern_slow:
        case ScheduleKind::halpern_corollary2: return SchemeKind::halpern;
        case ScheduleKind::nesterov_corollary1_a:
        case ScheduleKind::nesterov_corollary1_b:
        case ScheduleKind::nesterov_theorem3: return SchemeKind::nesterov;
        case ScheduleKind::eag_constant:
        case ScheduleKind::eag_varying: return SchemeKind::eag;
        case ScheduleKind::comono_eag: return SchemeKind::comono_eag;
        case ScheduleKind::peag_theorem7:
        case ScheduleKind::peag_legacy: return SchemeKind::peag;
        case ScheduleKind::nag_eag: return SchemeKind::nag_eag;
        case ScheduleKind::nag_comono: return SchemeKind::nag_comono;
        case ScheduleKind::nag_peag: return SchemeKind::nag_peag;
    }
    return SchemeKind::halpern;
}

bool compatible(SchemeKind scheme, ScheduleKind kind) {
    if (scheme_for(kind) == scheme) return true;
    if (scheme == SchemeKind::nesterov && is_halpern(kind)) return true;
    if (scheme == SchemeKind::nag_peag && is_peag(kind)) return true;
    if (scheme == SchemeKind::eag && kind == ScheduleKind::nag_eag) return true;
    if (scheme == SchemeKind::comono_eag && kind == ScheduleKind::nag_comono) return true;
    return false;
}

ScheduleParams halpern_schedule(long k, double L, HalpernVariant variant) {
    require_index(k);
    require_positive_L(L);
    ScheduleParams p;
    p.k = k;
    p.L = L;
    const double beta = 1.0 / static_cast<double>(k + 2);
    p.beta = beta;
    p.eta = (variant == HalpernVariant::fast ? 2.0 : 1.0) * (1.0 - beta) / L;
    return p;
}

ScheduleParams halpern_omega_schedule(long k, double L, double gamma, double omega) {
    require_index(k);
    require_positive_L(L);
    if (!(gamma > 0.0) || !(gamma < 1.0 / L))
        throw InputError("halpern_corollary2: gamma must lie in (0, 1/L)");
    if (!(omega >= 1.0)) throw InputError("halpern_corollary2: omega must be at least 1");
    ScheduleParams p;
    p.k = k;
    p.L = L;
    p.omega = omega;
    const double beta = (omega + 1.0) / (static_cast<double>(k) + 2.0 * omega + 2.0);
    p.beta = beta;
    p.eta = gamma * (1.0 - beta);
    p.gamma = gamma;
    if (omega <= 2.0) p.note = "omega <= 2: rate guarantee requires omega > 2";
    return p;
}

ScheduleParams nesterov_halpern_schedule(long k, double L, HalpernVariant variant) {
    ScheduleParams p = halpern_schedule(k, L, variant);
    const double kk = static_cast<double>(k);
    p.gamma = 1.0 / L;
    p.theta = kk / (kk + 2.0);
    if (variant == HalpernVariant::slow) {
        p.nu = (kk + 1.0) / (kk + 2.0);
        p.kappa = 0.0;
    } else {
        p.nu = 0.0;
        p.kappa = kk / (kk + 2.0);
    }
    return p;
}

ScheduleParams nesterov_omega_schedule(long k, double omega) {
    require_index(k);
    if (!(omega >= 1.0)) throw InputError("nesterov_theorem3: omega must be at least 1");
    ScheduleParams p;
    p.k = k;
    p.omega = omega;
    p.mu = 1.0;
    const double kk = static_cast<double>(k);
    p.t = (kk + 2.0 * omega + 1.0) / omega;
    p.theta = (kk + 1.0) / (kk + 2.0 * omega + 2.0);
    p.nu = (kk + omega + 2.0) / (kk + 2.0 * omega + 2.0);
    p.kappa = 0.0;
    if (omega <= 2.0) p.note = "omega <= 2: rate guarantee requires omega > 2";
    return p;
}

ScheduleParams transform_step(const ScheduleParams* prev, const ScheduleParams& cur) {
    const double beta = require(cur.beta, "beta");
    const double eta = require(cur.eta, "eta");
    const double gamma = require(cur.gamma, "gamma");
    if (!(gamma > 0.0)) throw InputError("transform: gamma must be positive");
    ScheduleParams out = cur;
    if (!prev) {
        out.theta = 0.0;
        out.kappa = 0.0;
        out.nu = 1.0 - eta / gamma;
        return out;
    }
    const double bp = require(prev->beta, "beta");
    const double ep = require(prev->eta, "eta");
    const double gp = require(prev->gamma, "gamma");
    if (bp == 0.0) throw InputError("transform: beta_{k-1} = 0");
    out.theta = beta * (1.0 - bp) / bp;
    out.nu = beta / bp + 1.0 - beta - eta / gamma;
    out.kappa = (beta / bp) * (ep / gp - 1.0 + bp);
    return out;
}

std::vector<ScheduleParams> transform_halpern_to_nesterov(std::span<const double> beta,
                                                          std::span<const double> eta,
                                                          std::span<const double> gamma) {
    if (beta.size() != eta.size() || beta.size() != gamma.size())
        throw InputError("transform: sequences differ in length");
    std::vector<ScheduleParams> out;
    out.reserve(beta.size());
    std::optional<ScheduleParams> prev;
    for (std::size_t k = 0; k < beta.size(); ++k) {
        if (!(beta[k] > 0.0 && beta[k] < 1.0))
            throw InputError("transform: beta_k must lie in (0, 1)");
        ScheduleParams cur;
        cur.k = static_cast<long>(k);
        cur.beta = beta[k];
        cur.eta = eta[k];
        cur.gamma = gamma[k];
        out.push_back(transform_step(prev ? &*prev : nullptr, cur));
        prev = cur;
    }
    return out;
}

ScheduleParams eag_constant(long k, double L, double eta) {
    require_index(k);
    require_positive_L(L);
    if (!(eta > 0.0) || eta > 1.0 / (8.0 * L))
        throw InputError("eag_constant: eta must lie in (0, 1/(8L)]");
    ScheduleParams p;
    p.k = k;
    p.L = L;
    p.beta = 1.0 / static_cast<double>(k + 2);
    p.eta = eta;
    p.eta_hat = eta;
    return p;
}

double eag_varying_next(long k, double L, double eta_k) {
    const double s = L * L * eta_k * eta_k;
    const double kk = static_cast<double>(k);
    return (1.0 - s / ((1.0 - s) * (kk + 1.0) * (kk + 3.0))) * eta_k;
}

ScheduleParams eag_varying(long k, double L, double eta0) {
    require_index(k);
    require_positive_L(L);
    if (!(eta0 > 0.0) || !(eta0 < 1.0 / L))
        throw InputError("eag_varying: eta0 must lie in (0, 1/L)");
    double eta = eta0;
    for (long j = 0; j < k; ++j) eta = eag_varying_next(j, L, eta);
    ScheduleParams p;
    p.k = k;
    p.L = L;
    p.beta = 1.0 / static_cast<double>(k + 2);
    p.eta = eta;
    p.eta_hat = eta;
    return p;
}

ScheduleParams nag_eag_schedule(long k, double L) {
    require_index(k);
    require_positive_L(L);
    const double kk = static_cast<double>(k);
    ScheduleParams p;
    p.k = k;
    p.L = L;
    p.mu = 0.0;
    p.beta = 1.0 / (kk + 2.0);
    p.t = kk + 1.0;
    p.gamma = 1.0 / L;
    p.eta_hat = 1.0 / L;
    p.eta = (kk + 1.0) / (L * (kk + 2.0));
    p.theta = kk / (kk + 2.0);
    p.nu = (kk + 1.0) / (kk + 2.0);
    p.b = kk * (kk + 1.0) / L;
    p.a = kk * (kk + 2.0) / (2.0 * L * L);
    return p;
}

ScheduleParams comono_schedule(long k, double L, double rho) {
    require_index(k);
    require_positive_L(L);
    if (!(rho > -1.0 / (2.0 * L)) || rho > 1.0 / L)
        throw InputError("comono_schedule: rho must lie in (-1/(2L), 1/L]");
    ScheduleParams p;
    p.k = k;
    p.L = L;
    p.rho = rho;
    p.beta = 1.0 / static_cast<double>(k + 1);
    p.eta = 1.0 / L;
    p.eta_hat = 1.0 / L;
    p.tau = 1.0 / (1.0 + 2.0 * rho * L);
    return p;
}

ScheduleParams nag_comono_schedule(long k, double L, double rho) {
    ScheduleParams p = comono_schedule(k, L, rho);
    const double kk = static_cast<double>(k);
    if (k == 0) {
        p.theta = 0.0;
        p.nu = 1.0;
    } else {
        p.theta = (kk - 1.0) / (kk + 1.0);
        p.nu = kk / (kk + 1.0);
    }
    p.gamma = *p.eta + 2.0 * rho;
    return p;
}

ScheduleParams peag_schedule(long k, double L, double sigma) {
    require_index(k);
    require_positive_L(L);
    if (!(sigma > 0.0)) throw InputError("peag_theorem7: sigma must be positive");
    const double M = L * L * (1.0 + sigma);
    const double beta = 1.0 / static_cast<double>(k + 2);
    ScheduleParams p;
    p.k = k;
    p.L = L;
    p.sigma = sigma;
    p.M = M;
    p.beta = beta;
    p.eta = (1.0 - beta) / std::sqrt(2.0 * M);
    p.eta_hat = 1.0 / std::sqrt(2.0 * M);
    return p;
}

double peag_legacy_next(long k, double L, double eta_k) {
    const double b = 1.0 / static_cast<double>(k + 2);
    const double b1 = 1.0 / static_cast<double>(k + 3);
    const double s = 2.0 * L * L * eta_k * eta_k;
    return (1.0 - b * b - s) * b1 * eta_k / ((1.0 - s) * (1.0 - b) * b);
}

ScheduleParams peag_legacy(long k, double L, double eta0) {
    require_index(k);
    require_positive_L(L);
    if (!(eta0 > 0.0) || !(eta0 < 1.0 / (2.0 * L)))
        throw InputError("peag_legacy: eta0 must lie in (0, 1/(2L))");
    double eta = eta0;
    for (long j = 0; j < k; ++j) eta = peag_legacy_next(j, L, eta);
    ScheduleParams p;
    p.k = k;
    p.L = L;
    p.beta = 1.0 / static_cast<double>(k + 2);
    p.eta = eta;
    p.eta_hat = eta;
    return p;
}

ScheduleParams peag_transform(long k, const std::function<ScheduleParams(long)>& base) {
    require_index(k);
    const ScheduleParams cur = base(k);
    const double beta = require(cur.beta, "beta");
    const double eta = require(cur.eta, "eta");

    struct Steps {
        double beta, eta, eta_hat, gamma_hat;
    };
    // gamma_hat_j = eta_hat_{j-1} + eta_j/(1 - beta_j), with eta_hat_{-1} = 0
    auto steps = [&](long j) {
        const ScheduleParams p = j == k ? cur : base(j);
        const double b = require(p.beta, "beta");
        const double e = require(p.eta, "eta");
        const double eh = require(p.eta_hat, "eta_hat");
        double prev_eh = 0.0;
        if (j > 0) prev_eh = require(base(j - 1).eta_hat, "eta_hat");
        return Steps{b, e, eh, prev_eh + e / (1.0 - b)};
    };

    ScheduleParams out = cur;
    const Steps s0 = steps(k);
    out.gamma_hat = s0.gamma_hat;
    if (k == 0) {
        out.theta = 0.0;
        out.nu = beta;
        out.kappa = 0.0;
        out.zeta = 0.0;
        return out;
    }
    const Steps s1 = steps(k - 1);
    const double theta = beta * (1.0 - s1.beta) / s1.beta;
    out.theta = theta;
    out.nu = beta / s1.beta;
    out.kappa = (1.0 - beta) * s1.eta / s1.gamma_hat;
    if (k >= 2) {
        const Steps s2 = steps(k - 2);
        out.zeta = theta * s2.eta / s2.gamma_hat;
    } else {
        out.zeta = 0.0;
    }
    (void)eta;
    return out;
}

ScheduleParams nag_peag_schedule(long k, double L, double sigma) {
    return peag_transform(k, [L, sigma](long j) { return peag_schedule(j, L, sigma); });
}

ScheduleParams nag_peag_closed_form(long k, double L) {
    ScheduleParams p = peag_schedule(k, L, 1.0);
    const double kk = static_cast<double>(k);
    p.gamma_hat = 1.0 / L;
    p.theta = kk / (kk + 2.0);
    p.nu = (kk + 1.0) / (kk + 2.0);
    p.kappa = kk / (2.0 * (kk + 2.0));
    p.zeta = k >= 1 ? (kk - 1.0) / (2.0 * (kk + 2.0)) : 0.0;
    return p;
}

ScheduleStream::ScheduleStream(ScheduleKind kind, ScheduleConstants constants)
    : ScheduleStream(kind, std::move(constants), scheme_for(kind)) {}

ScheduleStream::ScheduleStream(ScheduleKind kind, ScheduleConstants constants, SchemeKind target)
    : kind_(kind), target_(target), c_(std::move(constants)) {
    if (!compatible(target, kind))
        throw InputError("schedule " + to_string(kind) + " cannot drive scheme " +
                         to_string(target));
    if (!c_.L) throw InputError("schedule: L is required");
    require_positive_L(*c_.L);
    const double L = *c_.L;
    if (kind == ScheduleKind::eag_varying) {
        eta_state_ = c_.eta0.value_or(0.5 / L);
        eag_varying(0, L, eta_state_);  // validates
    } else if (kind == ScheduleKind::peag_legacy) {
        eta_state_ = c_.eta0.value_or(0.25 / L);
        peag_legacy(0, L, eta_state_);
    }
}

ScheduleParams ScheduleStream::base(long k) {
    const double L = *c_.L;
    switch (kind_) {
        case ScheduleKind::halpern_fast: return halpern_schedule(k, L, HalpernVariant::fast);
        case ScheduleKind::halpern_slow: return halpern_schedule(k, L, HalpernVariant::slow);
        case ScheduleKind::halpern_corollary2:
            return halpern_omega_schedule(k, L, c_.gamma.value_or(0.9 / L), c_.omega);
        case ScheduleKind::nesterov_corollary1_a:
            return nesterov_halpern_schedule(k, L, HalpernVariant::slow);
        case ScheduleKind::nesterov_corollary1_b:
            return nesterov_halpern_schedule(k, L, HalpernVariant::fast);
        case ScheduleKind::nesterov_theorem3: {
            ScheduleParams p = nesterov_omega_schedule(k, c_.omega);
            p.gamma = c_.gamma.value_or(0.9 / L);
            if (!(*p.gamma > 0.0)) throw InputError("nesterov_theorem3: gamma must be positive");
            p.L = L;
            return p;
        }
        case ScheduleKind::eag_constant: return eag_constant(k, L, c_.eta.value_or(1.0 / (8.0 * L)));
        case ScheduleKind::eag_varying: {
            ScheduleParams p;
            p.k = k;
            p.L = L;
            p.beta = 1.0 / static_cast<double>(k + 2);
            p.eta = eta_state_;
            p.eta_hat = eta_state_;
            eta_state_ = eag_varying_next(k, L, eta_state_);
            return p;
        }
        case ScheduleKind::comono_eag: return comono_schedule(k, L, c_.rho);
        case ScheduleKind::peag_theorem7: return peag_schedule(k, L, c_.sigma);
        case ScheduleKind::peag_legacy: {
            ScheduleParams p;
            p.k = k;
            p.L = L;
            p.beta = 1.0 / static_cast<double>(k + 2);
            p.eta = eta_state_;
            p.eta_hat = eta_state_;
            eta_state_ = peag_legacy_next(k, L, eta_state_);
            return p;
        }
        case ScheduleKind::nag_eag: return nag_eag_schedule(k, L);
        case ScheduleKind::nag_comono: return nag_comono_schedule(k, L, c_.rho);
        case ScheduleKind::nag_peag:
            return c_.closed_form ? nag_peag_closed_form(k, L) : nag_peag_schedule(k, L, c_.sigma);
    }
    throw InputError("schedule: unknown kind");
}

ScheduleParams ScheduleStream::next() {
    const long k = k_++;
    ScheduleParams b = base(k);
    if (target_ == SchemeKind::nesterov && is_halpern(kind_)) {
        const double beta = require(b.beta, "beta");
        if (c_.gamma && kind_ != ScheduleKind::halpern_corollary2)
            b.gamma = *c_.gamma;
        else
            b.gamma = require(b.eta, "eta") / (1.0 - beta);
        ScheduleParams out = transform_step(history_.empty() ? nullptr : &history_.back(), b);
        history_.assign(1, b);
        return out;
    }
    if (target_ == SchemeKind::nag_peag && is_peag(kind_)) {
        history_.push_back(b);
        if (history_.size() > 4) history_.erase(history_.begin());
        const long first = k - static_cast<long>(history_.size()) + 1;
        return peag_transform(k, [&](long j) {
            if (j < first) throw InputError("schedule stream: history exhausted");
            return history_[static_cast<std::size_t>(j - first)];
        });
    }
    return b;
}

}  // namespace anchored
