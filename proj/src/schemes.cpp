#include "anchored/schemes.hpp"

#include <cmath>

namespace anchored {

IterateState IterateState::start(const Vector& y0) {
    IterateState s;
    s.k = 0;
    s.y0 = y0;
    s.x = s.x_prev = y0;
    s.xhat = s.xhat_prev = y0;
    s.y = s.y_prev = y0;
    s.z = s.z_prev = s.z_prev2 = y0;
    s.w = y0;
    s.jb = y0;
    return s;
}

const Vector& ensure_g_y(IterateState& s, const OperatorSpec& G) {
    if (!s.g_y) s.g_y = G(s.y);
    return *s.g_y;
}

const Vector& ensure_g_z(IterateState& s, const OperatorSpec& G) {
    if (!s.g_z) s.g_z = G(s.z);
    return *s.g_z;
}

namespace {

void check_finite(const Vector& v, long k, const char* what) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double a = v[i];
        if (!std::isfinite(a) || std::abs(a) > 1e30)
            throw NumericError(std::string("divergence in ") + what + " at step " + std::to_string(k),
                               k);
    }
}

// Moves y to y_prev and installs the new y, carrying G y_k into g_y_prev.
void shift_y(IterateState& s, Vector y_new) {
    s.g_y_prev = std::move(s.g_y);
    s.g_y.reset();
    s.y_prev = std::move(s.y);
    s.y = std::move(y_new);
}

void shift_x(IterateState& s, Vector x_new) {
    s.x_prev = std::move(s.x);
    s.x = std::move(x_new);
}

void shift_z(IterateState& s, Vector z_new, std::optional<Vector> gz_new) {
    s.z_prev2 = std::move(s.z_prev);
    s.z_prev = std::move(s.z);
    s.z = std::move(z_new);
    s.g_z_prev = std::move(s.g_z);
    s.g_z = std::move(gz_new);
}

}  // namespace

void guard_state(const IterateState& s) {
    check_finite(s.y, s.k, "y");
    check_finite(s.x, s.k, "x");
    check_finite(s.z, s.k, "z");
    check_finite(s.xhat, s.k, "x-hat");
}

void halpern_step(IterateState& s, const OperatorSpec& G, const ScheduleParams& p) {
    const double beta = require(p.beta, "beta");
    const double eta = require(p.eta, "eta");
    const Vector& g = ensure_g_y(s, G);
    check_finite(g, s.k, "G y");
    Vector y_new = beta * s.y0 + (1.0 - beta) * s.y - eta * g;
    shift_y(s, std::move(y_new));
    ++s.k;
    check_finite(s.y, s.k, "y");
}

void nesterov_step_two_corr(IterateState& s, const OperatorSpec& G, const ScheduleParams& p) {
    const double gamma = require(p.gamma, "gamma");
    const double theta = require(p.theta, "theta");
    const double nu = require(p.nu, "nu");
    const double kappa = p.kappa.value_or(0.0);
    const Vector& g = ensure_g_y(s, G);
    check_finite(g, s.k, "G y");
    Vector x_new = s.y - gamma * g;
    Vector y_new = x_new + theta * (x_new - s.x) + nu * (s.y - x_new);
    if (kappa != 0.0) y_new += kappa * (s.y_prev - s.x);
    shift_x(s, std::move(x_new));
    shift_y(s, std::move(y_new));
    ++s.k;
    check_finite(s.y, s.k, "y");
}

void eag_step(IterateState& s, const OperatorSpec& G, const ScheduleParams& p) {
    const double beta = require(p.beta, "beta");
    const double eta = require(p.eta, "eta");
    const double eta_hat = require(p.eta_hat, "eta_hat");
    const Vector& g = ensure_g_y(s, G);
    check_finite(g, s.k, "G y");
    const Vector anchor = beta * s.y0 + (1.0 - beta) * s.y;
    Vector z_new = anchor - eta * g;
    Vector gz = G(z_new);
    check_finite(gz, s.k, "G z");
    Vector y_new = anchor - eta_hat * gz;
    shift_z(s, std::move(z_new), std::move(gz));
    shift_y(s, std::move(y_new));
    ++s.k;
    check_finite(s.y, s.k, "y");
}

void nag_eag_step(IterateState& s, const OperatorSpec& G, const ScheduleParams& p) {
    const double gamma = require(p.gamma, "gamma");
    const double eta = require(p.eta, "eta");
    const double eta_hat = require(p.eta_hat, "eta_hat");
    const double theta = require(p.theta, "theta");
    const double nu = require(p.nu, "nu");
    const Vector& g = ensure_g_y(s, G);
    check_finite(g, s.k, "G y");
    Vector x_new = s.y - gamma * g;
    Vector z_new = x_new + theta * (x_new - s.x) + nu * (s.z - x_new);
    Vector gz = G(z_new);
    check_finite(gz, s.k, "G z");
    Vector y_new = z_new - eta_hat * gz + eta * g;
    shift_x(s, std::move(x_new));
    shift_z(s, std::move(z_new), std::move(gz));
    shift_y(s, std::move(y_new));
    ++s.k;
    check_finite(s.y, s.k, "y");
}

namespace {

double checked_rho(const ScheduleParams& p) {
    const double rho = require(p.rho, "rho");
    if (p.L) {
        const double L = *p.L;
        if (!(rho > -1.0 / (2.0 * L)) || rho > 1.0 / L)
            throw InputError("co-monotone step: rho must lie in (-1/(2L), 1/L]");
    }
    return rho;
}

}  // namespace

void comono_eag_step(IterateState& s, const OperatorSpec& G, const ScheduleParams& p) {
    const double beta = require(p.beta, "beta");
    const double eta = require(p.eta, "eta");
    const double rho = checked_rho(p);
    const Vector& g = ensure_g_y(s, G);
    check_finite(g, s.k, "G y");
    const Vector anchor = beta * s.y0 + (1.0 - beta) * s.y;
    Vector z_new = anchor - (1.0 - beta) * (2.0 * rho + eta) * g;
    Vector gz = G(z_new);
    check_finite(gz, s.k, "G z");
    Vector y_new = anchor - 2.0 * rho * (1.0 - beta) * g - eta * gz;
    shift_z(s, std::move(z_new), std::move(gz));
    shift_y(s, std::move(y_new));
    ++s.k;
    check_finite(s.y, s.k, "y");
}

void nag_comono_step(IterateState& s, const OperatorSpec& G, const ScheduleParams& p) {
    const double beta = require(p.beta, "beta");
    const double eta = require(p.eta, "eta");
    const double theta = require(p.theta, "theta");
    const double nu = require(p.nu, "nu");
    const double rho = checked_rho(p);
    const Vector& g = ensure_g_y(s, G);
    check_finite(g, s.k, "G y");
    Vector x_new = s.y - (eta + 2.0 * rho) * g;
    Vector z_new = x_new + theta * (x_new - s.x) + nu * (s.z - x_new);
    Vector gz = G(z_new);
    check_finite(gz, s.k, "G z");
    Vector y_new = z_new - eta * (gz - (1.0 - beta) * g);
    shift_x(s, std::move(x_new));
    shift_z(s, std::move(z_new), std::move(gz));
    shift_y(s, std::move(y_new));
    ++s.k;
    check_finite(s.y, s.k, "y");
}

void peag_step(IterateState& s, const OperatorSpec& G, const ScheduleParams& p) {
    const double beta = require(p.beta, "beta");
    const double eta = require(p.eta, "eta");
    const double eta_hat = require(p.eta_hat, "eta_hat");
    const Vector& gz_k = ensure_g_z(s, G);
    check_finite(gz_k, s.k, "G z");
    const Vector anchor = beta * s.y0 + (1.0 - beta) * s.y;
    Vector z_new = anchor - eta * gz_k;
    Vector gz = G(z_new);
    check_finite(gz, s.k, "G z");
    Vector y_new = anchor - eta_hat * gz;
    shift_z(s, std::move(z_new), std::move(gz));
    shift_y(s, std::move(y_new));
    ++s.k;
    check_finite(s.y, s.k, "y");
}

void nag_peag_step(IterateState& s, const OperatorSpec& G, const ScheduleParams& p) {
    const double gamma_hat = require(p.gamma_hat, "gamma_hat");
    const double theta = require(p.theta, "theta");
    const double nu = require(p.nu, "nu");
    const double kappa = require(p.kappa, "kappa");
    const double zeta = require(p.zeta, "zeta");
    const Vector gz_k = ensure_g_z(s, G);
    check_finite(gz_k, s.k, "G z");
    Vector xhat_new = s.z - gamma_hat * gz_k;
    Vector z_new = xhat_new + theta * (xhat_new - s.xhat) + nu * (s.z - xhat_new) +
                   kappa * (s.z_prev - s.xhat) - zeta * (s.z_prev2 - s.xhat_prev);
    Vector gz = G(z_new);
    check_finite(gz, s.k, "G z");
    Vector y_new;
    if (p.eta && p.eta_hat)
        y_new = z_new - *p.eta_hat * gz + *p.eta * gz_k;
    else
        y_new = z_new;
    s.xhat_prev = std::move(s.xhat);
    s.xhat = std::move(xhat_new);
    shift_z(s, std::move(z_new), std::move(gz));
    shift_y(s, std::move(y_new));
    if (!(p.eta && p.eta_hat)) s.g_y = s.g_z;
    ++s.k;
    check_finite(s.z, s.k, "z");
}

void apply_step(SchemeKind scheme, IterateState& s, const OperatorSpec& G, const ScheduleParams& p) {
    switch (scheme) {
        case SchemeKind::halpern: return halpern_step(s, G, p);
        case SchemeKind::nesterov: return nesterov_step_two_corr(s, G, p);
        case SchemeKind::eag: return eag_step(s, G, p);
        case SchemeKind::nag_eag: return nag_eag_step(s, G, p);
        case SchemeKind::comono_eag: return comono_eag_step(s, G, p);
        case SchemeKind::nag_comono: return nag_comono_step(s, G, p);
        case SchemeKind::peag: return peag_step(s, G, p);
        case SchemeKind::nag_peag: return nag_peag_step(s, G, p);
    }
}

}  // namespace anchored
