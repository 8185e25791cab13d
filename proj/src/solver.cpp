#include "anchored/schemes.hpp"

#include <cmath>

namespace anchored {

std::string to_string(ProblemCase c) {
    switch (c) {
        case ProblemCase::cocoercive: return "cocoercive";
        case ProblemCase::inclusion_A: return "inclusion_A";
        case ProblemCase::inclusion_AB: return "inclusion_AB";
        case ProblemCase::inclusion_ABC: return "inclusion_ABC";
    }
    return "unknown";
}

ProblemCase parse_problem_case(const std::string& name) {
    for (auto c : {ProblemCase::cocoercive, ProblemCase::inclusion_A, ProblemCase::inclusion_AB,
                   ProblemCase::inclusion_ABC})
        if (to_string(c) == name) return c;
    throw InputError("unknown problem case: " + name);
}

Solver::Solver(OperatorSpec G, SchemeKind scheme, ScheduleStream schedule,
               std::shared_ptr<const ThreeOperatorResidual> tos)
    : op_(std::move(G)), scheme_(scheme), schedule_(std::move(schedule)), tos_(std::move(tos)) {
    if (schedule_.target() != scheme_)
        throw InputError("solver: schedule stream targets " + to_string(schedule_.target()) +
                         ", scheme is " + to_string(scheme_));
}

const Vector& Solver::residual_at_y(IterateState& s) const {
    if (s.g_y) return *s.g_y;
    if (tos_) {
        ThreeOperatorParts parts = tos_->parts(s.y);
        s.jb = std::move(parts.z);
        s.w = std::move(parts.w);
        s.g_y = std::move(parts.value);
        return *s.g_y;
    }
    return ensure_g_y(s, op_);
}

void Solver::step(IterateState& s) {
    last_ = schedule_.next();
    if (tos_ && scheme_ != SchemeKind::peag && scheme_ != SchemeKind::nag_peag) residual_at_y(s);
    apply_step(scheme_, s, op_, last_);
    guard_state(s);
}

Solver make_solver(ProblemCase problem, const SolverData& data, SchemeKind scheme,
                   ScheduleKind schedule, ScheduleConstants constants) {
    OperatorSpec G;
    std::shared_ptr<const ThreeOperatorResidual> tos;
    switch (problem) {
        case ProblemCase::cocoercive:
            if (!data.op) throw InputError("make_solver: cocoercive case needs an operator");
            G = *data.op;
            break;
        case ProblemCase::inclusion_A:
            G = yosida(data.splitting.A, data.splitting.lambda);
            if (G.dim == 0) G.dim = data.dim;
            if (G.dim == 0) throw InputError("make_solver: set the dimension for this A");
            break;
        case ProblemCase::inclusion_AB:
            if (!std::holds_alternative<OperatorSpec>(data.splitting.B))
                throw InputError("make_solver: forward-backward reduction needs single-valued B");
            G = fb_residual(data.splitting);
            break;
        case ProblemCase::inclusion_ABC:
            tos = std::make_shared<const ThreeOperatorResidual>(data.splitting);
            G = tos->spec();
            break;
    }
    if (!constants.L) {
        if (G.cocoercivity && *G.cocoercivity > 0.0)
            constants.L = 1.0 / *G.cocoercivity;
        else if (G.lipschitz && *G.lipschitz > 0.0)
            constants.L = *G.lipschitz;
        else
            throw InputError("make_solver: operator carries no usable constant; set L");
    }
    ScheduleStream stream(schedule, constants, scheme);
    return Solver(std::move(G), scheme, std::move(stream), std::move(tos));
}

namespace {

bool has_x(SchemeKind s) {
    return s == SchemeKind::nesterov || s == SchemeKind::nag_eag || s == SchemeKind::nag_comono;
}

bool has_z(SchemeKind s) {
    return s == SchemeKind::eag || s == SchemeKind::nag_eag || s == SchemeKind::comono_eag ||
           s == SchemeKind::nag_comono || s == SchemeKind::peag || s == SchemeKind::nag_peag;
}

const Vector& x_of(const IterateState& s, SchemeKind scheme) {
    return scheme == SchemeKind::nag_peag ? s.xhat : s.x;
}

}  // namespace

RunTrace run(Solver& solver, const Vector& y0, long K, const TraceOptions& opts) {
    if (K < 0) throw InputError("run: K must be nonnegative");
    if (y0.size() != solver.op().dim) throw InputError("run: y0 dimension mismatch");
    RunTrace trace;
    trace.meta.scheme = to_string(solver.scheme());
    trace.meta.schedule = to_string(solver.schedule().kind());
    trace.meta.L = solver.schedule().constants().L.value_or(0.0);
    trace.meta.dim = y0.size();

    const SchemeKind scheme = solver.scheme();
    const bool xs = has_x(scheme) || scheme == SchemeKind::nag_peag;
    IterateState s = IterateState::start(y0);

    auto record = [&]() {
        TraceRecord r;
        r.k = s.k;
        r.norm_g_y = solver.residual_at_y(s).norm();
        if (xs) {
            const Vector& x = x_of(s, scheme);
            r.norm_yx = (s.y - x).norm();
            if (opts.record_g_x) r.norm_g_x = solver.eval(x).norm();
        } else if (opts.record_g_x) {
            r.norm_g_x = r.norm_g_y;
        }
        if (has_z(scheme)) {
            if (!s.g_z) s.g_z = solver.eval(s.z);
            r.norm_g_z = s.g_z->norm();
            r.norm_zy = (s.z - s.y).norm();
        }
        for (std::size_t i = 0; i < opts.probes.size(); ++i) {
            const double v = opts.probes[i].second(s);
            r.lyapunov[opts.probes[i].first] = v;
            if (i == 0) r.lyapunov_main = v;
        }
        if (opts.bound) r.bound = opts.bound(s.k);
        if (opts.snapshot_stride > 0 && s.k % opts.snapshot_stride == 0) trace.snapshots.push_back(s);
        if (opts.keep_iterates) {
            trace.ys.push_back(s.y);
            trace.zs.push_back(s.z);
            trace.xs.push_back(x_of(s, scheme));
        }
        trace.records.push_back(std::move(r));
    };

    try {
        record();
        for (long k = 0; k < K; ++k) {
            const Vector x_before = x_of(s, scheme);
            const Vector y_before = s.y;
            solver.step(s);
            TraceRecord& prev = trace.records.back();
            prev.norm_dy = (s.y - y_before).norm();
            if (xs) prev.norm_dx = (x_of(s, scheme) - x_before).norm();
            record();
        }
    } catch (const NumericError& e) {
        trace.error = e.what();
        trace.error_step = e.step() ? e.step() : std::optional<long>(s.k);
    }
    return trace;
}

}  // namespace anchored
