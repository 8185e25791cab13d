#pragma once

#include "anchored/operators.hpp"
#include "anchored/residuals.hpp"
#include "anchored/schedules.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace anchored {

/// Sliding window of iterates. At k = 0 every slot holds y0.
struct IterateState {
    long k = 0;
    Vector y0;
    Vector x, x_prev;
    Vector xhat, xhat_prev;
    Vector y, y_prev;
    Vector z, z_prev, z_prev2;
    Vector w;   // three-operator intermediate J_A(2 J_B u - u - lambda C J_B u)
    Vector jb;  // three-operator intermediate J_B u
    std::optional<Vector> g_y;       // G y_k
    std::optional<Vector> g_y_prev;  // G y_{k-1}; empty at k = 0 (read as G y_0)
    std::optional<Vector> g_z;       // G z_k
    std::optional<Vector> g_z_prev;  // G z_{k-1}

    static IterateState start(const Vector& y0);
};

const Vector& ensure_g_y(IterateState& s, const OperatorSpec& G);
const Vector& ensure_g_z(IterateState& s, const OperatorSpec& G);

// Steps: each advances the state by one iteration in place.

void halpern_step(IterateState& s, const OperatorSpec& G, const ScheduleParams& p);
void nesterov_step_two_corr(IterateState& s, const OperatorSpec& G, const ScheduleParams& p);
void eag_step(IterateState& s, const OperatorSpec& G, const ScheduleParams& p);
void nag_eag_step(IterateState& s, const OperatorSpec& G, const ScheduleParams& p);
void comono_eag_step(IterateState& s, const OperatorSpec& G, const ScheduleParams& p);
void nag_comono_step(IterateState& s, const OperatorSpec& G, const ScheduleParams& p);
void peag_step(IterateState& s, const OperatorSpec& G, const ScheduleParams& p);
/// Also reconstructs y_{k+1} = z_{k+1} - eta_hat G z_{k+1} + eta G z_k when the
/// parameters carry (eta, eta_hat); otherwise y tracks z.
void nag_peag_step(IterateState& s, const OperatorSpec& G, const ScheduleParams& p);

void apply_step(SchemeKind scheme, IterateState& s, const OperatorSpec& G, const ScheduleParams& p);

/// Throws NumericError if any stored iterate is non-finite or exceeds 1e30.
void guard_state(const IterateState& s);

// Solvers ---------------------------------------------------------------------

enum class ProblemCase { cocoercive, inclusion_A, inclusion_AB, inclusion_ABC };

std::string to_string(ProblemCase c);
ProblemCase parse_problem_case(const std::string& name);

struct SolverData {
    std::optional<OperatorSpec> op;  // cocoercive case
    SplittingSpec splitting;         // inclusion cases
    Eigen::Index dim = 0;            // used when the splitting data does not fix it
};

/// A residual operator bound to a scheme and a parameter stream.
class Solver {
public:
    Solver(OperatorSpec G, SchemeKind scheme, ScheduleStream schedule,
           std::shared_ptr<const ThreeOperatorResidual> tos = nullptr);

    void step(IterateState& s);
    /// Fills s.g_y (and the three-operator intermediates when present).
    const Vector& residual_at_y(IterateState& s) const;
    Vector eval(const Vector& y) const { return op_(y); }

    const OperatorSpec& op() const { return op_; }
    SchemeKind scheme() const { return scheme_; }
    const ScheduleStream& schedule() const { return schedule_; }
    const ScheduleParams& last_params() const { return last_; }
    const ThreeOperatorResidual* three_operator() const { return tos_.get(); }

private:
    OperatorSpec op_;
    SchemeKind scheme_;
    ScheduleStream schedule_;
    std::shared_ptr<const ThreeOperatorResidual> tos_;
    ScheduleParams last_;
};

/// Wires the residual operator of `problem` (G itself, Yosida, forward-backward or
/// three-operator residual) into `scheme`. When constants.L is empty it is set to
/// the inverse co-coercivity modulus of the residual (or its Lipschitz constant).
Solver make_solver(ProblemCase problem, const SolverData& data, SchemeKind scheme,
                   ScheduleKind schedule, ScheduleConstants constants = {});

// Run driver ------------------------------------------------------------------

struct TraceRecord {
    long k = 0;
    double norm_g_y = 0.0;
    std::optional<double> norm_g_x;
    std::optional<double> norm_dx;  // |x_{k+1} - x_k|
    std::optional<double> norm_yx;  // |y_k - x_k|
    std::optional<double> norm_dy;  // |y_{k+1} - y_k|
    std::optional<double> norm_g_z;
    std::optional<double> norm_zy;  // |z_k - y_k|
    std::optional<double> lyapunov_main;
    std::map<std::string, double> lyapunov;
    std::optional<double> bound;
};

using LyapunovProbe = std::function<double(const IterateState&)>;

struct TraceOptions {
    long snapshot_stride = 0;  // 0: no snapshots
    bool record_g_x = false;   // extra evaluation of G at x_k (x-hat for three-correction)
    bool keep_iterates = false;
    /// Named probes; the first one fills lyapunov_main.
    std::vector<std::pair<std::string, LyapunovProbe>> probes;
    std::function<double(long)> bound;
};

struct TraceMeta {
    std::string scheme;
    std::string schedule;
    std::uint64_t seed = 0;
    double L = 0.0;
    Eigen::Index dim = 0;
};

struct RunTrace {
    TraceMeta meta;
    std::vector<TraceRecord> records;
    std::vector<IterateState> snapshots;
    std::vector<Vector> ys, zs, xs;  // filled with keep_iterates
    std::optional<std::string> error;
    std::optional<long> error_step;
};

/// Runs K steps from y0. A numeric failure truncates the trace and records the
/// error instead of throwing.
RunTrace run(Solver& solver, const Vector& y0, long K, const TraceOptions& opts = {});

}  // namespace anchored
