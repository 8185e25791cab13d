#include "anchored/diagnostics.hpp"
#include "anchored/instances.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace anchored;

namespace {

Solver solver_for(const ProblemInstance& inst, SchemeKind scheme, ScheduleKind kind, ScheduleConstants c = {}) {
    c.L = inst.l_estimate;
    SolverData d;
    d.op = inst.op;
    return make_solver(ProblemCase::cocoercive, d, scheme, kind, c);
}

std::vector<double> probe_series(const RunTrace& t) {
    std::vector<double> v;
    for (const auto& r : t.records) v.push_back(*r.lyapunov_main);
    return v;
}

RunTrace synthetic(std::vector<double> norms) {
    RunTrace t;
    for (std::size_t k = 0; k < norms.size(); ++k) {
        TraceRecord r;
        r.k = static_cast<long>(k);
        r.norm_g_y = norms[k];
        t.records.push_back(r);
    }
    return t;
}

}  // namespace

TEST(Lyapunov, HalpernFormByHand) {
    auto s = IterateState::start(Vector::Zero(2));
    s.y = Vector::Ones(2);
    s.g_y = Vector::Constant(2, 2.0);
    // p = 2, q = 3, L = 4: (2/4) * 8 + 3 * 4 = 16.
    EXPECT_DOUBLE_EQ(lyapunov_L(s, 2.0, 3.0, 4.0), 16.0);
    s.g_y.reset();
    EXPECT_THROW(lyapunov_L(s, 2.0, 3.0, 4.0), DataError);
}

TEST(Lyapunov, NesterovFormByHand) {
    auto s = IterateState::start(Vector::Zero(1));
    s.x = Vector::Constant(1, 1.0);
    s.y = Vector::Constant(1, 2.0);
    s.g_y = Vector::Constant(1, 5.0);
    s.g_y_prev = Vector::Constant(1, 3.0);
    LyapunovCoeffs c;
    c.a = 2.0;
    c.b = 1.0;
    c.t = 2.0;
    c.mu = 1.0;
    const Vector ys = Vector::Zero(1);
    // 2*9 + 1*3*(1-2) + (1 + 2*(2-1))^2 + 1 = 18 - 3 + 9 + 1.
    EXPECT_DOUBLE_EQ(lyapunov_V(s, c, ys), 25.0);
}

TEST(Lyapunov, OmegaFamilyCoefficientFormulas) {
    const auto c = nesterov_coeffs(2, 0.5, 3.0);
    const double t = 3.0;
    EXPECT_DOUBLE_EQ(c.t, t);
    EXPECT_NEAR(c.a, 0.25 * t * (t - 1.0), 1e-15);
    EXPECT_NEAR(c.b, 2.0 * 0.5 * t * (t - 1.0), 1e-15);
    const auto h = halpern_coeffs(3, 2.0);
    EXPECT_DOUBLE_EQ(h.p, 24.0);
    EXPECT_DOUBLE_EQ(h.q, 8.0);
}

struct NesterovCase {
    std::uint64_t seed;
    double gamma_scale;
    double omega;
};

class OmegaFamilyProperty : public ::testing::TestWithParam<NesterovCase> {};

TEST_P(OmegaFamilyProperty, VDecreasesAndDominatesDistance) {
    const auto p = GetParam();
    const auto inst = gen_least_squares(60, 30, p.seed, 0.1);
    const double L = inst.l_estimate, gamma = p.gamma_scale / L;
    ScheduleConstants c;
    c.gamma = gamma;
    c.omega = p.omega;
    Solver s = solver_for(inst, SchemeKind::nesterov, ScheduleKind::nesterov_theorem3, c);
    const Vector ys = *inst.solution;
    TraceOptions o;
    o.snapshot_stride = 1;
    o.probes.push_back({"V", [&](const IterateState& st) {
                            return lyapunov_V(st, nesterov_coeffs(st.k, gamma, p.omega), ys);
                        }});
    const auto t = run(s, inst.y0, 600, o);
    const auto V = probe_series(t);
    EXPECT_TRUE(decrease_check(V, "V").ok());
    for (const auto& r : summability_check(t, gamma, p.omega, L, V.front())) EXPECT_TRUE(r.ok()) << r.name;
}

INSTANTIATE_TEST_SUITE_P(Cases, OmegaFamilyProperty,
                         ::testing::Values(NesterovCase{1, 0.9, 3.0}, NesterovCase{2, 0.5, 3.0},
                                           NesterovCase{3, 0.9, 5.0}, NesterovCase{4, 0.3, 2.5}));

TEST(Summability, NonpositiveCoefficientIsSkipped) {
    const auto inst = gen_least_squares(30, 15, 2, 0.1);
    const double L = inst.l_estimate;
    ScheduleConstants c;
    c.omega = 1.0;
    Solver s = solver_for(inst, SchemeKind::nesterov, ScheduleKind::nesterov_theorem3, c);
    TraceOptions o;
    o.snapshot_stride = 1;
    const auto t = run(s, inst.y0, 50, o);
    const auto reps = summability_check(t, 0.9 / L, 1.0, L, 1.0);
    bool skipped = false;
    for (const auto& r : reps) skipped = skipped || r.skipped;
    EXPECT_TRUE(skipped);
}

TEST(Summability, NeedsSnapshots) {
    const auto inst = gen_least_squares(30, 15, 2, 0.1);
    Solver s = solver_for(inst, SchemeKind::nesterov, ScheduleKind::nesterov_theorem3);
    const auto t = run(s, inst.y0, 10);
    EXPECT_THROW(summability_check(t, 0.9 / inst.l_estimate, 3.0, inst.l_estimate, 1.0), DataError);
}

class ExtraAnchoredProperty : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(ExtraAnchoredProperty, QDecreasesFromOne) {
    const auto inst = gen_minimax_huber(40, 30, GetParam());
    const double L = inst.l_estimate;
    Solver s = solver_for(inst, SchemeKind::nag_eag, ScheduleKind::nag_eag);
    const Vector ys = *inst.solution;
    TraceOptions o;
    o.probes.push_back({"Q", [&](const IterateState& st) { return lyapunov_Q(st, nag_eag_coeffs(st.k, L), ys); }});
    const auto t = run(s, inst.y0, 600, o);
    const auto Q = probe_series(t);
    EXPECT_TRUE(decrease_check(std::span<const double>(Q).subspan(1), "Q").ok());
    // The first step raises Q by exactly |G y0|^2 / (2 L^2).
    const double g0 = t.records[0].norm_g_y;
    EXPECT_NEAR(Q[1] - Q[0], g0 * g0 / (2 * L * L), 1e-10 * (1 + Q[0]));
}

TEST_P(ExtraAnchoredProperty, EDecreasesForSigmaAboveOne) {
    const auto inst = gen_minimax_huber(40, 30, GetParam());
    const double L = inst.l_estimate;
    for (double sigma : {1.5, 2.0, 4.0}) {
        ScheduleConstants c;
        c.sigma = sigma;
        Solver s = solver_for(inst, SchemeKind::peag, ScheduleKind::peag_theorem7, c);
        const Vector ys = *inst.solution;
        TraceOptions o;
        o.probes.push_back({"E", [&](const IterateState& st) { return lyapunov_E(st, sigma, L, ys); }});
        const auto t = run(s, inst.y0, 600, o);
        const auto E = probe_series(t);
        EXPECT_TRUE(decrease_check(E, "E").ok()) << sigma;
        EXPECT_TRUE(peag_weighted_sum_check(t, L, sigma, E.front()).ok()) << sigma;
    }
}

INSTANTIATE_TEST_SUITE_P(Seeds, ExtraAnchoredProperty, ::testing::Values(1u, 2u, 3u));

TEST(Correspondence, HalpernToNesterovIdentity) {
    const auto inst = gen_least_squares(40, 20, 9, 0.1);
    const double L = inst.l_estimate;
    for (auto kind : {ScheduleKind::halpern_fast, ScheduleKind::halpern_slow}) {
        for (double q0 : {1.0, 0.3}) {
            Solver s = solver_for(inst, SchemeKind::halpern, kind);
            TraceOptions o;
            o.snapshot_stride = 1;
            const auto t = run(s, inst.y0, 200, o);
            const auto v = kind == ScheduleKind::halpern_fast ? HalpernVariant::fast : HalpernVariant::slow;
            for (long k = 0; k + 1 < static_cast<long>(t.snapshots.size()); ++k) {
                const auto p = halpern_schedule(k, L, v);
                ASSERT_LT(lyapunov_correspondence_gap(t.snapshots[k], t.snapshots[k + 1], *p.beta, *p.eta, L,
                                                      *inst.solution, q0),
                          1e-10)
                    << k;
            }
        }
    }
}

TEST(Bounds, ClosedFormValues) {
    BoundSpec s;
    s.L = 2.0;
    s.dist0 = 3.0;
    s.kind = BoundKind::halpern_fast;
    EXPECT_DOUBLE_EQ(*residual_bound(s, 2), 2.0);
    s.kind = BoundKind::halpern_slow;
    EXPECT_DOUBLE_EQ(*residual_bound(s, 1), std::sqrt(4.0 * 4.0 * 9.0 / 8.0));
    s.kind = BoundKind::eag_anchored;
    EXPECT_DOUBLE_EQ(*residual_bound(s, 1), 6.0);
    s.kind = BoundKind::comono;
    s.rho = -0.125;
    EXPECT_FALSE(residual_bound(s, 0).has_value());
    EXPECT_DOUBLE_EQ(*residual_bound(s, 2), std::sqrt(4.0 * 4.0 * 9.0 / (0.5 * 4.0)));
    for (const auto& name : {"halpern_fast", "comono", "peag"})
        EXPECT_EQ(to_string(parse_bound_kind(name)), name);
}

TEST(Bounds, CheckCountsViolations) {
    BoundSpec s;
    s.kind = BoundKind::halpern_fast;
    s.L = 1.0;
    s.dist0 = 1.0;
    auto ok = bound_check(synthetic({1.0, 0.5, 0.3}), s);
    ASSERT_EQ(ok.size(), 1u);
    EXPECT_TRUE(ok[0].ok());
    auto bad = bound_check(synthetic({1.0, 0.5, 0.4}), s);
    EXPECT_EQ(bad[0].violations, 1);
    EXPECT_EQ(*bad[0].first_violation, 2);
    EXPECT_GT(bad[0].worst_excess, 0.0);
}

TEST(Bounds, PeagNeedsZNorms) {
    BoundSpec s;
    s.kind = BoundKind::peag;
    s.L = 1.0;
    s.dist0 = 1.0;
    EXPECT_THROW(bound_check(synthetic({1.0}), s), DataError);
}

TEST(Checks, DecreaseAndLowerBound) {
    const std::vector<double> v{3.0, 2.0, 2.0, 2.5, 1.0};
    const auto d = decrease_check(v, "v");
    EXPECT_EQ(d.violations, 1);
    EXPECT_EQ(*d.first_violation, 3);
    const std::vector<double> lo{1.0, 2.0, 2.5, 0.0, 0.0};
    EXPECT_EQ(lower_bound_check(v, lo, "lb", 1e-12).violations, 1);
    EXPECT_THROW(lower_bound_check(v, std::vector<double>{1.0}, "lb", 0.0), InputError);
}

TEST(Checks, EquivalenceReport) {
    std::vector<Vector> a{Vector::Ones(2), Vector::Zero(2)}, b{Vector::Ones(2), Vector::Constant(2, 1e-3)};
    EXPECT_NEAR(equivalence_report(a, b), std::sqrt(2.0) * 1e-3, 1e-15);
    EXPECT_THROW(equivalence_report(a, {Vector::Ones(2)}), InputError);
}

TEST(Rates, ExactPowerLaw) {
    std::vector<double> s;
    for (int k = 0; k <= 400; ++k) s.push_back(5.0 / std::pow(k + 1.0, 2.0));
    const auto r = rate_fit(s);
    EXPECT_NEAR(r.slope, -2.0, 1e-12);
    EXPECT_NEAR(r.intercept, std::log(5.0), 1e-10);
    EXPECT_EQ(r.k_lo, 100);
    EXPECT_EQ(r.k_hi, 400);
    EXPECT_LT(r.residual, 1e-12);
    EXPECT_THROW(rate_fit(s, 10, 5), InputError);
}

TEST(Rates, LittleOTrend) {
    std::vector<double> fast, exact;
    for (int k = 0; k <= 1000; ++k) {
        fast.push_back(1.0 / std::pow(k + 1.0, 1.5));
        exact.push_back(1.0 / (k + 1.0));
    }
    EXPECT_TRUE(little_o_trend(fast).ok());
    EXPECT_TRUE(little_o_trend(exact).ok());
    std::vector<double> slow;
    for (int k = 0; k <= 1000; ++k) slow.push_back(1.0 / std::sqrt(k + 1.0));
    EXPECT_FALSE(little_o_trend(slow).ok());
}
