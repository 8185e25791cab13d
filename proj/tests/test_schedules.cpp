#include "anchored/schedules.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace anchored;

TEST(Halpern, FastAndSlowStepsizes) {
    const double L = 2.0;
    for (long k : {0L, 1L, 7L, 100L}) {
        const auto f = halpern_schedule(k, L, HalpernVariant::fast);
        const auto s = halpern_schedule(k, L, HalpernVariant::slow);
        const double kk = static_cast<double>(k);
        EXPECT_DOUBLE_EQ(*f.beta, 1.0 / (kk + 2.0));
        EXPECT_NEAR(*f.eta, 2.0 * (kk + 1.0) / ((kk + 2.0) * L), 1e-15);
        EXPECT_NEAR(*s.eta, (kk + 1.0) / ((kk + 2.0) * L), 1e-15);
    }
    EXPECT_THROW(halpern_schedule(-1, L, HalpernVariant::fast), InputError);
    EXPECT_THROW(halpern_schedule(0, 0.0, HalpernVariant::fast), InputError);
}

TEST(Nesterov, OmegaFamilyCoefficients) {
    const auto p = nesterov_omega_schedule(4, 3.0);
    EXPECT_DOUBLE_EQ(*p.theta, 5.0 / 12.0);
    EXPECT_DOUBLE_EQ(*p.nu, 9.0 / 12.0);
    EXPECT_DOUBLE_EQ(*p.t, 11.0 / 3.0);
    EXPECT_DOUBLE_EQ(*p.mu, 1.0);
    EXPECT_TRUE(nesterov_omega_schedule(0, 3.0).note.empty());
    EXPECT_FALSE(nesterov_omega_schedule(0, 1.5).note.empty());
    EXPECT_THROW(nesterov_omega_schedule(0, 0.5), InputError);
}

TEST(Nesterov, HalpernOmegaRange) {
    EXPECT_NO_THROW(halpern_omega_schedule(3, 1.0, 0.9, 3.0));
    EXPECT_THROW(halpern_omega_schedule(3, 1.0, 1.0, 3.0), InputError);
    const auto p = halpern_omega_schedule(2, 1.0, 0.5, 3.0);
    EXPECT_DOUBLE_EQ(*p.beta, 4.0 / 10.0);
    EXPECT_DOUBLE_EQ(*p.eta, 0.5 * 0.6);
}

TEST(Transform, FirstStepConvention) {
    ScheduleParams cur;
    cur.beta = 0.5;
    cur.eta = 0.25;
    cur.gamma = 1.0;
    const auto t = transform_step(nullptr, cur);
    EXPECT_EQ(*t.theta, 0.0);
    EXPECT_EQ(*t.kappa, 0.0);
    EXPECT_DOUBLE_EQ(*t.nu, 0.75);
}

TEST(Transform, MatchesClosedForms) {
    // With gamma = 1/L the Halpern stepsizes map onto the published coefficients.
    const double L = 3.0;
    for (auto v : {HalpernVariant::fast, HalpernVariant::slow}) {
        std::vector<double> beta, eta, gamma;
        for (long k = 0; k < 30; ++k) {
            const auto h = halpern_schedule(k, L, v);
            beta.push_back(*h.beta);
            eta.push_back(*h.eta);
            gamma.push_back(1.0 / L);
        }
        const auto tr = transform_halpern_to_nesterov(beta, eta, gamma);
        for (long k = 1; k < 30; ++k) {
            const auto c = nesterov_halpern_schedule(k, L, v);
            EXPECT_NEAR(*tr[k].theta, *c.theta, 1e-14) << k;
            EXPECT_NEAR(*tr[k].nu, *c.nu, 1e-14) << k;
            EXPECT_NEAR(*tr[k].kappa, *c.kappa, 1e-14) << k;
        }
    }
}

TEST(Eag, ConstantRange) {
    EXPECT_NO_THROW(eag_constant(0, 1.0, 0.125));
    EXPECT_THROW(eag_constant(0, 1.0, 0.2), InputError);
}

TEST(Eag, VaryingRecursion) {
    EXPECT_NEAR(eag_varying_next(0, 1.0, 0.5), 4.0 / 9.0, 1e-15);
    const auto p = eag_varying(1, 1.0, 0.5);
    EXPECT_NEAR(*p.eta, 4.0 / 9.0, 1e-15);
    double eta = 0.5;
    for (long k = 0; k < 2000; ++k) {
        const double next = eag_varying_next(k, 1.0, eta);
        ASSERT_LT(next, eta);
        ASSERT_GT(next, 0.0);
        eta = next;
    }
    EXPECT_GT(eta, 0.4);
}

TEST(Eag, NesterovFormParameters) {
    const auto p = nag_eag_schedule(3, 2.0);
    EXPECT_DOUBLE_EQ(*p.beta, 0.2);
    EXPECT_DOUBLE_EQ(*p.eta, 0.8 / 2.0);
    EXPECT_DOUBLE_EQ(*p.eta_hat, 0.5);
    EXPECT_DOUBLE_EQ(*p.gamma, 0.5);
    EXPECT_DOUBLE_EQ(*p.theta, 0.6);
    EXPECT_DOUBLE_EQ(*p.nu, 0.8);
}

TEST(Comono, RangeAndForms) {
    const double L = 1.0;
    EXPECT_THROW(comono_schedule(0, L, -0.5), InputError);
    const auto p = comono_schedule(2, L, -0.25);
    EXPECT_DOUBLE_EQ(*p.beta, 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(*p.tau, 2.0);
    const auto q0 = nag_comono_schedule(0, L, -0.25);
    EXPECT_EQ(*q0.theta, 0.0);
    EXPECT_EQ(*q0.nu, 1.0);
    const auto q = nag_comono_schedule(3, L, -0.25);
    EXPECT_DOUBLE_EQ(*q.theta, 0.5);
    EXPECT_DOUBLE_EQ(*q.nu, 0.75);
}

TEST(Peag, PastAnchoredStepsizes) {
    const auto p = peag_schedule(0, 1.0, 1.0);
    EXPECT_DOUBLE_EQ(*p.M, 2.0);
    EXPECT_DOUBLE_EQ(*p.eta_hat, 0.5);
    EXPECT_DOUBLE_EQ(*p.eta, 0.25);
}

TEST(Peag, LegacyRecursion) {
    EXPECT_NEAR(peag_legacy_next(0, 1.0, 0.25), 5.0 / 21.0, 1e-15);
    EXPECT_NEAR(*peag_legacy(1, 1.0, 0.25).eta, 5.0 / 21.0, 1e-15);
    EXPECT_THROW(peag_legacy(0, 1.0, 0.5), InputError);
}

TEST(Peag, ClosedFormAtTwo) {
    const auto p = nag_peag_closed_form(2, 1.0);
    EXPECT_DOUBLE_EQ(*p.theta, 0.5);
    EXPECT_DOUBLE_EQ(*p.nu, 0.75);
    EXPECT_DOUBLE_EQ(*p.kappa, 0.25);
    EXPECT_DOUBLE_EQ(*p.zeta, 0.125);
    EXPECT_DOUBLE_EQ(*p.gamma_hat, 1.0);
}

TEST(Peag, ExactTransformAgreesWithClosedFormFromThree) {
    const double L = 1.0;
    for (long k = 3; k < 60; ++k) {
        const auto e = nag_peag_schedule(k, L, 1.0);
        const auto c = nag_peag_closed_form(k, L);
        EXPECT_NEAR(*e.theta, *c.theta, 1e-14) << k;
        EXPECT_NEAR(*e.nu, *c.nu, 1e-14) << k;
        EXPECT_NEAR(*e.kappa, *c.kappa, 1e-14) << k;
        EXPECT_NEAR(*e.zeta, *c.zeta, 1e-14) << k;
    }
    EXPECT_NEAR(*nag_peag_schedule(1, L, 1.0).kappa, 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(*nag_peag_schedule(2, L, 1.0).zeta, 0.25, 1e-15);
    EXPECT_NEAR(*nag_peag_schedule(0, L, 1.0).gamma_hat, 0.5, 1e-15);
}

TEST(Names, RoundTrip) {
    for (auto k : all_schedule_kinds()) {
        EXPECT_EQ(parse_schedule_kind(to_string(k)), k);
        EXPECT_TRUE(compatible(scheme_for(k), k)) << to_string(k);
    }
    EXPECT_THROW(parse_schedule_kind("nope"), InputError);
    EXPECT_THROW(parse_scheme_kind("nope"), InputError);
    EXPECT_FALSE(compatible(SchemeKind::halpern, ScheduleKind::eag_constant));
    EXPECT_TRUE(compatible(SchemeKind::nesterov, ScheduleKind::halpern_fast));
}

TEST(Stream, SequentialMatchesClosedForm) {
    ScheduleConstants c;
    c.L = 1.5;
    c.eta0 = 0.4;
    ScheduleStream s(ScheduleKind::eag_varying, c);
    for (long k = 0; k < 50; ++k) {
        const auto p = s.next();
        EXPECT_EQ(p.k, k);
        EXPECT_NEAR(*p.eta, *eag_varying(k, 1.5, 0.4).eta, 1e-15);
    }
    EXPECT_EQ(s.index(), 50);
}

TEST(Stream, TargetTransformsHalpern) {
    ScheduleConstants c;
    c.L = 1.0;
    ScheduleStream s(ScheduleKind::halpern_slow, c, SchemeKind::nesterov);
    for (long k = 0; k < 10; ++k) {
        const auto p = s.next();
        ASSERT_TRUE(p.theta && p.nu && p.kappa && p.gamma);
    }
}

TEST(Stream, RequiresL) {
    EXPECT_THROW(ScheduleStream(ScheduleKind::halpern_fast, ScheduleConstants{}).next(), InputError);
    EXPECT_THROW(ScheduleStream(ScheduleKind::eag_constant, ScheduleConstants{}, SchemeKind::halpern),
                 InputError);
}

TEST(Require, NamesField) {
    try {
        require(std::nullopt, "beta");
        FAIL();
    } catch (const InputError& e) {
        EXPECT_NE(std::string(e.what()).find("beta"), std::string::npos);
    }
}
