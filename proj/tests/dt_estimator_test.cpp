#include <gtest/gtest.h>

#include <random>

#include "fctdrem/dt_estimator.hpp"
#include "oracles.hpp"

using namespace fctdrem;

namespace {

ScalarLreSample sample(std::int64_t k, double delta, double theta) {
    return {0.0, k, delta, delta * theta};
}

DtGains gains(double rho = 0.9, std::size_t d = 1) { return {1.0, rho, d, 0.5}; }

} // namespace

TEST(DtStep, TwoStepHandExample) {
    DtEstimator est(gains());
    est.step(sample(0, 1.0, 10.0));
    EXPECT_EQ(est.theta_hat(), 5.0);
    EXPECT_EQ(est.w(), 0.5);
    est.step(sample(1, 1.0, 10.0));
    EXPECT_EQ(est.theta_hat(), 7.5);
    EXPECT_EQ(est.w(), 0.25);
}

TEST(DtStep, ZeroRegressorIsANoOp) {
    DtEstimator est(gains());
    est.step(sample(0, 1.0, 10.0));
    est.step(sample(1, 0.0, 10.0));
    EXPECT_EQ(est.theta_hat(), 5.0);
    EXPECT_EQ(est.w(), 0.5);
}

TEST(DtStep, SingleStepHandExample) {
    DtEstimator est(gains());
    est.step(sample(0, 3.0, 2.0));
    EXPECT_NEAR(est.theta_hat(), 1.8, 1e-15);
    EXPECT_NEAR(est.w(), 0.1, 1e-17);
}

TEST(DtStep, RejectsOutOfOrderSamples) {
    DtEstimator est(gains());
    EXPECT_THROW(est.step(sample(1, 1.0, 1.0)), std::invalid_argument);
    est.step(sample(0, 1.0, 1.0));
    EXPECT_THROW(est.step(sample(0, 1.0, 1.0)), std::invalid_argument);
    EXPECT_EQ(est.k(), 1);
}

TEST(DtGains, Validation) {
    EXPECT_THROW(DtEstimator({0.0, 0.9, 1, 0.5}), std::invalid_argument);
    EXPECT_THROW(DtEstimator({1.0, 1.0, 1, 0.5}), std::invalid_argument);
    EXPECT_THROW(DtEstimator({1.0, 0.9, 0, 0.5}), std::invalid_argument);
    EXPECT_THROW(DtEstimator({1.0, 0.9, 1, 0.0}), std::invalid_argument);
}

TEST(DtFct, Examples) {
    DtEstimator est(gains(0.9), 3.0);
    EXPECT_NEAR(est.fct(), 3.0, 1e-14);   // w = 1 clipped to rho collapses to theta_hat(0)

    DtEstimator run(gains(0.9));
    run.step(sample(0, 1.0, 10.0));
    EXPECT_EQ(run.fct(), 10.0);

    DtEstimator big(gains(0.9));
    for (std::int64_t k = 0; k < 2000; ++k) {
        big.step(sample(k, 1.0, 10.0));
    }
    EXPECT_EQ(big.w(), 0.0);   // underflows as a double, still positive internally
    EXPECT_GT(big.w_scaled().log(), -2000.0);
    EXPECT_EQ(big.fct(), big.theta_hat());
}

TEST(DtApRatio, Examples) {
    DtEstimator est(gains(0.9, 1));
    EXPECT_EQ(est.ap_ratio(), 1.0);
    est.step(sample(0, 1.0, 10.0));
    est.step(sample(1, 1.0, 10.0));
    EXPECT_EQ(est.ap_ratio(), 0.5);

    DtEstimator quiet(gains(0.9, 3));
    quiet.step(sample(0, 2.0, 1.0));
    for (std::int64_t k = 1; k <= 3; ++k) {
        quiet.step(sample(k, 0.0, 1.0));
    }
    EXPECT_EQ(quiet.ap_ratio(), 1.0);

    DtEstimator fresh(gains(0.9, 7));
    EXPECT_EQ(fresh.ap_ratio(), 1.0);
}

TEST(DtFctAp, Examples) {
    DtEstimator est(gains(0.9, 1));
    est.step(sample(0, 1.0, 10.0));
    est.step(sample(1, 1.0, 10.0));
    EXPECT_EQ(est.fct_ap(), 10.0);

    // fixed point: theta_hat(k) = theta_hat(k - d) with and without an active clip
    DtEstimator still(gains(0.9, 2), 4.0);
    still.step(sample(0, 0.0, 1.0));
    still.step(sample(1, 0.0, 1.0));
    EXPECT_EQ(still.fct_ap(), 4.0);
    EXPECT_EQ(still.outputs().w_d_c, 0.9);
}

TEST(DtIeCheck, Examples) {
    DtEstimator est(gains(0.9));
    EXPECT_FALSE(est.ie_check());
    est.step(sample(0, 1.0, 10.0));
    EXPECT_TRUE(est.ie_check());

    DtEstimator silent(gains(0.9));
    for (std::int64_t k = 0; k < 100; ++k) {
        silent.step(sample(k, 0.0, 10.0));
        ASSERT_FALSE(silent.ie_check());
    }

    DtEstimator sharp(gains(0.999));
    sharp.step(sample(0, 3.0, 1.0));
    EXPECT_TRUE(sharp.ie_check());
}

TEST(DtOutputs, ConsistentWithAccessors) {
    DtEstimator est(gains(0.9, 2), 1.0);
    std::mt19937_64 rng(3);
    const auto deltas = oracle::uniform(rng, 20, -2.0, 2.0);
    for (std::int64_t k = 0; k < 20; ++k) {
        est.step(sample(k, deltas[static_cast<std::size_t>(k)], -3.0));
        const auto out = est.outputs();
        EXPECT_EQ(out.theta_grad, est.theta_hat());
        EXPECT_EQ(out.theta_fct, est.fct());
        EXPECT_EQ(out.theta_fct_ap, est.fct_ap());
        EXPECT_EQ(out.w, est.w());
        EXPECT_EQ(out.w_d, est.ap_ratio());
        EXPECT_EQ(out.ie_met, est.ie_check());
        EXPECT_LE(out.w_c, 0.9);
        EXPECT_LE(out.w_d_c, 0.9);
    }
}

// ---------------------------------------------------------------------------
// Properties

TEST(DtProperty, RecursionMatchesIndependentProduct) {
    std::mt19937_64 rng(11);
    const std::size_t n = 10000;
    const auto deltas = oracle::uniform(rng, n, -2.0, 2.0);
    DtEstimator est(gains());
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        est.step(sample(static_cast<std::int64_t>(k), deltas[k], 1.0));
        const long double expected = oracle::dt_weight_product(deltas, k + 1, 1.0);
        const long double got = est.w_scaled().to_long_double();
        worst = std::max(worst, static_cast<double>(std::abs(got / expected - 1.0L)));
    }
    EXPECT_LE(worst, 1e-12);
}

TEST(DtProperty, ErrorContracts) {
    std::mt19937_64 rng(12);
    const auto deltas = oracle::uniform(rng, 5000, -2.0, 2.0);
    DtEstimator est(gains(), -4.0);
    double prev = std::abs(-4.0 - 7.0);
    for (std::size_t k = 0; k < deltas.size(); ++k) {
        est.step(sample(static_cast<std::int64_t>(k), deltas[k], 7.0));
        const double err = std::abs(est.theta_hat() - 7.0);
        ASSERT_LE(err, prev) << "k = " << k;
        prev = err;
    }
}

TEST(DtProperty, WindowIdentity) {
    for (std::size_t d : {1u, 3u, 7u}) {
        std::mt19937_64 rng(100 + d);
        const std::size_t n = 3000;
        // keep the excitation small enough that the error stays well above zero for a while
        const auto deltas = oracle::uniform(rng, n, -0.3, 0.3);
        DtEstimator est(gains(0.9, d));
        std::vector<double> err{est.theta_hat() - 10.0};
        double worst = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            est.step(sample(static_cast<std::int64_t>(k), deltas[k], 10.0));
            err.push_back(est.theta_hat() - 10.0);
            const std::ptrdiff_t kk = static_cast<std::ptrdiff_t>(k + 1);
            const std::ptrdiff_t back = std::max<std::ptrdiff_t>(0, kk - static_cast<std::ptrdiff_t>(d));
            const double factor = oracle::dt_window_product(deltas, kk, static_cast<std::ptrdiff_t>(d), 1.0);
            worst = std::max(worst, std::abs(err.back() - factor * err[static_cast<std::size_t>(back)]));
            ASSERT_NEAR(est.ap_ratio(), factor, 1e-12 * factor + 1e-300);
        }
        EXPECT_LE(worst, 1e-10) << "d = " << d;
    }
}

TEST(DtProperty, ClassicExactness) {
    std::mt19937_64 rng(13);
    const auto deltas = oracle::uniform(rng, 2000, -2.0, 2.0);
    DtEstimator est(gains(0.98), 3.0);
    for (std::size_t k = 0; k < deltas.size(); ++k) {
        est.step(sample(static_cast<std::int64_t>(k), deltas[k], -6.5));
        if (est.w() < 0.98) {
            ASSERT_NEAR(est.fct(), -6.5, 1e-10) << "k = " << k;
        }
    }
}

TEST(DtProperty, WindowedExactness) {
    for (std::size_t d : {1u, 3u, 7u}) {
        std::mt19937_64 rng(200 + d);
        const auto deltas = oracle::uniform(rng, 10000, -2.0, 2.0);
        DtEstimator est(gains(0.98, d));
        int checked = 0;
        for (std::size_t k = 0; k < deltas.size(); ++k) {
            est.step(sample(static_cast<std::int64_t>(k), deltas[k], 10.0));
            if (est.ap_ratio() < 0.98) {
                ASSERT_NEAR(est.fct_ap(), 10.0, 1e-10) << "k = " << k << ", d = " << d;
                ++checked;
            }
        }
        EXPECT_GT(checked, 9000);
    }
}

TEST(DtProperty, WindowedExactnessAfterParameterChange) {
    // theta switches from 2 to -5 at k = 50; windows lying after the switch are exact
    const std::size_t d = 3;
    std::mt19937_64 rng(14);
    const auto deltas = oracle::uniform(rng, 200, -2.0, 2.0);
    DtEstimator est(gains(0.98, d));
    for (std::size_t k = 0; k < deltas.size(); ++k) {
        const double theta = k < 50 ? 2.0 : -5.0;
        est.step(sample(static_cast<std::int64_t>(k), deltas[k], theta));
        const std::size_t now = k + 1;
        if (now >= 50 + d && est.ap_ratio() < 0.98) {
            ASSERT_NEAR(est.fct_ap(), -5.0, 1e-10) << "k = " << now;
        }
    }
}
