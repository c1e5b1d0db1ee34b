#include <gtest/gtest.h>

#include <random>

#include <Eigen/LU>

#include "fctdrem/drem.hpp"

using namespace fctdrem;

namespace {

Eigen::MatrixXd random_matrix(std::mt19937_64 &rng, int n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            m(i, j) = u(rng);
        }
    }
    return m;
}

std::vector<VectorLreSample> ramp_history(int n, const std::vector<double> &theta) {
    std::vector<VectorLreSample> h;
    for (int k = 0; k < n; ++k) {
        VectorLreSample s;
        s.index = k;
        s.phi = {1.0, static_cast<double>(k)};
        s.y = s.phi[0] * theta[0] + s.phi[1] * theta[1];
        h.push_back(s);
    }
    return h;
}

} // namespace

TEST(Adjugate, Identity3) {
    auto [adj, det] = adjugate_and_det(Eigen::MatrixXd::Identity(3, 3));
    EXPECT_EQ(det, 1.0);
    EXPECT_TRUE(adj.isApprox(Eigen::MatrixXd::Identity(3, 3)));
}

TEST(Adjugate, TwoByTwo) {
    Eigen::MatrixXd m(2, 2);
    m << 1, 2, 3, 4;
    auto [adj, det] = adjugate_and_det(m);
    Eigen::MatrixXd expected(2, 2);
    expected << 4, -2, -3, 1;
    EXPECT_EQ(det, -2.0);
    EXPECT_EQ(adj, expected);
}

TEST(Adjugate, ZeroMatrix) {
    auto [adj, det] = adjugate_and_det(Eigen::MatrixXd::Zero(2, 2));
    EXPECT_EQ(det, 0.0);
    EXPECT_EQ(adj, Eigen::MatrixXd::Zero(2, 2));
}

TEST(Adjugate, OneByOne) {
    Eigen::MatrixXd m(1, 1);
    m << -3.5;
    auto [adj, det] = adjugate_and_det(m);
    EXPECT_EQ(det, -3.5);
    EXPECT_EQ(adj(0, 0), 1.0);
}

TEST(Adjugate, RejectsUnsupportedShapes) {
    EXPECT_THROW(adjugate_and_det(Eigen::MatrixXd::Identity(6, 6)), std::invalid_argument);
    EXPECT_THROW(adjugate_and_det(Eigen::MatrixXd::Zero(2, 3)), std::invalid_argument);
    EXPECT_THROW(adjugate_and_det(Eigen::MatrixXd(0, 0)), std::invalid_argument);
}

TEST(AdjugateProperty, AdjTimesMatrixIsDetIdentity) {
    std::mt19937_64 rng(42);
    for (int n = 1; n <= 5; ++n) {
        for (int trial = 0; trial < 200; ++trial) {
            const Eigen::MatrixXd m = random_matrix(rng, n);
            auto [adj, det] = adjugate_and_det(m);
            const Eigen::MatrixXd residual = adj * m - det * Eigen::MatrixXd::Identity(n, n);
            // relative to |det|, floored at 1: near-singular draws hit the rounding floor of adj * m
            EXPECT_LE(residual.cwiseAbs().maxCoeff(), 1e-12 * std::max(std::abs(det), 1.0))
                << "n = " << n;
            // independent route: LU-based determinant
            EXPECT_NEAR(det, m.determinant(), 1e-12 * std::max(std::abs(det), 1.0));
        }
    }
}

TEST(AdjugateProperty, RowSwapFlipsDeterminant) {
    std::mt19937_64 rng(5);
    for (int n = 2; n <= 5; ++n) {
        Eigen::MatrixXd m = random_matrix(rng, n);
        const double det = cofactor_det(m);
        m.row(0).swap(m.row(n - 1));
        EXPECT_NEAR(cofactor_det(m), -det, 1e-14);
    }
}

TEST(Adjugate, SingularMatrixHasFiniteAdjugate) {
    Eigen::MatrixXd m(3, 3);
    m << 1, 2, 3, 1, 2, 3, 0, 1, 5;
    auto [adj, det] = adjugate_and_det(m);
    EXPECT_EQ(det, 0.0);
    EXPECT_TRUE(adj.allFinite());
    EXPECT_LE((adj * m).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Extend, IdentityExtensionForScalar) {
    std::vector<VectorLreSample> h{{0.0, 0, {2.0}, 6.0}, {0.5, 1, {3.0}, 9.0}};
    const std::size_t lags[] = {0};
    auto ext = extend(h, lags, 1);
    EXPECT_EQ(ext.phi_e(0, 0), 3.0);
    EXPECT_EQ(ext.y_e(0), 9.0);
}

TEST(Extend, DelayStacking) {
    const auto h = ramp_history(6, {2.0, 3.0});
    const std::size_t lags[] = {0, 1};
    auto ext = extend(h, lags, 4);
    Eigen::MatrixXd expected(2, 2);
    expected << 1, 4, 1, 3;
    EXPECT_EQ(ext.phi_e, expected);
    EXPECT_EQ(ext.y_e(0), 14.0);
    EXPECT_EQ(ext.y_e(1), 11.0);
}

TEST(Extend, ZeroFillBeforeHistory) {
    const auto h = ramp_history(1, {2.0, 3.0});
    const std::size_t lags[] = {0, 1};
    auto ext = extend(h, lags, 0);
    EXPECT_EQ(ext.phi_e.row(1).cwiseAbs().sum(), 0.0);
    EXPECT_EQ(ext.y_e(1), 0.0);
}

TEST(Extend, RejectsBadLags) {
    const auto h = ramp_history(4, {2.0, 3.0});
    const std::size_t not_increasing[] = {0, 0};
    const std::size_t wrong_length[] = {0, 1, 2};
    const std::size_t nonzero_first[] = {1, 2};
    EXPECT_THROW(extend(h, not_increasing, 3), std::invalid_argument);
    EXPECT_THROW(extend(h, wrong_length, 3), std::invalid_argument);
    EXPECT_THROW(extend(h, nonzero_first, 3), std::invalid_argument);
    const std::size_t ok[] = {0, 1};
    EXPECT_THROW(extend(h, ok, 4), std::out_of_range);
}

TEST(Mix, RampRegressor) {
    const auto h = ramp_history(10, {2.0, 3.0});
    const std::size_t lags[] = {0, 1};
    for (std::int64_t k = 1; k < 10; ++k) {
        auto m = mix(extend(h, lags, k));
        EXPECT_EQ(m.delta, -1.0);
        EXPECT_EQ(m.y_mixed(0), -2.0);
        EXPECT_EQ(m.y_mixed(1), -3.0);
    }
}

TEST(Mix, IdentityPassesThrough) {
    ExtendedRegressor ext{Eigen::MatrixXd::Identity(2, 2), Eigen::Vector2d(4.0, -7.0), 0};
    auto m = mix(ext);
    EXPECT_EQ(m.delta, 1.0);
    EXPECT_EQ(m.y_mixed(0), 4.0);
    EXPECT_EQ(m.y_mixed(1), -7.0);
}

TEST(Mix, EqualRowsGiveZeroDelta) {
    Eigen::MatrixXd phi(2, 2);
    phi << 1.5, -2.0, 1.5, -2.0;
    ExtendedRegressor ext{phi, Eigen::Vector2d(3.0, 3.0), 0};
    auto m = mix(ext);
    EXPECT_EQ(m.delta, 0.0);
    EXPECT_EQ(m.y_mixed(0), 0.0);
    EXPECT_EQ(m.y_mixed(1), 0.0);
}

TEST(DremMixer, MatchesBatchExtension) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<VectorLreSample> history;
    DremMixer mixer(3, {0, 2, 3});
    const std::size_t lags[] = {0, 2, 3};
    for (std::int64_t k = 0; k < 50; ++k) {
        VectorLreSample s{0.0, k, {u(rng), u(rng), u(rng)}, u(rng)};
        history.push_back(s);
        auto streamed = mixer.push(s);
        auto batch = mix(extend(history, lags, k));
        EXPECT_EQ(streamed.delta, batch.delta);
        EXPECT_EQ(streamed.y_mixed, batch.y_mixed);
        EXPECT_EQ(streamed.k, k);
    }
}

TEST(DremMixer, RejectsBadConfiguration) {
    EXPECT_THROW(DremMixer(6, {0, 1, 2, 3, 4, 5}), std::invalid_argument);
    EXPECT_THROW(DremMixer(2, {0, 0}), std::invalid_argument);
    DremMixer ok(2, {0, 1});
    EXPECT_THROW(ok.push({0.0, 0, {1.0}, 1.0}), std::invalid_argument);
}

TEST(DremProperty, MixingIsExactForConstantTheta) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int q = 1; q <= 5; ++q) {
        std::vector<double> theta(static_cast<std::size_t>(q));
        for (auto &v : theta) {
            v = 5.0 * u(rng);
        }
        std::vector<std::size_t> lags;
        for (int i = 0; i < q; ++i) {
            lags.push_back(static_cast<std::size_t>(i));
        }
        DremMixer mixer(static_cast<std::size_t>(q), lags);
        for (std::int64_t k = 0; k < 200; ++k) {
            VectorLreSample s;
            s.index = k;
            for (int i = 0; i < q; ++i) {
                s.phi.push_back(u(rng));
                s.y += s.phi.back() * theta[static_cast<std::size_t>(i)];
            }
            auto m = mixer.push(s);
            for (int i = 0; i < q; ++i) {
                EXPECT_NEAR(m.y_mixed(i), m.delta * theta[static_cast<std::size_t>(i)], 1e-10);
            }
        }
    }
}
