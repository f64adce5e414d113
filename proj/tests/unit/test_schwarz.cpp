#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "eigenmap/errors.hpp"
#include "eigenmap/schwarz.hpp"

using namespace eigenmap;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
    try {
        f();
    } catch (const GeometryError& e) {
        return e.code();
    }
    ADD_FAILURE() << "no GeometryError thrown";
    return ErrorCode::ConfigError;
}

}  // namespace

TEST(Schwarz, WedgeNormsOfSmallSpectra) {
    EXPECT_DOUBLE_EQ(wedge_norm({4.0, 1.0}, 2), 2.0);
    EXPECT_DOUBLE_EQ(wedge_norm({4.0, 1.0}, 1), std::sqrt(5.0));
    EXPECT_NEAR(wedge_norm({4.0, 4.0, 1.0, 1.0}, 2), std::sqrt(33.0), 1e-14);
    EXPECT_EQ(code_of([] { wedge_norm({1.0}, 2); }), ErrorCode::IndexError);
}

TEST(Schwarz, WedgeNormMatchesPrincipalMinors) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> ud(0.1, 3.0);
    std::normal_distribution<double> nd;
    for (int trial = 0; trial < 30; ++trial) {
        const int m = 2 + trial % 5;
        Eigen::MatrixXd q = Eigen::MatrixXd::NullaryExpr(m, m, [&] { return nd(rng); });
        q = Eigen::HouseholderQR<Eigen::MatrixXd>(q).householderQ();
        std::vector<double> ev(m);
        Eigen::VectorXd d(m);
        for (int i = 0; i < m; ++i) d(i) = ev[i] = ud(rng);
        const Eigen::MatrixXd a = q * d.asDiagonal() * q.transpose();
        for (int p = 1; p <= m; ++p) {
            const double w = wedge_norm(ev, p);
            EXPECT_NEAR(wedge_norm_sq_minors(a, p), w * w, 1e-10 * std::max(1.0, w * w));
        }
    }
}

TEST(Schwarz, EqualPairsAttainRefinedBound) {
    const RatioBounds b = phwc_ratio_bounds({1.0, 1.0, 1.0, 1.0}, 2);
    EXPECT_NEAR(b.ratio, 4.0 / std::sqrt(6.0), 1e-14);
    EXPECT_NEAR(b.refined_bound, 4.0 / std::sqrt(6.0), 1e-14);
    EXPECT_TRUE(b.equality);
}

TEST(Schwarz, TwoPairSpectrumNumbers) {
    const RatioBounds b = phwc_ratio_bounds({4.0, 4.0, 1.0, 1.0}, 2);
    EXPECT_NEAR(b.ratio, 10.0 / std::sqrt(33.0), 1e-14);
    EXPECT_NEAR(b.ratio, 1.74078, 5e-6);
    EXPECT_NEAR(b.refined_bound, 1.97906, 5e-6);
    EXPECT_NEAR(b.refined_bound, 2.0 * std::sqrt(47.0 / 48.0), 1e-14);
    EXPECT_LT(b.ratio, b.refined_bound);
    EXPECT_LT(b.refined_bound, b.crude_bound);
    EXPECT_FALSE(b.equality);
}

TEST(Schwarz, SinglePairIsExactlyTwo) {
    const RatioBounds b = phwc_ratio_bounds({3.0, 3.0, 0.0}, 1);
    EXPECT_NEAR(b.ratio, 2.0, 1e-14);
    EXPECT_NEAR(b.refined_bound, 2.0, 1e-14);
}

TEST(Schwarz, RandomSpectraObeyBoundsAndNewton) {
    for (const auto& s : random_doubled_spectra(300, 6, 1e-6, 1e6, 23)) {
        const int n = static_cast<int>(s.size()) / 2;
        const RatioBounds b = phwc_ratio_bounds(s, n);
        EXPECT_LE(b.ratio, b.crude_bound * (1.0 + 1e-12));
        EXPECT_LE(b.ratio, b.refined_bound * (1.0 + 1e-12));
        if (n >= 2) {
            EXPECT_LT(b.ratio, b.crude_bound);
        }
        std::vector<double> pv;
        for (int i = 0; i < n; ++i) pv.push_back(s[2 * i]);
        const NewtonSides ns = newton_inequality(pv);
        EXPECT_LE(ns.lhs, ns.rhs * (1.0 + 1e-12));
    }
}

TEST(Schwarz, SpectraMustBeDoubled) {
    EXPECT_EQ(code_of([] { phwc_ratio_bounds({4.0, 1.0}, 1); }), ErrorCode::NotDoubledSpectrum);
    EXPECT_EQ(code_of([] { phwc_ratio_bounds({4.0, 4.0, 1.0}, 1); }), ErrorCode::NotDoubledSpectrum);
    EXPECT_EQ(code_of([] { phwc_ratio_bounds({4.0, 4.0}, 2); }), ErrorCode::NotDoubledSpectrum);
}

TEST(Schwarz, BoundedDilatation) {
    const DilatationInequality d = bounded_dilatation_inequality({4.0, 4.0, 1.0, 1.0}, 1.0, 2);
    EXPECT_DOUBLE_EQ(d.lhs, 10.0);
    EXPECT_NEAR(d.rhs, 2.0 * std::sqrt(33.0), 1e-13);
    EXPECT_LE(d.lhs, d.rhs);
    EXPECT_EQ(code_of([] { bounded_dilatation_inequality({4.0, 1.0}, 1.5, 1); }), ErrorCode::DilatationExceeded);
    EXPECT_EQ(code_of([] { bounded_dilatation_inequality({1.0, 0.0}, 2.0, 1); }), ErrorCode::DegenerateRank);
}

TEST(Schwarz, DilatationData) {
    const DilatationData d = dilatation({4.0, 4.0, 1.0, 1.0, 0.0});
    ASSERT_EQ(d.wedge_norms.size(), 4u);
    EXPECT_NEAR(d.k_order, 1.0, 1e-14);
    EXPECT_NEAR(d.ell, 2.0, 1e-14);
    EXPECT_NEAR(d.ratio, 10.0 / std::sqrt(33.0), 1e-14);
    EXPECT_NEAR(d.wedge_norms[3], 4.0, 1e-13);
}

TEST(Schwarz, EnergyBound) {
    const EnergyBoundReport r = energy_bound_check({0.5, 1.2, 0.9}, 3.0, 2.0);
    EXPECT_DOUBLE_EQ(r.bound, 3.0);
    EXPECT_DOUBLE_EQ(r.max_dphi_sq, 1.2);
    EXPECT_TRUE(r.holds);
    const EnergyBoundReport refined = energy_bound_check({0.5}, 3.0, 2.0, 2.0, 2);
    EXPECT_NEAR(refined.refined_bound, 3.0 * (1.0 - 1.0 / 48.0), 1e-14);
    EXPECT_FALSE(energy_bound_check({4.0}, 3.0, 2.0).holds);
    EXPECT_EQ(code_of([] { energy_bound_check({1.0}, 0.0, 1.0); }), ErrorCode::MissingCurvatureBounds);
}
