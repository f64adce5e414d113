#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "eigenmap/bochner.hpp"
#include "eigenmap/catalog.hpp"
#include "eigenmap/errors.hpp"

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

// Λ(t) = e^{-0.2 sin t} - 1 on the warped projection with f = 0.1 sin t, k = 0.
double lambda_w(double t) { return std::exp(-0.2 * std::sin(t)) - 1.0; }
double lambda_w_d1(double t) { return -0.2 * std::cos(t) * std::exp(-0.2 * std::sin(t)); }
double lambda_w_d2(double t) {
    const double c = std::cos(t), s = std::sin(t);
    return (0.2 * s + 0.04 * c * c) * std::exp(-0.2 * s);
}

}  // namespace

TEST(Bochner, BarSwapsPairs) {
    EXPECT_EQ(bar(kE1), kF1);
    EXPECT_EQ(bar(kF1), kE1);
    EXPECT_EQ(bar(kE2), kF2);
    EXPECT_EQ(bar(kF2), kE2);
}

TEST(Bochner, FlatProjectionHasVanishingConnection) {
    const auto& e = find_entry("flat.projection");
    const PointAnalysis pa = analyze_point(*e.map, Point{0.1, 0.2, -0.3, 0.4, 0.5});
    for (const Jet& g : pa.conn.data) EXPECT_EQ(g.value(), 0.0);
}

TEST(Bochner, WarpedAdaptedFrame) {
    const auto& e = find_entry("warped.sin");
    const double t = -1.0;
    const AdaptedFrame5D f = build_adapted_frame_5d(*e.map, Point{0.1, 0.2, -0.3, 0.4, t});
    EXPECT_FALSE(f.collision);
    EXPECT_NEAR(f.lambda1_sq - f.lambda2_sq, lambda_w(t), 1e-12);
    const double sign = f.e[kV](4) > 0 ? 1.0 : -1.0;
    const double fp = 0.1 * std::cos(t);
    EXPECT_NEAR(f.gamma(kE1, kE1, kV), -sign * fp, 1e-12);
    EXPECT_NEAR(f.gamma(kF1, kF1, kV), -sign * fp, 1e-12);
    EXPECT_NEAR(f.gamma(kE2, kE2, kV), 0.0, 1e-12);
    EXPECT_NEAR(f.gamma(kE1, kF1, kV), 0.0, 1e-12);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            for (int k = 0; k < 5; ++k) EXPECT_NEAR(f.gamma(i, j, k), -f.gamma(i, k, j), 1e-12);
}

TEST(Bochner, GammaRelationsVanishOnWarpedMaps) {
    for (const char* id : {"warped.sin", "warped.twisted"}) {
        const auto& e = find_entry(id);
        for (const Point& p : sample_points(e, 4, 5)) {
            const AdaptedFrame5D f = build_adapted_frame_5d(*e.map, p);
            EXPECT_LT(gamma_phwc_relations(f).max_residual, 1e-8) << id;
            EXPECT_LT(gamma_zero_relation(f).max_residual, 1e-8) << id;
            EXPECT_LT(sff_f_invariance(f).max_residual, 1e-8) << id;
            EXPECT_LT(gamma_tilde_identity(f).max_residual, 1e-8) << id;
        }
    }
}

TEST(Bochner, RadialLaplacianOracle) {
    // on W the Laplacian of a function of t alone is Λ'' + 2 f' Λ'
    const auto& e = find_entry("warped.sin");
    for (double t : {-2.5, -1.9, -std::numbers::pi / 2, -1.0, -0.4}) {
        const DeltaLambdaReport r = delta_lambda_formula(*e.map, Point{0.3, -0.2, 0.1, 0.0, t});
        const double oracle = lambda_w_d2(t) + 2.0 * 0.1 * std::cos(t) * lambda_w_d1(t);
        EXPECT_NEAR(r.lambda, lambda_w(t), 1e-12);
        EXPECT_NEAR(r.direct, oracle, 1e-10);
        EXPECT_NEAR(r.formula, oracle, 1e-10);
        double sum = 0.0;
        for (const auto& [name, v] : r.blocks) sum += v;
        EXPECT_NEAR(sum, r.formula, 1e-12);
    }
}

TEST(Bochner, TwistedFormulaMatchesDirectLaplacian) {
    const auto& e = find_entry("warped.twisted");
    for (const Point& p : sample_points(e, 5, 12)) {
        const DeltaLambdaReport r = delta_lambda_formula(*e.map, p);
        EXPECT_NEAR(r.formula, r.direct, 1e-9 * std::max(1.0, std::abs(r.direct)));
    }
}

TEST(Bochner, FibreMaximumIsAtMinusHalfPi) {
    const auto& e = find_entry("warped.sin");
    const FibreMaximum m = fibre_maximum(*e.map, Point{0.1, 0.1, 0.1, 0.1, -1.0}, 4);
    EXPECT_TRUE(m.interior);
    EXPECT_NEAR(m.point[4], -std::numbers::pi / 2, 1e-6);
    EXPECT_NEAR(m.lambda, lambda_w(-std::numbers::pi / 2), 1e-12);
    EXPECT_LT(delta_lambda_formula(*e.map, m.point).formula, 0.0);
}

TEST(Bochner, DilatationGate) {
    EXPECT_TRUE(dilatation_gate(2.6, 1.0));
    EXPECT_FALSE(dilatation_gate(2.7, 1.0));
    EXPECT_TRUE(dilatation_gate(1.0, 1.0));
}

TEST(Bochner, HypothesisReportOnWarpedMap) {
    const AdaptedFrame5D f = build_adapted_frame_5d(*find_entry("warped.sin").map, Point{0.1, 0.2, 0.3, 0.4, -1.2});
    const HypothesisReport h = hypothesis_checks(f);
    EXPECT_NEAR(h.dilatation_sq, f.lambda1_sq / f.lambda2_sq, 1e-14);
    EXPECT_TRUE(h.dilatation_below_golden);
    EXPECT_NEAR(h.gamma_1bar1_0, 0.0, 1e-12);
    EXPECT_NEAR(h.gamma_2bar2_0, 0.0, 1e-12);
    EXPECT_NEAR(h.fibre_mean_curvature, 0.0, 1e-12);
    const Hypotheses5D hy = theorem_hypotheses(f);
    EXPECT_TRUE(hy.holds());
}

TEST(Bochner, Errors) {
    const auto& heis = find_entry("heisenberg.ball");
    const Point hp = sample_points(heis, 1, 0).front();
    EXPECT_EQ(code_of([&] { delta_lambda_formula(*heis.map, hp); }), ErrorCode::HypothesisViolated);
    EXPECT_EQ(code_of([] { build_adapted_frame_5d(*find_entry("warped.fibre").map, Point{0.0, 0.0, 0.0}); }),
              ErrorCode::HypothesisViolated);
    EXPECT_EQ(code_of([] { delta_lambda_formula(*find_entry("flat.projection").map, Point{0.1, 0.2, 0.3, 0.4, 0.5}); }),
              ErrorCode::GroupCollision);
}

TEST(Bochner, ConformalWarpedMapCollides) {
    const AdaptedFrame5D f = build_adapted_frame_5d(*find_entry("warped.conformal").map, Point{0.1, 0.2, 0.3, 0.4, 0.5});
    EXPECT_TRUE(f.collision);
    EXPECT_NEAR(f.lambda1_sq, f.lambda2_sq, 1e-12);
}
