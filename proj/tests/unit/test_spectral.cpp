#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "eigenmap/catalog.hpp"
#include "eigenmap/errors.hpp"
#include "eigenmap/spectral.hpp"

using namespace eigenmap;

namespace {

// Generalized eigenvalues of φ*h against g, descending, from Eigen directly.
Eigen::VectorXd plain_eigenvalues(const SmoothMap& map, const Point& p) {
    const Eigen::MatrixXd a = pullback_metric(map, p);
    const Eigen::MatrixXd g = local_geometry(map.domain, p).metric();
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(a, g, Eigen::EigenvaluesOnly);
    return es.eigenvalues().reverse();
}

Point shifted(const Point& p, const Eigen::VectorXd& v, double h) {
    Point q = p;
    for (std::size_t i = 0; i < q.size(); ++i) q[i] += h * v(i);
    return q;
}

SmoothMap linear_map(double a, double b) {
    ChartGeometry dom;
    dom.name = "R2";
    dom.dim = 2;
    dom.domain_box = {{-1.0, 1.0}, {-1.0, 1.0}};
    dom.metric = [](std::span<const Jet>) { return JetMatrix::identity(2); };
    ChartGeometry cod = dom;
    cod.domain_box = {{-5.0, 5.0}, {-5.0, 5.0}};
    SmoothMap m;
    m.name = "linear";
    m.domain = dom;
    m.codomain = cod;
    m.components = [a, b](std::span<const Jet> xs) { return JetVector{Jet(a) * xs[0], Jet(b) * xs[1]}; };
    return m;
}

}  // namespace

TEST(Map, LinearMapIsHarmonicWithSquaredScales) {
    const SmoothMap m = linear_map(2.0, 3.0);
    const Point p{0.2, -0.4};
    EXPECT_NEAR(tension(m, p).norm(), 0.0, 1e-14);
    const SpectralData sd = eigen_analyze(m, p);
    ASSERT_EQ(sd.eigenvalues.size(), 2u);
    EXPECT_NEAR(sd.eigenvalues[0], 9.0, 1e-12);
    EXPECT_NEAR(sd.eigenvalues[1], 4.0, 1e-12);
    EXPECT_EQ(sd.rank, 2);
}

TEST(Map, SquareMapTensionAtUnitPoint) {
    const SmoothMap& m = *find_entry("nonharmonic.square").map;
    const Eigen::VectorXd tau = tension(m, Point{1.0, 0.0});
    EXPECT_NEAR(tau(0), 2.0, 1e-12);
    EXPECT_NEAR(tau(1), 0.0, 1e-12);
}

TEST(Map, TensionIsFrameIndependent) {
    const SmoothMap& m = *find_entry("ball.m2n2.q").map;
    const Point p{0.2, -0.1, 0.3, 0.15};
    const MapPointData d = analyze_map(m, p);
    const Eigen::VectorXd t = tension(d, orthonormal_frame(d.g()));
    EXPECT_NEAR((t - d.tension).cwiseAbs().maxCoeff(), 0.0, 1e-12);
}

TEST(Map, StressEnergyDivergenceSplit) {
    const SmoothMap& m = *find_entry("warped.twisted").map;
    const MapPointData d = analyze_map(m, Point{0.1, -0.2, 0.3, 0.05, 0.4});
    EXPECT_NEAR((div_stress_energy(d) - div_stress_energy_split(d)).cwiseAbs().maxCoeff(), 0.0, 1e-10);
}

TEST(Spectral, WarpedEigenvaluesMatchClosedForm) {
    const SmoothMap& m = *find_entry("warped.sin").map;
    const double t = -1.1;
    const SpectralData sd = eigen_analyze(m, Point{0.2, 0.1, -0.3, 0.4, t});
    const double l1 = std::exp(-0.2 * std::sin(t));
    ASSERT_EQ(sd.eigenvalues.size(), 5u);
    EXPECT_NEAR(sd.eigenvalues[0], l1, 1e-12);
    EXPECT_NEAR(sd.eigenvalues[1], l1, 1e-12);
    EXPECT_NEAR(sd.eigenvalues[2], 1.0, 1e-12);
    EXPECT_NEAR(sd.eigenvalues[3], 1.0, 1e-12);
    EXPECT_NEAR(sd.eigenvalues[4], 0.0, 1e-12);
    EXPECT_EQ(sd.rank, 4);
}

TEST(Spectral, EigenvalueDerivativesMatchFiniteDifferences) {
    for (const char* id : {"warped.twisted", "ball.m2n1.q", "linear"}) {
        const auto& e = find_entry(id);
        for (const Point& p : sample_points(e, 3, 11)) {
            const PointAnalysis pa = analyze_point(*e.map, p);
            const auto frame = pa.frame_at_point();
            for (int k = 0; k < pa.frame.size(); ++k) {
                const double h = 1e-5;
                const Eigen::VectorXd fd =
                    (plain_eigenvalues(*e.map, shifted(p, frame[k], h)) - plain_eigenvalues(*e.map, shifted(p, frame[k], -h))) /
                    (2 * h);
                for (int i : pa.horizontal_slots()) {
                    // group eigenvalues are smooth; sorted plain eigenvalues match group order away from crossings
                    EXPECT_NEAR(eigenvalue_derivative_formula_a(pa, i, k), fd(i), 1e-6) << id;
                    if (i != k) EXPECT_NEAR(eigenvalue_derivative_formula_b(pa, i, k), fd(i), 1e-6) << id;
                    EXPECT_NEAR(eigenvalue_derivative_direct(pa, i, frame[k]), fd(i), 1e-6) << id;
                }
            }
        }
    }
}

TEST(Spectral, FrameIsOrthonormalAndAdapted) {
    const auto& e = find_entry("warped.twisted");
    const PointAnalysis pa = analyze_point(*e.map, Point{0.3, 0.2, -0.1, 0.4, 0.5});
    const auto frame = pa.frame_at_point();
    const Eigen::MatrixXd g = pa.data.g();
    const Eigen::MatrixXd a = pa.data.A.value();
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) EXPECT_NEAR(inner(g, frame[i], frame[j]), double(i == j), 1e-12);
        EXPECT_NEAR((a * frame[i] - pa.eigenvalues(i) * frame[i]).norm(), 0.0, 1e-12);
    }
    ASSERT_TRUE(pa.F.has_value());
    const Eigen::MatrixXd f = pa.F->value();
    EXPECT_NEAR((f * frame[0] - frame[1]).norm(), 0.0, 1e-12);
    EXPECT_NEAR((f * frame[2] - frame[3]).norm(), 0.0, 1e-12);
}

TEST(Spectral, ConnectionMatchesFiniteDifferenceFrames) {
    const auto& e = find_entry("warped.twisted");
    const PointAnalysis pa = analyze_point(*e.map, Point{0.1, -0.3, 0.2, 0.25, -0.4});
    const ConnectionValues fd = connection_fd(*e.map, pa);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            for (int k = 0; k < 5; ++k) {
                EXPECT_NEAR(pa.conn.value(i, j, k), fd(i, j, k), 1e-6);
                EXPECT_NEAR(pa.conn.value(i, j, k), -pa.conn.value(i, k, j), 1e-10);
            }
}

TEST(Spectral, WarpedConnectionSymbols) {
    // ∇_{E_1}E_1 = -f' ∂_t on W
    const auto& e = find_entry("warped.sin");
    const double t = -0.9;
    const PointAnalysis pa = analyze_point(*e.map, Point{0.0, 0.1, 0.2, 0.3, t});
    const double fp = 0.1 * std::cos(t);
    const auto v = pa.vertical_slots();
    ASSERT_EQ(v.size(), 1u);
    const double sign = pa.frame_at_point()[v[0]](4) > 0 ? 1.0 : -1.0;
    EXPECT_NEAR(pa.conn.value(0, 0, v[0]), -fp * sign, 1e-12);
    EXPECT_NEAR(pa.conn.value(2, 2, v[0]), 0.0, 1e-12);
}

TEST(Spectral, MeanCurvatureAndLieDerivativeIdentities) {
    const auto& e = find_entry("warped.twisted");
    const PointAnalysis pa = analyze_point(*e.map, Point{-0.2, 0.3, 0.1, -0.1, 0.6});
    EXPECT_NEAR((mean_curvature_horizontal(pa) - mean_curvature_horizontal_formula(pa)).norm(), 0.0, 1e-10);
    const int v = pa.vertical_slots()[0];
    for (int x : {0, 1})
        for (int y : {0, 1}) {
            const auto r = lie_derivative_identity(pa, v, x, y);
            EXPECT_NEAR(r.lhs, r.rhs, 1e-10);
        }
}

TEST(Spectral, NearCollisionThrows) {
    const SmoothMap m = linear_map(1.0 + 1e-8, 1.0);
    try {
        analyze_point(m, Point{0.1, 0.2});
        FAIL() << "expected EigenvalueCollision";
    } catch (const GeometryError& err) {
        EXPECT_EQ(err.code(), ErrorCode::EigenvalueCollision);
    }
    EXPECT_NO_THROW(analyze_point(linear_map(1.0, 1.0), Point{0.1, 0.2}));
}
