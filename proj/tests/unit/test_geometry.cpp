#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "eigenmap/errors.hpp"
#include "eigenmap/geometry.hpp"

using namespace eigenmap;

namespace {

ChartGeometry flat(int dim) {
    ChartGeometry g;
    g.name = "flat";
    g.dim = dim;
    g.domain_box.assign(dim, {-2.0, 2.0});
    g.metric = [dim](std::span<const Jet>) { return JetMatrix::identity(dim); };
    return g;
}

// Round unit sphere in stereographic coordinates: 4 δ / (1 + |u|²)².
ChartGeometry sphere(int dim) {
    ChartGeometry g = flat(dim);
    g.name = "sphere";
    g.metric = [dim](std::span<const Jet> u) {
        Jet r2(0.0);
        for (int i = 0; i < dim; ++i) r2 += u[i] * u[i];
        const Jet c = Jet(4.0) / square(Jet(1.0) + r2);
        JetMatrix m(dim, dim);
        for (int i = 0; i < dim; ++i) m(i, i) = c;
        return m;
    };
    return g;
}

// Hyperbolic upper half plane dx² + dy² over y².
ChartGeometry half_plane() {
    ChartGeometry g = flat(2);
    g.domain_box = {{-2.0, 2.0}, {0.1, 3.0}};
    g.metric = [](std::span<const Jet> u) {
        const Jet c = inv(u[1] * u[1]);
        JetMatrix m(2, 2);
        m(0, 0) = c;
        m(1, 1) = c;
        return m;
    };
    return g;
}

}  // namespace

TEST(Geometry, FlatChristoffelsAndCurvatureVanish) {
    const Point p{0.3, -0.2, 0.7};
    const Tensor3 c = christoffel(flat(3), p);
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) EXPECT_EQ(c(k, i, j), 0.0);
    EXPECT_EQ(ricci(flat(3), p).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Geometry, HalfPlaneChristoffelsMatchClosedForm) {
    const Point p{0.4, 1.3};
    const Tensor3 c = christoffel(half_plane(), p);
    const double y = p[1];
    EXPECT_NEAR(c(0, 0, 1), -1.0 / y, 1e-12);
    EXPECT_NEAR(c(1, 0, 0), 1.0 / y, 1e-12);
    EXPECT_NEAR(c(1, 1, 1), -1.0 / y, 1e-12);
    EXPECT_NEAR(c(0, 0, 0), 0.0, 1e-12);
}

TEST(Geometry, SphereHasUnitSectionalCurvature) {
    const ChartGeometry s = sphere(3);
    const Point p{0.2, -0.5, 0.4};
    Eigen::VectorXd x(3), y(3);
    x << 1.0, 0.3, -0.2;
    y << -0.4, 0.9, 0.5;
    EXPECT_NEAR(sectional_curvature(s, p, x, y), 1.0, 1e-10);
    const Eigen::MatrixXd ric = ricci(s, p);
    const Eigen::MatrixXd g = local_geometry(s, p).metric();
    EXPECT_NEAR((ric - 2.0 * g).cwiseAbs().maxCoeff(), 0.0, 1e-10);
}

TEST(Geometry, HalfPlaneHasCurvatureMinusOne) {
    Eigen::VectorXd x(2), y(2);
    x << 1.0, 0.0;
    y << 0.3, 1.0;
    EXPECT_NEAR(sectional_curvature(half_plane(), Point{0.1, 0.7}, x, y), -1.0, 1e-10);
}

TEST(Geometry, RiemannFrameComponentsHaveCurvatureSymmetries) {
    const ChartGeometry s = sphere(3);
    const Point p{0.1, 0.3, -0.6};
    const LocalGeometry lg = local_geometry(s, p);
    const auto frame = orthonormal_frame(lg.metric());
    const Tensor4 r = riemann(lg, frame);
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
            for (int c = 0; c < 3; ++c) {
                for (int d = 0; d < 3; ++d) {
                    EXPECT_NEAR(r(a, b, c, d), -r(b, a, c, d), 1e-10);
                    EXPECT_NEAR(r(a, b, c, d), r(c, d, a, b), 1e-10);
                    // round sphere: R_abcd = δ_ac δ_bd - δ_ad δ_bc
                    EXPECT_NEAR(r(a, b, c, d), double(a == c && b == d) - double(a == d && b == c), 1e-10);
                }
            }
        }
    }
}

TEST(Geometry, LaplacianOfQuadraticInFlatSpace) {
    const Point p{0.5, -0.1, 0.2, 0.9};
    const LocalGeometry lg = local_geometry(flat(4), p);
    auto xs = seed_variables(p, 3);
    Jet u(0.0);
    for (const auto& x : xs) u += x * x;
    EXPECT_NEAR(laplace_beltrami(lg, u), 8.0, 1e-12);
}

TEST(Geometry, LaplacianMatchesConformalOracleOnSphere) {
    // On a conformally flat surface g = c δ, Δu = (u_xx + u_yy) / c.
    const ChartGeometry s = sphere(2);
    const Point p{0.4, -0.3};
    const LocalGeometry lg = local_geometry(s, p);
    auto xs = seed_variables(p, 3);
    const Jet u = sin(xs[0]) * exp(xs[1]);
    const double flat_lap = -std::sin(p[0]) * std::exp(p[1]) + std::sin(p[0]) * std::exp(p[1]);
    const double c = 4.0 / std::pow(1.0 + p[0] * p[0] + p[1] * p[1], 2);
    EXPECT_NEAR(laplace_beltrami(lg, u), flat_lap / c, 1e-12);
    const Jet v = xs[0] * xs[0] * xs[1];
    EXPECT_NEAR(laplace_beltrami(lg, v), 2.0 * p[1] / c, 1e-12);
    EXPECT_NEAR(laplace_beltrami(lg, v, orthonormal_frame(lg.metric())), 2.0 * p[1] / c, 1e-12);
}

TEST(Geometry, OrthonormalFrameIsOrthonormal) {
    const ChartGeometry s = sphere(3);
    const Eigen::MatrixXd g = local_geometry(s, Point{0.3, 0.1, 0.2}).metric();
    const auto e = orthonormal_frame(g);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) EXPECT_NEAR(inner(g, e[i], e[j]), double(i == j), 1e-13);
}

TEST(Geometry, DegenerateSectionThrows) {
    Eigen::VectorXd x(3);
    x << 1.0, 2.0, 3.0;
    try {
        sectional_curvature(flat(3), Point{0.0, 0.0, 0.0}, x, 2.0 * x);
        FAIL() << "expected DegenerateSection";
    } catch (const GeometryError& e) {
        EXPECT_EQ(e.code(), ErrorCode::DegenerateSection);
    }
}

TEST(Geometry, PointOutsideChartThrows) {
    try {
        local_geometry(flat(2), Point{5.0, 0.0});
        FAIL() << "expected PointOutOfDomain";
    } catch (const GeometryError& e) {
        EXPECT_EQ(e.code(), ErrorCode::PointOutOfDomain);
    }
}
