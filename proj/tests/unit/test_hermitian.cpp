#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "eigenmap/catalog.hpp"
#include "eigenmap/errors.hpp"
#include "eigenmap/hermitian.hpp"

using namespace eigenmap;

namespace {

ChartGeometry flat_hermitian_plane() {
    ChartGeometry g;
    g.name = "C";
    g.dim = 2;
    g.domain_box = {{-3.0, 3.0}, {-3.0, 3.0}};
    g.metric = [](std::span<const Jet>) { return JetMatrix::identity(2); };
    Eigen::MatrixXd j(2, 2);
    j << 0.0, -1.0, 1.0, 0.0;
    g.complex_structure = [j](std::span<const Jet>) { return JetMatrix::constant(j); };
    return g;
}

SmoothMap stretch(double a, double b) {
    SmoothMap m;
    m.name = "stretch";
    m.domain = flat_hermitian_plane();
    m.codomain = flat_hermitian_plane();
    m.components = [a, b](std::span<const Jet> xs) { return JetVector{Jet(a) * xs[0], Jet(b) * xs[1]}; };
    return m;
}

}  // namespace

TEST(Hermitian, CrossProductOnR7IsNormedAndOrthogonal) {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> nd;
    for (int trial = 0; trial < 50; ++trial) {
        Eigen::Matrix<double, 7, 1> a, b;
        for (int i = 0; i < 7; ++i) {
            a(i) = nd(rng);
            b(i) = nd(rng);
        }
        const auto c = cross7(a, b);
        EXPECT_NEAR(c.squaredNorm(), a.squaredNorm() * b.squaredNorm() - std::pow(a.dot(b), 2), 1e-10);
        EXPECT_NEAR(c.dot(a), 0.0, 1e-12);
        EXPECT_NEAR(c.dot(b), 0.0, 1e-12);
        EXPECT_NEAR((c + cross7(b, a)).norm(), 0.0, 1e-14);
    }
}

TEST(Hermitian, ConformalMapIsPhwcAndStretchIsNot) {
    EXPECT_TRUE(is_phwc(stretch(2.0, 2.0), Point{0.3, 0.4}).holds);
    // [diag(1,4), J] has entries 3
    const StructureTest t = is_phwc(stretch(1.0, 2.0), Point{0.3, 0.4});
    EXPECT_FALSE(t.holds);
    EXPECT_GT(t.residual, 1.0);
}

TEST(Hermitian, HolomorphicBallMapsArePhwc) {
    for (const char* id : {"ball.m2n1.q", "ball.m2n2.q", "ball.m1n1.half"}) {
        const auto& e = find_entry(id);
        for (const Point& p : sample_points(e, 5, 2)) EXPECT_TRUE(is_phwc(*e.map, p).holds) << id;
    }
}

TEST(Hermitian, InducedFStructureResidualsVanish) {
    const auto& e = find_entry("warped.twisted");
    for (const Point& p : sample_points(e, 4, 9)) {
        const PointAnalysis pa = analyze_point(*e.map, p);
        const FStructureResiduals r = f_structure_residuals(*e.map, pa);
        EXPECT_LT(r.f_cubed, 1e-9);
        EXPECT_LT(r.holomorphy, 1e-9);
        EXPECT_LT(r.anti_invariance, 1e-9);
        EXPECT_LT(r.projector_commute, 1e-9);
        EXPECT_LT(r.doubling, 1e-9);
    }
}

TEST(Hermitian, InducedFKillsTheFibre) {
    const FStructurePack f = induce_f_structure(*find_entry("warped.sin").map, Point{0.1, 0.2, 0.3, 0.4, -1.0});
    Eigen::VectorXd dt = Eigen::VectorXd::Zero(5);
    dt(4) = 1.0;
    EXPECT_NEAR((f.F * dt).norm(), 0.0, 1e-12);
    EXPECT_NEAR((f.Phi + f.Phi.transpose()).cwiseAbs().maxCoeff(), 0.0, 1e-12);
}

TEST(Hermitian, KahlerFormIsClosedOnComplexSpaceForms) {
    for (const char* id : {"cpn.k=1.n=2", "cpn.k=-1.n=2"}) {
        const auto& e = find_entry(id);
        for (const Point& p : sample_points(e, 3, 4)) {
            EXPECT_LT(check_12_symplectic(e.geometry, p), 1e-9) << id;
            EXPECT_LT(check_30_part(e.geometry, p), 1e-9) << id;
        }
    }
}

TEST(Hermitian, NonIntegrableStructureIsNotSymplectic12) {
    const auto& e = find_entry("j.nonintegrable");
    const Point p = sample_points(e, 1, 0).front();
    EXPECT_GT(check_12_symplectic(e.geometry, p), 0.1);
}

TEST(Hermitian, NearlyCosymplecticSphere) {
    const auto& e = find_entry("sphere5.nc");
    for (const Point& p : sample_points(e, 3, 6)) {
        EXPECT_LT(nearly_cosymplectic_residual(e.geometry, p), 1e-8);
        EXPECT_LT(lie_derivative_metric_norm(e.geometry, p, e.geometry.reeb_field), 1e-8);
    }
}

TEST(Hermitian, WarpedProjectionIsPhh) {
    const auto& e = find_entry("warped.sin");
    const PointAnalysis pa = analyze_point(*e.map, Point{0.1, -0.2, 0.3, 0.0, -1.4});
    EXPECT_TRUE(is_phh(*e.map, pa).holds);
}

TEST(Hermitian, MissingComplexStructureThrows) {
    SmoothMap m = stretch(1.0, 1.0);
    m.codomain.complex_structure = {};
    try {
        is_phwc(m, Point{0.0, 0.0});
        FAIL() << "expected MissingStructure";
    } catch (const GeometryError& err) {
        EXPECT_EQ(err.code(), ErrorCode::MissingStructure);
    }
}
