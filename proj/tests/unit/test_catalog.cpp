#include <cmath>
#include <random>

#include <gtest/gtest.h>

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

Eigen::VectorXd apply_j(const ChartGeometry& g, const Point& p, const Eigen::VectorXd& x) {
    const auto xs = seed_variables(p, 0);
    return g.complex_structure(xs).value() * x;
}

}  // namespace

TEST(Catalog, DHomothetyConstant) {
    EXPECT_DOUBLE_EQ(d_homothety_c(1.0, 2.0), -1.0);
    EXPECT_DOUBLE_EQ(d_homothety_c(-3.0, 0.5), -3.0);
    EXPECT_DOUBLE_EQ(d_homothety_c(5.0, 1.0), 5.0);
    EXPECT_EQ(code_of([] { d_homothety_c(1.0, 0.0); }), ErrorCode::NonPositiveA);
    EXPECT_EQ(code_of([] { d_homothety(sasakian_space_form(SasakianModel::R, 1), -1.0); }), ErrorCode::NonPositiveA);
}

TEST(Catalog, ComplexSpaceFormHolomorphicSectional) {
    for (double kappa : {1.0, -1.0}) {
        const ChartGeometry g = complex_space_form(2, kappa);
        const Point p{0.1, -0.2, 0.15, 0.05};
        std::mt19937_64 rng(8);
        std::normal_distribution<double> nd;
        for (int trial = 0; trial < 10; ++trial) {
            Eigen::VectorXd x = Eigen::VectorXd::NullaryExpr(4, [&] { return nd(rng); });
            Eigen::VectorXd y = Eigen::VectorXd::NullaryExpr(4, [&] { return nd(rng); });
            EXPECT_NEAR(sectional_curvature(g, p, x, apply_j(g, p, x)), 2.0 * kappa, 1e-9);
            const double k = sectional_curvature(g, p, x, y);
            EXPECT_GE(k * kappa, 0.5 * kappa * kappa - 1e-9);
            EXPECT_LE(k * kappa, 2.0 * kappa * kappa + 1e-9);
        }
    }
}

TEST(Catalog, ComplexSpaceFormIsEinstein) {
    const ChartGeometry g = complex_space_form(2, 1.0);
    const Point p{0.3, 0.1, -0.2, 0.25};
    const Eigen::MatrixXd ric = ricci(g, p);
    EXPECT_NEAR((ric - 3.0 * local_geometry(g, p).metric()).cwiseAbs().maxCoeff(), 0.0, 1e-9);
}

TEST(Catalog, ComplexSpaceFormDomain) {
    EXPECT_EQ(code_of([] { complex_space_form(0, 1.0); }), ErrorCode::DomainViolation);
    const ChartGeometry g = complex_space_form(1, -1.0);
    EXPECT_EQ(code_of([&] { local_geometry(g, Point{0.9, 0.9}); }), ErrorCode::PointOutOfDomain);
    EXPECT_EQ(code_of([&] { g.metric(seed_variables(Point{0.9, 0.9}, 0)); }), ErrorCode::DomainViolation);
}

TEST(Catalog, SasakianRicciClosedForm) {
    for (auto model : {SasakianModel::R, SasakianModel::S, SasakianModel::BxR}) {
        const SasakianSpaceForm s = d_homothety(sasakian_space_form(model, 2, -1.0), 1.5);
        const Point p(5, 0.1);
        const Eigen::MatrixXd ric = ricci(s.geometry, p);
        EXPECT_NEAR((ric - sasakian_ricci_closed_form(s, p)).cwiseAbs().maxCoeff(), 0.0, 1e-7);
        const Eigen::VectorXd xi = value(s.geometry.reeb_field(seed_variables(p, 0)));
        EXPECT_NEAR(xi.dot(ric * xi), 4.0, 1e-7);
    }
    EXPECT_EQ(code_of([] { sasakian_space_form(SasakianModel::BxR, 1, 1.0); }), ErrorCode::InvalidModel);
}

TEST(Catalog, BallMapLeavingTheBallThrows) {
    const HolomorphicComponents doubling = [](const std::vector<ComplexJet>& z) {
        return std::vector<ComplexJet>{2.0 * z[0]};
    };
    EXPECT_EQ(code_of([&] { holomorphic_ball_map(1, 1, doubling, "ball.double"); }), ErrorCode::RangeEscape);
}

TEST(Catalog, WarpedProjectionNeedsThirdOrderJets) {
    const ScalarFunction low = [](const Jet& t) { return t.truncated(1); };
    const ScalarFunction zero = [](const Jet&) { return Jet(0.0); };
    EXPECT_EQ(code_of([&] { warped_product_submersion(low, zero, {-1.0, 1.0}); }), ErrorCode::JetOrderInsufficient);
}

TEST(Catalog, UnknownExample) {
    EXPECT_EQ(code_of([] { find_entry("no.such.entry"); }), ErrorCode::UnknownExample);
}

TEST(Catalog, SamplesAreDeterministicAndInside) {
    const auto& e = find_entry("ball.m2n2.q");
    const auto a = sample_points(e, 8, 42), b = sample_points(e, 8, 42);
    EXPECT_EQ(a, b);
    for (const Point& p : a) EXPECT_TRUE(e.geometry.contains(p));
    EXPECT_NE(a, sample_points(e, 8, 43));
}

TEST(Catalog, EveryEntryVerifiesItsDeclaredFlags) {
    for (const auto& e : catalog()) {
        for (const CheckRecord& r : verify_entry(e, 10, 1)) EXPECT_TRUE(r.pass) << e.id << " " << r.check_id;
    }
}
