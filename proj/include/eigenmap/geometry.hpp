#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "eigenmap/linalg.hpp"

namespace eigenmap {

using Point = std::vector<double>;
using ScalarField = std::function<Jet(std::span<const Jet>)>;
using VectorField = std::function<JetVector(std::span<const Jet>)>;
using MatrixField = std::function<JetMatrix(std::span<const Jet>)>;

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

/// Coordinate chart carrying a Riemannian metric and optional structure tensors.
///
/// Fields are evaluated on jets so derivatives come from the jet arithmetic.
/// Endomorphism fields (complex structure, contact tensor) are stored as
/// matrices acting on coordinate components; one-forms as covectors.
struct ChartGeometry {
    std::string name;
    int dim = 0;
    std::vector<Interval> domain_box;
    MatrixField metric;
    /// Optional open region inside the box (a ball, say); empty means the whole box.
    std::function<bool(std::span<const double>)> region;

    MatrixField complex_structure;
    VectorField reeb_field;
    VectorField contact_form;
    MatrixField contact_tensor;

    /// Tolerance multiplier; raised for finite-difference metrics.
    double tolerance_scale = 1.0;

    bool contains(std::span<const double> p) const;
    bool has_complex_structure() const { return static_cast<bool>(complex_structure); }
    bool has_contact_structure() const { return static_cast<bool>(reeb_field); }
};

/// Orthonormal frame at a point, vectors in coordinate components.
struct PointFrame {
    Point point;
    std::vector<Eigen::VectorXd> vectors;
    std::vector<std::string> labels;

    int size() const { return static_cast<int>(vectors.size()); }
    Eigen::MatrixXd matrix() const;
};

/// Metric data at one point: jets of g and g^{-1} to order 2 and
/// Christoffel symbols Γ^k_ij to order 1.
struct LocalGeometry {
    Point p;
    int dim = 0;
    JetMatrix g;
    JetMatrix g_inv;
    std::vector<JetMatrix> gamma;  // gamma[k](i, j) = Γ^k_ij

    Eigen::MatrixXd metric() const { return g.value(); }
    double christoffel(int k, int i, int j) const { return gamma[k](i, j).value(); }
    /// (∇_X Y)^k for jet vector fields X (any order) and Y (order >= 1).
    JetVector covariant_derivative(const JetVector& x, const JetVector& y) const;
    /// g(·,·) on jet vectors using the metric jets.
    Jet inner(const JetVector& u, const JetVector& v) const;
};

/// Evaluates metric jets at p. Throws PointOutOfDomain or SingularMetric.
LocalGeometry local_geometry(const ChartGeometry& geom, std::span<const double> p, int order = 2);

/// Christoffel symbols Γ^k_ij at p, indexed (k, i, j).
Tensor3 christoffel(const ChartGeometry& geom, std::span<const double> p);

/// Coordinate curvature R^l_ijk, with R(∂_i, ∂_j)∂_k = R^l_ijk ∂_l, indexed (l, i, j, k).
Tensor4 riemann_coordinates(const LocalGeometry& local);

/// Frame components R_IJKL = g(R(E_I, E_J)E_L, E_K).
Tensor4 riemann(const ChartGeometry& geom, std::span<const double> p, const PointFrame& frame);
Tensor4 riemann(const LocalGeometry& local, const std::vector<Eigen::VectorXd>& frame);

/// Rm(X, Y, Z, W) = g(R(X, Y)W, Z).
double curvature_form(const LocalGeometry& local, const Tensor4& rc, const Eigen::VectorXd& x,
                      const Eigen::VectorXd& y, const Eigen::VectorXd& z, const Eigen::VectorXd& w);

/// K(X, Y). Throws DegenerateSection when |X ∧ Y|^2 < 1e-14.
double sectional_curvature(const ChartGeometry& geom, std::span<const double> p, const Eigen::VectorXd& x,
                           const Eigen::VectorXd& y);
double sectional_curvature(const LocalGeometry& local, const Tensor4& rc, const Eigen::VectorXd& x,
                           const Eigen::VectorXd& y);

/// Coordinate components Ric_jk.
Eigen::MatrixXd ricci(const ChartGeometry& geom, std::span<const double> p);
Eigen::MatrixXd ricci(const Tensor4& rc);

/// Δu = trace of the Hessian (non-positive at an interior maximum).
double laplace_beltrami(const LocalGeometry& local, const Jet& u);
/// Same trace over the given orthonormal frame.
double laplace_beltrami(const LocalGeometry& local, const Jet& u, const std::vector<Eigen::VectorXd>& frame);

/// (div T)_k = g^{ij} (∇_i T)_{jk} for a symmetric 2-tensor with jets of order >= 1.
Eigen::VectorXd divergence_2tensor(const LocalGeometry& local, const JetMatrix& t);

/// (∇_a T)_{bc} at p, indexed (a, b, c).
Tensor3 covariant_derivative_2tensor(const LocalGeometry& local, const JetMatrix& t);

/// g-orthonormal frame by Gram-Schmidt on the coordinate basis, pivoting on
/// the largest remaining norm.
std::vector<Eigen::VectorXd> orthonormal_frame(const Eigen::MatrixXd& g);
/// Gram-Schmidt of the given vectors in order; throws DegenerateSection on dependence.
std::vector<Eigen::VectorXd> gram_schmidt(const Eigen::MatrixXd& g, const std::vector<Eigen::VectorXd>& vs);

/// Wraps a black-box matrix field as a jet field to order 2 using central
/// differences with one Richardson level.
MatrixField finite_difference_field(std::function<Eigen::MatrixXd(std::span<const double>)> f, double step = 1e-4);

}  // namespace eigenmap
