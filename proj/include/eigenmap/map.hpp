#pragma once

#include <span>
#include <string>

#include <Eigen/Dense>

#include "eigenmap/geometry.hpp"

namespace eigenmap {

/// Smooth map between two charts; components take m jets and return n jets.
struct SmoothMap {
    std::string name;
    ChartGeometry domain;
    ChartGeometry codomain;
    VectorField components;

    int m() const { return domain.dim; }
    int n() const { return codomain.dim; }
};

/// Per-point first and second order data of a map.
///
/// Jets are seeded at p in the m domain variables: the map to order 3, the
/// Jacobian, pullback and endomorphism A = g^{-1} φ*h to order 2.
struct MapPointData {
    Point p;
    Point q;  // φ(p)
    int m = 0;
    int n = 0;

    LocalGeometry dom;  // domain metric at p
    LocalGeometry cod;  // codomain metric at φ(p), in codomain variables

    JetVector phi;
    JetMatrix jac;       // n x m
    JetMatrix h_at_phi;  // n x n, jets in domain variables
    JetMatrix pullback;  // m x m
    JetMatrix A;         // m x m endomorphism of φ*h

    Eigen::MatrixXd J_phi;
    Tensor3 sff;  // ∇dφ(∂_i, ∂_j)^a indexed (a, i, j)
    Tensor3 nabla_pullback;  // (∇_a φ*h)_bc
    Eigen::VectorXd tension;
    Jet energy;  // e(φ) to order 2
    double energy_density = 0.0;

    Eigen::MatrixXd g() const { return dom.metric(); }
    Eigen::MatrixXd h() const { return cod.metric(); }
    Eigen::VectorXd push(const Eigen::VectorXd& x) const { return J_phi * x; }
    /// ∇dφ(X, Y) as a codomain vector.
    Eigen::VectorXd sff_apply(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
    /// dφ^t: codomain vector to domain vector (g-adjoint of dφ).
    Eigen::MatrixXd adjoint() const;
};

/// Evaluates all map data at p. Throws PointOutOfDomain, CodomainExit, SingularMetric.
MapPointData analyze_map(const SmoothMap& map, std::span<const double> p);

Eigen::MatrixXd pullback_metric(const SmoothMap& map, std::span<const double> p);
Tensor3 second_fundamental_form(const SmoothMap& map, std::span<const double> p);
Eigen::VectorXd tension(const SmoothMap& map, std::span<const double> p);
/// τ computed as a trace over the given orthonormal frame.
Eigen::VectorXd tension(const MapPointData& d, const std::vector<Eigen::VectorXd>& frame);

/// S = e(φ) g - φ*h at p.
Eigen::MatrixXd stress_energy(const MapPointData& d);
/// div S as a covector, computed from the jets of S.
Eigen::VectorXd div_stress_energy(const MapPointData& d);
/// d e(φ) - div φ*h as a covector.
Eigen::VectorXd div_stress_energy_split(const MapPointData& d);
Eigen::VectorXd div_pullback(const MapPointData& d);

/// (∇_X φ*h)(Y, Z).
double pullback_covariant_derivative(const MapPointData& d, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                     const Eigen::VectorXd& z);
/// h(∇dφ(X, Y), dφ(Z)) + h(dφ(Y), ∇dφ(X, Z)).
double pullback_covariant_derivative_via_sff(const MapPointData& d, const Eigen::VectorXd& x,
                                             const Eigen::VectorXd& y, const Eigen::VectorXd& z);
/// ½[(∇_X φ*h)(Y,Z) + (∇_Y φ*h)(Z,X) - (∇_Z φ*h)(X,Y)].
double sff_polarization(const MapPointData& d, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                        const Eigen::VectorXd& z);

}  // namespace eigenmap
