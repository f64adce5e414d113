#pragma once

#include <span>

#include <Eigen/Dense>

#include "eigenmap/check.hpp"
#include "eigenmap/spectral.hpp"

namespace eigenmap {

struct StructureTest {
    bool holds = false;
    double residual = 0.0;
};

/// Commutator test [dφ dφ^t, J] = 0; holds when the max-norm residual is below 1e-9.
/// Throws OddCodomain, MissingStructure.
StructureTest is_phwc(const SmoothMap& map, std::span<const double> p);
StructureTest is_phwc(const MapPointData& d, const Eigen::MatrixXd& j_at_phi);

/// Induced f-structure at one point with its adapted frame {E_i, FE_i, E_α}.
struct FStructurePack {
    Eigen::MatrixXd F;    // endomorphism in coordinate components
    Eigen::MatrixXd Phi;  // Φ(X, Y) = g(X, FY)
    PointFrame adapted_frame;
};

/// Throws NotPHWC or RankOdd.
FStructurePack induce_f_structure(const PointAnalysis& pa);
FStructurePack induce_f_structure(const SmoothMap& map, std::span<const double> p);
PointFrame adapted_frame(const SmoothMap& map, std::span<const double> p);

/// Max-norm residuals of the f-structure invariants at one point.
struct FStructureResiduals {
    double f_cubed = 0.0;          // F^3 + F
    double holomorphy = 0.0;       // dφ F - J dφ
    double anti_invariance = 0.0;  // φ*h(FX, Y) + φ*h(X, FY)
    double projector_commute = 0.0;  // P_i F - F P_i
    double doubling = 0.0;         // |λ²(E_i) - λ²(FE_i)| and φ*h(E_i, FE_i)
};
FStructureResiduals f_structure_residuals(const SmoothMap& map, const PointAnalysis& pa);

/// Jets of J along φ, order 2 in the domain variables.
JetMatrix complex_structure_along(const SmoothMap& map, const MapPointData& d);

/// (∇_X T) for an endomorphism field T given as jets, at the base point.
Eigen::MatrixXd nabla_endomorphism(const LocalGeometry& lg, const JetMatrix& t, const Eigen::VectorXd& x);

/// dβ(X, Y, Z) = X β(Y, Z) + Y β(Z, X) + Z β(X, Y) for constant-coefficient X, Y, Z.
double exterior_derivative_2form(const JetMatrix& beta, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                 const Eigen::VectorXd& z);

/// Largest (1,2)+(2,1) component of dΩ over orthonormal frame triples.
/// Throws MissingStructure when the chart has no complex structure.
double check_12_symplectic(const ChartGeometry& geom, std::span<const double> p);
/// Largest (3,0)+(0,3) component of dΩ over the same triples.
double check_30_part(const ChartGeometry& geom, std::span<const double> p);

/// ‖L_X g‖ over an orthonormal frame for the vector field X.
double lie_derivative_metric_norm(const ChartGeometry& geom, std::span<const double> p, const VectorField& x);

/// Largest |(∇_X T)Y + (∇_Y T)X| over orthonormal frame pairs, for the
/// chart's contact tensor. Throws MissingStructure.
double nearly_cosymplectic_residual(const ChartGeometry& geom, std::span<const double> p);

/// (λ_i² - λ_k²) g(∇_{E_i}E_i + ∇_{FE_i}FE_i, E_k) against
/// 3 dφ*Ω(E_i, FE_i, E_k) + E_k(λ_i²) - λ_k² g(F[(∇_{E_i}F)E_i + (∇_{FE_i}F)FE_i], E_k).
/// `i` is the slot of an E_i (its F-image sits at i + 1); `k` a horizontal slot outside the pair.
Sides phwc_derivative_identity(const SmoothMap& map, const PointAnalysis& pa, int i, int k);

/// (∇^φ_X J)dφ(Y) against dφ((∇_X F)Y) + ∇dφ(X, FY) - J∇dφ(X, Y), as codomain vectors.
VectorSides nabla_dphi_J_identity(const SmoothMap& map, const PointAnalysis& pa, const Eigen::VectorXd& x,
                                  const Eigen::VectorXd& y);

/// dφ(∇_v dφ^t(JY)) = J dφ(∇_v dφ^t(Y)) over horizontal frame vectors v and coordinate fields Y;
/// holds when the residual is below 1e-8. Throws NotPHWC.
StructureTest is_phh(const SmoothMap& map, const PointAnalysis& pa);

}  // namespace eigenmap
