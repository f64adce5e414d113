#pragma once

#include <span>
#include <vector>

#include "eigenmap/check.hpp"
#include "eigenmap/spectral.hpp"

namespace eigenmap {

/// Per horizontal slot k: E_k[e(φ) - λ_k²] against
/// Σ_i (λ_i² - λ_k²) g(∇_{E_i}E_i, E_k) - (m - n) λ_k² g(μ^V, E_k).
struct HarmonicityCriterion {
    std::vector<int> slots;
    std::vector<Sides> terms;
    double max_residual = 0.0;
};
/// Throws RankDeficient.
HarmonicityCriterion harmonicity_eigen_criterion(const PointAnalysis& pa);

/// (n - 2) grad^H ln λ against -(m - n) μ^V. Throws NotHWC.
VectorSides hwc_fundamental_equation(const PointAnalysis& pa, double spread_tol = 1e-8);

struct TotallyGeodesicNorms {
    double nabla_pullback = 0.0;  // ‖∇φ*h‖
    double sff = 0.0;             // ‖∇dφ‖
};
TotallyGeodesicNorms totally_geodesic_check(const MapPointData& d);

/// Remark on fibres of harmonic maps: lhs = ‖div^H φ*h - d e(φ)|_H‖, rhs = ‖μ^V‖.
Sides minimal_fibre_remark(const PointAnalysis& pa);

/// Replaces the domain metric by σ^{-2} g on H plus ρ^{-2} g on V, the split
/// being the one induced by the map under the original metric.
/// The factors must be positive; NonPositiveConformalFactor is raised when the
/// new metric is evaluated at a point where they are not.
SmoothMap biconformal_transform(const SmoothMap& map, ScalarField sigma, ScalarField rho,
                                const SpectralOptions& opts = {});

/// The three conditions of the biconformal theorem at one point.
struct BiconformalConditions {
    double tension_g = 0.0;    // |τ| for g
    double tension_bar = 0.0;  // |τ| for the transformed metric
    double grad_h = 0.0;       // |grad^H(ρ^{m-n} σ^{n-2})|
    bool harmonic_g = false;
    bool harmonic_bar = false;
    bool gradient_free = false;
    /// Whenever two conditions hold at `hold_tol`, the third holds at `conclude_tol`.
    bool implication_holds = true;
};
BiconformalConditions biconformal_conditions(const SmoothMap& map, const SmoothMap& transformed,
                                             const ScalarField& sigma, const ScalarField& rho,
                                             std::span<const double> p, double hold_tol = 1e-6,
                                             double conclude_tol = 1e-5);

struct BiconformalReport {
    std::vector<BiconformalConditions> points;
    bool consistent = true;
    /// Largest |λ̄_i² - σ²λ_i²| over the samples.
    double eigenvalue_law = 0.0;
    /// Largest |‖Ē_i‖_g - σ| (horizontal) and |‖Ē_α‖_g - ρ| (vertical).
    double frame_law = 0.0;
};
BiconformalReport biconformal_two_imply_third(const SmoothMap& map, const ScalarField& sigma, const ScalarField& rho,
                                              const std::vector<Point>& samples);

}  // namespace eigenmap
