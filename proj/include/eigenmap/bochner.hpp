#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "eigenmap/spectral.hpp"

namespace eigenmap {

/// Frame slots of a five-to-four adapted frame {E_1, FE_1, E_2, FE_2, V}.
enum Slot5 : int { kE1 = 0, kF1 = 1, kE2 = 2, kF2 = 3, kV = 4 };

/// Adapted frame of a PHWC map M⁵ -> N⁴ at a regular point.
struct AdaptedFrame5D {
    PointAnalysis analysis;
    std::array<Eigen::VectorXd, 5> e;
    double lambda1_sq = 0.0;
    double lambda2_sq = 0.0;
    bool collision = false;  // λ_1² - λ_2² < 1e-7
    /// ∇_V V = a_1 E_1 + a_2 E_2 + b_1 FE_1 + b_2 FE_2
    std::array<double, 2> a{};
    std::array<double, 2> b{};

    /// Γ_IJ^K = g(∇_{E_I} E_J, E_K) in slot indices.
    double gamma(int i, int j, int k) const { return analysis.conn.value(i, j, k); }
    /// Γ̃_0I^J = h(∇dφ(V, E_I) + dφ(∇_V E_I), dφ(E_J)) for horizontal I, J.
    double gamma_tilde(int i, int j) const;
    /// λ² of the pair holding a horizontal slot.
    double lambda_sq(int slot) const { return slot < kE2 ? lambda1_sq : lambda2_sq; }
};

/// Throws HypothesisViolated unless m = 5 and n = 4, RankDeficient below rank 4,
/// NotPHWC or RankOdd when no f-structure is induced. A collision is flagged, not thrown.
AdaptedFrame5D build_adapted_frame_5d(const SmoothMap& map, std::span<const double> p);

/// Pair partner of a horizontal slot (E_i <-> FE_i).
int bar(int slot);

struct ResidualFamily {
    std::vector<std::pair<std::string, double>> terms;
    double max_residual = 0.0;
    bool skipped = false;  // relation degenerate at this point
    void add(std::string name, double r);
};

/// Γ_0ī^j + Γ_0i^j̄ + Γ_īj^0 + Γ_ij̄^0, Γ_ii^0 - Γ_īī^0 and Γ_iī^0 + Γ_īi^0.
ResidualFamily gamma_phwc_relations(const AdaptedFrame5D& f);
/// Γ_IJ^0 - Γ̃_0I^J / λ_J² + Γ_0I^J and (λ_I² - λ_J²)Γ_0I^J - λ_I²Γ_JI^0 - λ_J²Γ_IJ^0;
/// the second is skipped for slots in the same pair or on a collision.
ResidualFamily gamma_zero_relation(const AdaptedFrame5D& f);
/// Γ_īj^0 + Γ_jī^0 + Γ_ij̄^0 + Γ_j̄i^0 and Γ_īj̄^0 + Γ_j̄ī^0 - Γ_ij^0 - Γ_ji^0.
ResidualFamily sff_f_invariance(const AdaptedFrame5D& f);
/// Γ̃_0I^J against λ_I²λ_J²(Γ_IJ^0 + Γ_JI^0)/(λ_I² - λ_J²) for slots in different pairs.
ResidualFamily gamma_tilde_identity(const AdaptedFrame5D& f);

struct DeltaLambdaReport {
    double lambda = 0.0;  // Λ = λ_1² - λ_2²
    double direct = 0.0;  // Laplace-Beltrami of the Λ jet
    double formula = 0.0;  // the displayed right-hand side
    /// The same with 3/2 in place of 1/2 on the V(λ_i²)² terms.
    double formula_three_halves = 0.0;
    std::vector<std::pair<std::string, double>> blocks;
};

struct Hypotheses5D {
    double tension = 0.0;
    double grad_energy_horizontal = 0.0;
    int rank = 0;
    bool holds(double tol = 1e-7) const { return rank == 4 && tension < tol && grad_energy_horizontal < tol; }
};
Hypotheses5D theorem_hypotheses(const AdaptedFrame5D& f);

/// Right-hand side of the ΔΛ expression and the direct Laplacian of Λ.
/// Throws HypothesisViolated (naming the failed hypothesis) or GroupCollision.
DeltaLambdaReport delta_lambda_formula(const SmoothMap& map, std::span<const double> p);
DeltaLambdaReport delta_lambda_formula(const AdaptedFrame5D& f);

struct HypothesisReport {
    double f_parallel_h = 0.0;     // ‖P_H (∇_X F) Y‖ over horizontal X, Y
    double f_parallel_full = 0.0;  // ‖(∇_X F) Y‖ over horizontal X and all Y
    double nearly_cosymplectic = 0.0;  // max |(∇_X F)Y + (∇_Y F)X|
    double dilatation_sq = 0.0;    // λ_1²/λ_2²
    bool dilatation_below_golden = false;  // ℓ² < (3 + √5)/2
    double min_sectional = 0.0;    // over frame planes and random planes
    double gamma_1bar1_0 = 0.0;    // |Γ_{11̄}^0|
    double gamma_2bar2_0 = 0.0;    // |Γ_{22̄}^0|
    double fibre_mean_curvature = 0.0;
    /// Evaluated only when f_parallel_full < 1e-8.
    std::optional<double> r0i0i_max;
    std::optional<double> gamma_ij0_max;
};
HypothesisReport hypothesis_checks(const AdaptedFrame5D& f, int random_planes = 50, unsigned long long seed = 3);

/// ℓ² < (3 + √5)/2.
bool dilatation_gate(double lambda1_sq, double lambda2_sq);

struct FibreMaximum {
    Point point;
    double lambda = 0.0;
    bool interior = false;
};
/// Maximises Λ along the coordinate line `axis` through p with Brent's method.
FibreMaximum fibre_maximum(const SmoothMap& map, std::span<const double> p, int axis);

}  // namespace eigenmap
