#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "eigenmap/map.hpp"

namespace eigenmap {

struct SpectralOptions {
    double eps_rank = 1e-9;       // absolute cutoff on λ² for the kernel
    double group_rel = 1e-9;      // relative distance merging eigenvalues into a group
    double collision_gap = 1e-7;  // minimum gap between distinct groups for derivatives
    bool use_complex_structure = true;
    bool compute_connection = true;
};

/// A run of equal eigenvalues in descending order.
struct EigenGroup {
    double value = 0.0;
    int first = 0;
    int size = 0;
    bool vertical = false;
};

/// Eigen-decomposition of φ*h with respect to g at one point.
struct SpectralData {
    std::vector<double> eigenvalues;  // descending
    PointFrame frame;
    int rank = 0;
    std::vector<int> horizontal_indices;
    std::vector<int> vertical_indices;
    std::vector<EigenGroup> groups;
    std::vector<int> group_of;  // per frame slot
};

/// Spectral projectors P_j and group eigenvalues μ_j of an endomorphism field.
struct ProjectorJets {
    std::vector<EigenGroup> groups;
    std::vector<JetMatrix> projectors;
    std::vector<Jet> values;
};

/// Smooth frame field, coordinate components as jets.
struct FrameField {
    std::vector<JetVector> vectors;
    std::vector<std::string> labels;
    std::vector<int> group_of;
    std::vector<int> pivots;  // coordinate pivot per slot, -1 for F-images
    bool adapted = false;

    int size() const { return static_cast<int>(vectors.size()); }
    std::vector<Eigen::VectorXd> at_point() const;
};

/// Γ_IJ^K = g(∇_{E_I} E_J, E_K) as order-1 jets.
struct ConnectionTable {
    int size = 0;
    std::vector<Jet> data;

    const Jet& operator()(int i, int j, int k) const { return data[(i * size + j) * size + k]; }
    Jet& operator()(int i, int j, int k) { return data[(i * size + j) * size + k]; }
    double value(int i, int j, int k) const { return (*this)(i, j, k).value(); }
};

/// Numeric connection coefficients, for finite-difference cross-checks.
using ConnectionValues = Tensor3;

/// Everything derived from the map at one point: map data, spectral
/// projector jets, an eigenframe field and its connection coefficients.
struct PointAnalysis {
    MapPointData data;
    ProjectorJets spectrum;
    Eigen::VectorXd eigenvalues;  // per frame slot
    FrameField frame;
    ConnectionTable conn;
    std::optional<JetMatrix> F;  // induced f-structure when the map is PHWC into a Hermitian chart
    double phwc_residual = -1.0;

    int m() const { return data.m; }
    int rank() const;
    std::vector<Eigen::VectorXd> frame_at_point() const { return frame.at_point(); }
    const EigenGroup& group_of_slot(int slot) const { return spectrum.groups[frame.group_of[slot]]; }
    const Jet& eigenvalue_jet(int slot) const { return spectrum.values[frame.group_of[slot]]; }
    bool is_vertical(int slot) const { return group_of_slot(slot).vertical; }
    std::vector<int> horizontal_slots() const;
    std::vector<int> vertical_slots() const;
    SpectralData spectral() const;
};

/// Groups of the generalized eigenproblem φ*h v = λ² g v, descending.
std::vector<EigenGroup> eigen_groups(const Eigen::VectorXd& descending, const SpectralOptions& opts);

/// Projector jets via the resolvent expansion of A about its base value.
/// Throws EigenvalueCollision when two groups are closer than opts.collision_gap.
ProjectorJets spectral_projectors(const JetMatrix& a, const Eigen::MatrixXd& g, const SpectralOptions& opts);

/// Induced f-structure F = A^+ dφ^t J dφ as jets; zero on the kernel.
JetMatrix induced_f_jets(const MapPointData& d, const ProjectorJets& pj, const JetMatrix& j_at_phi);

/// Builds an eigenframe field; F-adapted pairs when f_jets is given.
/// A non-empty `replay` reuses recorded pivots.
FrameField build_frame(const JetMatrix& g, const ProjectorJets& pj, const JetMatrix* f_jets,
                       const std::vector<int>& replay = {});

ConnectionTable connection(const LocalGeometry& lg, const FrameField& frame);

PointAnalysis analyze_point(const SmoothMap& map, std::span<const double> p, const SpectralOptions& opts = {},
                            const std::vector<int>& replay = {});

SpectralData eigen_analyze(const SmoothMap& map, std::span<const double> p, double eps_rank = 1e-9);

/// E_k(λ_i²) = 2h(∇dφ(E_k, E_i), dφ(E_i)).
double eigenvalue_derivative_formula_a(const PointAnalysis& pa, int i, int k);
/// E_k(λ_i²) = -2h(dφ(E_k), ∇dφ(E_i, E_i)) + 2(λ_i² - λ_k²) Γ_ii^k; requires i != k.
double eigenvalue_derivative_formula_b(const PointAnalysis& pa, int i, int k);
double eigenvalue_derivative_formula_b(const PointAnalysis& pa, int i, int k, const ConnectionValues& conn);
/// Directional derivative of the group eigenvalue of slot i.
double eigenvalue_derivative_direct(const PointAnalysis& pa, int i, const Eigen::VectorXd& direction);

/// μ^H = (1/n) Σ_i (∇_{E_i} E_i)^V, coordinate components.
Eigen::VectorXd mean_curvature_horizontal(const PointAnalysis& pa);
/// (1/n) grad^V ln(λ_1 ⋯ λ_n).
Eigen::VectorXd mean_curvature_horizontal_formula(const PointAnalysis& pa);
/// μ^V = (1/(m-n)) Σ_α (∇_{E_α} E_α)^H.
Eigen::VectorXd mean_curvature_vertical(const PointAnalysis& pa);

struct LieDerivativeResult {
    double lhs = 0.0;  // (L_V g)(X, Y)
    double rhs = 0.0;  // -V(ln λ²) g(X, Y)
};
/// V, X, Y are frame slots; X and Y must share an eigen-group, V vertical.
LieDerivativeResult lie_derivative_identity(const PointAnalysis& pa, int v, int x, int y);

/// Connection coefficients from central differences of sign-aligned frames
/// rebuilt at displaced points with the base pivots frozen.
ConnectionValues connection_fd(const SmoothMap& map, const PointAnalysis& base, double step = 1e-5,
                               const SpectralOptions& opts = {});

}  // namespace eigenmap
