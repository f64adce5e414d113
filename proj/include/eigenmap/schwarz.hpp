#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace eigenmap {

/// ‖∧^p dφ‖ from the eigenvalues λ_i² of φ*h (the elementary symmetric
/// polynomial of degree p, square-rooted). Throws IndexError unless 1 <= p <= m.
double wedge_norm(const std::vector<double>& lambda_sq, int p);

/// ‖∧^p dφ‖² as the sum of p×p principal minors of a symmetric matrix.
double wedge_norm_sq_minors(const Eigen::MatrixXd& a, int p);

struct DilatationData {
    std::vector<double> wedge_norms;  // p = 1..rank
    double k_order = 0.0;             // λ_1 / λ_2
    double ell = 0.0;                 // λ_1 / λ_n over the distinct pair values
    double ratio = 0.0;               // ‖dφ‖² / ‖∧²dφ‖
};
DilatationData dilatation(const std::vector<double>& lambda_sq);

struct RatioBounds {
    double ratio = 0.0;
    double crude_bound = 2.0;
    double refined_bound = 0.0;
    bool equality = false;  // spread of the pair values below 1e-10 (relative)
};
/// Ratio bounds for a doubled spectrum of n pairs. Throws NotDoubledSpectrum.
RatioBounds phwc_ratio_bounds(const std::vector<double>& lambda_sq, int n);

/// Σλ⁴ + 4Σ_{i<j}λ_i²λ_j² against ((2n-1)/n)(Σλ²)² over the n pair values.
struct NewtonSides {
    double lhs = 0.0;
    double rhs = 0.0;
};
NewtonSides newton_inequality(const std::vector<double>& pair_values);

/// ‖dφ‖² <= k K ‖∧²dφ‖. Throws DilatationExceeded when λ_1² > K² λ_2²
/// and DegenerateRank when fewer than two eigenvalues are non-zero.
struct DilatationInequality {
    double lhs = 0.0;
    double rhs = 0.0;
};
DilatationInequality bounded_dilatation_inequality(const std::vector<double>& lambda_sq, double K, int k);

struct EnergyBoundReport {
    double max_dphi_sq = 0.0;
    double bound = 0.0;          // 2A/B on ‖dφ‖² (the theorem's e(φ) <= A/B)
    double refined_bound = 0.0;  // with the dilatation factor, when L is given
    double margin = 0.0;         // bound - max
    bool holds = false;
};
/// Throws MissingCurvatureBounds unless A, B > 0.
EnergyBoundReport energy_bound_check(const std::vector<double>& dphi_sq_samples, double A, double B,
                                     std::optional<double> L = std::nullopt, int n = 1);

/// Doubled spectra with pair values log-uniform in [lo, hi].
std::vector<std::vector<double>> random_doubled_spectra(int count, int max_pairs, double lo, double hi,
                                                        unsigned long long seed);

}  // namespace eigenmap
