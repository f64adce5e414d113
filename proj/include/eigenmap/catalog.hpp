#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eigenmap/check.hpp"
#include "eigenmap/map.hpp"

namespace eigenmap {

enum class Provenance { Paper, Trivial, Derived };
std::string_view provenance_tag(Provenance p);

struct DeclaredFlag {
    std::string name;
    bool value = false;
    Provenance provenance = Provenance::Derived;
};

/// A named geometry or map with the properties it is expected to have.
struct CatalogEntry {
    std::string id;
    std::string summary;
    ChartGeometry geometry;  // the domain when `map` is set
    std::optional<SmoothMap> map;
    std::vector<DeclaredFlag> flags;
    std::map<std::string, double> constants;
    /// Points at which a declared property is stated explicitly.
    std::vector<Point> special_points;
    /// Further restriction for random samples, away from chart boundaries.
    std::function<bool(std::span<const double>)> sample_filter;

    const DeclaredFlag* find_flag(std::string_view name) const;
    bool flag(std::string_view name) const;
    double constant(const std::string& key) const;
    bool has_constant(const std::string& key) const { return constants.count(key) != 0; }
};

using ScalarFunction = std::function<Jet(const Jet&)>;

/// Complex space form of complex dimension n and constant κ in real
/// coordinates (x_1, y_1, ..., x_n, y_n), J ∂x = ∂y.
/// Throws DomainViolation when n is out of range or when the metric is
/// evaluated where 1 + κ|z|² <= 0.
ChartGeometry complex_space_form(int n, double kappa);

enum class SasakianModel { R, S, BxR };

/// Sasakian space form with its contact form, Reeb field and φ-sectional
/// curvature c. The D-homothety with parameter `a` is applied on top.
struct SasakianSpaceForm {
    ChartGeometry geometry;
    SasakianModel model = SasakianModel::R;
    int n = 1;
    double c = 0.0;
    double a = 1.0;
    double kappa = 0.0;
};
/// Throws InvalidModel.
SasakianSpaceForm sasakian_space_form(SasakianModel model, int n, double kappa = -1.0);
/// ḡ = a g + a(a - 1) η⊗η, η̄ = aη, ξ̄ = ξ/a, c̄ = (c + 3)/a - 3. Throws NonPositiveA.
SasakianSpaceForm d_homothety(const SasakianSpaceForm& s, double a);
double d_homothety_c(double c, double a);

/// Ricci closed form: Ric = ½(n(c+3) + c - 1) g - ½(n+1)(c-1) η⊗η.
Eigen::MatrixXd sasakian_ricci_closed_form(const SasakianSpaceForm& s, std::span<const double> p);

/// Projection of g = e^{2f(t)} (dx_1² + dy_1²) + e^{2k(t)} (dx_2² + dy_2²) + dt²
/// onto flat R⁴ with the standard complex structure. When `theta` is given the
/// first four coordinates are mixed by the complex rotation R(θ(t)).
/// Throws JetOrderInsufficient when f, k or θ return jets below order 3.
SmoothMap warped_product_submersion(ScalarFunction f, ScalarFunction k, Interval t_range,
                                    ScalarFunction theta = {});

/// Complex component of a holomorphic map, acting on (re, im) jet pairs.
struct ComplexJet {
    Jet re;
    Jet im;
};
ComplexJet operator+(const ComplexJet& a, const ComplexJet& b);
ComplexJet operator*(const ComplexJet& a, const ComplexJet& b);
ComplexJet operator*(double s, const ComplexJet& a);
using HolomorphicComponents = std::function<std::vector<ComplexJet>(const std::vector<ComplexJet>&)>;

/// Holomorphic map between Bergman balls (κ = -1). Throws RangeEscape when a
/// sample of the domain ball is sent outside the codomain ball.
SmoothMap holomorphic_ball_map(int m, int n, HolomorphicComponents components, const std::string& name,
                               double sample_radius = 0.9);

/// Cross product on R⁷ from the octonion multiplication table.
Eigen::Matrix<double, 7, 1> cross7(const Eigen::Matrix<double, 7, 1>& a, const Eigen::Matrix<double, 7, 1>& b);

/// S⁵ ⊂ R⁶ ⊂ Im O in a stereographic chart, with ξ = X × e₇ and
/// φ_c(v) the tangential part of X × v.
ChartGeometry nearly_cosymplectic_sphere5();

/// Deterministic rejection samples inside the chart and the entry's filter.
std::vector<Point> sample_points(const CatalogEntry& entry, int count, std::uint64_t seed);

/// All entries in stable order (constructed once, not verified).
const std::vector<CatalogEntry>& catalog();
/// Throws UnknownExample.
const CatalogEntry& find_entry(std::string_view id);

/// Re-verifies every declared flag at `samples` seeded points.
std::vector<CheckRecord> verify_entry(const CatalogEntry& entry, int samples = 50, std::uint64_t seed = 1);

/// Human-readable description with declared flags and provenance tags.
std::string describe(const CatalogEntry& entry, bool verified);

}  // namespace eigenmap
