#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace eigenmap {

/// Largest number of independent variables a jet may carry.
inline constexpr int kMaxJetVars = 8;
/// Largest truncation order supported by the monomial tables.
inline constexpr int kMaxJetOrder = 3;

/// Truncated multivariate Taylor polynomial about a base point.
///
/// Coefficients are stored in Taylor form (the coefficient of the monomial
/// (x - p)^a is d^a f(p) / a!) in graded order, so that the coefficients of
/// every lower truncation order form a prefix of the storage. A jet with
/// zero variables is a plain constant and combines with jets of any shape.
class Jet {
public:
    Jet() : coeffs_(1, 0.0) {}
    Jet(double value) : coeffs_(1, value) {}  // NOLINT(google-explicit-constructor)

    static Jet constant(double value, int nvars, int order);
    /// The coordinate function x_index seeded at `value`.
    static Jet variable(double value, int index, int nvars, int order);

    int nvars() const { return nvars_; }
    int order() const { return order_; }
    bool is_constant() const { return nvars_ == 0; }

    double value() const { return coeffs_[0]; }
    double d(int i) const;
    double d(int i, int j) const;
    double d(int i, int j, int k) const;

    /// Jet of the partial derivative along variable i (order drops by one).
    Jet partial(int i) const;
    /// Directional derivative sum_i v_i d_i (order drops by one).
    Jet directional(std::span<const double> v) const;
    Jet truncated(int order) const;

    std::span<const double> coefficients() const { return coeffs_; }

    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    Jet& operator*=(const Jet& o);
    Jet& operator/=(const Jet& o);
    Jet& operator*=(double s);

    friend Jet operator-(const Jet& a);
    friend Jet operator+(const Jet& a, const Jet& b);
    friend Jet operator-(const Jet& a, const Jet& b);
    friend Jet operator*(const Jet& a, const Jet& b);
    friend Jet operator/(const Jet& a, const Jet& b);

    /// Applies a scalar function given its derivatives f, f', f'', f''' at value().
    Jet compose(std::span<const double> derivs) const;

private:
    Jet(int nvars, int order);

    int nvars_ = 0;
    int order_ = kMaxJetOrder;
    std::vector<double> coeffs_;
};

Jet exp(const Jet& x);
Jet log(const Jet& x);
Jet sin(const Jet& x);
Jet cos(const Jet& x);
Jet sqrt(const Jet& x);
Jet pow(const Jet& x, double p);
Jet inv(const Jet& x);
Jet square(const Jet& x);

/// Substitutes jets for the variables of f: returns f(xs) where f is a jet
/// about values(xs). Used to re-expand a field computed in fresh variables.
Jet substitute(const Jet& f, std::span<const Jet> xs);

/// Seeds the identity jets x_i at point p.
std::vector<Jet> seed_variables(std::span<const double> p, int order);
std::vector<double> values(std::span<const Jet> xs);

/// Number of monomials of total degree <= order in nvars variables.
std::size_t monomial_count(int nvars, int order);

}  // namespace eigenmap
