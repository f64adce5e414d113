#include "eigenmap/jet.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <initializer_list>
#include <map>
#include <stdexcept>

namespace eigenmap {
namespace {

using Exponent = std::array<int, kMaxJetVars>;

struct MulEntry {
    int a, b, c;
};

// Monomial bookkeeping for one variable count, up to kMaxJetOrder.
struct Layout {
    int nvars = 0;
    std::vector<Exponent> monomials;
    std::array<std::size_t, kMaxJetOrder + 1> count_upto{};
    std::vector<MulEntry> mul;
    std::array<std::size_t, kMaxJetOrder + 1> mul_end{};
    // partial[i][beta] = {index of beta + e_i, beta_i + 1}
    std::vector<std::vector<std::pair<int, double>>> partial;
    std::map<Exponent, int> index;

    int find(const Exponent& e) const {
        auto it = index.find(e);
        return it == index.end() ? -1 : it->second;
    }
};

int degree(const Exponent& e) {
    int s = 0;
    for (int v : e) s += v;
    return s;
}

void enumerate(int nvars, int deg, int var, Exponent& cur, std::vector<Exponent>& out) {
    if (var == nvars - 1) {
        cur[var] = deg;
        out.push_back(cur);
        cur[var] = 0;
        return;
    }
    for (int k = deg; k >= 0; --k) {
        cur[var] = k;
        enumerate(nvars, deg - k, var + 1, cur, out);
    }
    cur[var] = 0;
}

Layout build_layout(int nvars) {
    Layout L;
    L.nvars = nvars;
    for (int deg = 0; deg <= kMaxJetOrder; ++deg) {
        if (nvars == 0) {
            if (deg == 0) L.monomials.push_back(Exponent{});
        } else {
            Exponent cur{};
            enumerate(nvars, deg, 0, cur, L.monomials);
        }
        L.count_upto[deg] = L.monomials.size();
    }
    for (std::size_t i = 0; i < L.monomials.size(); ++i) L.index[L.monomials[i]] = static_cast<int>(i);

    for (int deg = 0; deg <= kMaxJetOrder; ++deg) {
        for (std::size_t ia = 0; ia < L.monomials.size(); ++ia) {
            for (std::size_t ib = 0; ib < L.monomials.size(); ++ib) {
                if (degree(L.monomials[ia]) + degree(L.monomials[ib]) != deg) continue;
                Exponent s{};
                for (int v = 0; v < kMaxJetVars; ++v) s[v] = L.monomials[ia][v] + L.monomials[ib][v];
                L.mul.push_back({static_cast<int>(ia), static_cast<int>(ib), L.find(s)});
            }
        }
        L.mul_end[deg] = L.mul.size();
    }

    L.partial.resize(nvars);
    for (int i = 0; i < nvars; ++i) {
        for (std::size_t ib = 0; ib < L.count_upto[kMaxJetOrder - 1]; ++ib) {
            Exponent up = L.monomials[ib];
            up[i] += 1;
            L.partial[i].push_back({L.find(up), static_cast<double>(up[i])});
        }
    }
    return L;
}

const Layout& layout(int nvars) {
    static const std::array<Layout, kMaxJetVars + 1> layouts = [] {
        std::array<Layout, kMaxJetVars + 1> ls;
        for (int n = 0; n <= kMaxJetVars; ++n) ls[n] = build_layout(n);
        return ls;
    }();
    if (nvars < 0 || nvars > kMaxJetVars) throw std::invalid_argument("jet: unsupported variable count");
    return layouts[nvars];
}

int index_of(int nvars, std::initializer_list<int> vars) {
    Exponent e{};
    for (int v : vars) {
        if (v < 0 || v >= nvars) throw std::out_of_range("jet: variable index out of range");
        e[v] += 1;
    }
    return layout(nvars).find(e);
}

}  // namespace

std::size_t monomial_count(int nvars, int order) { return layout(nvars).count_upto[order]; }

Jet::Jet(int nvars, int order)
    : nvars_(nvars), order_(order), coeffs_(layout(nvars).count_upto[nvars == 0 ? 0 : order], 0.0) {
    if (order < 0 || order > kMaxJetOrder) throw std::invalid_argument("jet: unsupported order");
}

Jet Jet::constant(double value, int nvars, int order) {
    Jet j(nvars, order);
    j.coeffs_[0] = value;
    return j;
}

Jet Jet::variable(double value, int index, int nvars, int order) {
    Jet j(nvars, order);
    j.coeffs_[0] = value;
    if (order >= 1) j.coeffs_[index_of(nvars, {index})] = 1.0;
    return j;
}

double Jet::d(int i) const {
    if (nvars_ == 0 || order_ < 1) return 0.0;
    return coeffs_[index_of(nvars_, {i})];
}

double Jet::d(int i, int j) const {
    if (nvars_ == 0 || order_ < 2) return 0.0;
    double c = coeffs_[index_of(nvars_, {i, j})];
    return i == j ? 2.0 * c : c;
}

double Jet::d(int i, int j, int k) const {
    if (nvars_ == 0 || order_ < 3) return 0.0;
    double c = coeffs_[index_of(nvars_, {i, j, k})];
    // multiply by a! for the exponent vector
    std::array<int, kMaxJetVars> e{};
    e[i]++;
    e[j]++;
    e[k]++;
    double f = 1.0;
    for (int v : e) f *= (v == 3 ? 6.0 : (v == 2 ? 2.0 : 1.0));
    return c * f;
}

Jet Jet::partial(int i) const {
    if (nvars_ == 0) return Jet(0.0);
    if (order_ == 0) throw std::logic_error("jet: cannot differentiate an order-0 jet");
    const Layout& L = layout(nvars_);
    Jet out(nvars_, order_ - 1);
    for (std::size_t b = 0; b < out.coeffs_.size(); ++b) {
        const auto& [src, f] = L.partial[i][b];
        out.coeffs_[b] = f * coeffs_[src];
    }
    return out;
}

Jet Jet::directional(std::span<const double> v) const {
    if (nvars_ == 0) return Jet(0.0);
    Jet out = Jet::constant(0.0, nvars_, order_ - 1);
    for (int i = 0; i < nvars_; ++i) {
        if (v[i] == 0.0) continue;
        Jet p = partial(i);
        p *= v[i];
        out += p;
    }
    return out;
}

Jet Jet::truncated(int order) const {
    if (nvars_ == 0 || order >= order_) return *this;
    Jet out(nvars_, order);
    std::copy_n(coeffs_.begin(), out.coeffs_.size(), out.coeffs_.begin());
    return out;
}

namespace {

// Shape of the result of a binary operation.
std::pair<int, int> common_shape(const Jet& a, const Jet& b) {
    if (a.is_constant()) return {b.nvars(), b.order()};
    if (b.is_constant()) return {a.nvars(), a.order()};
    if (a.nvars() != b.nvars()) throw std::invalid_argument("jet: mismatched variable counts");
    return {a.nvars(), std::min(a.order(), b.order())};
}

}  // namespace

Jet& Jet::operator+=(const Jet& o) {
    auto [n, ord] = common_shape(*this, o);
    Jet r = Jet::constant(0.0, n, ord);
    for (std::size_t k = 0; k < r.coeffs_.size(); ++k) {
        double x = k < coeffs_.size() ? coeffs_[k] : 0.0;
        double y = k < o.coeffs_.size() ? o.coeffs_[k] : 0.0;
        r.coeffs_[k] = x + y;
    }
    *this = std::move(r);
    return *this;
}

Jet& Jet::operator-=(const Jet& o) {
    auto [n, ord] = common_shape(*this, o);
    Jet r = Jet::constant(0.0, n, ord);
    for (std::size_t k = 0; k < r.coeffs_.size(); ++k) {
        double x = k < coeffs_.size() ? coeffs_[k] : 0.0;
        double y = k < o.coeffs_.size() ? o.coeffs_[k] : 0.0;
        r.coeffs_[k] = x - y;
    }
    *this = std::move(r);
    return *this;
}

Jet& Jet::operator*=(double s) {
    for (double& c : coeffs_) c *= s;
    return *this;
}

Jet& Jet::operator*=(const Jet& o) {
    if (o.is_constant()) return *this *= o.value();
    if (is_constant()) {
        double s = value();
        *this = o;
        return *this *= s;
    }
    auto [n, ord] = common_shape(*this, o);
    const Layout& L = layout(n);
    Jet r = Jet::constant(0.0, n, ord);
    const std::size_t end = L.mul_end[ord];
    for (std::size_t e = 0; e < end; ++e) {
        const MulEntry& m = L.mul[e];
        r.coeffs_[m.c] += coeffs_[m.a] * o.coeffs_[m.b];
    }
    *this = std::move(r);
    return *this;
}

Jet& Jet::operator/=(const Jet& o) {
    if (o.is_constant()) return *this *= (1.0 / o.value());
    return *this *= inv(o);
}

Jet operator-(const Jet& a) {
    Jet r = a;
    r *= -1.0;
    return r;
}
Jet operator+(const Jet& a, const Jet& b) {
    Jet r = a;
    r += b;
    return r;
}
Jet operator-(const Jet& a, const Jet& b) {
    Jet r = a;
    r -= b;
    return r;
}
Jet operator*(const Jet& a, const Jet& b) {
    Jet r = a;
    r *= b;
    return r;
}
Jet operator/(const Jet& a, const Jet& b) {
    Jet r = a;
    r /= b;
    return r;
}

Jet Jet::compose(std::span<const double> derivs) const {
    if (nvars_ == 0) return Jet(derivs[0]);
    Jet v = *this;
    v.coeffs_[0] = 0.0;
    // Horner in the nilpotent part v: sum_k f^(k)/k! v^k
    static constexpr std::array<double, 4> inv_fact{1.0, 1.0, 0.5, 1.0 / 6.0};
    Jet acc = Jet::constant(derivs[order_] * inv_fact[order_], nvars_, order_);
    for (int k = order_ - 1; k >= 0; --k) {
        acc *= v;
        acc.coeffs_[0] += derivs[k] * inv_fact[k];
    }
    return acc;
}

Jet exp(const Jet& x) {
    double e = std::exp(x.value());
    const std::array<double, 4> d{e, e, e, e};
    return x.compose(d);
}

Jet log(const Jet& x) {
    double v = x.value();
    if (!(v > 0.0)) throw std::domain_error("jet log: non-positive argument");
    const std::array<double, 4> d{std::log(v), 1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v)};
    return x.compose(d);
}

Jet sin(const Jet& x) {
    double s = std::sin(x.value()), c = std::cos(x.value());
    const std::array<double, 4> d{s, c, -s, -c};
    return x.compose(d);
}

Jet cos(const Jet& x) {
    double s = std::sin(x.value()), c = std::cos(x.value());
    const std::array<double, 4> d{c, -s, -c, s};
    return x.compose(d);
}

Jet sqrt(const Jet& x) {
    double v = x.value();
    if (!(v > 0.0)) throw std::domain_error("jet sqrt: non-positive argument");
    double r = std::sqrt(v);
    const std::array<double, 4> d{r, 0.5 / r, -0.25 / (r * v), 0.375 / (r * v * v)};
    return x.compose(d);
}

Jet pow(const Jet& x, double p) {
    double v = x.value();
    const std::array<double, 4> d{std::pow(v, p), p * std::pow(v, p - 1), p * (p - 1) * std::pow(v, p - 2),
                                  p * (p - 1) * (p - 2) * std::pow(v, p - 3)};
    return x.compose(d);
}

Jet inv(const Jet& x) {
    double v = x.value();
    if (v == 0.0) throw std::domain_error("jet inv: division by zero");
    double r = 1.0 / v;
    const std::array<double, 4> d{r, -r * r, 2.0 * r * r * r, -6.0 * r * r * r * r};
    return x.compose(d);
}

Jet square(const Jet& x) { return x * x; }

Jet substitute(const Jet& f, std::span<const Jet> xs) {
    if (f.is_constant()) return f;
    const int n = f.nvars();
    if (static_cast<int>(xs.size()) != n) throw std::invalid_argument("substitute: variable count mismatch");
    std::vector<Jet> delta;
    delta.reserve(n);
    for (const Jet& x : xs) delta.push_back(x - Jet(x.value()));
    Jet r(f.value());
    for (int i = 0; i < n; ++i) {
        if (f.order() < 1) break;
        r += Jet(f.d(i)) * delta[i];
        for (int j = i; j < n && f.order() >= 2; ++j) {
            const Jet dij = delta[i] * delta[j];
            r += Jet((i == j ? 0.5 : 1.0) * f.d(i, j)) * dij;
            for (int k = j; k < n && f.order() >= 3; ++k) {
                // multiplicity of the unordered triple over 3!
                const double w = (i == j && j == k) ? 1.0 / 6.0 : (i == j || j == k) ? 0.5 : 1.0;
                r += Jet(w * f.d(i, j, k)) * dij * delta[k];
            }
        }
    }
    return r;
}

std::vector<Jet> seed_variables(std::span<const double> p, int order) {
    const int n = static_cast<int>(p.size());
    std::vector<Jet> xs;
    xs.reserve(p.size());
    for (int i = 0; i < n; ++i) xs.push_back(Jet::variable(p[i], i, n, order));
    return xs;
}

std::vector<double> values(std::span<const Jet> xs) {
    std::vector<double> v;
    v.reserve(xs.size());
    for (const Jet& x : xs) v.push_back(x.value());
    return v;
}

}  // namespace eigenmap
