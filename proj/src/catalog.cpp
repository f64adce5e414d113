#include "eigenmap/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "eigenmap/criteria.hpp"
#include "eigenmap/errors.hpp"
#include "eigenmap/hermitian.hpp"
#include "eigenmap/spectral.hpp"

namespace eigenmap {

namespace {

using Vec7 = Eigen::Matrix<double, 7, 1>;

// e_i × e_j = e_k for each triple and its cyclic shifts, 1-based
constexpr int kOctonionTriples[7][3] = {{1, 2, 3}, {1, 4, 5}, {1, 7, 6}, {2, 4, 6}, {2, 5, 7}, {3, 4, 7}, {3, 6, 5}};

template <class T>
std::vector<T> cross7_generic(const std::vector<T>& a, const std::vector<T>& b, const T& zero) {
    std::vector<T> r(7, zero);
    for (const auto& t : kOctonionTriples) {
        for (int s = 0; s < 3; ++s) {
            const int i = t[s] - 1, j = t[(s + 1) % 3] - 1, k = t[(s + 2) % 3] - 1;
            r[k] = r[k] + a[i] * b[j] - a[j] * b[i];
        }
    }
    return r;
}

Eigen::MatrixXd standard_j(int dim) {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(dim, dim);
    for (int i = 0; i + 1 < dim; i += 2) {
        j(i + 1, i) = 1.0;
        j(i, i + 1) = -1.0;
    }
    return j;
}

MatrixField constant_field(const Eigen::MatrixXd& m) {
    return [m](std::span<const Jet>) { return JetMatrix::constant(m); };
}

ChartGeometry flat_space(const std::string& name, int dim, std::vector<Interval> box, bool complex) {
    ChartGeometry g;
    g.name = name;
    g.dim = dim;
    g.domain_box = std::move(box);
    g.metric = constant_field(Eigen::MatrixXd::Identity(dim, dim));
    if (complex) g.complex_structure = constant_field(standard_j(dim));
    return g;
}

std::vector<Interval> uniform_box(int dim, double lo, double hi) { return std::vector<Interval>(dim, Interval{lo, hi}); }

/// Evaluates f on fresh order-3 variables at the values of xs and substitutes
/// xs back; fields built from derivatives of jets keep their full order.
JetMatrix reexpand(std::span<const Jet> xs, const MatrixField& f) {
    const Point p = values(xs);
    const auto ys = seed_variables(p, kMaxJetOrder);
    const JetMatrix r = f(ys);
    JetMatrix out(r.rows(), r.cols());
    for (int i = 0; i < r.rows(); ++i)
        for (int j = 0; j < r.cols(); ++j) out(i, j) = substitute(r(i, j), xs);
    return out;
}

JetVector reexpand_vector(std::span<const Jet> xs, const VectorField& f) {
    const Point p = values(xs);
    const auto ys = seed_variables(p, kMaxJetOrder);
    const JetVector r = f(ys);
    JetVector out;
    out.reserve(r.size());
    for (const Jet& v : r) out.push_back(substitute(v, xs));
    return out;
}

Jet norm_sq(std::span<const Jet> xs, int count) {
    Jet s(0.0);
    for (int i = 0; i < count; ++i) s += xs[i] * xs[i];
    return s;
}

JetMatrix outer(const JetVector& a, const JetVector& b) {
    JetMatrix m(static_cast<int>(a.size()), static_cast<int>(b.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) m(i, j) = a[i] * b[j];
    return m;
}

/// Chart components g^{-1} dX^t w of an ambient vector w.
JetVector chart_components(const JetMatrix& g_inv, const JetMatrix& dx, const JetVector& w) {
    const int dim = g_inv.rows();
    JetVector t(dim, Jet(0.0));
    for (int i = 0; i < dim; ++i)
        for (int a = 0; a < dx.rows(); ++a) t[i] += dx(a, i) * w[a];
    return mat_vec(g_inv, t);
}

JetMatrix jacobian_of(const JetVector& x, int dim) {
    JetMatrix d(static_cast<int>(x.size()), dim);
    for (std::size_t a = 0; a < x.size(); ++a)
        for (int i = 0; i < dim; ++i) d(a, i) = x[a].partial(i);
    return d;
}

/// Inverse stereographic projection R^d -> S^d ⊂ R^{d+1}.
JetVector stereographic(std::span<const Jet> u) {
    const int d = static_cast<int>(u.size());
    const Jet r2 = norm_sq(u, d);
    const Jet den = inv(Jet(1.0) + r2);
    JetVector x;
    for (int i = 0; i < d; ++i) x.push_back(Jet(2.0) * u[i] * den);
    x.push_back((r2 - Jet(1.0)) * den);
    return x;
}

JetMatrix round_metric(std::span<const Jet> u) {
    const int d = static_cast<int>(u.size());
    const Jet c = Jet(4.0) * inv(square(Jet(1.0) + norm_sq(u, d)));
    JetMatrix g(d, d);
    for (int i = 0; i < d; ++i) g(i, i) = c;
    return g;
}

bool in_ball(std::span<const double> p, int count, double radius_sq) {
    double s = 0.0;
    for (int i = 0; i < count; ++i) s += p[i] * p[i];
    return s < radius_sq;
}

void check_jet_order(const ScalarFunction& f, double t) {
    if (!f) return;
    const Jet r = f(Jet::variable(t, 0, 1, kMaxJetOrder));
    if (!r.is_constant() && r.order() < kMaxJetOrder) {
        throw GeometryError(ErrorCode::JetOrderInsufficient, "warping function returns jets below order 3");
    }
}

}  // namespace

std::string_view provenance_tag(Provenance p) {
    switch (p) {
        case Provenance::Paper: return "PAPER";
        case Provenance::Trivial: return "TRIVIAL";
        case Provenance::Derived: return "DERIVED";
    }
    return "?";
}

const DeclaredFlag* CatalogEntry::find_flag(std::string_view name) const {
    for (const auto& f : flags)
        if (f.name == name) return &f;
    return nullptr;
}

bool CatalogEntry::flag(std::string_view name) const {
    const DeclaredFlag* f = find_flag(name);
    return f && f->value;
}

double CatalogEntry::constant(const std::string& key) const {
    auto it = constants.find(key);
    if (it == constants.end()) throw GeometryError(ErrorCode::UnknownId, id + " has no constant " + key);
    return it->second;
}

ChartGeometry complex_space_form(int n, double kappa) {
    if (n < 1 || 2 * n > kMaxJetVars) throw GeometryError(ErrorCode::DomainViolation, "complex dimension out of range");
    ChartGeometry g;
    std::ostringstream name;
    name << "h(k=" << kappa << ",n=" << n << ")";
    g.name = name.str();
    g.dim = 2 * n;
    g.domain_box = uniform_box(2 * n, kappa < 0.0 ? -1.0 / std::sqrt(-kappa) : -1.5,
                               kappa < 0.0 ? 1.0 / std::sqrt(-kappa) : 1.5);
    if (kappa < 0.0) {
        g.region = [n, kappa](std::span<const double> p) { return in_ball(p, 2 * n, -1.0 / kappa); };
    }
    g.metric = [n, kappa](std::span<const Jet> xs) {
        const Jet zeta = Jet(1.0) + Jet(kappa) * norm_sq(xs, 2 * n);
        if (!(zeta.value() > 0.0)) throw GeometryError(ErrorCode::DomainViolation, "1 + κ|z|² must be positive");
        const Jet iz = inv(zeta), iz2 = square(iz);
        JetMatrix m(2 * n, 2 * n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                const Jet &xi = xs[2 * i], &yi = xs[2 * i + 1], &xj = xs[2 * j], &yj = xs[2 * j + 1];
                Jet s = Jet(-kappa) * (xi * xj + yi * yj) * iz2;
                if (i == j) s += iz;
                const Jet t = Jet(-kappa) * (xi * yj - yi * xj) * iz2;
                m(2 * i, 2 * j) = Jet(2.0) * s;
                m(2 * i + 1, 2 * j + 1) = Jet(2.0) * s;
                m(2 * i, 2 * j + 1) = Jet(2.0) * t;
                m(2 * j + 1, 2 * i) = Jet(2.0) * t;
            }
        }
        return m;
    };
    g.complex_structure = constant_field(standard_j(2 * n));
    return g;
}

double d_homothety_c(double c, double a) {
    if (!(a > 0.0)) throw GeometryError(ErrorCode::NonPositiveA, "D-homothety needs a > 0");
    return (c + 3.0) / a - 3.0;
}

SasakianSpaceForm sasakian_space_form(SasakianModel model, int n, double kappa) {
    if (n < 1 || 2 * n + 1 > kMaxJetVars) throw GeometryError(ErrorCode::InvalidModel, "dimension out of range");
    SasakianSpaceForm s;
    s.model = model;
    s.n = n;
    const int dim = 2 * n + 1;
    ChartGeometry& g = s.geometry;
    g.dim = dim;

    switch (model) {
        case SasakianModel::R: {
            g.name = "sasakian.R(n=" + std::to_string(n) + ")";
            g.domain_box = uniform_box(dim, -1.0, 1.0);
            s.c = -3.0;
            g.contact_form = [n](std::span<const Jet> xs) {
                JetVector eta(2 * n + 1, Jet(0.0));
                for (int i = 0; i < n; ++i) eta[2 * i] = Jet(-0.5) * xs[2 * i + 1];
                eta[2 * n] = Jet(0.5);
                return eta;
            };
            g.metric = [n, eta = g.contact_form](std::span<const Jet> xs) {
                JetMatrix m = outer(eta(xs), eta(xs));
                for (int i = 0; i < 2 * n; ++i) m(i, i) += Jet(0.25);
                return m;
            };
            g.reeb_field = [n](std::span<const Jet>) {
                JetVector xi(2 * n + 1, Jet(0.0));
                xi[2 * n] = Jet(2.0);
                return xi;
            };
            break;
        }
        case SasakianModel::S: {
            g.name = "sasakian.S(n=" + std::to_string(n) + ")";
            g.domain_box = uniform_box(dim, -1.5, 1.5);
            s.c = 1.0;
            // η_i = <J X, ∂_i X> with J the complex structure of C^{n+1}
            VectorField eta_raw = [dim](std::span<const Jet> u) {
                const JetVector x = stereographic(u);
                const JetMatrix dx = jacobian_of(x, dim);
                JetVector jx(x.size());
                for (std::size_t a = 0; a + 1 < x.size(); a += 2) {
                    jx[a] = -x[a + 1];
                    jx[a + 1] = x[a];
                }
                JetVector eta(dim, Jet(0.0));
                for (int i = 0; i < dim; ++i)
                    for (std::size_t a = 0; a < x.size(); ++a) eta[i] += jx[a] * dx(a, i);
                return eta;
            };
            g.contact_form = [eta_raw](std::span<const Jet> xs) { return reexpand_vector(xs, eta_raw); };
            g.metric = [](std::span<const Jet> xs) { return round_metric(xs); };
            g.reeb_field = [eta = g.contact_form](std::span<const Jet> xs) {
                return mat_vec(inverse(round_metric(xs)), eta(xs));
            };
            break;
        }
        case SasakianModel::BxR: {
            if (!(kappa < 0.0)) throw GeometryError(ErrorCode::InvalidModel, "the BxR model needs κ < 0");
            g.name = "sasakian.BxR(n=" + std::to_string(n) + ",k=" + std::to_string(kappa) + ")";
            const double r = 1.0 / std::sqrt(-kappa);
            g.domain_box = uniform_box(dim, -r, r);
            g.domain_box.back() = {-1.0, 1.0};
            g.region = [n, kappa](std::span<const double> p) { return in_ball(p, 2 * n, -1.0 / kappa); };
            s.c = 2.0 * kappa - 3.0;
            s.kappa = kappa;
            g.contact_form = [n, kappa](std::span<const Jet> xs) {
                const Jet iz = inv(Jet(1.0) + Jet(kappa) * norm_sq(xs, 2 * n));
                JetVector eta(2 * n + 1, Jet(0.0));
                for (int i = 0; i < n; ++i) {
                    eta[2 * i] = Jet(-2.0) * xs[2 * i + 1] * iz;
                    eta[2 * i + 1] = Jet(2.0) * xs[2 * i] * iz;
                }
                eta[2 * n] = Jet(1.0);
                return eta;
            };
            const ChartGeometry base = complex_space_form(n, kappa);
            g.metric = [n, eta = g.contact_form, h = base.metric](std::span<const Jet> xs) {
                JetMatrix m = outer(eta(xs), eta(xs));
                const JetMatrix hb = h(xs.first(2 * n));
                for (int i = 0; i < 2 * n; ++i)
                    for (int j = 0; j < 2 * n; ++j) m(i, j) += hb(i, j);
                return m;
            };
            g.reeb_field = [n](std::span<const Jet>) {
                JetVector xi(2 * n + 1, Jet(0.0));
                xi[2 * n] = Jet(1.0);
                return xi;
            };
            break;
        }
        default:
            throw GeometryError(ErrorCode::InvalidModel, "unknown Sasakian model");
    }
    return s;
}

SasakianSpaceForm d_homothety(const SasakianSpaceForm& s, double a) {
    const double c_bar = d_homothety_c(s.c, a);
    SasakianSpaceForm out = s;
    out.a = s.a * a;
    out.c = c_bar;
    ChartGeometry& g = out.geometry;
    std::ostringstream name;
    name << s.geometry.name << "+D(" << a << ")";
    g.name = name.str();
    const MatrixField metric = s.geometry.metric;
    const VectorField eta = s.geometry.contact_form;
    const VectorField xi = s.geometry.reeb_field;
    g.metric = [=](std::span<const Jet> xs) {
        const JetVector e = eta(xs);
        JetMatrix m = Jet(a) * metric(xs);
        m += Jet(a * (a - 1.0)) * outer(e, e);
        return m;
    };
    g.contact_form = [=](std::span<const Jet> xs) {
        JetVector e = eta(xs);
        for (Jet& v : e) v *= a;
        return e;
    };
    g.reeb_field = [=](std::span<const Jet> xs) {
        JetVector v = xi(xs);
        for (Jet& c : v) c *= 1.0 / a;
        return v;
    };
    return out;
}

Eigen::MatrixXd sasakian_ricci_closed_form(const SasakianSpaceForm& s, std::span<const double> p) {
    auto xs = seed_variables(p, 0);
    const Eigen::MatrixXd g = s.geometry.metric(xs).value();
    const Eigen::VectorXd eta = value(s.geometry.contact_form(xs));
    const double n = s.n, c = s.c;
    return 0.5 * (n * (c + 3.0) + c - 1.0) * g - 0.5 * (n + 1.0) * (c - 1.0) * eta * eta.transpose();
}

SmoothMap warped_product_submersion(ScalarFunction f, ScalarFunction k, Interval t_range, ScalarFunction theta) {
    const double mid = 0.5 * (t_range.lo + t_range.hi);
    check_jet_order(f, mid);
    check_jet_order(k, mid);
    check_jet_order(theta, mid);

    SmoothMap map;
    map.name = theta ? "warped.twisted" : "warped";
    ChartGeometry& dom = map.domain;
    dom.name = "W";
    dom.dim = 5;
    dom.domain_box = uniform_box(5, -1.0, 1.0);
    dom.domain_box[4] = t_range;
    dom.metric = [f, k, theta](std::span<const Jet> xs) {
        const Jet& t = xs[4];
        const Jet ef = exp(Jet(2.0) * f(t)), ek = exp(Jet(2.0) * k(t));
        JetMatrix d(4, 4);
        d(0, 0) = ef;
        d(1, 1) = ef;
        d(2, 2) = ek;
        d(3, 3) = ek;
        JetMatrix m(5, 5);
        if (theta) {
            const Jet th = theta(t), c = cos(th), s = sin(th);
            JetMatrix r(4, 4);
            for (int i = 0; i < 2; ++i) {
                r(i, i) = c;
                r(i + 2, i + 2) = c;
                r(i, i + 2) = -s;
                r(i + 2, i) = s;
            }
            d = r.transpose() * d * r;
        }
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) m(i, j) = d(i, j);
        m(4, 4) = Jet(1.0);
        return m;
    };
    map.codomain = flat_space("R4", 4, uniform_box(4, -1e6, 1e6), true);
    map.components = [](std::span<const Jet> xs) { return JetVector(xs.begin(), xs.begin() + 4); };
    return map;
}

ComplexJet operator+(const ComplexJet& a, const ComplexJet& b) { return {a.re + b.re, a.im + b.im}; }
ComplexJet operator*(const ComplexJet& a, const ComplexJet& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
ComplexJet operator*(double s, const ComplexJet& a) { return {Jet(s) * a.re, Jet(s) * a.im}; }

SmoothMap holomorphic_ball_map(int m, int n, HolomorphicComponents components, const std::string& name,
                               double sample_radius) {
    SmoothMap map;
    map.name = name;
    map.domain = complex_space_form(m, -1.0);
    map.codomain = complex_space_form(n, -1.0);
    map.components = [m, n, components](std::span<const Jet> xs) {
        std::vector<ComplexJet> z;
        for (int i = 0; i < m; ++i) z.push_back({xs[2 * i], xs[2 * i + 1]});
        const auto w = components(z);
        if (static_cast<int>(w.size()) != n) throw GeometryError(ErrorCode::ConfigError, "component count mismatch");
        JetVector out;
        for (const auto& c : w) {
            out.push_back(c.re);
            out.push_back(c.im);
        }
        return out;
    };

    std::mt19937_64 rng(20240101ULL);
    auto unit = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    int checked = 0;
    while (checked < 200) {
        Point p(2 * m);
        for (double& v : p) v = sample_radius * (2.0 * unit() - 1.0);
        if (!in_ball(p, 2 * m, sample_radius * sample_radius)) continue;
        ++checked;
        const Eigen::VectorXd w = value(map.components(seed_variables(p, 0)));
        if (w.squaredNorm() >= 1.0) throw GeometryError(ErrorCode::RangeEscape, name + " leaves the unit ball");
    }
    return map;
}

Vec7 cross7(const Vec7& a, const Vec7& b) {
    std::vector<double> va(a.data(), a.data() + 7), vb(b.data(), b.data() + 7);
    const auto r = cross7_generic(va, vb, 0.0);
    return Eigen::Map<const Vec7>(r.data());
}

ChartGeometry nearly_cosymplectic_sphere5() {
    ChartGeometry g;
    g.name = "S5(nearly cosymplectic)";
    g.dim = 5;
    g.domain_box = uniform_box(5, -1.5, 1.5);
    g.metric = [](std::span<const Jet> xs) { return round_metric(xs); };

    auto embed = [](std::span<const Jet> u) {
        JetVector x = stereographic(u);
        x.push_back(Jet(0.0));
        return x;
    };
    auto e7 = [] {
        JetVector e(7, Jet(0.0));
        e[6] = Jet(1.0);
        return e;
    };
    VectorField xi_raw = [embed, e7](std::span<const Jet> u) {
        const JetVector x = embed(u);
        const JetMatrix dx = jacobian_of(x, 5);
        return chart_components(inverse(round_metric(u)), dx, cross7_generic(x, e7(), Jet(0.0)));
    };
    VectorField eta_raw = [embed, e7](std::span<const Jet> u) {
        const JetVector x = embed(u);
        const JetMatrix dx = jacobian_of(x, 5);
        const JetVector w = cross7_generic(x, e7(), Jet(0.0));
        JetVector eta(5, Jet(0.0));
        for (int i = 0; i < 5; ++i)
            for (int a = 0; a < 7; ++a) eta[i] += dx(a, i) * w[a];
        return eta;
    };
    MatrixField phi_raw = [embed](std::span<const Jet> u) {
        const JetVector x = embed(u);
        const JetMatrix dx = jacobian_of(x, 5);
        const JetMatrix g_inv = inverse(round_metric(u));
        JetMatrix phi(5, 5);
        for (int j = 0; j < 5; ++j) {
            JetVector col(7);
            for (int a = 0; a < 7; ++a) col[a] = dx(a, j);
            const JetVector c = chart_components(g_inv, dx, cross7_generic(x, col, Jet(0.0)));
            for (int i = 0; i < 5; ++i) phi(i, j) = c[i];
        }
        return phi;
    };
    g.reeb_field = [xi_raw](std::span<const Jet> xs) { return reexpand_vector(xs, xi_raw); };
    g.contact_form = [eta_raw](std::span<const Jet> xs) { return reexpand_vector(xs, eta_raw); };
    g.contact_tensor = [phi_raw](std::span<const Jet> xs) { return reexpand(xs, phi_raw); };
    return g;
}

std::vector<Point> sample_points(const CatalogEntry& entry, int count, std::uint64_t seed) {
    const ChartGeometry& g = entry.geometry;
    std::mt19937_64 rng(seed);
    auto unit = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    std::vector<Point> out;
    long attempts = 0;
    while (static_cast<int>(out.size()) < count) {
        if (++attempts > 1000L * count + 1000) {
            throw GeometryError(ErrorCode::DomainViolation, "sampling region of " + entry.id + " is too small");
        }
        Point p(g.dim);
        for (int i = 0; i < g.dim; ++i) {
            const Interval& b = g.domain_box[i];
            p[i] = b.lo + (b.hi - b.lo) * unit();
        }
        if (!g.contains(p)) continue;
        if (entry.sample_filter && !entry.sample_filter(p)) continue;
        out.push_back(std::move(p));
    }
    return out;
}

namespace {

DeclaredFlag flag(std::string name, bool value, Provenance p) { return {std::move(name), value, p}; }

CatalogEntry map_entry(std::string id, std::string summary, SmoothMap map, std::vector<DeclaredFlag> flags) {
    CatalogEntry e;
    e.id = std::move(id);
    e.summary = std::move(summary);
    map.name = e.id;
    e.geometry = map.domain;
    e.map = std::move(map);
    e.flags = std::move(flags);
    return e;
}

CatalogEntry geometry_entry(std::string id, std::string summary, ChartGeometry g, std::vector<DeclaredFlag> flags) {
    CatalogEntry e;
    e.id = std::move(id);
    e.summary = std::move(summary);
    e.geometry = std::move(g);
    e.flags = std::move(flags);
    return e;
}

std::function<bool(std::span<const double>)> ball_filter(int count, double radius_sq) {
    return [count, radius_sq](std::span<const double> p) { return in_ball(p, count, radius_sq); };
}

SmoothMap flat_map(const std::string& name, ChartGeometry dom, ChartGeometry cod, VectorField components) {
    SmoothMap m;
    m.name = name;
    m.domain = std::move(dom);
    m.codomain = std::move(cod);
    m.components = std::move(components);
    return m;
}

std::vector<CatalogEntry> build_catalog() {
    std::vector<CatalogEntry> c;
    const auto P = Provenance::Paper;
    const auto T = Provenance::Trivial;
    const auto D = Provenance::Derived;

    c.push_back(map_entry(
        "identity", "identity of flat R^4 with its standard complex structure",
        flat_map("identity", flat_space("R4", 4, uniform_box(4, -1, 1), true), flat_space("R4", 4, uniform_box(4, -2, 2), true),
                 [](std::span<const Jet> xs) { return JetVector(xs.begin(), xs.end()); }),
        {flag("harmonic", true, T), flag("phwc", true, T), flag("hwc", true, T), flag("phh", true, T),
         flag("totally_geodesic", true, T)}));

    c.push_back(map_entry(
        "linear", "(x, y) -> (2x, 3y) on flat R^2",
        flat_map("linear", flat_space("R2", 2, uniform_box(2, -1, 1), false), flat_space("R2", 2, uniform_box(2, -4, 4), true),
                 [](std::span<const Jet> xs) { return JetVector{Jet(2.0) * xs[0], Jet(3.0) * xs[1]}; }),
        {flag("harmonic", true, T), flag("phwc", false, D), flag("hwc", false, T), flag("totally_geodesic", true, T)}));

    c.push_back(map_entry(
        "flat.projection", "projection R^5 -> R^4 forgetting the last coordinate",
        flat_map("flat.projection", flat_space("R5", 5, uniform_box(5, -1, 1), false),
                 flat_space("R4", 4, uniform_box(4, -2, 2), true),
                 [](std::span<const Jet> xs) { return JetVector(xs.begin(), xs.begin() + 4); }),
        {flag("harmonic", true, T), flag("phwc", true, T), flag("hwc", true, T), flag("phh", true, T),
         flag("totally_geodesic", true, T), flag("minimal_fibres", true, T), flag("grad_energy_vertical", true, T)}));

    const std::vector<DeclaredFlag> w_flags = {flag("harmonic", true, D), flag("phwc", true, D),
                                               flag("grad_energy_vertical", true, D), flag("minimal_fibres", true, D),
                                               flag("phh", true, D)};
    {
        auto e = map_entry("warped.sin", "warped projection with f = 0.1 sin t, k = 0",
                           warped_product_submersion([](const Jet& t) { return Jet(0.1) * sin(t); },
                                                     [](const Jet&) { return Jet(0.0); },
                                                     {-std::numbers::pi + 0.2, -0.2}),
                           w_flags);
        e.flags.push_back(flag("hwc", false, D));
        c.push_back(std::move(e));
    }
    {
        auto e = map_entry("warped.conformal", "warped projection with f = k = -t",
                           warped_product_submersion([](const Jet& t) { return -t; }, [](const Jet& t) { return -t; },
                                                     {-1.0, 1.0}),
                           w_flags);
        e.flags.push_back(flag("hwc", true, D));
        c.push_back(std::move(e));
    }
    {
        auto e = map_entry("warped.twisted",
                           "warped projection mixed by a complex rotation of angle t/2; f = 0.1 sin t - 0.3, k = t/20",
                           warped_product_submersion([](const Jet& t) { return Jet(0.1) * sin(t) - Jet(0.3); },
                                                     [](const Jet& t) { return Jet(0.05) * t; }, {-1.0, 1.0},
                                                     [](const Jet& t) { return Jet(0.5) * t; }),
                           w_flags);
        e.flags.push_back(flag("hwc", false, D));
        c.push_back(std::move(e));
    }
    {
        ChartGeometry dom;
        dom.name = "R3(e^x dt^2)";
        dom.dim = 3;
        dom.domain_box = uniform_box(3, -1.0, 1.0);
        dom.metric = [](std::span<const Jet> xs) {
            JetMatrix m(3, 3);
            m(0, 0) = Jet(1.0);
            m(1, 1) = Jet(1.0);
            m(2, 2) = exp(xs[0]);
            return m;
        };
        c.push_back(map_entry("warped.fibre", "projection of dx^2 + dy^2 + e^x dt^2 onto (x, y)",
                              flat_map("warped.fibre", dom, flat_space("R2", 2, uniform_box(2, -2, 2), true),
                                       [](std::span<const Jet> xs) { return JetVector{xs[0], xs[1]}; }),
                              {flag("harmonic", false, D), flag("phwc", true, T), flag("hwc", true, T),
                               flag("minimal_fibres", false, D)}));
    }
    {
        ChartGeometry dom = flat_space("R2", 2, {{0.6, 1.5}, {-1.0, 1.0}}, false);
        auto e = map_entry("nonharmonic.square", "(x, y) -> (x^2, y) on flat R^2",
                           flat_map("nonharmonic.square", dom, flat_space("R2", 2, uniform_box(2, -4, 4), true),
                                    [](std::span<const Jet> xs) { return JetVector{xs[0] * xs[0], xs[1]}; }),
                           {flag("harmonic", false, D), flag("phwc", false, D)});
        e.special_points.push_back({1.0, 0.0});
        c.push_back(std::move(e));
    }

    auto ball = [&](std::string id, std::string summary, int m, int n, HolomorphicComponents comp) {
        auto e = map_entry(id, std::move(summary), holomorphic_ball_map(m, n, std::move(comp), id),
                           {flag("harmonic", true, P), flag("phwc", true, P), flag("phh", true, D)});
        e.sample_filter = ball_filter(2 * m, 0.81);
        e.constants = {{"kappa", -1.0},           {"m", m},
                       {"n", n},                 {"energy_bound", 4.0 * (m + 1)},
                       {"ricci_lower", m + 1.0}, {"sectional_upper", 0.5}};
        c.push_back(std::move(e));
    };
    ball("ball.m1n1.half", "z -> z/2 between unit disks", 1, 1,
         [](const std::vector<ComplexJet>& z) { return std::vector<ComplexJet>{0.5 * z[0]}; });
    ball("ball.m2n1.q", "(z1, z2) -> (z1^2 + z2)/2", 2, 1,
         [](const std::vector<ComplexJet>& z) { return std::vector<ComplexJet>{0.5 * (z[0] * z[0] + z[1])}; });
    ball("ball.m2n2.diag", "(z1, z2) -> (z1^2/4, z2)", 2, 2,
         [](const std::vector<ComplexJet>& z) { return std::vector<ComplexJet>{0.25 * (z[0] * z[0]), z[1]}; });
    ball("ball.m2n2.q", "(z1, z2) -> (z1 z2, z1^2)/2", 2, 2,
         [](const std::vector<ComplexJet>& z) {
             return std::vector<ComplexJet>{0.5 * (z[0] * z[1]), 0.5 * (z[0] * z[0])};
         });

    {
        SasakianSpaceForm s = sasakian_space_form(SasakianModel::R, 2);
        s.geometry.domain_box = uniform_box(5, -0.5, 0.5);
        SmoothMap m = flat_map("heisenberg.ball", s.geometry, complex_space_form(2, -1.0), [](std::span<const Jet> xs) {
            return JetVector{Jet(0.3) * xs[0], Jet(0.3) * xs[1], Jet(0.3) * xs[2], Jet(0.3) * xs[3]};
        });
        auto e = map_entry("heisenberg.ball", "R^5 Sasakian (c = -3) -> B^2, 0.3 times the horizontal projection",
                           std::move(m), {flag("harmonic", true, P), flag("phwc", true, P), flag("phh", true, D)});
        e.constants = {{"kappa", -1.0},      {"n", 2},           {"c", -3.0},
                       {"energy_bound", 8.0}, {"ricci_lower", 2.0}, {"sectional_upper", 0.5}};
        c.push_back(std::move(e));
    }
    {
        SasakianSpaceForm s = sasakian_space_form(SasakianModel::BxR, 1, -1.0);
        SmoothMap m = flat_map("bxr.ball", s.geometry, complex_space_form(1, -1.0),
                               [](std::span<const Jet> xs) { return JetVector{xs[0], xs[1]}; });
        auto e = map_entry("bxr.ball", "B^1 x R Sasakian (a = 1) -> B^1 projection", std::move(m),
                           {flag("harmonic", true, P), flag("phwc", true, P), flag("phh", true, D)});
        e.sample_filter = ball_filter(2, 0.81);
        const double kappa = -1.0, a = 1.0, n = 1.0;
        e.constants = {{"kappa", kappa}, {"n", n}, {"a", a}, {"c", s.c},
                       {"energy_bound", 4.0 * (-kappa * (n + 1.0) + 2.0 * a) / (a * std::abs(kappa))},
                       {"ricci_lower", (-kappa * (n + 1.0) + 2.0 * a) / a},
                       {"sectional_upper", std::abs(kappa) / 2.0}};
        c.push_back(std::move(e));
    }
    {
        ChartGeometry cod;
        cod.name = "R4(block conformal)";
        cod.dim = 4;
        cod.domain_box = uniform_box(4, -2.0, 2.0);
        cod.metric = [](std::span<const Jet> ys) {
            const Jet eu = exp(Jet(0.6) * ys[2]), ev = exp(Jet(0.4) * ys[0]);
            JetMatrix m(4, 4);
            m(0, 0) = eu;
            m(1, 1) = eu;
            m(2, 2) = ev;
            m(3, 3) = ev;
            return m;
        };
        cod.complex_structure = constant_field(standard_j(4));
        c.push_back(map_entry(
            "hermitian.twisted", "(x1, y1, x2, y2) -> (1.5 x1, 1.5 y1, x2, y2) into a non-Kähler Hermitian R^4",
            flat_map("hermitian.twisted", flat_space("R4", 4, uniform_box(4, -0.5, 0.5), false), cod,
                     [](std::span<const Jet> xs) {
                         return JetVector{Jet(1.5) * xs[0], Jet(1.5) * xs[1], xs[2], xs[3]};
                     }),
            {flag("phwc", true, D), flag("symplectic_12", false, D)}));
    }

    for (double kappa : {1.0, 0.0, -1.0}) {
        for (int n : {1, 2}) {
            std::ostringstream id;
            id << "cpn.k=" << kappa << ".n=" << n;
            auto e = geometry_entry(id.str(), "complex space form, holomorphic sectional curvature 2κ",
                                    complex_space_form(n, kappa), {flag("kahler", true, P)});
            e.constants = {{"kappa", kappa}, {"n", n}};
            if (kappa < 0.0) e.sample_filter = ball_filter(2 * n, 0.81 / -kappa);
            c.push_back(std::move(e));
        }
    }

    auto sasakian = [&](std::string id, const SasakianSpaceForm& s) {
        auto e = geometry_entry(std::move(id), "Sasakian space form", s.geometry, {flag("xi_killing", true, P)});
        e.constants = {{"n", s.n}, {"c", s.c}, {"a", s.a}};
        if (s.model == SasakianModel::BxR) {
            e.constants["kappa"] = s.kappa;
            e.sample_filter = ball_filter(2 * s.n, 0.81 / -s.kappa);
        }
        e.constants["model"] = static_cast<double>(static_cast<int>(s.model));
        c.push_back(std::move(e));
    };
    sasakian("sasakian.R.n=1", sasakian_space_form(SasakianModel::R, 1));
    sasakian("sasakian.R.n=2", sasakian_space_form(SasakianModel::R, 2));
    sasakian("sasakian.S.n=1", sasakian_space_form(SasakianModel::S, 1));
    sasakian("sasakian.S.n=2.a=2", d_homothety(sasakian_space_form(SasakianModel::S, 2), 2.0));
    sasakian("sasakian.BxR.n=1.k=-1", sasakian_space_form(SasakianModel::BxR, 1, -1.0));
    sasakian("sasakian.BxR.n=2.k=-1.a=0.5", d_homothety(sasakian_space_form(SasakianModel::BxR, 2, -1.0), 0.5));

    c.push_back(geometry_entry("sphere5.nc", "S^5 as a totally geodesic hypersurface of the nearly Kähler S^6",
                               nearly_cosymplectic_sphere5(),
                               {flag("nearly_cosymplectic", true, P), flag("xi_killing", true, P)}));
    {
        ChartGeometry g = flat_space("R4(rotating J)", 4, uniform_box(4, -1.0, 1.0), false);
        g.complex_structure = [](std::span<const Jet> xs) {
            const Jet a = Jet(2.0) * xs[0], ca = cos(a), sa = sin(a);
            JetMatrix r = JetMatrix::identity(4);
            r(1, 1) = ca;
            r(1, 2) = -sa;
            r(2, 1) = sa;
            r(2, 2) = ca;
            return r * JetMatrix::constant(standard_j(4)) * r.transpose();
        };
        c.push_back(geometry_entry("j.nonintegrable", "flat R^4 with a complex structure rotating along x1", g,
                                   {flag("symplectic_12", false, D)}));
    }
    return c;
}

double tension_norm(const MapPointData& d) {
    return std::sqrt(std::max(0.0, inner(d.h(), d.tension, d.tension)));
}

double horizontal_spread(const PointAnalysis& pa) {
    const auto hs = pa.horizontal_slots();
    if (hs.empty()) return 0.0;
    double lo = pa.eigenvalues(hs.front()), hi = lo;
    for (int k : hs) {
        lo = std::min(lo, pa.eigenvalues(k));
        hi = std::max(hi, pa.eigenvalues(k));
    }
    return (hi - lo) / std::max(1.0, hi);
}

Eigen::MatrixXd horizontal_projector(const PointAnalysis& pa) {
    Eigen::MatrixXd ph = Eigen::MatrixXd::Zero(pa.m(), pa.m());
    for (std::size_t j = 0; j < pa.spectrum.groups.size(); ++j)
        if (!pa.spectrum.groups[j].vertical) ph += pa.spectrum.projectors[j].value();
    return ph;
}

/// Measured residual of a flag at one point; the flag holds when it is below the threshold.
double flag_residual(const CatalogEntry& entry, const std::string& name, const Point& p) {
    if (!entry.map) {
        const ChartGeometry& g = entry.geometry;
        if (name == "kahler") return std::max(check_12_symplectic(g, p), check_30_part(g, p));
        if (name == "symplectic_12") return check_12_symplectic(g, p);
        if (name == "nearly_cosymplectic") return nearly_cosymplectic_residual(g, p);
        if (name == "xi_killing") return lie_derivative_metric_norm(g, p, g.reeb_field);
        throw GeometryError(ErrorCode::UnknownId, "no check for flag " + name);
    }
    const SmoothMap& map = *entry.map;
    if (name == "symplectic_12") {
        const MapPointData d = analyze_map(map, p);
        return check_12_symplectic(map.codomain, d.q);
    }
    if (name == "phwc") return is_phwc(map, p).residual;
    const MapPointData d = analyze_map(map, p);
    if (name == "harmonic") return tension_norm(d);
    if (name == "totally_geodesic") return totally_geodesic_check(d).nabla_pullback;

    SpectralOptions opts;
    opts.use_complex_structure = name == "phh";
    opts.compute_connection = name == "minimal_fibres";
    const PointAnalysis pa = analyze_point(map, p, opts);
    if (name == "hwc") return horizontal_spread(pa);
    if (name == "phh") return is_phh(map, pa).residual;
    if (name == "minimal_fibres") {
        if (pa.m() == pa.data.n) return 0.0;
        const Eigen::VectorXd mu = mean_curvature_vertical(pa);
        return std::sqrt(std::max(0.0, inner(pa.data.g(), mu, mu)));
    }
    if (name == "grad_energy_vertical") {
        Eigen::VectorXd de(pa.m());
        for (int i = 0; i < pa.m(); ++i) de(i) = d.energy.d(i);
        const Eigen::MatrixXd g = d.g();
        const Eigen::VectorXd grad_h = horizontal_projector(pa) * g.ldlt().solve(de);
        return std::sqrt(std::max(0.0, inner(g, grad_h, grad_h)));
    }
    throw GeometryError(ErrorCode::UnknownId, "no check for flag " + name);
}

double flag_threshold(const std::string& name) {
    if (name == "harmonic") return 1e-7;
    if (name == "phwc") return 1e-9;
    if (name == "kahler" || name == "symplectic_12") return 1e-9;
    return 1e-8;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = build_catalog();
    return entries;
}

const CatalogEntry& find_entry(std::string_view id) {
    for (const auto& e : catalog())
        if (e.id == id) return e;
    throw GeometryError(ErrorCode::UnknownExample, "no catalog entry " + std::string(id));
}

std::vector<CheckRecord> verify_entry(const CatalogEntry& entry, int samples, std::uint64_t seed) {
    std::vector<Point> points = entry.special_points;
    const auto random = sample_points(entry, samples, seed);
    points.insert(points.end(), random.begin(), random.end());
    std::vector<CheckRecord> records;
    for (const auto& f : entry.flags) {
        const double thr = flag_threshold(f.name);
        for (const Point& p : points) {
            const double res = flag_residual(entry, f.name, p);
            CheckRecord r = bound_record("flag." + f.name, p, res, thr);
            r.example = entry.id;
            r.suite = "catalog";
            r.tolerance = thr;
            r.pass = (res < thr) == f.value;
            records.push_back(std::move(r));
        }
    }
    return records;
}

std::string describe(const CatalogEntry& entry, bool verified) {
    std::ostringstream os;
    os << entry.id << "\n  " << entry.summary << "\n";
    if (entry.map) {
        os << "  map: " << entry.map->domain.name << " (" << entry.map->m() << ") -> " << entry.map->codomain.name
           << " (" << entry.map->n() << ")\n";
    } else {
        os << "  geometry: " << entry.geometry.name << " (" << entry.geometry.dim << ")\n";
    }
    os << "  declared properties" << (verified ? " (re-verified at load)" : "") << ":\n";
    for (const auto& f : entry.flags) {
        os << "    " << f.name << "=" << (f.value ? "true" : "false") << " [" << provenance_tag(f.provenance) << "]\n";
    }
    if (!entry.constants.empty()) {
        os << "  constants:";
        for (const auto& [k, v] : entry.constants) os << " " << k << "=" << v;
        os << "\n";
    }
    return os.str();
}

}  // namespace eigenmap
