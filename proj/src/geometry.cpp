#include "eigenmap/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "eigenmap/errors.hpp"

namespace eigenmap {

bool ChartGeometry::contains(std::span<const double> p) const {
    if (static_cast<int>(p.size()) != dim) return false;
    for (int i = 0; i < dim; ++i) {
        if (!(p[i] >= domain_box[i].lo && p[i] <= domain_box[i].hi)) return false;
    }
    return !region || region(p);
}

Eigen::MatrixXd PointFrame::matrix() const {
    if (vectors.empty()) return {};
    Eigen::MatrixXd m(vectors.front().size(), vectors.size());
    for (std::size_t c = 0; c < vectors.size(); ++c) m.col(c) = vectors[c];
    return m;
}

JetVector LocalGeometry::covariant_derivative(const JetVector& x, const JetVector& y) const {
    JetVector r(dim, Jet(0.0));
    for (int a = 0; a < dim; ++a) {
        if (x[a].is_constant() && x[a].value() == 0.0) continue;
        for (int k = 0; k < dim; ++k) r[k] += x[a] * y[k].partial(a);
    }
    for (int k = 0; k < dim; ++k) {
        for (int a = 0; a < dim; ++a) {
            for (int b = 0; b < dim; ++b) r[k] += gamma[k](a, b) * x[a] * y[b];
        }
    }
    return r;
}

Jet LocalGeometry::inner(const JetVector& u, const JetVector& v) const { return eigenmap::inner(g, u, v); }

LocalGeometry local_geometry(const ChartGeometry& geom, std::span<const double> p, int order) {
    if (!geom.contains(p)) {
        std::ostringstream os;
        os << "point outside the chart of " << geom.name;
        throw GeometryError(ErrorCode::PointOutOfDomain, os.str());
    }
    LocalGeometry lg;
    lg.p.assign(p.begin(), p.end());
    lg.dim = geom.dim;
    auto xs = seed_variables(p, order);
    lg.g = geom.metric(xs).truncated(order);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(lg.g.value());
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().maxCoeff();
    if (!(lo > 0.0) || hi / lo > 1e12) {
        throw GeometryError(ErrorCode::SingularMetric, "metric of " + geom.name + " is degenerate at the point");
    }
    lg.g_inv = inverse(lg.g);

    const int n = geom.dim;
    std::vector<JetMatrix> dg;
    dg.reserve(n);
    for (int l = 0; l < n; ++l) dg.push_back(lg.g.partial(l));
    lg.gamma.assign(n, JetMatrix(n, n));
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
            for (int j = i; j < n; ++j) {
                Jet s(0.0);
                for (int l = 0; l < n; ++l) {
                    Jet c = dg[i](l, j) + dg[j](l, i) - dg[l](i, j);
                    s += lg.g_inv(k, l).truncated(order - 1) * c;
                }
                s *= 0.5;
                lg.gamma[k](i, j) = s;
                lg.gamma[k](j, i) = s;
            }
        }
    }
    return lg;
}

Tensor3 christoffel(const ChartGeometry& geom, std::span<const double> p) {
    LocalGeometry lg = local_geometry(geom, p, 1);
    Tensor3 t(geom.dim, geom.dim, geom.dim);
    for (int k = 0; k < geom.dim; ++k)
        for (int i = 0; i < geom.dim; ++i)
            for (int j = 0; j < geom.dim; ++j) t(k, i, j) = lg.christoffel(k, i, j);
    return t;
}

Tensor4 riemann_coordinates(const LocalGeometry& lg) {
    const int n = lg.dim;
    Tensor4 r(n);
    for (int l = 0; l < n; ++l) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                for (int k = 0; k < n; ++k) {
                    double v = lg.gamma[l](j, k).d(i) - lg.gamma[l](i, k).d(j);
                    for (int m = 0; m < n; ++m) {
                        v += lg.christoffel(l, i, m) * lg.christoffel(m, j, k) -
                             lg.christoffel(l, j, m) * lg.christoffel(m, i, k);
                    }
                    r(l, i, j, k) = v;
                }
            }
        }
    }
    return r;
}

double curvature_form(const LocalGeometry& lg, const Tensor4& rc, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                      const Eigen::VectorXd& z, const Eigen::VectorXd& w) {
    const int n = lg.dim;
    Eigen::VectorXd rw = Eigen::VectorXd::Zero(n);  // R(X, Y)W
    for (int l = 0; l < n; ++l) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) {
            if (x(i) == 0.0) continue;
            for (int j = 0; j < n; ++j) {
                if (y(j) == 0.0) continue;
                for (int k = 0; k < n; ++k) s += rc(l, i, j, k) * x(i) * y(j) * w(k);
            }
        }
        rw(l) = s;
    }
    return inner(lg.metric(), rw, z);
}

Tensor4 riemann(const LocalGeometry& lg, const std::vector<Eigen::VectorXd>& frame) {
    Tensor4 rc = riemann_coordinates(lg);
    const int n = static_cast<int>(frame.size());
    Tensor4 r(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) r(i, j, k, l) = curvature_form(lg, rc, frame[i], frame[j], frame[k], frame[l]);
    return r;
}

Tensor4 riemann(const ChartGeometry& geom, std::span<const double> p, const PointFrame& frame) {
    return riemann(local_geometry(geom, p), frame.vectors);
}

double sectional_curvature(const LocalGeometry& lg, const Tensor4& rc, const Eigen::VectorXd& x,
                           const Eigen::VectorXd& y) {
    Eigen::MatrixXd g = lg.metric();
    const double xx = inner(g, x, x), yy = inner(g, y, y), xy = inner(g, x, y);
    const double area = xx * yy - xy * xy;
    // scale-free degeneracy test on |X ∧ Y|^2 / (|X|^2 |Y|^2)
    if (!(area > 1e-14 * xx * yy) || area < 1e-300) {
        throw GeometryError(ErrorCode::DegenerateSection, "vectors are linearly dependent");
    }
    return curvature_form(lg, rc, x, y, x, y) / area;
}

double sectional_curvature(const ChartGeometry& geom, std::span<const double> p, const Eigen::VectorXd& x,
                           const Eigen::VectorXd& y) {
    LocalGeometry lg = local_geometry(geom, p);
    return sectional_curvature(lg, riemann_coordinates(lg), x, y);
}

Eigen::MatrixXd ricci(const Tensor4& rc) {
    const int n = rc.n;
    Eigen::MatrixXd ric = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i) ric(j, k) += rc(i, i, j, k);
    return ric;
}

Eigen::MatrixXd ricci(const ChartGeometry& geom, std::span<const double> p) {
    return ricci(riemann_coordinates(local_geometry(geom, p)));
}

double laplace_beltrami(const LocalGeometry& lg, const Jet& u) {
    const int n = lg.dim;
    Eigen::MatrixXd gi = lg.g_inv.value();
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double hess = u.d(i, j);
            for (int k = 0; k < n; ++k) hess -= lg.christoffel(k, i, j) * u.d(k);
            s += gi(i, j) * hess;
        }
    }
    return s;
}

double laplace_beltrami(const LocalGeometry& lg, const Jet& u, const std::vector<Eigen::VectorXd>& frame) {
    const int n = lg.dim;
    double s = 0.0;
    for (const auto& e : frame) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                double hess = u.d(i, j);
                for (int k = 0; k < n; ++k) hess -= lg.christoffel(k, i, j) * u.d(k);
                s += e(i) * e(j) * hess;
            }
        }
    }
    return s;
}

Tensor3 covariant_derivative_2tensor(const LocalGeometry& lg, const JetMatrix& t) {
    const int n = lg.dim;
    Tensor3 r(n, n, n);
    Eigen::MatrixXd tv = t.value();
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            for (int c = 0; c < n; ++c) {
                double v = t(b, c).d(a);
                for (int l = 0; l < n; ++l) {
                    v -= lg.christoffel(l, a, b) * tv(l, c) + lg.christoffel(l, a, c) * tv(b, l);
                }
                r(a, b, c) = v;
            }
        }
    }
    return r;
}

Eigen::VectorXd divergence_2tensor(const LocalGeometry& lg, const JetMatrix& t) {
    const int n = lg.dim;
    Tensor3 nt = covariant_derivative_2tensor(lg, t);
    Eigen::MatrixXd gi = lg.g_inv.value();
    Eigen::VectorXd d = Eigen::VectorXd::Zero(n);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) d(k) += gi(i, j) * nt(i, j, k);
    return d;
}

std::vector<Eigen::VectorXd> gram_schmidt(const Eigen::MatrixXd& g, const std::vector<Eigen::VectorXd>& vs) {
    std::vector<Eigen::VectorXd> out;
    for (const auto& v0 : vs) {
        Eigen::VectorXd v = v0;
        for (const auto& e : out) v -= inner(g, e, v) * e;
        const double nn = inner(g, v, v);
        if (!(nn > 1e-24 * std::max(1.0, inner(g, v0, v0)))) {
            throw GeometryError(ErrorCode::DegenerateSection, "Gram-Schmidt input is linearly dependent");
        }
        out.push_back(v / std::sqrt(nn));
    }
    return out;
}

std::vector<Eigen::VectorXd> orthonormal_frame(const Eigen::MatrixXd& g) {
    const int n = static_cast<int>(g.rows());
    std::vector<Eigen::VectorXd> out;
    std::vector<bool> used(n, false);
    for (int step = 0; step < n; ++step) {
        int best = -1;
        double best_norm = -1.0;
        Eigen::VectorXd best_vec;
        for (int c = 0; c < n; ++c) {
            if (used[c]) continue;
            Eigen::VectorXd v = Eigen::VectorXd::Unit(n, c);
            for (const auto& e : out) v -= inner(g, e, v) * e;
            const double nn = inner(g, v, v);
            if (nn > best_norm * (1.0 + 1e-12)) {
                best = c;
                best_norm = nn;
                best_vec = v;
            }
        }
        used[best] = true;
        out.push_back(best_vec / std::sqrt(best_norm));
    }
    return out;
}

MatrixField finite_difference_field(std::function<Eigen::MatrixXd(std::span<const double>)> f, double step) {
    return [f = std::move(f), step](std::span<const Jet> u) {
        const int d = static_cast<int>(u.size());
        std::vector<double> y0(d);
        for (int a = 0; a < d; ++a) y0[a] = u[a].value();
        auto eval = [&](int a, double sa, int b, double sb) {
            std::vector<double> y = y0;
            if (a >= 0) y[a] += sa;
            if (b >= 0) y[b] += sb;
            return f(y);
        };
        const Eigen::MatrixXd f0 = f(y0);
        const int rows = static_cast<int>(f0.rows()), cols = static_cast<int>(f0.cols());

        auto first = [&](int a, double h) { return Eigen::MatrixXd((eval(a, h, -1, 0) - eval(a, -h, -1, 0)) / (2 * h)); };
        auto second = [&](int a, int b, double h) {
            if (a == b) return Eigen::MatrixXd((eval(a, h, -1, 0) - 2 * f0 + eval(a, -h, -1, 0)) / (h * h));
            return Eigen::MatrixXd(
                (eval(a, h, b, h) - eval(a, h, b, -h) - eval(a, -h, b, h) + eval(a, -h, b, -h)) / (4 * h * h));
        };
        auto richardson = [](const Eigen::MatrixXd& coarse, const Eigen::MatrixXd& fine) {
            return Eigen::MatrixXd((4.0 * fine - coarse) / 3.0);
        };

        std::vector<Jet> delta;
        delta.reserve(d);
        int order = 0;
        for (int a = 0; a < d; ++a) {
            delta.push_back(u[a] - Jet(y0[a]));
            if (!u[a].is_constant()) order = std::max(order, u[a].order());
        }

        JetMatrix out = JetMatrix::constant(f0);
        if (order == 0) return out;
        std::vector<Eigen::MatrixXd> d1(d);
        for (int a = 0; a < d; ++a) d1[a] = richardson(first(a, step), first(a, step / 2));
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                for (int a = 0; a < d; ++a) out(i, j) += Jet(d1[a](i, j)) * delta[a];
        if (order >= 2) {
            for (int a = 0; a < d; ++a) {
                for (int b = a; b < d; ++b) {
                    Eigen::MatrixXd d2 = richardson(second(a, b, step), second(a, b, step / 2));
                    Jet mono = delta[a] * delta[b];
                    const double w = a == b ? 0.5 : 1.0;
                    for (int i = 0; i < rows; ++i)
                        for (int j = 0; j < cols; ++j) out(i, j) += Jet(w * d2(i, j)) * mono;
                }
            }
        }
        return out;
    };
}

}  // namespace eigenmap
