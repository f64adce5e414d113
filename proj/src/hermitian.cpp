#include "eigenmap/hermitian.hpp"

#include <algorithm>
#include <cmath>

#include "eigenmap/errors.hpp"

namespace eigenmap {

namespace {

void require_complex(const ChartGeometry& geom) {
    if (!geom.has_complex_structure()) {
        throw GeometryError(ErrorCode::MissingStructure, geom.name + " carries no almost complex structure");
    }
}

double max_abs(const Eigen::MatrixXd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

const JetMatrix& require_f(const PointAnalysis& pa) {
    if (!pa.F) {
        if (pa.phwc_residual >= 1e-9 || pa.phwc_residual < 0.0) {
            throw GeometryError(ErrorCode::NotPHWC, "map is not pseudo horizontally weakly conformal at the point");
        }
        throw GeometryError(ErrorCode::RankOdd, "an eigenvalue group has odd multiplicity");
    }
    return *pa.F;
}

}  // namespace

StructureTest is_phwc(const MapPointData& d, const Eigen::MatrixXd& jn) {
    const Eigen::MatrixXd dd = d.J_phi * d.adjoint();
    StructureTest t;
    t.residual = max_abs(dd * jn - jn * dd);
    t.holds = t.residual < 1e-9;
    return t;
}

StructureTest is_phwc(const SmoothMap& map, std::span<const double> p) {
    if (map.n() % 2 != 0) throw GeometryError(ErrorCode::OddCodomain, "codomain of " + map.name + " is odd-dimensional");
    require_complex(map.codomain);
    MapPointData d = analyze_map(map, p);
    auto q = seed_variables(d.q, 0);
    return is_phwc(d, map.codomain.complex_structure(q).value());
}

JetMatrix complex_structure_along(const SmoothMap& map, const MapPointData& d) {
    require_complex(map.codomain);
    return map.codomain.complex_structure(d.phi).truncated(2);
}

FStructurePack induce_f_structure(const PointAnalysis& pa) {
    const JetMatrix& fj = require_f(pa);
    FStructurePack pack;
    pack.F = fj.value();
    pack.Phi = pa.data.g() * pack.F;
    pack.adapted_frame.point = pa.data.p;
    pack.adapted_frame.vectors = pa.frame_at_point();
    pack.adapted_frame.labels = pa.frame.labels;
    return pack;
}

FStructurePack induce_f_structure(const SmoothMap& map, std::span<const double> p) {
    if (map.n() % 2 != 0) throw GeometryError(ErrorCode::OddCodomain, "codomain of " + map.name + " is odd-dimensional");
    require_complex(map.codomain);
    SpectralOptions opts;
    opts.compute_connection = false;
    return induce_f_structure(analyze_point(map, p, opts));
}

PointFrame adapted_frame(const SmoothMap& map, std::span<const double> p) {
    return induce_f_structure(map, p).adapted_frame;
}

FStructureResiduals f_structure_residuals(const SmoothMap& map, const PointAnalysis& pa) {
    const Eigen::MatrixXd f = require_f(pa).value();
    const auto& d = pa.data;
    auto q = seed_variables(d.q, 0);
    const Eigen::MatrixXd jn = map.codomain.complex_structure(q).value();
    const Eigen::MatrixXd pb = d.pullback.value();

    FStructureResiduals r;
    r.f_cubed = max_abs(f * f * f + f);
    r.holomorphy = max_abs(d.J_phi * f - jn * d.J_phi);
    r.anti_invariance = max_abs(f.transpose() * pb + pb * f);
    for (const auto& proj : pa.spectrum.projectors) {
        const Eigen::MatrixXd p0 = proj.value();
        r.projector_commute = std::max(r.projector_commute, max_abs(p0 * f - f * p0));
    }
    auto e = pa.frame_at_point();
    for (int s = 0; s + 1 < pa.frame.size(); ++s) {
        if (pa.frame.pivots[s] < 0 || pa.frame.pivots[s + 1] >= 0 || pa.is_vertical(s)) continue;
        const double a = inner(pb, e[s], e[s]);
        const double b = inner(pb, e[s + 1], e[s + 1]);
        r.doubling = std::max({r.doubling, std::abs(a - b), std::abs(inner(pb, e[s], e[s + 1]))});
    }
    return r;
}

Eigen::MatrixXd nabla_endomorphism(const LocalGeometry& lg, const JetMatrix& t, const Eigen::VectorXd& x) {
    const int n = lg.dim;
    const Eigen::MatrixXd t0 = t.value();
    Eigen::MatrixXd r = Eigen::MatrixXd::Zero(n, n);
    for (int a = 0; a < n; ++a) {
        if (x(a) == 0.0) continue;
        for (int k = 0; k < n; ++k) {
            for (int j = 0; j < n; ++j) {
                double v = t(k, j).d(a);
                for (int l = 0; l < n; ++l) v += lg.christoffel(k, a, l) * t0(l, j) - lg.christoffel(l, a, j) * t0(k, l);
                r(k, j) += x(a) * v;
            }
        }
    }
    return r;
}

double exterior_derivative_2form(const JetMatrix& beta, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                 const Eigen::VectorXd& z) {
    const int n = beta.rows();
    auto term = [&](const Eigen::VectorXd& u, const Eigen::VectorXd& v, const Eigen::VectorXd& w) {
        double s = 0.0;
        for (int a = 0; a < n; ++a) {
            if (u(a) == 0.0) continue;
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c) s += u(a) * beta(b, c).d(a) * v(b) * w(c);
        }
        return s;
    };
    return term(x, y, z) + term(y, z, x) + term(z, x, y);
}

namespace {

struct TypeParts {
    double mixed = 0.0;  // (1,2) + (2,1)
    double pure = 0.0;   // (3,0) + (0,3)
};

TypeParts fundamental_form_type_parts(const ChartGeometry& geom, std::span<const double> p) {
    require_complex(geom);
    LocalGeometry lg = local_geometry(geom, p, 1);
    auto xs = seed_variables(p, 1);
    const JetMatrix j = geom.complex_structure(xs).truncated(1);
    const JetMatrix omega = lg.g * j;  // Ω(X, Y) = g(X, JY)
    const Eigen::MatrixXd j0 = j.value();
    auto e = orthonormal_frame(lg.metric());
    const int n = geom.dim;
    TypeParts parts;
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            for (int c = b + 1; c < n; ++c) {
                const Eigen::VectorXd &x = e[a], &y = e[b], &z = e[c];
                const double beta = exterior_derivative_2form(omega, x, y, z);
                const double pure = 0.25 * (beta - exterior_derivative_2form(omega, x, j0 * y, j0 * z) -
                                            exterior_derivative_2form(omega, j0 * x, y, j0 * z) -
                                            exterior_derivative_2form(omega, j0 * x, j0 * y, z));
                parts.pure = std::max(parts.pure, std::abs(pure));
                parts.mixed = std::max(parts.mixed, std::abs(beta - pure));
            }
        }
    }
    return parts;
}

}  // namespace

double check_12_symplectic(const ChartGeometry& geom, std::span<const double> p) {
    return fundamental_form_type_parts(geom, p).mixed;
}

double check_30_part(const ChartGeometry& geom, std::span<const double> p) {
    return fundamental_form_type_parts(geom, p).pure;
}

double lie_derivative_metric_norm(const ChartGeometry& geom, std::span<const double> p, const VectorField& x) {
    const LocalGeometry lg = local_geometry(geom, p, 2);
    auto xs = seed_variables(p, 2);
    const JetVector xv = x(xs);
    const int n = geom.dim;
    const Eigen::MatrixXd g0 = lg.metric();
    Eigen::MatrixXd lie = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double v = 0.0;
            for (int k = 0; k < n; ++k) {
                v += xv[k].value() * lg.g(i, j).d(k) + g0(k, j) * xv[k].d(i) + g0(i, k) * xv[k].d(j);
            }
            lie(i, j) = v;
        }
    }
    const auto e = orthonormal_frame(g0);
    double acc = 0.0;
    for (const auto& a : e)
        for (const auto& b : e) acc += std::pow(a.dot(lie * b), 2);
    return std::sqrt(acc);
}

double nearly_cosymplectic_residual(const ChartGeometry& geom, std::span<const double> p) {
    if (!geom.contact_tensor) throw GeometryError(ErrorCode::MissingStructure, geom.name + " carries no contact tensor");
    const LocalGeometry lg = local_geometry(geom, p, 2);
    auto xs = seed_variables(p, 2);
    const JetMatrix t = geom.contact_tensor(xs).truncated(1);
    const Eigen::MatrixXd g0 = lg.metric();
    const auto e = orthonormal_frame(g0);
    std::vector<Eigen::MatrixXd> nt;
    for (const auto& v : e) nt.push_back(nabla_endomorphism(lg, t, v));
    double worst = 0.0;
    for (std::size_t a = 0; a < e.size(); ++a) {
        for (std::size_t b = a; b < e.size(); ++b) {
            const Eigen::VectorXd s = nt[a] * e[b] + nt[b] * e[a];
            worst = std::max(worst, std::sqrt(std::max(0.0, inner(g0, s, s))));
        }
    }
    return worst;
}

Sides phwc_derivative_identity(const SmoothMap& map, const PointAnalysis& pa, int i, int k) {
    const JetMatrix& fj = require_f(pa);
    const int n = pa.frame.size();
    if (i < 0 || k < 0 || i + 1 >= n || k >= n) throw GeometryError(ErrorCode::IndexError, "slot out of range");
    if (pa.frame.pivots[i] < 0 || pa.frame.pivots[i + 1] >= 0 || pa.is_vertical(i)) {
        throw GeometryError(ErrorCode::IndexError, "slot i must hold an E_i followed by FE_i");
    }
    if (k == i || k == i + 1) throw GeometryError(ErrorCode::IndexError, "k must lie outside the pair of i");
    if (pa.is_vertical(k)) throw GeometryError(ErrorCode::IndexError, "E_k must be horizontal");

    const auto& d = pa.data;
    const auto e = pa.frame_at_point();
    const Eigen::MatrixXd g = d.g();
    const int fi = i + 1;
    const double li = pa.eigenvalues(i), lk = pa.eigenvalues(k);

    Sides s;
    s.lhs = (li - lk) * (pa.conn.value(i, i, k) + pa.conn.value(fi, fi, k));

    const JetMatrix jj = complex_structure_along(map, d);
    const JetMatrix omega = d.jac.transpose() * d.h_at_phi * jj * d.jac;
    const double d_omega = exterior_derivative_2form(omega, e[i], e[fi], e[k]);

    std::vector<double> dir(e[k].data(), e[k].data() + e[k].size());
    const double ek_li = pa.eigenvalue_jet(i).directional(dir).value();

    const Eigen::MatrixXd f0 = fj.value();
    Eigen::VectorXd nf = nabla_endomorphism(d.dom, fj, e[i]) * e[i] + nabla_endomorphism(d.dom, fj, e[fi]) * e[fi];
    s.rhs = d_omega + ek_li - lk * inner(g, f0 * nf, e[k]);
    return s;
}

VectorSides nabla_dphi_J_identity(const SmoothMap& map, const PointAnalysis& pa, const Eigen::VectorXd& x,
                                  const Eigen::VectorXd& y) {
    const JetMatrix& fj = require_f(pa);
    const auto& d = pa.data;
    const JetMatrix jj = complex_structure_along(map, d);
    const Eigen::MatrixXd j0 = jj.value();
    const int n = d.n;

    // (∇^φ_X J)^a_b = X(J^a_b) + Γ̃^a_cd (dφX)^c J^d_b - J^a_d Γ̃^d_cb (dφX)^c
    std::vector<double> dir(x.data(), x.data() + x.size());
    Eigen::MatrixXd nj = jj.directional(dir).value();
    const Eigen::VectorXd px = d.push(x);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            double v = 0.0;
            for (int c = 0; c < n; ++c) {
                for (int l = 0; l < n; ++l) {
                    v += d.cod.christoffel(a, c, l) * px(c) * j0(l, b) - j0(a, l) * d.cod.christoffel(l, c, b) * px(c);
                }
            }
            nj(a, b) += v;
        }
    }

    const Eigen::MatrixXd f0 = fj.value();
    VectorSides s;
    s.lhs = nj * d.push(y);
    s.rhs = d.push(nabla_endomorphism(d.dom, fj, x) * y) + d.sff_apply(x, f0 * y) - j0 * d.sff_apply(x, y);
    return s;
}

StructureTest is_phh(const SmoothMap& map, const PointAnalysis& pa) {
    require_f(pa);
    const auto& d = pa.data;
    const JetMatrix jj = complex_structure_along(map, d);
    const Eigen::MatrixXd j0 = jj.value();
    const JetMatrix adj = d.dom.g_inv * d.jac.transpose() * d.h_at_phi;  // dφ^t along φ
    const JetMatrix adj_j = adj * jj;
    const auto e = pa.frame_at_point();

    StructureTest t;
    for (int s : pa.horizontal_slots()) {
        const JetVector v = jets_from(e[s]);
        for (int a = 0; a < d.n; ++a) {
            JetVector wy(d.m), wjy(d.m);
            for (int r = 0; r < d.m; ++r) {
                wy[r] = adj(r, a);
                wjy[r] = adj_j(r, a);
            }
            const Eigen::VectorXd lhs = d.push(value(d.dom.covariant_derivative(v, wjy)));
            const Eigen::VectorXd rhs = j0 * d.push(value(d.dom.covariant_derivative(v, wy)));
            t.residual = std::max(t.residual, (lhs - rhs).cwiseAbs().maxCoeff());
        }
    }
    t.holds = t.residual < 1e-8;
    return t;
}

}  // namespace eigenmap
