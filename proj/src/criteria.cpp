#include "eigenmap/criteria.hpp"

#include <algorithm>
#include <cmath>

#include "eigenmap/errors.hpp"

namespace eigenmap {

namespace {

double g_norm(const Eigen::MatrixXd& g, const Eigen::VectorXd& v) { return std::sqrt(std::max(0.0, inner(g, v, v))); }

std::vector<double> as_dir(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

Eigen::MatrixXd vertical_projector(const PointAnalysis& pa) {
    Eigen::MatrixXd pv = Eigen::MatrixXd::Zero(pa.m(), pa.m());
    for (std::size_t j = 0; j < pa.spectrum.groups.size(); ++j)
        if (pa.spectrum.groups[j].vertical) pv += pa.spectrum.projectors[j].value();
    return pv;
}

}  // namespace

HarmonicityCriterion harmonicity_eigen_criterion(const PointAnalysis& pa) {
    const int m = pa.m(), n = pa.data.n;
    if (pa.rank() < n) throw GeometryError(ErrorCode::RankDeficient, "rank below the codomain dimension");
    const auto e = pa.frame_at_point();
    const Eigen::MatrixXd g = pa.data.g();
    const Eigen::VectorXd mu_v = m > n ? mean_curvature_vertical(pa) : Eigen::VectorXd::Zero(m);
    const auto hs = pa.horizontal_slots();

    HarmonicityCriterion hc;
    for (int k : hs) {
        const auto dir = as_dir(e[k]);
        Sides s;
        s.lhs = (pa.data.energy - pa.eigenvalue_jet(k)).directional(dir).value();
        const double lk = pa.eigenvalues(k);
        for (int i : hs) s.rhs += (pa.eigenvalues(i) - lk) * pa.conn.value(i, i, k);
        s.rhs -= (m - n) * lk * inner(g, mu_v, e[k]);
        hc.slots.push_back(k);
        hc.terms.push_back(s);
        hc.max_residual = std::max(hc.max_residual, s.residual());
    }
    return hc;
}

VectorSides hwc_fundamental_equation(const PointAnalysis& pa, double spread_tol) {
    const int m = pa.m(), n = pa.data.n;
    if (pa.rank() < n) throw GeometryError(ErrorCode::RankDeficient, "rank below the codomain dimension");
    const auto hs = pa.horizontal_slots();
    double lo = pa.eigenvalues(hs.front()), hi = lo;
    for (int k : hs) {
        lo = std::min(lo, pa.eigenvalues(k));
        hi = std::max(hi, pa.eigenvalues(k));
    }
    if (hi - lo > spread_tol * std::max(1.0, hi)) {
        throw GeometryError(ErrorCode::NotHWC, "horizontal eigenvalues are not all equal");
    }
    const auto e = pa.frame_at_point();
    VectorSides s;
    s.lhs = Eigen::VectorXd::Zero(m);
    const Jet ln_lambda = log(pa.eigenvalue_jet(hs.front())) * Jet(0.5);
    for (int k : hs) s.lhs += (n - 2) * ln_lambda.directional(as_dir(e[k])).value() * e[k];
    s.rhs = m > n ? Eigen::VectorXd(-(m - n) * mean_curvature_vertical(pa)) : Eigen::VectorXd::Zero(m);
    return s;
}

TotallyGeodesicNorms totally_geodesic_check(const MapPointData& d) {
    const auto e = orthonormal_frame(d.g());
    const Eigen::MatrixXd h = d.h();
    TotallyGeodesicNorms r;
    double a2 = 0.0, b2 = 0.0;
    for (const auto& x : e) {
        for (const auto& y : e) {
            const Eigen::VectorXd s = d.sff_apply(x, y);
            b2 += inner(h, s, s);
            for (const auto& z : e) {
                const double v = pullback_covariant_derivative(d, x, y, z);
                a2 += v * v;
            }
        }
    }
    r.nabla_pullback = std::sqrt(a2);
    r.sff = std::sqrt(b2);
    return r;
}

Sides minimal_fibre_remark(const PointAnalysis& pa) {
    const auto e = pa.frame_at_point();
    const auto hs = pa.horizontal_slots();
    double acc = 0.0;
    for (int k : hs) {
        double div_h = 0.0;
        for (int i : hs) div_h += pullback_covariant_derivative(pa.data, e[i], e[i], e[k]);
        const double de = pa.data.energy.directional(as_dir(e[k])).value();
        acc += (div_h - de) * (div_h - de);
    }
    Sides s;
    s.lhs = std::sqrt(acc);
    s.rhs = pa.m() > pa.data.n ? g_norm(pa.data.g(), mean_curvature_vertical(pa)) : 0.0;
    return s;
}

SmoothMap biconformal_transform(const SmoothMap& map, ScalarField sigma, ScalarField rho, const SpectralOptions& opts) {
    SmoothMap out = map;
    out.name = map.name + "+biconformal";
    out.domain.name = map.domain.name + "+biconformal";
    const MatrixField base_metric = map.domain.metric;
    const VectorField components = map.components;
    const MatrixField cod_metric = map.codomain.metric;
    const int m = map.m(), n = map.n();
    out.domain.metric = [=](std::span<const Jet> xs) {
        const Point p = values(xs);
        const auto ys = seed_variables(p, kMaxJetOrder);
        const JetMatrix g = base_metric(ys);
        const JetVector phi = components(ys);
        JetMatrix jac(n, m);
        for (int a = 0; a < n; ++a)
            for (int i = 0; i < m; ++i) jac(a, i) = phi[a].partial(i);
        const JetMatrix gt = g.truncated(kMaxJetOrder - 1);
        const JetMatrix a_end = inverse(gt) * (jac.transpose() * cod_metric(phi).truncated(kMaxJetOrder - 1) * jac);
        ProjectorJets pj = spectral_projectors(a_end, gt.value(), opts);
        JetMatrix pv(m, m);
        for (std::size_t j = 0; j < pj.groups.size(); ++j)
            if (pj.groups[j].vertical) pv += pj.projectors[j];
        const JetMatrix ph = JetMatrix::identity(m) - pv;

        const Jet s = sigma(ys), r = rho(ys);
        if (!(s.value() > 0.0) || !(r.value() > 0.0)) {
            throw GeometryError(ErrorCode::NonPositiveConformalFactor, "conformal factors must be positive");
        }
        const JetMatrix gbar = inv(square(s)) * (gt * ph) + inv(square(r)) * (gt * pv);
        JetMatrix res(m, m);
        for (int i = 0; i < m; ++i) {
            for (int j = i; j < m; ++j) {
                res(i, j) = substitute(0.5 * (gbar(i, j) + gbar(j, i)), xs);
                res(j, i) = res(i, j);
            }
        }
        return res;
    };
    return out;
}

BiconformalConditions biconformal_conditions(const SmoothMap& map, const SmoothMap& transformed,
                                             const ScalarField& sigma, const ScalarField& rho,
                                             std::span<const double> p, double hold_tol, double conclude_tol) {
    const int m = map.m(), n = map.n();
    SpectralOptions opts;
    opts.use_complex_structure = false;
    opts.compute_connection = false;
    const PointAnalysis pa = analyze_point(map, p, opts);
    const MapPointData bar = analyze_map(transformed, p);

    BiconformalConditions c;
    c.tension_g = std::sqrt(std::max(0.0, inner(pa.data.h(), pa.data.tension, pa.data.tension)));
    c.tension_bar = std::sqrt(std::max(0.0, inner(bar.h(), bar.tension, bar.tension)));

    const auto xs = seed_variables(p, 1);
    const Jet f = pow(rho(xs), m - n) * pow(sigma(xs), n - 2);
    Eigen::VectorXd df(m);
    for (int i = 0; i < m; ++i) df(i) = f.d(i);
    const Eigen::MatrixXd g = pa.data.g();
    const Eigen::VectorXd grad = g.ldlt().solve(df);
    const Eigen::MatrixXd ph = Eigen::MatrixXd::Identity(m, m) - vertical_projector(pa);
    c.grad_h = g_norm(g, ph * grad);

    c.harmonic_g = c.tension_g < hold_tol;
    c.harmonic_bar = c.tension_bar < hold_tol;
    c.gradient_free = c.grad_h < hold_tol;
    if (c.harmonic_g && c.harmonic_bar) c.implication_holds = c.grad_h < conclude_tol;
    if (c.harmonic_g && c.gradient_free) c.implication_holds = c.implication_holds && c.tension_bar < conclude_tol;
    if (c.harmonic_bar && c.gradient_free) c.implication_holds = c.implication_holds && c.tension_g < conclude_tol;
    return c;
}

BiconformalReport biconformal_two_imply_third(const SmoothMap& map, const ScalarField& sigma, const ScalarField& rho,
                                              const std::vector<Point>& samples) {
    const SmoothMap transformed = biconformal_transform(map, sigma, rho);
    SpectralOptions opts;
    opts.use_complex_structure = false;
    opts.compute_connection = false;
    BiconformalReport rep;
    for (const Point& p : samples) {
        BiconformalConditions c = biconformal_conditions(map, transformed, sigma, rho, p);
        rep.consistent = rep.consistent && c.implication_holds;
        rep.points.push_back(c);

        const PointAnalysis pa = analyze_point(map, p, opts);
        const PointAnalysis pb = analyze_point(transformed, p, opts);
        const auto xs = seed_variables(p, 0);
        const double s = sigma(xs).value(), r = rho(xs).value();
        for (int i = 0; i < pa.eigenvalues.size(); ++i) {
            rep.eigenvalue_law = std::max(rep.eigenvalue_law, std::abs(pb.eigenvalues(i) - s * s * pa.eigenvalues(i)));
        }
        const auto eb = pb.frame_at_point();
        const Eigen::MatrixXd g = pa.data.g();
        for (int i = 0; i < pb.frame.size(); ++i) {
            const double want = pb.is_vertical(i) ? r : s;
            rep.frame_law = std::max(rep.frame_law, std::abs(g_norm(g, eb[i]) - want));
        }
    }
    return rep;
}

}  // namespace eigenmap
