#include "eigenmap/map.hpp"

#include "eigenmap/errors.hpp"

namespace eigenmap {

Eigen::VectorXd MapPointData::sff_apply(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
    Eigen::VectorXd r = Eigen::VectorXd::Zero(n);
    for (int a = 0; a < n; ++a)
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) r(a) += sff(a, i, j) * x(i) * y(j);
    return r;
}

Eigen::MatrixXd MapPointData::adjoint() const { return dom.g_inv.value() * J_phi.transpose() * h(); }

MapPointData analyze_map(const SmoothMap& map, std::span<const double> p) {
    MapPointData d;
    d.m = map.m();
    d.n = map.n();
    d.p.assign(p.begin(), p.end());
    d.dom = local_geometry(map.domain, p, 2);

    auto xs = seed_variables(p, 3);
    d.phi = map.components(xs);
    d.q = values(d.phi);
    if (!map.codomain.contains(d.q)) {
        throw GeometryError(ErrorCode::CodomainExit, "image point leaves the codomain chart of " + map.name);
    }
    d.cod = local_geometry(map.codomain, d.q, 2);

    const int m = d.m, n = d.n;
    d.jac = JetMatrix(n, m);
    for (int a = 0; a < n; ++a)
        for (int i = 0; i < m; ++i) d.jac(a, i) = d.phi[a].partial(i);
    d.h_at_phi = map.codomain.metric(d.phi).truncated(2);
    d.pullback = d.jac.transpose() * d.h_at_phi * d.jac;
    d.A = d.dom.g_inv * d.pullback;
    d.J_phi = d.jac.value();

    d.sff = Tensor3(n, m, m);
    for (int a = 0; a < n; ++a) {
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) {
                double v = d.phi[a].d(i, j);
                for (int k = 0; k < m; ++k) v -= d.dom.christoffel(k, i, j) * d.J_phi(a, k);
                for (int b = 0; b < n; ++b)
                    for (int c = 0; c < n; ++c) v += d.cod.christoffel(a, b, c) * d.J_phi(b, i) * d.J_phi(c, j);
                d.sff(a, i, j) = v;
            }
        }
    }

    Eigen::MatrixXd gi = d.dom.g_inv.value();
    d.tension = Eigen::VectorXd::Zero(n);
    for (int a = 0; a < n; ++a)
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) d.tension(a) += gi(i, j) * d.sff(a, i, j);

    d.energy = trace(d.A) * Jet(0.5);
    d.energy_density = d.energy.value();
    d.nabla_pullback = covariant_derivative_2tensor(d.dom, d.pullback);
    return d;
}

Eigen::MatrixXd pullback_metric(const SmoothMap& map, std::span<const double> p) {
    return analyze_map(map, p).pullback.value();
}

Tensor3 second_fundamental_form(const SmoothMap& map, std::span<const double> p) { return analyze_map(map, p).sff; }

Eigen::VectorXd tension(const SmoothMap& map, std::span<const double> p) { return analyze_map(map, p).tension; }

Eigen::VectorXd tension(const MapPointData& d, const std::vector<Eigen::VectorXd>& frame) {
    Eigen::VectorXd t = Eigen::VectorXd::Zero(d.n);
    for (const auto& e : frame) t += d.sff_apply(e, e);
    return t;
}

Eigen::MatrixXd stress_energy(const MapPointData& d) { return d.energy_density * d.g() - d.pullback.value(); }

Eigen::VectorXd div_stress_energy(const MapPointData& d) {
    JetMatrix s = d.energy * d.dom.g.truncated(2) - d.pullback;
    return divergence_2tensor(d.dom, s);
}

Eigen::VectorXd div_pullback(const MapPointData& d) { return divergence_2tensor(d.dom, d.pullback); }

Eigen::VectorXd div_stress_energy_split(const MapPointData& d) {
    Eigen::VectorXd de(d.m);
    for (int k = 0; k < d.m; ++k) de(k) = d.energy.d(k);
    return de - div_pullback(d);
}

double pullback_covariant_derivative(const MapPointData& d, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                     const Eigen::VectorXd& z) {
    double s = 0.0;
    for (int a = 0; a < d.m; ++a)
        for (int b = 0; b < d.m; ++b)
            for (int c = 0; c < d.m; ++c) s += d.nabla_pullback(a, b, c) * x(a) * y(b) * z(c);
    return s;
}

double pullback_covariant_derivative_via_sff(const MapPointData& d, const Eigen::VectorXd& x,
                                             const Eigen::VectorXd& y, const Eigen::VectorXd& z) {
    const Eigen::MatrixXd h = d.h();
    return inner(h, d.sff_apply(x, y), d.push(z)) + inner(h, d.push(y), d.sff_apply(x, z));
}

double sff_polarization(const MapPointData& d, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                        const Eigen::VectorXd& z) {
    return 0.5 * (pullback_covariant_derivative(d, x, y, z) + pullback_covariant_derivative(d, y, z, x) -
                  pullback_covariant_derivative(d, z, x, y));
}

}  // namespace eigenmap
