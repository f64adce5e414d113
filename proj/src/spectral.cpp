#include "eigenmap/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "eigenmap/errors.hpp"

namespace eigenmap {

std::vector<Eigen::VectorXd> FrameField::at_point() const {
    std::vector<Eigen::VectorXd> out;
    out.reserve(vectors.size());
    for (const auto& v : vectors) out.push_back(value(v));
    return out;
}

int PointAnalysis::rank() const {
    int r = 0;
    for (int s = 0; s < frame.size(); ++s) r += is_vertical(s) ? 0 : 1;
    return r;
}

std::vector<int> PointAnalysis::horizontal_slots() const {
    std::vector<int> out;
    for (int s = 0; s < frame.size(); ++s)
        if (!is_vertical(s)) out.push_back(s);
    return out;
}

std::vector<int> PointAnalysis::vertical_slots() const {
    std::vector<int> out;
    for (int s = 0; s < frame.size(); ++s)
        if (is_vertical(s)) out.push_back(s);
    return out;
}

SpectralData PointAnalysis::spectral() const {
    SpectralData sd;
    sd.eigenvalues.assign(eigenvalues.data(), eigenvalues.data() + eigenvalues.size());
    sd.frame.point = data.p;
    sd.frame.vectors = frame.at_point();
    sd.frame.labels = frame.labels;
    sd.groups = spectrum.groups;
    sd.group_of = frame.group_of;
    sd.horizontal_indices = horizontal_slots();
    sd.vertical_indices = vertical_slots();
    sd.rank = static_cast<int>(sd.horizontal_indices.size());
    return sd;
}

std::vector<EigenGroup> eigen_groups(const Eigen::VectorXd& desc, const SpectralOptions& opts) {
    std::vector<EigenGroup> groups;
    const int m = static_cast<int>(desc.size());
    for (int i = 0; i < m; ++i) {
        const double v = desc(i);
        const bool vertical = v < opts.eps_rank;
        if (!groups.empty()) {
            EigenGroup& last = groups.back();
            const double ref = desc(last.first + last.size - 1);
            const bool same = vertical ? last.vertical
                                       : (!last.vertical && std::abs(v - ref) <= opts.group_rel * std::max(std::abs(v), std::abs(ref)));
            if (same) {
                last.size += 1;
                continue;
            }
        }
        groups.push_back({v, i, 1, vertical});
    }
    for (auto& g : groups) {
        double s = 0.0;
        for (int i = g.first; i < g.first + g.size; ++i) s += desc(i);
        g.value = g.vertical ? 0.0 : s / g.size;
    }
    return groups;
}

namespace {

// Coefficient of P_{j0} δA P_{j1} ... δA P_{jn} in the n-th resolvent term for group i.
double resolvent_coefficient(int i, const std::vector<int>& tuple, const std::vector<double>& mu) {
    int r = 0;
    for (int j : tuple) r += (j == i) ? 1 : 0;
    if (r == 0) return 0.0;
    std::vector<double> poly(r, 0.0);
    poly[0] = 1.0;
    for (int j : tuple) {
        if (j == i) continue;
        const double d = mu[j] - mu[i];
        std::vector<double> series(r);
        double p = 1.0 / d;
        for (int k = 0; k < r; ++k) {
            series[k] = p;
            p /= d;
        }
        std::vector<double> next(r, 0.0);
        for (int a = 0; a < r; ++a)
            for (int b = 0; a + b < r; ++b) next[a + b] += poly[a] * series[b];
        poly = std::move(next);
    }
    const double sign = (r + 1) % 2 == 0 ? 1.0 : -1.0;
    return sign * poly[r - 1];
}

}  // namespace

ProjectorJets spectral_projectors(const JetMatrix& a, const Eigen::MatrixXd& g, const SpectralOptions& opts) {
    const int m = a.rows();
    const Eigen::MatrixXd a0 = a.value();
    Eigen::MatrixXd form = g * a0;
    form = 0.5 * (form + form.transpose()).eval();
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(form, g);
    Eigen::VectorXd desc = es.eigenvalues().reverse();
    Eigen::MatrixXd vecs = es.eigenvectors().rowwise().reverse();

    ProjectorJets pj;
    pj.groups = eigen_groups(desc, opts);
    const int ng = static_cast<int>(pj.groups.size());
    for (int j = 0; j + 1 < ng; ++j) {
        if (pj.groups[j].value - pj.groups[j + 1].value < opts.collision_gap) {
            throw GeometryError(ErrorCode::EigenvalueCollision, "distinct eigenvalue groups are closer than the gap");
        }
    }

    std::vector<Eigen::MatrixXd> p0(ng);
    std::vector<double> mu(ng);
    for (int j = 0; j < ng; ++j) {
        const auto& gr = pj.groups[j];
        Eigen::MatrixXd v = vecs.middleCols(gr.first, gr.size);
        p0[j] = v * v.transpose() * g;
        mu[j] = gr.value;
    }

    int order = 0;
    JetMatrix delta(m, m);
    for (int r = 0; r < m; ++r) {
        for (int c = 0; c < m; ++c) {
            const Jet& e = a(r, c);
            if (e.is_constant()) continue;
            order = std::max(order, e.order());
            delta(r, c) = e - Jet(e.value());
        }
    }

    std::vector<JetMatrix> pc(ng);
    for (int j = 0; j < ng; ++j) pc[j] = JetMatrix::constant(p0[j]);
    std::vector<std::vector<JetMatrix>> blocks(ng, std::vector<JetMatrix>(ng));
    if (order > 0) {
        for (int x = 0; x < ng; ++x) {
            JetMatrix left = pc[x] * delta;
            for (int y = 0; y < ng; ++y) blocks[x][y] = left * pc[y];
        }
    }

    pj.projectors.clear();
    for (int j = 0; j < ng; ++j) pj.projectors.push_back(pc[j]);

    // Chains B_{j0 j1} B_{j1 j2} ... of length n contribute (-1)^n c_i(tuple).
    std::vector<int> tuple;
    std::function<void(int, const JetMatrix&)> extend = [&](int depth, const JetMatrix& prefix) {
        const double sign = depth % 2 == 0 ? 1.0 : -1.0;
        for (int i = 0; i < ng; ++i) {
            const double c = resolvent_coefficient(i, tuple, mu);
            if (c == 0.0) continue;
            pj.projectors[i] += Jet(sign * c) * prefix;
        }
        if (depth == order) return;
        const int last = tuple.back();
        for (int next = 0; next < ng; ++next) {
            tuple.push_back(next);
            extend(depth + 1, prefix * blocks[last][next]);
            tuple.pop_back();
        }
    };
    if (order > 0) {
        for (int j0 = 0; j0 < ng; ++j0) {
            for (int j1 = 0; j1 < ng; ++j1) {
                tuple = {j0, j1};
                extend(1, blocks[j0][j1]);
            }
        }
    }

    for (int j = 0; j < ng; ++j) {
        Jet t = trace(pj.projectors[j] * a);
        t *= 1.0 / pj.groups[j].size;
        pj.values.push_back(t);
    }
    return pj;
}

JetMatrix induced_f_jets(const MapPointData& d, const ProjectorJets& pj, const JetMatrix& j_at_phi) {
    const int m = d.m;
    JetMatrix a_plus(m, m);
    for (std::size_t j = 0; j < pj.groups.size(); ++j) {
        if (pj.groups[j].vertical) continue;
        a_plus += inv(pj.values[j]) * pj.projectors[j];
    }
    JetMatrix adjoint = d.dom.g_inv * d.jac.transpose() * d.h_at_phi;
    return a_plus * adjoint * j_at_phi * d.jac;
}

FrameField build_frame(const JetMatrix& g, const ProjectorJets& pj, const JetMatrix* f_jets,
                       const std::vector<int>& replay) {
    const int m = g.rows();
    const Eigen::MatrixXd g0 = g.value();
    FrameField ff;
    ff.adapted = f_jets != nullptr;
    int slot = 0;
    int pair_label = 0;
    int vertical_count = 0;
    for (std::size_t gi = 0; gi < pj.groups.size(); ++gi) {
        const EigenGroup& gr = pj.groups[gi];
        const JetMatrix& proj = pj.projectors[gi];
        const Eigen::MatrixXd p0 = proj.value();
        const bool paired = f_jets != nullptr && !gr.vertical && gr.size % 2 == 0;
        std::vector<JetVector> group_vecs;
        const int picks = paired ? gr.size / 2 : gr.size;
        for (int s = 0; s < picks; ++s) {
            int pivot = -1;
            if (!replay.empty()) {
                pivot = replay[slot];
            } else {
                double best = -1.0;
                for (int c = 0; c < m; ++c) {
                    Eigen::VectorXd r = p0.col(c);
                    for (const auto& u : group_vecs) {
                        Eigen::VectorXd u0 = value(u);
                        r -= inner(g0, u0, r) * u0;
                    }
                    const double nn = inner(g0, r, r);
                    if (nn > best * (1.0 + 1e-12)) {
                        best = nn;
                        pivot = c;
                    }
                }
            }
            JetVector v(m);
            for (int r = 0; r < m; ++r) v[r] = proj(r, pivot);
            for (const auto& u : group_vecs) {
                Jet c = inner(g, u, v);
                for (int r = 0; r < m; ++r) v[r] -= c * u[r];
            }
            Jet scale = inv(sqrt(inner(g, v, v)));
            for (auto& x : v) x *= scale;
            group_vecs.push_back(v);
            ff.vectors.push_back(v);
            ff.group_of.push_back(static_cast<int>(gi));
            ff.pivots.push_back(pivot);
            ++slot;
            if (gr.vertical) {
                ff.labels.push_back(gr.size == 1 ? "0" : "0_" + std::to_string(++vertical_count));
            } else {
                ++pair_label;
                ff.labels.push_back(paired ? std::to_string(pair_label) : "e" + std::to_string(slot));
            }
            if (paired) {
                JetVector fv = mat_vec(*f_jets, v);
                group_vecs.push_back(fv);
                ff.vectors.push_back(fv);
                ff.group_of.push_back(static_cast<int>(gi));
                ff.pivots.push_back(-1);
                ff.labels.push_back(std::to_string(pair_label) + "b");
                ++slot;
            }
        }
    }
    return ff;
}

ConnectionTable connection(const LocalGeometry& lg, const FrameField& frame) {
    const int n = frame.size();
    ConnectionTable ct;
    ct.size = n;
    ct.data.assign(n * n * n, Jet(0.0));
    const JetMatrix g1 = lg.g.truncated(1);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            JetVector nab = lg.covariant_derivative(frame.vectors[i], frame.vectors[j]);
            for (int k = 0; k < n; ++k) ct(i, j, k) = inner(g1, nab, frame.vectors[k]);
        }
    }
    return ct;
}

PointAnalysis analyze_point(const SmoothMap& map, std::span<const double> p, const SpectralOptions& opts,
                            const std::vector<int>& replay) {
    PointAnalysis pa;
    pa.data = analyze_map(map, p);
    pa.spectrum = spectral_projectors(pa.data.A, pa.data.g(), opts);

    if (opts.use_complex_structure && map.codomain.has_complex_structure()) {
        JetMatrix j_at_phi = map.codomain.complex_structure(pa.data.phi).truncated(2);
        const Eigen::MatrixXd jn = j_at_phi.value();
        const Eigen::MatrixXd dd = pa.data.J_phi * pa.data.adjoint();
        pa.phwc_residual = (dd * jn - jn * dd).cwiseAbs().maxCoeff();
        bool even = true;
        for (const auto& gr : pa.spectrum.groups) even = even && (gr.vertical || gr.size % 2 == 0);
        if (pa.phwc_residual < 1e-9 && even) pa.F = induced_f_jets(pa.data, pa.spectrum, j_at_phi);
    }

    pa.frame = build_frame(pa.data.dom.g, pa.spectrum, pa.F ? &*pa.F : nullptr, replay);
    pa.eigenvalues.resize(pa.frame.size());
    for (int s = 0; s < pa.frame.size(); ++s) pa.eigenvalues(s) = pa.group_of_slot(s).value;
    if (opts.compute_connection) pa.conn = connection(pa.data.dom, pa.frame);
    return pa;
}

SpectralData eigen_analyze(const SmoothMap& map, std::span<const double> p, double eps_rank) {
    SpectralOptions opts;
    opts.eps_rank = eps_rank;
    opts.compute_connection = false;
    return analyze_point(map, p, opts).spectral();
}

double eigenvalue_derivative_formula_a(const PointAnalysis& pa, int i, int k) {
    auto e = pa.frame_at_point();
    const auto& d = pa.data;
    return 2.0 * inner(d.h(), d.sff_apply(e[k], e[i]), d.push(e[i]));
}

namespace {

void require_distinct(int i, int k) {
    if (i == k) throw GeometryError(ErrorCode::IndexError, "the alternative formula requires i != k");
}

}  // namespace

double eigenvalue_derivative_formula_b(const PointAnalysis& pa, int i, int k, const ConnectionValues& conn) {
    require_distinct(i, k);
    auto e = pa.frame_at_point();
    const auto& d = pa.data;
    return -2.0 * inner(d.h(), d.push(e[k]), d.sff_apply(e[i], e[i])) +
           2.0 * (pa.eigenvalues(i) - pa.eigenvalues(k)) * conn(i, i, k);
}

double eigenvalue_derivative_formula_b(const PointAnalysis& pa, int i, int k) {
    require_distinct(i, k);
    auto e = pa.frame_at_point();
    const auto& d = pa.data;
    return -2.0 * inner(d.h(), d.push(e[k]), d.sff_apply(e[i], e[i])) +
           2.0 * (pa.eigenvalues(i) - pa.eigenvalues(k)) * pa.conn.value(i, i, k);
}

double eigenvalue_derivative_direct(const PointAnalysis& pa, int i, const Eigen::VectorXd& direction) {
    std::vector<double> dir(direction.data(), direction.data() + direction.size());
    return pa.eigenvalue_jet(i).directional(dir).value();
}

namespace {

void require_submersion(const PointAnalysis& pa, int n) {
    if (pa.rank() < n) throw GeometryError(ErrorCode::RankDeficient, "rank below the codomain dimension");
}

}  // namespace

Eigen::VectorXd mean_curvature_horizontal(const PointAnalysis& pa) {
    const int n = pa.data.n;
    require_submersion(pa, n);
    auto e = pa.frame_at_point();
    Eigen::VectorXd mu = Eigen::VectorXd::Zero(pa.m());
    for (int i : pa.horizontal_slots())
        for (int a : pa.vertical_slots()) mu += pa.conn.value(i, i, a) * e[a];
    return mu / n;
}

Eigen::VectorXd mean_curvature_horizontal_formula(const PointAnalysis& pa) {
    const int n = pa.data.n;
    require_submersion(pa, n);
    auto e = pa.frame_at_point();
    Jet lnprod(0.0);
    for (int i : pa.horizontal_slots()) lnprod += log(pa.eigenvalue_jet(i)) * Jet(0.5);
    Eigen::VectorXd mu = Eigen::VectorXd::Zero(pa.m());
    for (int a : pa.vertical_slots()) {
        std::vector<double> dir(e[a].data(), e[a].data() + e[a].size());
        mu += lnprod.directional(dir).value() * e[a];
    }
    return mu / n;
}

Eigen::VectorXd mean_curvature_vertical(const PointAnalysis& pa) {
    const int m = pa.m(), n = pa.data.n;
    if (m == n) throw GeometryError(ErrorCode::NoFibre, "equidimensional map has no fibres");
    require_submersion(pa, n);
    auto e = pa.frame_at_point();
    Eigen::VectorXd mu = Eigen::VectorXd::Zero(m);
    for (int a : pa.vertical_slots())
        for (int k : pa.horizontal_slots()) mu += pa.conn.value(a, a, k) * e[k];
    return mu / (m - n);
}

LieDerivativeResult lie_derivative_identity(const PointAnalysis& pa, int v, int x, int y) {
    if (!pa.is_vertical(v)) throw GeometryError(ErrorCode::IndexError, "V must be a vertical frame slot");
    if (pa.frame.group_of[x] != pa.frame.group_of[y]) {
        throw GeometryError(ErrorCode::IndexError, "X and Y must share an eigenvalue group");
    }
    auto e = pa.frame_at_point();
    const auto& lg = pa.data.dom;
    const Eigen::MatrixXd g = lg.metric();
    const JetVector& vf = pa.frame.vectors[v];
    Eigen::VectorXd nx = value(lg.covariant_derivative(jets_from(e[x]), vf));
    Eigen::VectorXd ny = value(lg.covariant_derivative(jets_from(e[y]), vf));
    LieDerivativeResult r;
    r.lhs = inner(g, nx, e[y]) + inner(g, e[x], ny);
    std::vector<double> dir(e[v].data(), e[v].data() + e[v].size());
    const Jet& mu = pa.eigenvalue_jet(x);
    r.rhs = -(mu.directional(dir).value() / mu.value()) * inner(g, e[x], e[y]);
    return r;
}

ConnectionValues connection_fd(const SmoothMap& map, const PointAnalysis& base, double step,
                               const SpectralOptions& opts) {
    const int m = base.m();
    const int n = base.frame.size();
    SpectralOptions o = opts;
    o.compute_connection = false;
    auto e0 = base.frame_at_point();
    const Eigen::MatrixXd g = base.data.g();

    std::vector<std::vector<Eigen::VectorXd>> de(m, std::vector<Eigen::VectorXd>(n));
    for (int a = 0; a < m; ++a) {
        std::vector<Eigen::VectorXd> sides[2];
        for (int s = 0; s < 2; ++s) {
            Point q = base.data.p;
            q[a] += s == 0 ? step : -step;
            PointAnalysis pa = analyze_point(map, q, o, base.frame.pivots);
            auto e = pa.frame_at_point();
            for (int j = 0; j < n; ++j)
                if (inner(g, e[j], e0[j]) < 0.0) e[j] = -e[j];
            sides[s] = std::move(e);
        }
        for (int j = 0; j < n; ++j) de[a][j] = (sides[0][j] - sides[1][j]) / (2.0 * step);
    }

    const auto& lg = base.data.dom;
    ConnectionValues out(n, n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            Eigen::VectorXd nab = Eigen::VectorXd::Zero(m);
            for (int a = 0; a < m; ++a) nab += e0[i](a) * de[a][j];
            for (int k = 0; k < m; ++k)
                for (int a = 0; a < m; ++a)
                    for (int b = 0; b < m; ++b) nab(k) += lg.christoffel(k, a, b) * e0[i](a) * e0[j](b);
            for (int k = 0; k < n; ++k) out(i, j, k) = inner(g, nab, e0[k]);
        }
    }
    return out;
}

}  // namespace eigenmap
