#include "eigenmap/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "eigenmap/bochner.hpp"
#include "eigenmap/criteria.hpp"
#include "eigenmap/errors.hpp"
#include "eigenmap/hermitian.hpp"
#include "eigenmap/schwarz.hpp"

namespace eigenmap {

namespace {

const Point kNoPoint{};

double g_norm(const Eigen::MatrixXd& g, const Eigen::VectorXd& v) { return std::sqrt(std::max(0.0, inner(g, v, v))); }

std::string base_id(const std::string& id) { return id.substr(0, id.find('[')); }

std::string idx(const std::string& name, int a, int b = -1) {
    std::string s = name + "[" + std::to_string(a);
    if (b >= 0) s += "," + std::to_string(b);
    return s + "]";
}

[[noreturn]] void config_error(const std::string& what) { throw GeometryError(ErrorCode::ConfigError, what); }

/// Record sink for one suite run.
struct Sink {
    const RunConfig& cfg;
    const CatalogEntry& entry;
    std::vector<CheckRecord>& out;

    double tol(const std::string& id, double fallback) const {
        const auto it = cfg.tol_overrides.find(base_id(id));
        return it == cfg.tol_overrides.end() ? fallback : it->second;
    }
    void push(CheckRecord r) {
        r.example = entry.id;
        r.suite = cfg.suite_id;
        out.push_back(std::move(r));
    }
    void eq(const std::string& id, const Point& p, double lhs, double rhs, double fallback) {
        push(equality_record(id, p, lhs, rhs, tol(id, fallback)));
    }
    /// Residual that must vanish; relative error is not meaningful here.
    void zero(const std::string& id, const Point& p, double residual, double fallback) {
        CheckRecord r = equality_record(id, p, residual, 0.0, tol(id, fallback));
        r.rel_err = r.abs_err == 0.0 ? 0.0 : 1.0;
        r.pass = r.abs_err <= r.tolerance;
        push(std::move(r));
    }
    void le(const std::string& id, const Point& p, double lhs, double rhs) { push(bound_record(id, p, lhs, rhs)); }
    void flag(const std::string& id, const Point& p, bool observed, bool expected) {
        push(flag_record(id, p, observed, expected));
    }
    /// Exported value with no pass criterion beyond being computed.
    void diag(const std::string& id, const Point& p, double value) {
        push(equality_record("diag." + id, p, value, value, 0.0));
    }
    void error(const Point& p, const GeometryError& err) {
        CheckRecord r = bound_record("error." + std::string(error_name(err.code())), p, 1.0, 0.0);
        push(std::move(r));
    }
};

std::vector<Point> suite_points(const RunConfig& cfg, const CatalogEntry& e) {
    std::vector<Point> pts = e.special_points;
    const auto rnd = sample_points(e, cfg.samples, cfg.seed);
    pts.insert(pts.end(), rnd.begin(), rnd.end());
    return pts;
}

template <class F>
void for_points(Sink& s, const std::vector<Point>& pts, F&& body) {
    for (const Point& p : pts) {
        try {
            body(p);
        } catch (const GeometryError& err) {
            s.error(p, err);
        }
    }
}

const SmoothMap& require_map(const CatalogEntry& e, const std::string& suite) {
    if (!e.map) config_error("suite " + suite + " needs a map entry; " + e.id + " is a geometry");
    return *e.map;
}

void require_flag(const CatalogEntry& e, const std::string& flag, const std::string& suite) {
    if (!e.flag(flag)) config_error("suite " + suite + " needs an entry declared " + flag + "; " + e.id + " is not");
}

std::vector<int> pair_heads(const PointAnalysis& pa) {
    std::vector<int> heads;
    for (int s = 0; s < pa.frame.size(); ++s) {
        const auto& l = pa.frame.labels[s];
        if (!pa.is_vertical(s) && l.back() != 'b' && s + 1 < pa.frame.size() && pa.frame.labels[s + 1] == l + "b")
            heads.push_back(s);
    }
    return heads;
}

void suite_eigen_derivatives(Sink& s, const std::vector<Point>& pts) {
    const SmoothMap& map = require_map(s.entry, s.cfg.suite_id);
    for_points(s, pts, [&](const Point& p) {
        const PointAnalysis pa = analyze_point(map, p);
        const auto e = pa.frame_at_point();
        for (int i : pa.horizontal_slots()) {
            for (int k = 0; k < pa.frame.size(); ++k) {
                const double direct = eigenvalue_derivative_direct(pa, i, e[k]);
                s.eq(idx("dlambda_a", i, k), p, eigenvalue_derivative_formula_a(pa, i, k), direct, 1e-6);
                if (i != k) s.eq(idx("dlambda_b", i, k), p, eigenvalue_derivative_formula_b(pa, i, k), direct, 1e-6);
            }
        }
        if (pa.m() > pa.data.n) {
            const Eigen::VectorXd mu = mean_curvature_horizontal(pa), mu_f = mean_curvature_horizontal_formula(pa);
            s.zero("mean_curvature_h", p, g_norm(pa.data.g(), mu - mu_f), 1e-6);
            for (int v : pa.vertical_slots()) {
                for (int x : pa.horizontal_slots()) {
                    for (int y : pa.horizontal_slots()) {
                        if (pa.frame.group_of[x] != pa.frame.group_of[y]) continue;
                        const auto r = lie_derivative_identity(pa, v, x, y);
                        s.eq(idx("lie_derivative", x, y), p, r.lhs, r.rhs, 1e-6);
                    }
                }
            }
        }
        const ConnectionValues fd = connection_fd(map, pa, s.cfg.fd_step);
        double worst = 0.0;
        const int n = pa.frame.size();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) worst = std::max(worst, std::abs(fd(i, j, k) - pa.conn.value(i, j, k)));
        s.zero("connection_fd", p, worst, 1e-5);
    });
}

void suite_phwc_identities(Sink& s, const std::vector<Point>& pts) {
    const SmoothMap& map = require_map(s.entry, s.cfg.suite_id);
    require_flag(s.entry, "phwc", s.cfg.suite_id);
    const DeclaredFlag* phh = s.entry.find_flag("phh");
    for_points(s, pts, [&](const Point& p) {
        const PointAnalysis pa = analyze_point(map, p);
        const auto r = f_structure_residuals(map, pa);
        s.zero("f_cubed", p, r.f_cubed, 1e-9);
        s.zero("holomorphy", p, r.holomorphy, 1e-9);
        s.zero("anti_invariance", p, r.anti_invariance, 1e-9);
        s.zero("projector_commute", p, r.projector_commute, 1e-9);
        s.zero("doubling", p, r.doubling, 1e-9);
        const auto heads = pair_heads(pa);
        for (int i : heads) {
            for (int k : pa.horizontal_slots()) {
                if (k == i || k == i + 1) continue;
                const Sides d = phwc_derivative_identity(map, pa, i, k);
                s.eq(idx("derivative_identity", i, k), p, d.lhs, d.rhs, 1e-5);
            }
        }
        const auto e = pa.frame_at_point();
        double worst = 0.0;
        for (const auto& x : e)
            for (const auto& y : e) worst = std::max(worst, nabla_dphi_J_identity(map, pa, x, y).residual());
        s.zero("nabla_dphi_J", p, worst, 1e-6);
        if (phh) s.flag("phh", p, is_phh(map, pa).holds, phh->value);
    });
}

void suite_harmonicity(Sink& s, const std::vector<Point>& pts) {
    const SmoothMap& map = require_map(s.entry, s.cfg.suite_id);
    const DeclaredFlag* harmonic = s.entry.find_flag("harmonic");
    if (!harmonic) config_error("entry " + s.entry.id + " declares no harmonic flag");
    const bool hwc = s.entry.flag("hwc");
    double max_res = 0.0, max_tau = 0.0;
    for (std::size_t n = 0; n < pts.size(); ++n) {
        const Point& p = pts[n];
        const bool special = n < s.entry.special_points.size();
        try {
            const PointAnalysis pa = analyze_point(map, p);
            const HarmonicityCriterion hc = harmonicity_eigen_criterion(pa);
            const double tau = g_norm(pa.data.h(), pa.data.tension);
            max_res = std::max(max_res, hc.max_residual);
            max_tau = std::max(max_tau, tau);
            s.flag("harmonicity_equivalence", p, hc.max_residual < 1e-7, tau < 1e-5);
            if (harmonic->value) {
                s.zero("harmonicity_criterion", p, hc.max_residual, 1e-7);
                if (pa.m() > pa.data.n) {
                    const Sides r = minimal_fibre_remark(pa);
                    s.flag("minimal_fibre_remark", p, r.lhs < 1e-6, r.rhs < 1e-6);
                }
            } else if (special) {
                s.le("criterion_violation", p, 0.1, hc.max_residual);
                s.le("tension_violation", p, 0.1, tau);
            }
            if (hwc) {
                const double r = hwc_fundamental_equation(pa).residual();
                if (harmonic->value) {
                    s.zero("hwc_equation", p, r, 1e-6);
                } else {
                    s.le("hwc_equation_violation", p, 1e-3, r);
                }
            }
        } catch (const GeometryError& err) {
            s.error(p, err);
        }
    }
    s.flag("harmonicity_equivalence_all", kNoPoint, max_res < 1e-7, max_tau < 1e-5);
}

void suite_totally_geodesic(Sink& s, const std::vector<Point>& pts) {
    const SmoothMap& map = require_map(s.entry, s.cfg.suite_id);
    const bool tg = s.entry.flag("totally_geodesic");
    for_points(s, pts, [&](const Point& p) {
        const MapPointData d = analyze_map(map, p);
        const TotallyGeodesicNorms nr = totally_geodesic_check(d);
        s.flag("norms_vanish_together", p, nr.nabla_pullback < 1e-8, nr.sff < 1e-6);
        if (tg) {
            s.zero("nabla_pullback", p, nr.nabla_pullback, 1e-8);
            SpectralOptions opts;
            opts.compute_connection = false;
            const PointAnalysis pa = analyze_point(map, p, opts);
            double worst = 0.0;
            for (int i : pa.horizontal_slots()) {
                for (int a = 0; a < pa.m(); ++a) {
                    Eigen::VectorXd dir = Eigen::VectorXd::Unit(pa.m(), a);
                    worst = std::max(worst, std::abs(eigenvalue_derivative_direct(pa, i, dir)));
                }
            }
            s.zero("eigenvalues_constant", p, worst, 1e-6);
        }
        const auto e = orthonormal_frame(d.g());
        double m1 = 0.0, m2 = 0.0;
        for (const auto& x : e) {
            for (const auto& y : e) {
                for (const auto& z : e) {
                    m1 = std::max(m1, std::abs(pullback_covariant_derivative(d, x, y, z) -
                                               pullback_covariant_derivative_via_sff(d, x, y, z)));
                    m2 = std::max(m2, std::abs(sff_polarization(d, x, y, z) -
                                               inner(d.h(), d.sff_apply(x, y), d.push(z))));
                }
            }
        }
        s.zero("nabla_pullback_via_sff", p, m1, 1e-8);
        s.zero("sff_polarization", p, m2, 1e-8);
    });
}

void suite_biconformal(Sink& s, const std::vector<Point>& pts) {
    const SmoothMap& map = require_map(s.entry, s.cfg.suite_id);
    require_flag(s.entry, "harmonic", s.cfg.suite_id);
    const int m = map.m(), n = map.n();
    if (m <= n) config_error("suite biconformal needs m > n; " + s.entry.id + " has m = n");
    struct Scenario {
        std::string name;
        ScalarField sigma, rho;
        bool gradient_free;
    };
    const double q = -(n - 2.0) / (m - n);
    const std::vector<Scenario> scenarios = {
        {"constant", [](std::span<const Jet>) { return Jet(2.0); }, [](std::span<const Jet>) { return Jet(0.5); },
         true},
        {"vertical", [m](std::span<const Jet> xs) { return exp(Jet(0.3) * sin(xs[m - 1])); },
         [m, q](std::span<const Jet> xs) { return exp(Jet(0.3 * q) * sin(xs[m - 1])); }, true},
        {"horizontal", [](std::span<const Jet> xs) { return exp(xs[0]); },
         [](std::span<const Jet>) { return Jet(1.0); }, n == 2},
    };
    const SpectralOptions opts;
    for (const auto& sc : scenarios) {
        const SmoothMap bar = biconformal_transform(map, sc.sigma, sc.rho, opts);
        double max_bar = 0.0, law = 0.0;
        for_points(s, pts, [&](const Point& p) {
            const BiconformalConditions c = biconformal_conditions(map, bar, sc.sigma, sc.rho, p);
            s.flag("implication[" + sc.name + "]", p, c.implication_holds, true);
            s.flag("gradient_free[" + sc.name + "]", p, c.gradient_free, sc.gradient_free);
            if (sc.gradient_free) s.flag("harmonic_bar[" + sc.name + "]", p, c.harmonic_bar, true);
            max_bar = std::max(max_bar, c.tension_bar);
            const BiconformalReport rep = biconformal_two_imply_third(map, sc.sigma, sc.rho, {p});
            law = std::max(law, rep.eigenvalue_law);
            s.zero("eigenvalue_law[" + sc.name + "]", p, rep.eigenvalue_law, 1e-8);
            s.zero("frame_law[" + sc.name + "]", p, rep.frame_law, 1e-8);
        });
        if (!sc.gradient_free) s.le("tension_bar_violation[" + sc.name + "]", kNoPoint, 1e-3, max_bar);
    }
}

void suite_schwarz(Sink& s, const std::vector<Point>& pts) {
    const SmoothMap& map = require_map(s.entry, s.cfg.suite_id);
    require_flag(s.entry, "phwc", s.cfg.suite_id);
    const bool energy = s.entry.has_constant("energy_bound");
    if (energy) {
        const double A = s.entry.constant("ricci_lower"), B = s.entry.constant("sectional_upper");
        s.eq("energy_bound_closed_form", kNoPoint, 2.0 * A / B, s.entry.constant("energy_bound"), 1e-12);
    }
    std::vector<double> dphi_sq;
    for_points(s, pts, [&](const Point& p) {
        const SpectralData sd = eigen_analyze(map, p);
        const std::vector<double>& ev = sd.eigenvalues;
        const int pairs = sd.rank / 2;
        double total = 0.0;
        for (double v : ev) total += v;
        dphi_sq.push_back(total);
        if (pairs >= 1) {
            const RatioBounds rb = phwc_ratio_bounds(ev, pairs);
            s.le("ratio_crude", p, rb.ratio, rb.crude_bound * (1.0 + 1e-12));
            if (pairs >= 2) s.flag("ratio_strict", p, rb.ratio < rb.crude_bound, true);
            s.le("ratio_refined", p, rb.ratio, rb.refined_bound * (1.0 + 1e-12));
            s.flag("equality_iff_hwc", p, std::abs(rb.ratio - rb.refined_bound) <= 1e-9 * rb.refined_bound,
                   rb.equality);
        }
        const auto frame = orthonormal_frame(local_geometry(map.domain, p).metric());
        Eigen::MatrixXd e(map.m(), map.m());
        for (int c = 0; c < map.m(); ++c) e.col(c) = frame[c];
        const Eigen::MatrixXd a = e.transpose() * pullback_metric(map, p) * e;
        for (int k = 1; k <= std::min(map.m(), 4); ++k) {
            const double w = wedge_norm(ev, k);
            s.eq(idx("wedge_minors", k), p, w * w, wedge_norm_sq_minors(a, k), 1e-8);
        }
        if (sd.rank >= 2) {
            s.eq("dilatation_order_one", p, ev[0] / ev[1], 1.0, 1e-9);
            const DilatationInequality di = bounded_dilatation_inequality(ev, 1.0, std::min(map.m(), map.n()));
            s.le("dilatation_inequality", p, di.lhs, di.rhs);
        }
        if (energy) s.le("energy_bound", p, total, s.entry.constant("energy_bound"));
    });
    if (energy && !dphi_sq.empty()) {
        const EnergyBoundReport r =
            energy_bound_check(dphi_sq, s.entry.constant("ricci_lower"), s.entry.constant("sectional_upper"));
        s.flag("energy_margin_positive", kNoPoint, r.margin > 0.0, true);
    }
}

void suite_curvature_constants(Sink& s, const std::vector<Point>& pts) {
    const CatalogEntry& e = s.entry;
    if (e.map) config_error("suite curvature-constants needs a geometry entry; " + e.id + " is a map");
    const ChartGeometry& geom = e.geometry;
    const bool sasakian = e.has_constant("model");
    if (!sasakian && !(e.has_constant("kappa") && geom.has_complex_structure()))
        config_error("entry " + e.id + " has no closed-form curvature constants");
    std::mt19937_64 rng(s.cfg.seed ^ 0x9e3779b97f4a7c15ULL);
    std::normal_distribution<double> normal;
    auto random_vector = [&](int dim) {
        Eigen::VectorXd v(dim);
        for (int c = 0; c < dim; ++c) v(c) = normal(rng);
        return v;
    };
    const int dim = geom.dim;

    if (!sasakian) {
        const double kappa = e.constant("kappa");
        const int n = static_cast<int>(e.constant("n"));
        const double lo = std::min(2.0 * kappa, 0.5 * kappa), hi = std::max(2.0 * kappa, 0.5 * kappa);
        for_points(s, pts, [&](const Point& p) {
            const LocalGeometry lg = local_geometry(geom, p);
            const Tensor4 rc = riemann_coordinates(lg);
            const Eigen::MatrixXd j = geom.complex_structure(seed_variables(p, 0)).value();
            const Eigen::VectorXd x = random_vector(dim);
            s.eq("holomorphic_sectional", p, sectional_curvature(lg, rc, x, j * x), 2.0 * kappa, 1e-8);
            for (int k = 0; k < 10; ++k) {
                const double K = sectional_curvature(lg, rc, random_vector(dim), random_vector(dim));
                if (kappa == 0.0) {
                    s.zero("sectional_flat", p, std::abs(K), 1e-8);
                } else {
                    s.le("pinching_lower", p, lo - 1e-9, K);
                    s.le("pinching_upper", p, K, hi + 1e-9);
                }
            }
            const Eigen::MatrixXd ric = ricci(rc);
            for (const auto& v : orthonormal_frame(lg.metric()))
                s.eq("ricci_unit", p, v.dot(ric * v), (n + 1) * kappa, 1e-8);
        });
        return;
    }

    const auto model = static_cast<SasakianModel>(static_cast<int>(e.constant("model")));
    const int n = static_cast<int>(e.constant("n"));
    const double c = e.constant("c"), a = e.constant("a");
    const double kappa = e.has_constant("kappa") ? e.constant("kappa") : 0.0;
    double c_base = -3.0, bullet = -2.0;
    if (model == SasakianModel::S) {
        c_base = 1.0;
        bullet = 2.0 * (n + 1.0 - a) / a;
    } else if (model == SasakianModel::BxR) {
        c_base = 2.0 * kappa - 3.0;
        bullet = (kappa * (n + 1.0) - 2.0 * a) / a;
    }
    s.eq("d_homothety_c", kNoPoint, c, d_homothety_c(c_base, a), 1e-15);
    SasakianSpaceForm closed;
    closed.geometry = geom;
    closed.model = model;
    closed.n = n;
    closed.c = c;
    closed.a = a;
    closed.kappa = kappa;
    for_points(s, pts, [&](const Point& p) {
        const LocalGeometry lg = local_geometry(geom, p);
        const Tensor4 rc = riemann_coordinates(lg);
        const Eigen::MatrixXd ric = ricci(rc);
        const auto xs = seed_variables(p, 0);
        const Eigen::VectorXd xi = value(geom.reeb_field(xs));
        s.eq("ricci_xi", p, xi.dot(ric * xi), 2.0 * n, 1e-7);
        s.zero("ricci_closed_form", p, (ric - sasakian_ricci_closed_form(closed, p)).cwiseAbs().maxCoeff(), 1e-7);
        std::vector<Eigen::VectorXd> basis{xi};
        for (int k = 0; k < dim; ++k) basis.push_back(Eigen::VectorXd::Unit(dim, k));
        std::vector<Eigen::VectorXd> frame;
        const Eigen::MatrixXd g = lg.metric();
        for (const auto& v : basis) {
            Eigen::VectorXd w = v;
            for (const auto& f : frame) w -= inner(g, w, f) * f;
            const double nw = g_norm(g, w);
            if (nw > 1e-6) frame.push_back(w / nw);
            if (static_cast<int>(frame.size()) == dim) break;
        }
        for (int k = 1; k < dim; ++k) s.eq(idx("ricci_horizontal", k), p, frame[k].dot(ric * frame[k]), bullet, 1e-7);
        if (geom.contact_tensor) {
            const Eigen::MatrixXd phi = geom.contact_tensor(xs).value();
            const Eigen::VectorXd x = frame[1];
            s.eq("phi_sectional", p, sectional_curvature(lg, rc, x, phi * x), c, 1e-7);
        }
    });
}

void suite_bochner_lemmas(Sink& s, const std::vector<Point>& pts) {
    const SmoothMap& map = require_map(s.entry, s.cfg.suite_id);
    require_flag(s.entry, "phwc", s.cfg.suite_id);
    if (map.m() != 5 || map.n() != 4) config_error("suite bochner-lemmas needs a map M^5 -> N^4");
    for_points(s, pts, [&](const Point& p) {
        const AdaptedFrame5D f = build_adapted_frame_5d(map, p);
        s.zero("gamma_phwc_relations", p, gamma_phwc_relations(f).max_residual, 1e-6);
        s.zero("gamma_zero_relation", p, gamma_zero_relation(f).max_residual, 1e-6);
        s.zero("sff_f_invariance", p, sff_f_invariance(f).max_residual, 1e-6);
        const ResidualFamily ti = gamma_tilde_identity(f);
        if (!ti.skipped) s.zero("gamma_tilde_identity", p, ti.max_residual, 1e-6);
        double skew = 0.0;
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j)
                for (int k = 0; k < 5; ++k) skew = std::max(skew, std::abs(f.gamma(i, j, k) + f.gamma(i, k, j)));
        s.zero("gamma_skew", p, skew, 1e-8);
        const auto& pa = f.analysis;
        const Eigen::VectorXd& v = f.e[kV];
        for (int i : {kE1, kF1, kE2, kF2}) {
            const double vl = pa.eigenvalue_jet(i).directional(std::span<const double>(v.data(), v.size())).value();
            s.eq(idx("gamma_ii0", i), p, f.gamma(i, i, kV), vl / (2.0 * f.lambda_sq(i)), 1e-7);
        }
        s.diag("a1", p, f.a[0]);
        s.diag("a2", p, f.a[1]);
        s.diag("b1", p, f.b[0]);
        s.diag("b2", p, f.b[1]);
    });
}

void suite_bochner_laplacian(Sink& s, const std::vector<Point>& pts) {
    const SmoothMap& map = require_map(s.entry, s.cfg.suite_id);
    require_flag(s.entry, "phwc", s.cfg.suite_id);
    if (map.m() != 5 || map.n() != 4) config_error("suite bochner-laplacian needs a map M^5 -> N^4");
    for_points(s, pts, [&](const Point& p) {
        const AdaptedFrame5D f = build_adapted_frame_5d(map, p);
        if (f.collision) {
            const auto& pa = f.analysis;
            const Jet lambda = pa.eigenvalue_jet(kE1) - pa.eigenvalue_jet(kE2);
            s.zero("lambda_vanishes", p, std::abs(lambda.value()), 1e-12);
            s.zero("laplacian_vanishes", p, std::abs(laplace_beltrami(pa.data.dom, lambda)), 1e-12);
            return;
        }
        const bool declared = s.entry.flag("harmonic") && s.entry.flag("grad_energy_vertical");
        const bool holds = theorem_hypotheses(f).holds();
        s.flag("hypotheses", p, holds, declared);
        if (!holds) return;
        const DeltaLambdaReport r = delta_lambda_formula(f);
        s.eq("delta_lambda", p, r.formula, r.direct, 1e-4);
        for (const auto& [name, value] : r.blocks) s.diag("block." + name, p, value);
        s.diag("three_halves_minus_direct", p, r.formula_three_halves - r.direct);
        const FibreMaximum fm = fibre_maximum(map, p, map.m() - 1);
        if (fm.interior) {
            const AdaptedFrame5D fmax = build_adapted_frame_5d(map, fm.point);
            if (!fmax.collision && theorem_hypotheses(fmax).holds()) s.le("sign_at_fibre_maximum", fm.point, delta_lambda_formula(fmax).formula, 1e-8);
        }
    });
}

void suite_hypothesis_gates(Sink& s, const std::vector<Point>& pts) {
    const CatalogEntry& e = s.entry;
    if (!e.map) {
        if (!e.geometry.contact_tensor) config_error("entry " + e.id + " has no contact structure");
        const bool nc = e.flag("nearly_cosymplectic");
        const bool killing = e.flag("xi_killing");
        for_points(s, pts, [&](const Point& p) {
            const double r = nearly_cosymplectic_residual(e.geometry, p);
            s.flag("nearly_cosymplectic", p, r < 1e-6, nc);
            if (nc) s.zero("nearly_cosymplectic_residual", p, r, 1e-6);
            if (killing) s.zero("xi_killing", p, lie_derivative_metric_norm(e.geometry, p, e.geometry.reeb_field), 1e-8);
        });
        return;
    }
    const SmoothMap& map = *e.map;
    require_flag(e, "phwc", s.cfg.suite_id);
    if (map.m() != 5 || map.n() != 4) config_error("suite hypothesis-gates needs a map M^5 -> N^4 or a contact geometry");
    for_points(s, pts, [&](const Point& p) {
        const AdaptedFrame5D f = build_adapted_frame_5d(map, p);
        const HypothesisReport h = hypothesis_checks(f, 50, s.cfg.seed);
        s.diag("f_parallel_h", p, h.f_parallel_h);
        s.diag("f_parallel_full", p, h.f_parallel_full);
        s.diag("nearly_cosymplectic", p, h.nearly_cosymplectic);
        s.diag("dilatation_sq", p, h.dilatation_sq);
        s.diag("min_sectional", p, h.min_sectional);
        s.diag("gamma_1bar1_0", p, h.gamma_1bar1_0);
        s.diag("gamma_2bar2_0", p, h.gamma_2bar2_0);
        s.flag("golden_gate", p, h.dilatation_below_golden, dilatation_gate(f.lambda1_sq, f.lambda2_sq));
        if (h.r0i0i_max) s.zero("parallel_f_r0i0i", p, *h.r0i0i_max, 1e-8);
        if (h.gamma_ij0_max) s.zero("parallel_f_gamma_ij0", p, *h.gamma_ij0_max, 1e-8);
        if (h.nearly_cosymplectic < 1e-8) s.zero("nearly_cosymplectic_minimal_fibres", p, h.fibre_mean_curvature, 1e-8);
    });
}

using SuiteFn = void (*)(Sink&, const std::vector<Point>&);

const std::vector<std::pair<std::string, SuiteFn>>& suite_table() {
    static const std::vector<std::pair<std::string, SuiteFn>> t = {
        {"eigen-derivatives", suite_eigen_derivatives},
        {"phwc-identities", suite_phwc_identities},
        {"harmonicity", suite_harmonicity},
        {"totally-geodesic", suite_totally_geodesic},
        {"biconformal", suite_biconformal},
        {"schwarz", suite_schwarz},
        {"curvature-constants", suite_curvature_constants},
        {"bochner-lemmas", suite_bochner_lemmas},
        {"bochner-laplacian", suite_bochner_laplacian},
        {"hypothesis-gates", suite_hypothesis_gates},
    };
    return t;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        config_error("bad number for " + key + ": " + v);
    }
}

}  // namespace

void RunConfig::validate() const {
    if (samples < 1) config_error("samples must be >= 1");
    if (!(fd_step >= 1e-8 && fd_step <= 1e-2)) config_error("fd_step must lie in [1e-8, 1e-2]");
    for (const auto& [k, v] : tol_overrides)
        if (!(v >= 0.0)) config_error("tolerance for " + k + " must be non-negative");
}

const std::vector<std::string>& suite_ids() {
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> v;
        for (const auto& [name, fn] : suite_table()) v.push_back(name);
        return v;
    }();
    return ids;
}

const CatalogEntry& load_verified(std::string_view id) {
    static std::set<std::string, std::less<>> verified;
    const CatalogEntry& e = find_entry(id);
    if (verified.count(id)) return e;
    for (const auto& r : verify_entry(e, 50, 1)) {
        if (!r.pass) {
            std::ostringstream os;
            os << e.id << ": declared " << r.check_id << " failed (residual " << r.lhs << ")";
            throw GeometryError(ErrorCode::HypothesisViolated, os.str());
        }
    }
    verified.emplace(id);
    return e;
}

RunResult run_suite(const RunConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    const auto& table = suite_table();
    const auto it = std::find_if(table.begin(), table.end(), [&](const auto& s) { return s.first == config.suite_id; });
    if (it == table.end()) throw GeometryError(ErrorCode::UnknownSuite, config.suite_id);
    const CatalogEntry& entry = find_entry(config.example_id);
    config.validate();

    RunResult result;
    Sink sink{config, entry, result.records};
    it->second(sink, suite_points(config, entry));

    auto& sm = result.summary;
    for (const auto& r : result.records) {
        ++sm.total;
        if (r.pass) {
            ++sm.passed;
        } else {
            ++sm.failed;
        }
        sm.max_abs_err = std::max(sm.max_abs_err, r.abs_err);
    }
    sm.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return result;
}

std::string to_csv(const std::vector<CheckRecord>& records) {
    std::ostringstream os;
    os << "example,suite,check_id,point,lhs,rhs,abs_err,rel_err,tolerance,pass\n";
    for (const auto& r : records) {
        std::string pt;
        for (std::size_t i = 0; i < r.point.size(); ++i) pt += (i ? ";" : "") + fmt(r.point[i]);
        os << r.example << ',' << r.suite << ',' << r.check_id << ',' << pt << ',' << fmt(r.lhs) << ','
           << fmt(r.rhs) << ',' << fmt(r.abs_err) << ',' << fmt(r.rel_err) << ',' << fmt(r.tolerance) << ','
           << (r.pass ? "true" : "false") << '\n';
    }
    return os.str();
}

std::string to_json(const RunResult& result) {
    nlohmann::ordered_json j;
    j["records"] = nlohmann::ordered_json::array();
    for (const auto& r : result.records) {
        j["records"].push_back({{"example", r.example},
                                {"suite", r.suite},
                                {"check_id", r.check_id},
                                {"point", r.point},
                                {"lhs", r.lhs},
                                {"rhs", r.rhs},
                                {"abs_err", r.abs_err},
                                {"rel_err", r.rel_err},
                                {"tolerance", r.tolerance},
                                {"pass", r.pass}});
    }
    const auto& s = result.summary;
    j["summary"] = {{"total", s.total},
                    {"passed", s.passed},
                    {"failed", s.failed},
                    {"max_abs_err", s.max_abs_err},
                    {"wall_ms", s.wall_ms}};
    return j.dump(2) + "\n";
}

int exit_code(const RunResult& result) { return result.summary.failed == 0 ? 0 : 1; }

void apply_config_text(RunConfig& config, std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) config_error("line " + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
        if (key == "example") {
            config.example_id = val;
        } else if (key == "suite") {
            config.suite_id = val;
        } else if (key == "samples") {
            config.samples = static_cast<int>(parse_double(key, val));
        } else if (key == "seed") {
            config.seed = static_cast<std::uint64_t>(parse_double(key, val));
        } else if (key == "fd_step") {
            config.fd_step = parse_double(key, val);
        } else if (key == "format") {
            if (val == "csv") {
                config.output_format = OutputFormat::Csv;
            } else if (val == "json") {
                config.output_format = OutputFormat::Json;
            } else {
                config_error("format must be csv or json");
            }
        } else if (key == "out") {
            config.output_path = val;
        } else if (key.rfind("tol.", 0) == 0) {
            config.tol_overrides[key.substr(4)] = parse_double(key, val);
        } else {
            config_error("line " + std::to_string(lineno) + ": unknown key " + key);
        }
    }
}

void apply_config_file(RunConfig& config, const std::string& path) {
    std::ifstream in(path);
    if (!in) config_error("cannot read config file " + path);
    std::ostringstream os;
    os << in.rdbuf();
    apply_config_text(config, os.str());
}

}  // namespace eigenmap
