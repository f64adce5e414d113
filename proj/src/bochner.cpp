#include "eigenmap/bochner.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <boost/math/tools/minima.hpp>

#include "eigenmap/errors.hpp"
#include "eigenmap/hermitian.hpp"

namespace eigenmap {

namespace {

constexpr double kCollisionGap = 1e-7;
constexpr std::array<int, 4> kHorizontal{kE1, kF1, kE2, kF2};

double g_norm(const Eigen::MatrixXd& g, const Eigen::VectorXd& v) { return std::sqrt(std::max(0.0, inner(g, v, v))); }

const char* slot_name(int s) {
    static const char* names[] = {"1", "1b", "2", "2b", "0"};
    return names[s];
}

std::string gname(const char* sym, int i, int j, int k) {
    return std::string(sym) + "_" + slot_name(i) + slot_name(j) + "^" + slot_name(k);
}

int pair_of(int slot) { return slot < kE2 ? 0 : 1; }

}  // namespace

int bar(int slot) {
    if (slot < 0 || slot >= kV) throw GeometryError(ErrorCode::IndexError, "bar of a non-horizontal slot");
    return slot ^ 1;
}

void ResidualFamily::add(std::string name, double r) {
    max_residual = std::max(max_residual, std::abs(r));
    terms.emplace_back(std::move(name), r);
}

double AdaptedFrame5D::gamma_tilde(int i, int j) const {
    const auto& d = analysis.data;
    Eigen::VectorXd nabla_v_ei = Eigen::VectorXd::Zero(d.m);
    for (int k = 0; k < 5; ++k) nabla_v_ei += gamma(kV, i, k) * e[k];
    const Eigen::VectorXd w = d.sff_apply(e[kV], e[i]) + d.push(nabla_v_ei);
    return inner(d.h(), w, d.push(e[j]));
}

AdaptedFrame5D build_adapted_frame_5d(const SmoothMap& map, std::span<const double> p) {
    if (map.m() != 5 || map.n() != 4) throw GeometryError(ErrorCode::HypothesisViolated, "expected a map M^5 -> N^4");
    if (!map.codomain.has_complex_structure()) throw GeometryError(ErrorCode::MissingStructure, "codomain has no J");
    AdaptedFrame5D f;
    try {
        f.analysis = analyze_point(map, p);
    } catch (const GeometryError& err) {
        if (err.code() == ErrorCode::EigenvalueCollision) throw GeometryError(ErrorCode::GroupCollision, err.what());
        throw;
    }
    const auto& pa = f.analysis;
    if (pa.rank() != 4) throw GeometryError(ErrorCode::RankDeficient, "rank " + std::to_string(pa.rank()) + " != 4");
    if (!pa.F) throw GeometryError(ErrorCode::NotPHWC, "no induced f-structure");
    const auto& labels = pa.frame.labels;
    if (labels.size() != 5 || labels[0] != "1" || labels[1] != "1b" || labels[2] != "2" || labels[3] != "2b" ||
        labels[4] != "0") {
        throw GeometryError(ErrorCode::RankOdd, "frame is not of the form {E1, FE1, E2, FE2, V}");
    }
    const auto pts = pa.frame_at_point();
    for (int s = 0; s < 5; ++s) f.e[s] = pts[s];
    f.lambda1_sq = pa.eigenvalues(kE1);
    f.lambda2_sq = pa.eigenvalues(kE2);
    f.collision = f.lambda1_sq - f.lambda2_sq < kCollisionGap;
    f.a = {f.gamma(kV, kV, kE1), f.gamma(kV, kV, kE2)};
    f.b = {f.gamma(kV, kV, kF1), f.gamma(kV, kV, kF2)};
    return f;
}

ResidualFamily gamma_phwc_relations(const AdaptedFrame5D& f) {
    ResidualFamily r;
    for (int i : {kE1, kE2}) {
        for (int j : {kE1, kE2}) {
            const double v = f.gamma(kV, bar(i), j) + f.gamma(kV, i, bar(j)) + f.gamma(bar(i), j, kV) +
                             f.gamma(i, bar(j), kV);
            r.add("projectable[" + std::string(slot_name(i)) + slot_name(j) + "]", v);
        }
        r.add(gname("G", i, i, kV) + "-" + gname("G", bar(i), bar(i), kV),
              f.gamma(i, i, kV) - f.gamma(bar(i), bar(i), kV));
        r.add(gname("G", i, bar(i), kV) + "+" + gname("G", bar(i), i, kV),
              f.gamma(i, bar(i), kV) + f.gamma(bar(i), i, kV));
    }
    return r;
}

ResidualFamily gamma_zero_relation(const AdaptedFrame5D& f) {
    ResidualFamily r;
    for (int i : kHorizontal) {
        for (int j : kHorizontal) {
            if (i == j) continue;
            const double li = f.lambda_sq(i), lj = f.lambda_sq(j);
            r.add("tilde[" + std::string(slot_name(i)) + slot_name(j) + "]",
                  f.gamma(i, j, kV) - f.gamma_tilde(i, j) / lj + f.gamma(kV, i, j));
            if (pair_of(i) == pair_of(j) || f.collision) {
                r.skipped = r.skipped || f.collision;
                continue;
            }
            r.add("gap[" + std::string(slot_name(i)) + slot_name(j) + "]",
                  (li - lj) * f.gamma(kV, i, j) - li * f.gamma(j, i, kV) - lj * f.gamma(i, j, kV));
        }
    }
    return r;
}

ResidualFamily sff_f_invariance(const AdaptedFrame5D& f) {
    ResidualFamily r;
    for (int i : {kE1, kE2}) {
        for (int j : {kE1, kE2}) {
            const std::string ij = std::string(slot_name(i)) + slot_name(j);
            r.add("mixed[" + ij + "]", f.gamma(bar(i), j, kV) + f.gamma(j, bar(i), kV) + f.gamma(i, bar(j), kV) +
                                           f.gamma(bar(j), i, kV));
            r.add("barred[" + ij + "]", f.gamma(bar(i), bar(j), kV) + f.gamma(bar(j), bar(i), kV) -
                                            f.gamma(i, j, kV) - f.gamma(j, i, kV));
        }
    }
    return r;
}

ResidualFamily gamma_tilde_identity(const AdaptedFrame5D& f) {
    ResidualFamily r;
    if (f.collision) {
        r.skipped = true;
        return r;
    }
    for (int i : kHorizontal) {
        for (int j : kHorizontal) {
            if (pair_of(i) == pair_of(j)) continue;
            const double li = f.lambda_sq(i), lj = f.lambda_sq(j);
            const double rhs = li * lj * (f.gamma(i, j, kV) + f.gamma(j, i, kV)) / (li - lj);
            r.add("tilde_identity[" + std::string(slot_name(i)) + slot_name(j) + "]", f.gamma_tilde(i, j) - rhs);
        }
    }
    return r;
}

Hypotheses5D theorem_hypotheses(const AdaptedFrame5D& f) {
    const auto& pa = f.analysis;
    const auto& d = pa.data;
    Hypotheses5D h;
    h.rank = pa.rank();
    h.tension = g_norm(d.h(), d.tension);
    double s = 0.0;
    for (int i : kHorizontal) {
        const double de = d.energy.directional(std::span<const double>(f.e[i].data(), f.e[i].size())).value();
        s += de * de;
    }
    h.grad_energy_horizontal = std::sqrt(s);
    return h;
}

DeltaLambdaReport delta_lambda_formula(const SmoothMap& map, std::span<const double> p) {
    return delta_lambda_formula(build_adapted_frame_5d(map, p));
}

DeltaLambdaReport delta_lambda_formula(const AdaptedFrame5D& f) {
    const auto hyp = theorem_hypotheses(f);
    std::string failed;
    if (hyp.rank != 4) failed += " rank=" + std::to_string(hyp.rank);
    if (hyp.tension >= 1e-7) failed += " harmonic(|tau|=" + std::to_string(hyp.tension) + ")";
    if (hyp.grad_energy_horizontal >= 1e-7)
        failed += " grad_e_vertical(|grad^H e|=" + std::to_string(hyp.grad_energy_horizontal) + ")";
    if (!failed.empty()) throw GeometryError(ErrorCode::HypothesisViolated, "failed:" + failed);
    if (f.collision) throw GeometryError(ErrorCode::GroupCollision, "λ_1² - λ_2² below 1e-7");

    const auto& pa = f.analysis;
    const auto& lg = pa.data.dom;
    const double l1 = f.lambda1_sq, l2 = f.lambda2_sq, L = l1 - l2;
    auto G = [&](int i, int j, int k) { return f.gamma(i, j, k); };
    auto along = [&](const Jet& u, int slot) {
        return u.directional(std::span<const double>(f.e[slot].data(), f.e[slot].size())).value();
    };

    DeltaLambdaReport rep;
    rep.lambda = L;
    rep.direct = laplace_beltrami(lg, pa.eigenvalue_jet(kE1) - pa.eigenvalue_jet(kE2));

    double s1 = 0.0, s2 = 0.0, s3 = 0.0;
    for (int i : kHorizontal)
        for (int k : kHorizontal)
            if (pair_of(i) != pair_of(k)) s1 += G(i, i, k) * G(i, i, k);
    for (int i : {kE1, kE2}) {
        for (int k : kHorizontal) {
            if (pair_of(k) != pair_of(i)) s2 += G(i, i, k) * G(bar(i), bar(i), k);
            s3 += G(i, bar(i), k) * G(bar(i), i, k);
        }
    }
    const double quad = 2.0 * L * (2.0 * s1 + 2.0 * s2 + 2.0 * s3);

    std::vector<Eigen::VectorXd> frame(f.e.begin(), f.e.end());
    const Tensor4 R = riemann(lg, frame);
    const double curv_h = 2.0 * L * (R(kE1, kE2, kE1, kE2) + R(kE1, kF2, kE1, kF2) + R(kF1, kE2, kF1, kE2) +
                                     R(kF1, kF2, kF1, kF2));
    const double curv_v = l1 * (R(kV, kE1, kV, kE1) + R(kV, kF1, kV, kF1)) -
                          l2 * (R(kV, kE2, kV, kE2) + R(kV, kF2, kV, kF2));

    const double v1 = along(pa.eigenvalue_jet(kE1), kV), v2 = along(pa.eigenvalue_jet(kE2), kV);
    const double vblock = v1 * v1 / (2.0 * l1) - v2 * v2 / (2.0 * l2) + L * (v1 / l1) * (v2 / l2);
    const double vblock_three_halves = 1.5 * v1 * v1 / l1 - 1.5 * v2 * v2 / l2 + L * (v1 / l1) * (v2 / l2);

    const double g11 = G(kE1, kF1, kV), g22 = G(kE2, kF2, kV);
    const double gamma_bar = -2.0 * l1 * g11 * g11 + 2.0 * l2 * g22 * g22;

    double poly = 0.0;
    for (int i : {kE1, kF1}) {
        for (int j : {kE2, kF2}) {
            const double g0 = G(kV, i, j), gt = f.gamma_tilde(i, j);
            poly += 5.0 * g0 * g0 - 2.0 * (1.0 / l1 + 1.0 / l2) * g0 * gt + gt * gt / (l1 * l2);
        }
    }
    poly *= L;

    const double a1 = f.a[0], a2 = f.a[1], b1 = f.b[0], b2 = f.b[1];
    const double fe1_b1 = along(pa.conn(kV, kV, kF1), kF1);
    const double fe2_b2 = along(pa.conn(kV, kV, kF2), kF2);
    const double ab = 2.0 * l1 * a1 * a1 - 2.0 * l2 * a2 * a2 + 2.0 * l1 * (a2 * G(kE1, kE1, kE2) + b2 * G(kE1, kE1, kF2)) -
                      2.0 * l2 * (a1 * G(kE2, kE2, kE1) + b1 * G(kE2, kE2, kF1)) +
                      2.0 * l1 * a1 * (G(kE2, kE2, kE1) + G(kF2, kF2, kE1)) -
                      2.0 * l2 * a2 * (G(kE1, kE1, kE2) + G(kF1, kF1, kE2)) +
                      2.0 * l1 * b1 * (G(kE2, kE2, kF1) + G(kF2, kF2, kF1)) -
                      2.0 * l2 * b2 * (G(kE1, kE1, kF2) + G(kF1, kF1, kF2)) - 2.0 * l1 * a1 * G(kF1, kF1, kE1) +
                      2.0 * l2 * a2 * G(kF2, kF2, kE2) + 2.0 * l1 * fe1_b1 - 2.0 * l2 * fe2_b2;

    rep.blocks = {{"gamma_quadratic", quad},      {"curvature_horizontal", curv_h}, {"curvature_vertical", curv_v},
                  {"v_lambda", vblock},           {"gamma_bar_zero", gamma_bar},    {"gamma_0IJ_polynomial", poly},
                  {"vertical_acceleration", ab}};
    rep.formula = quad + curv_h + curv_v + vblock + gamma_bar + poly + ab;
    rep.formula_three_halves = rep.formula - vblock + vblock_three_halves;
    return rep;
}

bool dilatation_gate(double lambda1_sq, double lambda2_sq) {
    return lambda1_sq / lambda2_sq < (3.0 + std::sqrt(5.0)) / 2.0;
}

HypothesisReport hypothesis_checks(const AdaptedFrame5D& f, int random_planes, unsigned long long seed) {
    const auto& pa = f.analysis;
    const auto& lg = pa.data.dom;
    const Eigen::MatrixXd g = lg.metric();
    HypothesisReport r;

    std::array<Eigen::MatrixXd, 5> nabla_f;
    for (int s = 0; s < 5; ++s) nabla_f[s] = nabla_endomorphism(lg, *pa.F, f.e[s]);
    auto project_h = [&](const Eigen::VectorXd& v) {
        Eigen::VectorXd out = Eigen::VectorXd::Zero(v.size());
        for (int s : kHorizontal) out += inner(g, v, f.e[s]) * f.e[s];
        return out;
    };
    double sh = 0.0, sf = 0.0;
    for (int x : kHorizontal) {
        for (int y = 0; y < 5; ++y) {
            const Eigen::VectorXd w = nabla_f[x] * f.e[y];
            sf += inner(g, w, w);
            if (y != kV) {
                const Eigen::VectorXd wh = project_h(w);
                sh += inner(g, wh, wh);
            }
        }
    }
    r.f_parallel_h = std::sqrt(sh);
    r.f_parallel_full = std::sqrt(sf);
    for (int x = 0; x < 5; ++x)
        for (int y = x; y < 5; ++y)
            r.nearly_cosymplectic =
                std::max(r.nearly_cosymplectic, g_norm(g, nabla_f[x] * f.e[y] + nabla_f[y] * f.e[x]));

    r.dilatation_sq = f.lambda1_sq / f.lambda2_sq;
    r.dilatation_below_golden = dilatation_gate(f.lambda1_sq, f.lambda2_sq);

    const Tensor4 rc = riemann_coordinates(lg);
    double kmin = INFINITY;
    for (int x = 0; x < 5; ++x)
        for (int y = x + 1; y < 5; ++y) kmin = std::min(kmin, sectional_curvature(lg, rc, f.e[x], f.e[y]));
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    for (int k = 0; k < random_planes; ++k) {
        Eigen::VectorXd x(5), y(5);
        for (int c = 0; c < 5; ++c) x(c) = normal(rng);
        for (int c = 0; c < 5; ++c) y(c) = normal(rng);
        try {
            kmin = std::min(kmin, sectional_curvature(lg, rc, x, y));
        } catch (const GeometryError&) {
        }
    }
    r.min_sectional = kmin;

    r.gamma_1bar1_0 = std::abs(f.gamma(kE1, kF1, kV));
    r.gamma_2bar2_0 = std::abs(f.gamma(kE2, kF2, kV));
    r.fibre_mean_curvature = g_norm(g, mean_curvature_vertical(pa));

    if (r.f_parallel_full < 1e-8) {
        std::vector<Eigen::VectorXd> frame(f.e.begin(), f.e.end());
        const Tensor4 R = riemann(lg, frame);
        double rmax = 0.0, gmax = 0.0;
        for (int i : kHorizontal) {
            rmax = std::max(rmax, std::abs(R(kV, i, kV, i)));
            for (int j : kHorizontal) gmax = std::max(gmax, std::abs(f.gamma(i, j, kV)));
        }
        r.r0i0i_max = rmax;
        r.gamma_ij0_max = gmax;
    }
    return r;
}

FibreMaximum fibre_maximum(const SmoothMap& map, std::span<const double> p, int axis) {
    if (axis < 0 || axis >= map.m()) throw GeometryError(ErrorCode::IndexError, "fibre axis out of range");
    const Interval box = map.domain.domain_box[axis];
    Point q(p.begin(), p.end());
    auto lambda_at = [&](double t) {
        q[axis] = t;
        const Eigen::MatrixXd a = pullback_metric(map, q);
        const Eigen::MatrixXd g = local_geometry(map.domain, q).metric();
        Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(a, g, Eigen::EigenvaluesOnly);
        const Eigen::VectorXd ev = es.eigenvalues().reverse();
        return ev(0) - ev(2);
    };
    const int grid = 64;
    const double step = (box.hi - box.lo) / grid;
    int best = 0;
    double best_val = -INFINITY;
    for (int k = 0; k <= grid; ++k) {
        const double v = lambda_at(box.lo + k * step);
        if (v > best_val) best_val = v, best = k;
    }
    const double lo = box.lo + std::max(0, best - 1) * step;
    const double hi = box.lo + std::min(grid, best + 1) * step;
    const auto [t, neg] = boost::math::tools::brent_find_minima([&](double t) { return -lambda_at(t); }, lo, hi, 52);
    FibreMaximum out;
    q[axis] = t;
    out.point = q;
    out.lambda = -neg;
    const double margin = 1e-6 * (box.hi - box.lo);
    out.interior = t > box.lo + margin && t < box.hi - margin;
    return out;
}

}  // namespace eigenmap
