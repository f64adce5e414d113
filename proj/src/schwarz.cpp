#include "eigenmap/schwarz.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "eigenmap/errors.hpp"

namespace eigenmap {

namespace {

std::vector<double> elementary_symmetric(const std::vector<double>& x) {
    std::vector<double> e(x.size() + 1, 0.0);
    e[0] = 1.0;
    for (double v : x)
        for (std::size_t k = e.size() - 1; k >= 1; --k) e[k] += v * e[k - 1];
    return e;
}

std::vector<double> sorted_desc(std::vector<double> v) {
    std::sort(v.begin(), v.end(), std::greater<>());
    return v;
}

std::vector<double> nonzero(const std::vector<double>& v) {
    const double top = v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
    std::vector<double> out;
    for (double x : v)
        if (x > 1e-12 * std::max(1.0, top)) out.push_back(x);
    return sorted_desc(out);
}

std::vector<double> pair_values(const std::vector<double>& lambda_sq, int n) {
    const auto v = sorted_desc(lambda_sq);
    if (n < 1 || static_cast<int>(v.size()) < 2 * n) {
        throw GeometryError(ErrorCode::NotDoubledSpectrum, "fewer than 2n eigenvalues");
    }
    std::vector<double> pairs;
    for (int i = 0; i < n; ++i) {
        const double a = v[2 * i], b = v[2 * i + 1];
        if (!(b > 0.0) || std::abs(a - b) > 1e-8 * std::max(1.0, a)) {
            throw GeometryError(ErrorCode::NotDoubledSpectrum, "eigenvalues do not come in equal pairs");
        }
        pairs.push_back(0.5 * (a + b));
    }
    for (std::size_t i = 2 * n; i < v.size(); ++i) {
        if (std::abs(v[i]) > 1e-10 * std::max(1.0, v[0])) {
            throw GeometryError(ErrorCode::NotDoubledSpectrum, "unpaired non-zero eigenvalue");
        }
    }
    return pairs;
}

}  // namespace

double wedge_norm(const std::vector<double>& lambda_sq, int p) {
    if (p < 1 || p > static_cast<int>(lambda_sq.size())) throw GeometryError(ErrorCode::IndexError, "wedge degree out of range");
    return std::sqrt(std::max(0.0, elementary_symmetric(lambda_sq)[p]));
}

double wedge_norm_sq_minors(const Eigen::MatrixXd& a, int p) {
    const int m = static_cast<int>(a.rows());
    if (p < 1 || p > m) throw GeometryError(ErrorCode::IndexError, "wedge degree out of range");
    std::vector<int> idx(p);
    for (int i = 0; i < p; ++i) idx[i] = i;
    double sum = 0.0;
    while (true) {
        Eigen::MatrixXd sub(p, p);
        for (int r = 0; r < p; ++r)
            for (int c = 0; c < p; ++c) sub(r, c) = a(idx[r], idx[c]);
        sum += sub.determinant();
        int k = p - 1;
        while (k >= 0 && idx[k] == m - p + k) --k;
        if (k < 0) break;
        ++idx[k];
        for (int j = k + 1; j < p; ++j) idx[j] = idx[j - 1] + 1;
    }
    return sum;
}

DilatationData dilatation(const std::vector<double>& lambda_sq) {
    const auto v = nonzero(lambda_sq);
    DilatationData d;
    for (std::size_t p = 1; p <= v.size(); ++p) d.wedge_norms.push_back(wedge_norm(v, static_cast<int>(p)));
    if (v.size() >= 2) {
        d.k_order = std::sqrt(v[0] / v[1]);
        d.ratio = d.wedge_norms[0] * d.wedge_norms[0] / d.wedge_norms[1];
    }
    if (!v.empty()) d.ell = std::sqrt(v.front() / v.back());
    return d;
}

NewtonSides newton_inequality(const std::vector<double>& pv) {
    const double n = static_cast<double>(pv.size());
    double s1 = 0.0, s2 = 0.0, cross = 0.0;
    for (std::size_t i = 0; i < pv.size(); ++i) {
        s1 += pv[i];
        s2 += pv[i] * pv[i];
        for (std::size_t j = i + 1; j < pv.size(); ++j) cross += pv[i] * pv[j];
    }
    return {s2 + 4.0 * cross, (2.0 * n - 1.0) / n * s1 * s1};
}

RatioBounds phwc_ratio_bounds(const std::vector<double>& lambda_sq, int n) {
    const auto pv = pair_values(lambda_sq, n);
    std::vector<double> full;
    for (double v : pv) full.insert(full.end(), {v, v});
    RatioBounds b;
    const double w1 = wedge_norm(full, 1), w2 = wedge_norm(full, 2);
    b.ratio = w1 * w1 / w2;
    const double L = std::sqrt(pv.front() / pv.back());
    b.refined_bound = 2.0 * std::sqrt(1.0 - (n - 1.0) / (2.0 * n - 1.0) * std::pow(L, -4.0));
    b.equality = (pv.front() - pv.back()) <= 1e-10 * pv.front();
    return b;
}

DilatationInequality bounded_dilatation_inequality(const std::vector<double>& lambda_sq, double K, int k) {
    const auto v = nonzero(lambda_sq);
    if (v.size() < 2) throw GeometryError(ErrorCode::DegenerateRank, "fewer than two non-zero eigenvalues");
    if (v[0] > K * K * v[1] * (1.0 + 1e-12)) throw GeometryError(ErrorCode::DilatationExceeded, "λ_1 exceeds K λ_2");
    DilatationInequality r;
    r.lhs = elementary_symmetric(v)[1];
    r.rhs = k * K * wedge_norm(v, 2);
    return r;
}

EnergyBoundReport energy_bound_check(const std::vector<double>& samples, double A, double B, std::optional<double> L,
                                     int n) {
    if (!(A > 0.0) || !(B > 0.0)) throw GeometryError(ErrorCode::MissingCurvatureBounds, "A and B must be positive");
    EnergyBoundReport r;
    for (double s : samples) r.max_dphi_sq = std::max(r.max_dphi_sq, s);
    r.bound = 2.0 * A / B;
    r.refined_bound = r.bound;
    if (L) r.refined_bound = r.bound * (1.0 - (n - 1.0) / (2.0 * n - 1.0) * std::pow(*L, -4.0));
    r.margin = r.bound - r.max_dphi_sq;
    r.holds = r.margin >= 0.0;
    return r;
}

std::vector<std::vector<double>> random_doubled_spectra(int count, int max_pairs, double lo, double hi,
                                                        unsigned long long seed) {
    std::mt19937_64 rng(seed);
    auto unit = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    std::vector<std::vector<double>> out;
    for (int c = 0; c < count; ++c) {
        const int n = 1 + static_cast<int>(unit() * max_pairs) % max_pairs;
        std::vector<double> v;
        for (int i = 0; i < n; ++i) {
            const double x = lo * std::pow(hi / lo, unit());
            v.insert(v.end(), {x, x});
        }
        out.push_back(v);
    }
    return out;
}

}  // namespace eigenmap
