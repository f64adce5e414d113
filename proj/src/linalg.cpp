#include "eigenmap/linalg.hpp"

#include <algorithm>
#include <stdexcept>

#include "eigenmap/errors.hpp"

namespace eigenmap {

std::string_view error_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::PointOutOfDomain: return "PointOutOfDomain";
        case ErrorCode::SingularMetric: return "SingularMetric";
        case ErrorCode::DegenerateSection: return "DegenerateSection";
        case ErrorCode::CodomainExit: return "CodomainExit";
        case ErrorCode::EigenvalueCollision: return "EigenvalueCollision";
        case ErrorCode::IndexError: return "IndexError";
        case ErrorCode::RankDeficient: return "RankDeficient";
        case ErrorCode::NoFibre: return "NoFibre";
        case ErrorCode::OddCodomain: return "OddCodomain";
        case ErrorCode::NotPHWC: return "NotPHWC";
        case ErrorCode::RankOdd: return "RankOdd";
        case ErrorCode::NotHWC: return "NotHWC";
        case ErrorCode::NonPositiveConformalFactor: return "NonPositiveConformalFactor";
        case ErrorCode::NotDoubledSpectrum: return "NotDoubledSpectrum";
        case ErrorCode::DilatationExceeded: return "DilatationExceeded";
        case ErrorCode::DegenerateRank: return "DegenerateRank";
        case ErrorCode::MissingCurvatureBounds: return "MissingCurvatureBounds";
        case ErrorCode::DomainViolation: return "DomainViolation";
        case ErrorCode::InvalidModel: return "InvalidModel";
        case ErrorCode::NonPositiveA: return "NonPositiveA";
        case ErrorCode::JetOrderInsufficient: return "JetOrderInsufficient";
        case ErrorCode::RangeEscape: return "RangeEscape";
        case ErrorCode::HypothesisViolated: return "HypothesisViolated";
        case ErrorCode::GroupCollision: return "GroupCollision";
        case ErrorCode::MissingStructure: return "MissingStructure";
        case ErrorCode::UnknownExample: return "UnknownExample";
        case ErrorCode::UnknownSuite: return "UnknownSuite";
        case ErrorCode::UnknownId: return "UnknownId";
        case ErrorCode::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

JetMatrix JetMatrix::identity(int n) {
    JetMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = Jet(1.0);
    return m;
}

JetMatrix JetMatrix::constant(const Eigen::MatrixXd& v) {
    JetMatrix m(static_cast<int>(v.rows()), static_cast<int>(v.cols()));
    for (int i = 0; i < m.rows_; ++i)
        for (int j = 0; j < m.cols_; ++j) m(i, j) = Jet(v(i, j));
    return m;
}

Eigen::MatrixXd JetMatrix::value() const {
    Eigen::MatrixXd v(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) v(i, j) = (*this)(i, j).value();
    return v;
}

JetMatrix JetMatrix::partial(int k) const {
    JetMatrix m(rows_, cols_);
    for (std::size_t e = 0; e < data_.size(); ++e) m.data_[e] = data_[e].partial(k);
    return m;
}

JetMatrix JetMatrix::directional(std::span<const double> v) const {
    JetMatrix m(rows_, cols_);
    for (std::size_t e = 0; e < data_.size(); ++e) m.data_[e] = data_[e].directional(v);
    return m;
}

JetMatrix JetMatrix::truncated(int order) const {
    JetMatrix m(rows_, cols_);
    for (std::size_t e = 0; e < data_.size(); ++e) m.data_[e] = data_[e].truncated(order);
    return m;
}

JetMatrix JetMatrix::transpose() const {
    JetMatrix m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

JetMatrix& JetMatrix::operator+=(const JetMatrix& o) {
    if (o.rows_ != rows_ || o.cols_ != cols_) throw std::invalid_argument("JetMatrix: shape mismatch");
    for (std::size_t e = 0; e < data_.size(); ++e) data_[e] += o.data_[e];
    return *this;
}

JetMatrix& JetMatrix::operator-=(const JetMatrix& o) {
    if (o.rows_ != rows_ || o.cols_ != cols_) throw std::invalid_argument("JetMatrix: shape mismatch");
    for (std::size_t e = 0; e < data_.size(); ++e) data_[e] -= o.data_[e];
    return *this;
}

JetMatrix& JetMatrix::operator*=(const Jet& s) {
    for (Jet& x : data_) x *= s;
    return *this;
}

JetMatrix operator+(const JetMatrix& a, const JetMatrix& b) {
    JetMatrix r = a;
    r += b;
    return r;
}

JetMatrix operator-(const JetMatrix& a, const JetMatrix& b) {
    JetMatrix r = a;
    r -= b;
    return r;
}

JetMatrix operator*(const JetMatrix& a, const JetMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("JetMatrix: product shape mismatch");
    JetMatrix r(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i) {
        for (int k = 0; k < a.cols_; ++k) {
            const Jet& aik = a(i, k);
            if (aik.is_constant() && aik.value() == 0.0) continue;
            for (int j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
        }
    }
    return r;
}

JetMatrix operator*(const Jet& s, const JetMatrix& a) {
    JetMatrix r = a;
    r *= s;
    return r;
}

JetMatrix inverse(const JetMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("inverse: matrix not square");
    const int n = a.rows();
    Eigen::MatrixXd a0 = a.value();
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a0);
    if (!lu.isInvertible()) throw GeometryError(ErrorCode::SingularMetric, "matrix not invertible");
    Eigen::MatrixXd x0 = lu.inverse();

    int order = 0;
    JetMatrix d(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const Jet& e = a(i, j);
            if (e.is_constant()) continue;
            order = std::max(order, e.order());
            d(i, j) = e - Jet(e.value());
        }
    }
    JetMatrix x0j = JetMatrix::constant(x0);
    JetMatrix step = JetMatrix::constant(-x0) * d;
    JetMatrix term = x0j;
    JetMatrix sum = x0j;
    for (int k = 1; k <= order; ++k) {
        term = step * term;
        sum += term;
    }
    return sum;
}

Jet trace(const JetMatrix& a) {
    Jet t(0.0);
    for (int i = 0; i < std::min(a.rows(), a.cols()); ++i) t += a(i, i);
    return t;
}

JetVector mat_vec(const JetMatrix& a, const JetVector& v) {
    JetVector r(a.rows(), Jet(0.0));
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r[i] += a(i, j) * v[j];
    return r;
}

JetVector jets_from(const Eigen::VectorXd& v) {
    JetVector r;
    r.reserve(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) r.emplace_back(v(i));
    return r;
}

Eigen::VectorXd value(const JetVector& v) {
    Eigen::VectorXd r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r(i) = v[i].value();
    return r;
}

JetVector directional(const JetVector& v, std::span<const double> dir) {
    JetVector r;
    r.reserve(v.size());
    for (const Jet& x : v) r.push_back(x.directional(dir));
    return r;
}

JetVector partial(const JetVector& v, int k) {
    JetVector r;
    r.reserve(v.size());
    for (const Jet& x : v) r.push_back(x.partial(k));
    return r;
}

Jet inner(const JetMatrix& g, const JetVector& u, const JetVector& v) {
    Jet s(0.0);
    for (int i = 0; i < g.rows(); ++i) {
        Jet row(0.0);
        for (int j = 0; j < g.cols(); ++j) row += g(i, j) * v[j];
        s += u[i] * row;
    }
    return s;
}

double inner(const Eigen::MatrixXd& g, const Eigen::VectorXd& u, const Eigen::VectorXd& v) { return u.dot(g * v); }

}  // namespace eigenmap
