#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "eigenmap/jet.hpp"

namespace eigenmap {

using JetVector = std::vector<Jet>;

/// Dense matrix of jets, row-major.
class JetMatrix {
public:
    JetMatrix() = default;
    JetMatrix(int rows, int cols, const Jet& fill = Jet(0.0)) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static JetMatrix identity(int n);
    static JetMatrix constant(const Eigen::MatrixXd& m);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Jet& operator()(int i, int j) { return data_[i * cols_ + j]; }
    const Jet& operator()(int i, int j) const { return data_[i * cols_ + j]; }

    Eigen::MatrixXd value() const;
    JetMatrix partial(int k) const;
    JetMatrix directional(std::span<const double> v) const;
    JetMatrix truncated(int order) const;
    JetMatrix transpose() const;

    JetMatrix& operator+=(const JetMatrix& o);
    JetMatrix& operator-=(const JetMatrix& o);
    JetMatrix& operator*=(const Jet& s);

    friend JetMatrix operator+(const JetMatrix& a, const JetMatrix& b);
    friend JetMatrix operator-(const JetMatrix& a, const JetMatrix& b);
    friend JetMatrix operator*(const JetMatrix& a, const JetMatrix& b);
    friend JetMatrix operator*(const Jet& s, const JetMatrix& a);

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Jet> data_;
};

/// Inverse by a Neumann series about the base value; exact to the jet order.
JetMatrix inverse(const JetMatrix& a);
Jet trace(const JetMatrix& a);
JetVector mat_vec(const JetMatrix& a, const JetVector& v);
JetVector jets_from(const Eigen::VectorXd& v);
Eigen::VectorXd value(const JetVector& v);
JetVector directional(const JetVector& v, std::span<const double> dir);
JetVector partial(const JetVector& v, int k);

/// g(u, v) for a bilinear form g.
Jet inner(const JetMatrix& g, const JetVector& u, const JetVector& v);
double inner(const Eigen::MatrixXd& g, const Eigen::VectorXd& u, const Eigen::VectorXd& v);

/// Dense n^3 array, index (a, b, c) with a slowest.
struct Tensor3 {
    int n0 = 0, n1 = 0, n2 = 0;
    std::vector<double> data;

    Tensor3() = default;
    Tensor3(int a, int b, int c) : n0(a), n1(b), n2(c), data(a * b * c, 0.0) {}
    double& operator()(int a, int b, int c) { return data[(a * n1 + b) * n2 + c]; }
    double operator()(int a, int b, int c) const { return data[(a * n1 + b) * n2 + c]; }
};

/// Dense n^4 array.
struct Tensor4 {
    int n = 0;
    std::vector<double> data;

    Tensor4() = default;
    explicit Tensor4(int dim) : n(dim), data(dim * dim * dim * dim, 0.0) {}
    double& operator()(int a, int b, int c, int d) { return data[((a * n + b) * n + c) * n + d]; }
    double operator()(int a, int b, int c, int d) const { return data[((a * n + b) * n + c) * n + d]; }
};

}  // namespace eigenmap
