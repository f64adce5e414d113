#pragma once

#include <string>
#include <vector>

#include "eigenmap/geometry.hpp"

namespace eigenmap {

/// Both sides of an identity evaluated by separate code paths.
struct Sides {
    double lhs = 0.0;
    double rhs = 0.0;
    double residual() const { return lhs > rhs ? lhs - rhs : rhs - lhs; }
};

/// Vector-valued identity; residual is the max-norm of the difference.
struct VectorSides {
    Eigen::VectorXd lhs;
    Eigen::VectorXd rhs;
    double residual() const { return lhs.size() == 0 ? 0.0 : (lhs - rhs).cwiseAbs().maxCoeff(); }
};

/// One verified identity instance.
struct CheckRecord {
    std::string example;
    std::string suite;
    std::string check_id;
    Point point;
    double lhs = 0.0;
    double rhs = 0.0;
    double abs_err = 0.0;
    double rel_err = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

/// Equality record: pass iff abs_err <= tol or rel_err <= tol.
CheckRecord equality_record(std::string check_id, const Point& p, double lhs, double rhs, double tol);
/// Inequality record lhs <= rhs: abs_err = max(0, lhs - rhs), tolerance 0.
CheckRecord bound_record(std::string check_id, const Point& p, double lhs, double rhs);
/// Boolean expectation: lhs and rhs are 0/1 flags that must agree.
CheckRecord flag_record(std::string check_id, const Point& p, bool observed, bool expected);

}  // namespace eigenmap
