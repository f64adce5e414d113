#include "eigenmap/check.hpp"

#include <algorithm>
#include <cmath>

namespace eigenmap {

CheckRecord equality_record(std::string check_id, const Point& p, double lhs, double rhs, double tol) {
    CheckRecord r;
    r.check_id = std::move(check_id);
    r.point = p;
    r.lhs = lhs;
    r.rhs = rhs;
    r.abs_err = std::abs(lhs - rhs);
    const double scale = std::max(std::abs(lhs), std::abs(rhs));
    r.rel_err = scale > 0.0 ? r.abs_err / scale : 0.0;
    r.tolerance = tol;
    r.pass = r.abs_err <= tol || r.rel_err <= tol;
    return r;
}

CheckRecord bound_record(std::string check_id, const Point& p, double lhs, double rhs) {
    CheckRecord r;
    r.check_id = std::move(check_id);
    r.point = p;
    r.lhs = lhs;
    r.rhs = rhs;
    r.abs_err = std::max(0.0, lhs - rhs);
    const double scale = std::max(std::abs(lhs), std::abs(rhs));
    r.rel_err = scale > 0.0 ? r.abs_err / scale : 0.0;
    r.tolerance = 0.0;
    r.pass = lhs <= rhs;
    return r;
}

CheckRecord flag_record(std::string check_id, const Point& p, bool observed, bool expected) {
    CheckRecord r = equality_record(std::move(check_id), p, observed ? 1.0 : 0.0, expected ? 1.0 : 0.0, 0.0);
    r.pass = observed == expected;
    return r;
}

}  // namespace eigenmap
