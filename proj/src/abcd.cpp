#include "displab/abcd.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace displab {

namespace {

constexpr double kEqTol = 1e-12;

struct Predicates {
    double scale1;  // linear scale
    bool flagged = false;

    explicit Predicates(double a, double b, double c, double d) {
        scale1 = std::max({1.0, std::fabs(a), std::fabs(b), std::fabs(c),
                           std::fabs(d)});
    }
    // |expr| == 0 within tolerance; expr is homogeneous of degree deg in the
    // parameters.
    bool is_zero(double expr, int deg) {
        double tol = kEqTol * std::pow(scale1, deg);
        double ax = std::fabs(expr);
        if (ax <= tol) {
            if (ax > 0.1 * tol) flagged = true;
            return true;
        }
        if (ax <= 10.0 * tol) flagged = true;
        return false;
    }
};

}  // namespace

void require_abcd_constraints(double a, double b, double c, double d) {
    if (b < 0.0) throw std::invalid_argument("abcd constraint violated: b >= 0");
    if (d < 0.0) throw std::invalid_argument("abcd constraint violated: d >= 0");
    if (a > 0.0) throw std::invalid_argument("abcd constraint violated: a <= 0");
    if (c > 0.0) throw std::invalid_argument("abcd constraint violated: c <= 0");
}

bool abcd_nondegenerate(double a, double b, double c, double d) {
    double s = std::max({1.0, std::fabs(a), std::fabs(b), std::fabs(c),
                         std::fabs(d)});
    double prod = (a + b) * (a + d) * (c + b) * (c + d) / (s * s * s * s);
    double sum = (a + b + c + d) / s;
    return prod * prod + sum * sum > kEqTol * kEqTol;
}

AbcdPolynomials compute_puvr(double a, double b, double c, double d) {
    require_abcd_constraints(a, b, c, d);
    AbcdPolynomials r;
    r.P = RealPolynomial({1.0, -2.0 * (a + c),
                          3.0 * a * c - b * d - (a + c) * (b + d),
                          2.0 * a * c * (b + d), a * b * c * d});
    r.U = RealPolynomial({1.0, -a}) * RealPolynomial({1.0, -c});
    r.V = RealPolynomial({1.0, b}) * RealPolynomial({1.0, d});
    r.R = r.P.derivative() * r.U * r.V * 2.0 - r.P * r.U.derivative() * r.V -
          r.P * r.U * r.V.derivative() * 3.0;
    r.P.trim(1e-15);
    r.R.trim(1e-15);
    return r;
}

AbcdClassification classify(double a, double b, double c, double d) {
    require_abcd_constraints(a, b, c, d);
    if (!abcd_nondegenerate(a, b, c, d))
        throw std::invalid_argument(
            "abcd constraint violated: ((a+b)(a+d)(c+b)(c+d))^2 + (a+b+c+d)^2 "
            "> 0 (phase degenerates to g(r) = r)");

    AbcdClassification cls;
    cls.a = a;
    cls.b = b;
    cls.c = c;
    cls.d = d;
    cls.polys = compute_puvr(a, b, c, d);

    // m = max multiplicity among positive roots of R.
    cls.m = 0;
    if (cls.polys.R.degree() >= 1) {
        for (auto& [root, mult] :
             real_roots(cls.polys.R, 0.0, std::numeric_limits<double>::infinity()))
            cls.m = std::max(cls.m, mult);
    }

    Predicates pred(a, b, c, d);
    bool b0 = pred.is_zero(b, 1);
    bool d0 = pred.is_zero(d, 1);
    bool a0 = pred.is_zero(a, 1);
    bool c0 = pred.is_zero(c, 1);
    bool ac0 = a0 || c0;

    if (b0 && d0) {
        if (!a0 && !c0) {
            cls.branch_row = 1;  // b=d=0, a<0, c<0
            cls.ell = 0.0;
            cls.alpha = 1.0;
        } else {
            cls.branch_row = 2;  // b=d=0, ac=0, a+c<0
            cls.ell = 0.0;
            cls.alpha = 0.0;
        }
    } else if (b0 || d0) {  // bd = 0, b + d > 0
        if (!ac0) {
            cls.branch_row = 3;
            cls.ell = 0.0;
            cls.alpha = 0.0;
        } else if (!(a0 && c0)) {
            cls.branch_row = 4;
            cls.ell = std::sqrt(-(a + c) / (b + d));
            cls.alpha = -3.0;
        } else {
            cls.branch_row = 5;
            cls.ell = 0.0;
            cls.alpha = -4.0;
        }
    } else {  // bd != 0
        if (a0 && c0) {
            cls.branch_row = 6;
            cls.ell = 0.0;
            cls.alpha = -3.0;
        } else if (ac0) {
            double expr = b * (a + c) + b * d + (a + c) * d;
            if (!pred.is_zero(expr, 2)) {
                cls.branch_row = 7;
                cls.ell = 0.0;
                cls.alpha = -4.0;
            } else {
                cls.branch_row = 8;
                cls.ell = 0.0;
                cls.alpha = -6.0;
            }
        } else {  // abcd != 0
            double expr = a * b * c + a * b * d + a * c * d + b * c * d;
            cls.ell = std::sqrt((a * c) / (b * d));
            if (!pred.is_zero(expr, 3)) {
                cls.branch_row = 9;
                cls.alpha = -3.0;
            } else {
                cls.branch_row = 10;
                cls.alpha = -5.0;
            }
        }
    }
    cls.near_boundary = pred.flagged;
    if (cls.branch_row == 0)
        throw std::logic_error("abcd classify: no branch matched");
    return cls;
}

bool verify_p_nondegeneracy(double a, double b, double c, double d) {
    require_abcd_constraints(a, b, c, d);
    auto polys = compute_puvr(a, b, c, d);
    // A common root of (P, P', P'') is a positive root of P with
    // multiplicity >= 3; the gcd-based multiplicity search exposes those.
    for (auto& [root, mult] :
         real_roots(polys.P, 0.0, std::numeric_limits<double>::infinity())) {
        (void)root;
        if (mult >= 3) return false;
    }
    return true;
}

std::string branch_description(int row) {
    switch (row) {
        case 1: return "b=d=0, a<0, c<0";
        case 2: return "b=d=0, ac=0, a+c<0";
        case 3: return "bd=0, b+d>0, ac!=0";
        case 4: return "bd=0, b+d>0, ac=0, a+c<0";
        case 5: return "bd=0, b+d>0, a=c=0";
        case 6: return "bd!=0, a=c=0";
        case 7: return "bd!=0, ac=0, a+c<0, b(a+c)+bd+(a+c)d != 0";
        case 8: return "bd!=0, ac=0, a+c<0, b(a+c)+bd+(a+c)d = 0";
        case 9: return "abcd!=0, abc+abd+acd+bcd != 0";
        case 10: return "abcd!=0, abc+abd+acd+bcd = 0";
        default: return "unknown";
    }
}

}  // namespace displab
