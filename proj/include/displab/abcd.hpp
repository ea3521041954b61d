#pragma once

#include <string>

#include "displab/polynomial.hpp"

namespace displab {

/// The four polynomials controlling the derivatives of the abcd dispersion
/// phase g(y) = y sqrt(U(y^2) / V(y^2)):
///   g'(y)  = P(y^2) / sqrt(U(y^2) V^3(y^2)),
///   g''(y) = y R(y^2) / (U V sqrt(U V^3))(y^2).
struct AbcdPolynomials {
    RealPolynomial P, U, V, R;
};

/// Full classification record: polynomials, maximal positive-root
/// multiplicity m of R, and the high-frequency branch (alpha, ell) from the
/// ten-row parameter table.
struct AbcdClassification {
    double a, b, c, d;
    AbcdPolynomials polys;
    int m = 0;
    double alpha = 0.0;
    double ell = 0.0;
    int branch_row = 0;         // 1..10
    bool near_boundary = false; // a branch predicate resolved within 10x of
                                // the equality tolerance
};

/// Well-posedness constraints: b >= 0, d >= 0, a <= 0, c <= 0. Throws
/// std::invalid_argument naming the violated inequality.
void require_abcd_constraints(double a, double b, double c, double d);

/// Non-degeneracy ((a+b)(a+d)(c+b)(c+d))^2 + (a+b+c+d)^2 > 0, ruling out the
/// pure half-wave phase g(r) = r.
bool abcd_nondegenerate(double a, double b, double c, double d);

AbcdPolynomials compute_puvr(double a, double b, double c, double d);

AbcdClassification classify(double a, double b, double c, double d);

/// True when P, P' and P'' have no common root on (0, inf), i.e. P has no
/// positive root of multiplicity >= 3. Holds for every admissible parameter
/// tuple.
bool verify_p_nondegeneracy(double a, double b, double c, double d);

std::string branch_description(int row);

}  // namespace displab
