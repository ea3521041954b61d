#pragma once

#include <utility>
#include <vector>

namespace displab {

/// Dense real polynomial, coefficients in ascending degree order.
struct RealPolynomial {
    std::vector<double> c;

    RealPolynomial() = default;
    explicit RealPolynomial(std::vector<double> coeffs) : c(std::move(coeffs)) {
        trim();
    }
    static RealPolynomial constant(double v) { return RealPolynomial({v}); }

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    double leading() const { return c.empty() ? 0.0 : c.back(); }

    double operator()(double x) const {
        double v = 0.0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
        return v;
    }

    RealPolynomial derivative() const;
    double max_abs_coeff() const;

    /// Drop trailing coefficients that are negligible against the largest one.
    void trim(double rel_tol = 0.0);

    RealPolynomial operator+(const RealPolynomial& o) const;
    RealPolynomial operator-(const RealPolynomial& o) const;
    RealPolynomial operator*(const RealPolynomial& o) const;
    RealPolynomial operator*(double s) const;
};

/// All real roots of p in the open interval (lo, hi), with multiplicities.
/// Square-free factorization (gcd chains) determines multiplicity; roots of
/// each square-free factor come from derivative-based isolation plus Newton
/// polish to ~1e-12 relative.
std::vector<std::pair<double, int>> real_roots(const RealPolynomial& p,
                                               double lo, double hi);

/// Square-free decomposition p ~ prod f_i^i (Yun). f[i] collects the factors
/// of multiplicity i+1. Tolerant gcd; falls back to {p} if the factorization
/// does not reproduce p.
std::vector<RealPolynomial> square_free_decomposition(const RealPolynomial& p);

/// Roots of a polynomial assumed square-free on (lo, hi), simple roots only.
std::vector<double> roots_square_free(const RealPolynomial& p, double lo,
                                      double hi);

}  // namespace displab
