#include "displab/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace displab {

namespace {

constexpr double kGcdTol = 1e-10;

// Normalize to unit leading coefficient (copy).
RealPolynomial monic(const RealPolynomial& p) {
    RealPolynomial q = p;
    if (q.c.empty()) return q;
    double lead = q.c.back();
    for (double& v : q.c) v /= lead;
    return q;
}

// Euclidean remainder with relative zero threshold; tracks the largest
// intermediate coefficient so cancellation noise is measured against the
// scale actually reached during elimination.
RealPolynomial poly_mod(const RealPolynomial& a, const RealPolynomial& b) {
    RealPolynomial r = a;
    double scale = std::max(a.max_abs_coeff(), 1e-300);
    while (r.degree() >= b.degree() && !r.is_zero()) {
        int shift = r.degree() - b.degree();
        double q = r.c.back() / b.c.back();
        for (int i = 0; i <= b.degree(); ++i) {
            r.c[i + shift] -= q * b.c[i];
            scale = std::max(scale, std::fabs(q * b.c[i]));
        }
        r.c.pop_back();
        // strip coefficients drowned by cancellation
        while (!r.c.empty() && std::fabs(r.c.back()) <= kGcdTol * scale)
            r.c.pop_back();
    }
    return r;
}

RealPolynomial poly_gcd(RealPolynomial a, RealPolynomial b) {
    a.trim(kGcdTol);
    b.trim(kGcdTol);
    if (a.is_zero()) return monic(b);
    if (b.is_zero()) return monic(a);
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero() && b.degree() > 0) {
        RealPolynomial r = poly_mod(a, b);
        a = std::move(b);
        b = monic(r);
        b.trim(kGcdTol);
    }
    if (!b.is_zero()) return RealPolynomial::constant(1.0);  // coprime
    return monic(a);
}

// Exact synthetic division, remainder discarded (caller guarantees b | a
// up to the gcd tolerance).
RealPolynomial poly_div(const RealPolynomial& a, const RealPolynomial& b) {
    if (b.degree() == 0) return a * (1.0 / b.c[0]);
    RealPolynomial r = a;
    std::vector<double> q(std::max(0, a.degree() - b.degree() + 1), 0.0);
    while (r.degree() >= b.degree() && !r.is_zero()) {
        int shift = r.degree() - b.degree();
        double qc = r.c.back() / b.c.back();
        q[shift] = qc;
        for (int i = 0; i <= b.degree(); ++i) r.c[i + shift] -= qc * b.c[i];
        r.c.pop_back();
    }
    return RealPolynomial(std::move(q));
}

double bisect_root(const RealPolynomial& p, double a, double b) {
    double fa = p(a);
    for (int it = 0; it < 200; ++it) {
        double m = 0.5 * (a + b);
        double fm = p(m);
        if (fm == 0.0) return m;
        if ((fa < 0) == (fm < 0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
        if (b - a <= 1e-15 * std::max(1.0, std::fabs(a))) break;
    }
    // Newton polish (simple root on a square-free factor).
    double x = 0.5 * (a + b);
    RealPolynomial dp = p.derivative();
    for (int it = 0; it < 8; ++it) {
        double d = dp(x);
        if (d == 0.0) break;
        double step = p(x) / d;
        double xn = x - step;
        if (xn < a || xn > b) break;
        x = xn;
        if (std::fabs(step) <= 1e-16 * std::max(1.0, std::fabs(x))) break;
    }
    return x;
}

}  // namespace

RealPolynomial RealPolynomial::derivative() const {
    if (c.size() <= 1) return {};
    std::vector<double> d(c.size() - 1);
    for (size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * static_cast<double>(i);
    return RealPolynomial(std::move(d));
}

double RealPolynomial::max_abs_coeff() const {
    double m = 0.0;
    for (double v : c) m = std::max(m, std::fabs(v));
    return m;
}

void RealPolynomial::trim(double rel_tol) {
    double scale = max_abs_coeff();
    double thr = rel_tol * scale;
    while (!c.empty() && std::fabs(c.back()) <= thr) c.pop_back();
}

RealPolynomial RealPolynomial::operator+(const RealPolynomial& o) const {
    std::vector<double> r(std::max(c.size(), o.c.size()), 0.0);
    for (size_t i = 0; i < c.size(); ++i) r[i] += c[i];
    for (size_t i = 0; i < o.c.size(); ++i) r[i] += o.c[i];
    return RealPolynomial(std::move(r));
}

RealPolynomial RealPolynomial::operator-(const RealPolynomial& o) const {
    std::vector<double> r(std::max(c.size(), o.c.size()), 0.0);
    for (size_t i = 0; i < c.size(); ++i) r[i] += c[i];
    for (size_t i = 0; i < o.c.size(); ++i) r[i] -= o.c[i];
    return RealPolynomial(std::move(r));
}

RealPolynomial RealPolynomial::operator*(const RealPolynomial& o) const {
    if (c.empty() || o.c.empty()) return {};
    std::vector<double> r(c.size() + o.c.size() - 1, 0.0);
    for (size_t i = 0; i < c.size(); ++i)
        for (size_t j = 0; j < o.c.size(); ++j) r[i + j] += c[i] * o.c[j];
    return RealPolynomial(std::move(r));
}

RealPolynomial RealPolynomial::operator*(double s) const {
    RealPolynomial r = *this;
    for (double& v : r.c) v *= s;
    return r;
}

std::vector<double> roots_square_free(const RealPolynomial& p, double lo,
                                      double hi) {
    std::vector<double> out;
    if (p.degree() < 1) return out;
    if (p.degree() == 1) {
        double r = -p.c[0] / p.c[1];
        if (r > lo && r < hi) out.push_back(r);
        return out;
    }
    // Cauchy bound keeps the search finite on half-infinite intervals.
    double bound = 0.0;
    for (int i = 0; i < p.degree(); ++i)
        bound = std::max(bound, std::fabs(p.c[i] / p.c.back()));
    bound = 1.0 + bound;
    double a = std::max(lo, -bound), b = std::min(hi, bound);
    if (a >= b) return out;

    std::vector<double> crit = roots_square_free(p.derivative(), a, b);
    crit.push_back(a);
    crit.push_back(b);
    std::sort(crit.begin(), crit.end());
    for (size_t i = 0; i + 1 < crit.size(); ++i) {
        double u = crit[i], v = crit[i + 1];
        if (v - u <= 0) continue;
        double fu = p(u), fv = p(v);
        // Roots at segment ends are roots of p' too; they cannot occur for a
        // square-free polynomial, but guard against exact hits at a/b.
        if (fu == 0.0 && u > lo && (out.empty() || out.back() != u))
            out.push_back(u);
        if ((fu < 0) != (fv < 0)) {
            double r = bisect_root(p, u, v);
            if (r > lo && r < hi) out.push_back(r);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<RealPolynomial> square_free_decomposition(const RealPolynomial& p) {
    std::vector<RealPolynomial> factors;
    RealPolynomial q = monic(p);
    q.trim(1e-14);
    if (q.degree() < 1) return factors;
    RealPolynomial dq = q.derivative();
    RealPolynomial g = poly_gcd(q, dq);
    if (g.degree() == 0) {
        factors.push_back(q);
        return factors;
    }
    // Yun's algorithm.
    RealPolynomial w = poly_div(q, g);
    RealPolynomial y = poly_div(dq, g);
    RealPolynomial z = y - w.derivative();
    z.trim(kGcdTol);
    while (w.degree() > 0) {
        RealPolynomial f = poly_gcd(w, z);
        factors.push_back(f);
        w = poly_div(w, f);
        y = poly_div(z, f);
        z = y - w.derivative();
        z.trim(kGcdTol);
        if (factors.size() > 64) break;  // ill-conditioned input guard
    }
    // Verify prod f_i^i reproduces p; otherwise report p as square-free.
    RealPolynomial check = RealPolynomial::constant(1.0);
    for (size_t i = 0; i < factors.size(); ++i)
        for (size_t rep = 0; rep <= i; ++rep) check = check * factors[i];
    RealPolynomial diff = monic(check) - monic(p);
    if (diff.max_abs_coeff() > 1e-6 * std::max(1.0, monic(p).max_abs_coeff()))
        return {monic(p)};
    return factors;
}

namespace {

// Multiplicity at a polished root: smallest derivative order whose value is
// significant against the absolute-value evaluation of that derivative
// (the conditioning scale at r).
int multiplicity_at(const RealPolynomial& p, double r) {
    RealPolynomial d = p;
    for (int j = 1; j <= p.degree(); ++j) {
        d = d.derivative();
        double val = d(r);
        double mu = 0.0, pw = 1.0;
        for (double coeff : d.c) {
            mu += std::fabs(coeff) * pw;
            pw *= std::fabs(r);
        }
        if (std::fabs(val) > 1e-8 * std::max(mu, 1e-300)) return j;
    }
    return std::max(1, p.degree());
}

}  // namespace

std::vector<std::pair<double, int>> real_roots(const RealPolynomial& p,
                                               double lo, double hi) {
    std::vector<std::pair<double, int>> out;
    RealPolynomial q = monic(p);
    q.trim(1e-14);
    if (q.degree() < 1) return out;
    RealPolynomial g = poly_gcd(q, q.derivative());
    if (g.degree() == 0) {
        for (double r : roots_square_free(q, lo, hi)) out.emplace_back(r, 1);
        return out;
    }
    // square-free part carries each distinct root once
    RealPolynomial sf = poly_div(q, g);
    for (double r : roots_square_free(sf, lo, hi)) {
        int m = multiplicity_at(q, r);
        if (m > 1) {
            // polish against p^{(m-1)}, where the root is simple
            RealPolynomial d = q;
            for (int j = 1; j < m; ++j) d = d.derivative();
            RealPolynomial dd = d.derivative();
            double x = r;
            for (int it = 0; it < 8; ++it) {
                double den = dd(x);
                if (den == 0.0) break;
                double step = d(x) / den;
                x -= step;
                if (std::fabs(step) <= 1e-15 * std::max(1.0, std::fabs(x)))
                    break;
            }
            if (x > lo && x < hi) r = x;
        }
        out.emplace_back(r, m);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace displab
