#include "displab/strichartz.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "displab/parallel.hpp"

namespace displab {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("rational arithmetic overflow");
    return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("rational arithmetic overflow");
    return r;
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (d == 0) {
        if (n == 0) throw std::invalid_argument("rational 0/0");
        num = n > 0 ? 1 : -1;
        return;
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

Rational Rational::inv() const {
    if (is_infinite()) return Rational(0);
    if (num == 0) return infinity();
    return Rational(den, num);
}

Rational Rational::operator+(const Rational& o) const {
    if (is_infinite() || o.is_infinite()) {
        if (is_infinite() && o.is_infinite() && num != o.num)
            throw std::invalid_argument("inf - inf");
        return is_infinite() ? *this : o;
    }
    return Rational(checked_add(checked_mul(num, o.den), checked_mul(o.num, den)),
                    checked_mul(den, o.den));
}

Rational Rational::operator-(const Rational& o) const {
    Rational neg = o;
    neg.num = -neg.num;
    return *this + neg;
}

Rational Rational::operator*(const Rational& o) const {
    if (is_infinite() || o.is_infinite()) {
        if (is_zero() || o.is_zero())
            throw std::invalid_argument("0 * inf");
        std::int64_t sign = (num < 0) == (o.num < 0) ? 1 : -1;
        Rational r = infinity();
        r.num = sign;
        return r;
    }
    return Rational(checked_mul(num, o.num), checked_mul(den, o.den));
}

bool Rational::operator<(const Rational& o) const {
    if (is_infinite()) return o.is_infinite() && num < o.num;
    if (o.is_infinite()) return o.num > 0;
    return checked_mul(num, o.den) < checked_mul(o.num, den);
}

double Rational::to_double() const {
    if (is_infinite())
        return num > 0 ? std::numeric_limits<double>::infinity()
                       : -std::numeric_limits<double>::infinity();
    return static_cast<double>(num) / static_cast<double>(den);
}

std::string Rational::str() const {
    if (is_infinite()) return num > 0 ? "inf" : "-inf";
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

Rational Rational::parse(const std::string& s) {
    if (s == "inf" || s == "infinity") return infinity();
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(s), 1);
    return Rational(std::stoll(s.substr(0, slash)),
                    std::stoll(s.substr(slash + 1)));
}

bool is_sharp_admissible(const Rational& q, const Rational& r,
                         const Rational& sigma) {
    Rational two(2);
    if (q < two || r < two)
        throw std::invalid_argument("exponents must satisfy q, r >= 2");
    if (sigma <= Rational(0) || Rational(1) < sigma)
        throw std::invalid_argument("sigma must lie in (0, 1]");
    // 1/q + sigma/r = sigma/2
    Rational lhs = q.inv() + sigma * r.inv();
    Rational rhs = sigma * Rational(1, 2);
    if (!(lhs == rhs)) return false;
    if (q == two && r.is_infinite() && sigma == Rational(1)) return false;
    return true;
}

Rational q_from_r(const Rational& r, const Rational& sigma) {
    Rational inv_q = sigma * (Rational(1, 2) - r.inv());
    Rational q = inv_q.inv();
    if (q < Rational(2))
        throw std::invalid_argument("no admissible q >= 2 for this r");
    return q;
}

std::vector<AdmissiblePair> pairs_for_sigma(const Rational& sigma, int count) {
    if (count < 1) throw std::invalid_argument("count >= 1 required");
    std::vector<AdmissiblePair> out;
    for (int i = 0; i < count; ++i) {
        Rational r = (i == count - 1)
                         ? Rational::infinity()
                         : Rational(2 * count, count - i);  // 2 .. 2*count
        Rational q;
        try {
            q = q_from_r(r, sigma);
        } catch (const std::invalid_argument&) {
            continue;
        }
        AdmissiblePair pair{q, r, sigma};
        if (!is_sharp_admissible(pair.q, pair.r, pair.sigma)) continue;
        out.push_back(pair);
    }
    return out;
}

double spacetime_norm(const PhaseModel& model, const GridFunction& u0,
                      const Rational& q, const Rational& r,
                      const TimeWindow& window, double delta,
                      const PropagateOptions& popts) {
    if (window.steps < 32)
        throw std::invalid_argument("time window needs >= 32 nodes");
    int nt = window.steps;
    std::vector<double> xnorm(nt);
    double rv = r.to_double();
    parallel_for(nt, [&](int i) {
        double t = window.t0 + (window.t1 - window.t0) * i / (nt - 1);
        GridFunction u = propagate_grid(model, u0, t, delta, popts);
        xnorm[i] = u.norm_lr(rv);
    });
    if (q.is_infinite()) {
        double m = 0.0;
        for (double v : xnorm) m = std::max(m, v);
        return m;
    }
    double qv = q.to_double();
    double dt = (window.t1 - window.t0) / (nt - 1);
    double acc = 0.0;
    for (int i = 0; i < nt; ++i) {
        double w = (i == 0 || i == nt - 1) ? 0.5 : 1.0;
        acc += w * std::pow(xnorm[i], qv);
    }
    return std::pow(acc * dt, 1.0 / qv);
}

QuotientReport strichartz_quotient(const PhaseModel& model,
                                   const std::vector<GridFunction>& family,
                                   const AdmissiblePair& pair, int k,
                                   double delta, double gamma_coef,
                                   double beta_coef, const TimeWindow& window,
                                   const PropagateOptions& popts) {
    if (!is_sharp_admissible(pair.q, pair.r, pair.sigma))
        throw std::invalid_argument(
            "pair is not sharp sigma-admissible: 1/q + sigma/r = sigma/2 "
            "fails or the forbidden endpoint was supplied");
    QuotientReport rep;
    rep.min_quotient = std::numeric_limits<double>::infinity();
    double e = 0.5 - pair.r.inv().to_double();
    double rhs_scale =
        std::pow(2.0, gamma_coef * e * k) * std::pow(delta, beta_coef * e);
    for (const auto& u0 : family) {
        GridFunction loc = apply_radial_multiplier(
            u0, delta, [&](double y) { return std::complex<double>(q_j(k, y), 0.0); });
        double l2 = loc.norm_l2();
        if (l2 < 1e-14) continue;  // data misses the annulus entirely
        double lhs = spacetime_norm(model, loc, pair.q, pair.r, window, delta,
                                    popts);
        double quot = lhs / (rhs_scale * l2);
        rep.quotients.push_back(quot);
        rep.max_quotient = std::max(rep.max_quotient, quot);
        rep.min_quotient = std::min(rep.min_quotient, quot);
    }
    if (rep.quotients.empty())
        throw std::runtime_error(
            "strichartz_quotient: no family member has mass on the annulus");
    rep.spread = rep.max_quotient / rep.min_quotient;
    return rep;
}

std::vector<GridFunction> standard_family(int n, int resolution, double extent,
                                          double band_lo, double band_hi,
                                          double delta, std::uint64_t seed) {
    std::vector<GridFunction> family;
    double mid = 0.5 * (band_lo + band_hi) / delta;  // center frequency
    for (double w : {0.5, 1.0, 2.0, 4.0, 8.0}) {
        // modulated Gaussians so mass actually sits near the band
        GridFunction g = grid_from_function(
            n, resolution, extent, [&](double x, double y) {
                double r2 = x * x + y * y;
                double ph = mid * (x + (n == 2 ? y : 0.0));
                return std::complex<double>(std::cos(ph), std::sin(ph)) *
                       std::exp(-r2 / (2.0 * w * w));
            });
        double nrm = g.norm_l2();
        for (auto& v : g.samples) v /= nrm;
        family.push_back(std::move(g));
    }
    for (std::uint64_t s = 0; s < 3; ++s)
        family.push_back(random_band_limited(n, resolution, extent, band_lo,
                                             band_hi, delta, seed + s));
    // dyadic-localized bump: Gaussian filtered to the band
    GridFunction bump = gaussian_grid(n, resolution, extent, 1.0);
    bump = apply_radial_multiplier(bump, delta, [&](double y) {
        return std::complex<double>(
            y >= band_lo && y <= band_hi ? 1.0 : 0.0, 0.0);
    });
    double nrm = bump.norm_l2();
    if (nrm > 1e-14)
        for (auto& v : bump.samples) v /= nrm;
    family.push_back(std::move(bump));
    return family;
}

}  // namespace displab
