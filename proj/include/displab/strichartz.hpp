#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "displab/grid.hpp"
#include "displab/paley.hpp"
#include "displab/phase.hpp"

namespace displab {

/// Exact rational with +infinity (1/0). Enough arithmetic for admissibility
/// identities; throws on overflow-prone inputs rather than silently wrapping.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;  // den == 0 with num == 1 encodes +infinity

    Rational() = default;
    Rational(std::int64_t n) : num(n), den(1) {}
    Rational(std::int64_t n, std::int64_t d);

    static Rational infinity() {
        Rational r;
        r.num = 1;
        r.den = 0;
        return r;
    }
    bool is_infinite() const { return den == 0; }
    bool is_zero() const { return num == 0 && den != 0; }

    Rational inv() const;  // 1/x, with 1/inf = 0 and 1/0 = inf
    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    bool operator==(const Rational& o) const {
        return num == o.num && den == o.den;
    }
    bool operator<(const Rational& o) const;
    bool operator<=(const Rational& o) const {
        return *this < o || *this == o;
    }
    double to_double() const;
    std::string str() const;

    /// Parses "7/3", "2", or "inf".
    static Rational parse(const std::string& s);
};

/// Exponent pair on the sharp admissibility line 1/q + sigma/r = sigma/2.
struct AdmissiblePair {
    Rational q, r, sigma;
};

/// Exact check of q, r in [2, inf], the scaling identity, and the forbidden
/// endpoint (q, r, sigma) = (2, inf, 1).
bool is_sharp_admissible(const Rational& q, const Rational& r,
                         const Rational& sigma);

/// Solve 1/q = sigma (1/2 - 1/r) exactly; throws when the resulting q < 2.
Rational q_from_r(const Rational& r, const Rational& sigma);

/// `count` pairs sweeping r from 2 to infinity with q solved exactly;
/// the excluded endpoint is skipped.
std::vector<AdmissiblePair> pairs_for_sigma(const Rational& sigma, int count);

struct TimeWindow {
    double t0 = 0.0;
    double t1 = 1.0;
    int steps = 33;  // >= 32 nodes
};

/// || e^{i(t/delta) g(delta|D|)} u0 ||_{L^q_t L^r_x} over the window:
/// trapezoid in t of the cell-weighted grid L^r norm; q or r = inf as max.
double spacetime_norm(const PhaseModel& model, const GridFunction& u0,
                      const Rational& q, const Rational& r,
                      const TimeWindow& window, double delta,
                      const PropagateOptions& popts = {});

struct QuotientReport {
    double max_quotient = 0.0;
    double min_quotient = 0.0;
    double spread = 0.0;  // max/min
    std::vector<double> quotients;
};

/// Ratio of the space-time norm of the annulus-localized evolution to the
/// weighted L^2 right-hand side 2^{gamma(1/2-1/r)k} delta^{beta(1/2-1/r)}
/// ||Q_k(delta|D|) u0||, over a family of data.
QuotientReport strichartz_quotient(const PhaseModel& model,
                                   const std::vector<GridFunction>& family,
                                   const AdmissiblePair& pair, int k,
                                   double delta, double gamma_coef,
                                   double beta_coef, const TimeWindow& window,
                                   const PropagateOptions& popts = {});

/// Deterministic data family: Gaussians at five widths, three seeded random
/// band-limited fields, and a dyadic-localized bump.
std::vector<GridFunction> standard_family(int n, int resolution, double extent,
                                          double band_lo, double band_hi,
                                          double delta, std::uint64_t seed);

}  // namespace displab
