#include "displab/paley.hpp"

#include <algorithm>

namespace displab {

namespace {

// Rising C-inf step on [0,1]: 0 at x <= 0, 1 at x >= 1.
double smoothstep(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double a = std::exp(-1.0 / x);
    double b = std::exp(-1.0 / (1.0 - x));
    return a / (a + b);
}

}  // namespace

double phi0(double y) {
    double u = std::fabs(y);
    if (u <= 0.6) return 1.0;
    if (u >= 0.8) return 0.0;
    return smoothstep((0.8 - u) / 0.2);
}

double q_j(int j, double y) {
    // ldexp keeps the scaling exact over the whole dyadic range.
    return phi0(std::ldexp(y, -j - 1)) - phi0(std::ldexp(y, -j));
}

IndexRange band_indices(const Interval& J) {
    IndexRange r;
    if (J.empty()) {
        r.empty = true;
        return r;
    }
    // Lower constraint: 2^{k-1} inside J from below.
    if (J.lo > 0.0) {
        int k = static_cast<int>(std::ceil(std::log2(J.lo))) + 1;
        // Adjust with exact dyadic comparisons; log2 can be off by one ulp.
        while (k > -1074 && (J.lo_open ? std::ldexp(1.0, k - 2) > J.lo
                                       : std::ldexp(1.0, k - 2) >= J.lo))
            --k;
        while ((J.lo_open ? std::ldexp(1.0, k - 1) <= J.lo
                          : std::ldexp(1.0, k - 1) < J.lo))
            ++k;
        r.lo = k;
    }
    if (std::isfinite(J.hi)) {
        int k = static_cast<int>(std::floor(std::log2(J.hi))) - 1;
        while (k < 1024 && (J.hi_open ? std::ldexp(1.0, k + 2) < J.hi
                                      : std::ldexp(1.0, k + 2) <= J.hi))
            ++k;
        while ((J.hi_open ? std::ldexp(1.0, k + 1) >= J.hi
                          : std::ldexp(1.0, k + 1) > J.hi))
            --k;
        r.hi = k;
    }
    if (r.lo && r.hi && *r.lo > *r.hi) r.empty = true;
    return r;
}

FrequencyBand FrequencyBand::dyadic(int k, double delta) {
    FrequencyBand b;
    b.kind = BandKind::dyadic;
    b.k = k;
    b.delta = delta;
    return b;
}

FrequencyBand FrequencyBand::window(double y0, double y1, double delta) {
    if (!(y0 > 0.0) || !(y1 > y0))
        throw std::invalid_argument("FrequencyBand: window needs 0 < y0 < y1");
    FrequencyBand b;
    b.kind = BandKind::window;
    b.y0 = y0;
    b.y1 = y1;
    b.delta = delta;
    return b;
}

FrequencyBand FrequencyBand::halfline_low(double y0, double delta) {
    if (!(y0 > 0.0))
        throw std::invalid_argument("FrequencyBand: halfline_low needs y0 > 0");
    FrequencyBand b;
    b.kind = BandKind::halfline_low;
    b.y0 = y0;
    b.delta = delta;
    return b;
}

FrequencyBand FrequencyBand::halfline_high(double y1, double delta) {
    if (!(y1 > 0.0))
        throw std::invalid_argument("FrequencyBand: halfline_high needs y1 > 0");
    FrequencyBand b;
    b.kind = BandKind::halfline_high;
    b.y1 = y1;
    b.delta = delta;
    return b;
}

double FrequencyBand::weight(double y) const {
    switch (kind) {
        case BandKind::dyadic:
            return q_j(k, y);
        case BandKind::halfline_low:
            // 1 on [0, 3/4 y0], 0 beyond y0.
            return phi0(0.8 * y / y0);
        case BandKind::halfline_high:
            // 0 on [0, y1], 1 beyond 4/3 y1.
            return 1.0 - phi0(0.6 * y / y1);
        case BandKind::window:
            return (1.0 - phi0(0.6 * y / y0)) * phi0(0.8 * y / y1);
    }
    return 0.0;
}

Interval FrequencyBand::support_y() const {
    switch (kind) {
        case BandKind::dyadic:
            return Interval::closed(std::ldexp(0.6, k), std::ldexp(1.6, k));
        case BandKind::halfline_low:
            return {0.0, y0, true, false};
        case BandKind::halfline_high:
            return {y1, std::numeric_limits<double>::infinity(), false, true};
        case BandKind::window:
            return Interval::closed(y0, y1);
    }
    return {};
}

Interval FrequencyBand::plateau_y() const {
    switch (kind) {
        case BandKind::dyadic:
            return {1.0, 0.0, false, false};  // empty
        case BandKind::halfline_low:
            return {0.0, 0.75 * y0, true, false};
        case BandKind::halfline_high:
            return {4.0 / 3.0 * y1, std::numeric_limits<double>::infinity(),
                    false, true};
        case BandKind::window:
            return Interval::closed(4.0 / 3.0 * y0, 0.75 * y1);
    }
    return {};
}

}  // namespace displab
