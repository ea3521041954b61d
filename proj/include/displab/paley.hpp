#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

namespace displab {

/// Interval of the half-line [0, inf); ends may be open or closed, hi may be
/// infinite.
struct Interval {
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();
    bool lo_open = true;
    bool hi_open = true;

    bool empty() const { return lo > hi || (lo == hi && (lo_open || hi_open)); }

    /// True when the closed interval [a, b] is a subset of this interval.
    bool contains_closed(double a, double b) const {
        if (a > b) return false;
        bool below_ok = lo_open ? (a > lo) : (a >= lo);
        bool above_ok = hi_open ? (b < hi) : (b <= hi);
        return below_ok && above_ok;
    }

    bool contains(double y) const { return contains_closed(y, y); }

    static Interval closed(double a, double b) { return {a, b, false, false}; }
    static Interval open(double a, double b) { return {a, b, true, true}; }
    static Interval positive_axis() { return {}; }
};

/// Smooth even bump: 1 on [-3/5, 3/5], 0 outside [-4/5, 4/5], nonincreasing
/// on the positive axis. Built from the exp(-1/x) transition, so it is C-inf
/// and vanishes exactly (not approximately) outside its support.
double phi0(double y);

/// Dyadic annulus window Q_j(y) = phi0(2^{-j-1} y) - phi0(2^{-j} y).
/// Supported in [2^{j-1}, 2^{j+1}] for y > 0, values in [0, 1].
double q_j(int j, double y);

/// Dyadic index set of an interval: all k with [2^{k-1}, 2^{k+1}] inside J.
/// Unbounded ends of J give half-infinite ranges; iteration bounds are then
/// supplied by the caller through clamp().
struct IndexRange {
    std::optional<int> lo;  // absent: unbounded below
    std::optional<int> hi;  // absent: unbounded above
    bool empty = false;

    bool contains(int k) const {
        if (empty) return false;
        if (lo && k < *lo) return false;
        if (hi && k > *hi) return false;
        return true;
    }
    std::pair<int, int> clamp(int k_min, int k_max) const {
        if (empty) return {1, 0};
        int a = lo ? std::max(*lo, k_min) : k_min;
        int b = hi ? std::min(*hi, k_max) : k_max;
        return {a, b};
    }
};

IndexRange band_indices(const Interval& J);

/// Frequency localization in the scaled variable y = delta * |xi|.
enum class BandKind { dyadic, window, halfline_low, halfline_high };

struct FrequencyBand {
    BandKind kind = BandKind::dyadic;
    int k = 0;         // dyadic index (kind == dyadic)
    double y0 = 0.0;   // lower window edge / low cutoff scale
    double y1 = 0.0;   // upper window edge / high cutoff scale
    double delta = 1.0;

    static FrequencyBand dyadic(int k, double delta = 1.0);
    static FrequencyBand window(double y0, double y1, double delta = 1.0);
    static FrequencyBand halfline_low(double y0, double delta = 1.0);
    static FrequencyBand halfline_high(double y1, double delta = 1.0);

    /// Cutoff value at y (the scaled variable). Dyadic bands use P = Q_0 at
    /// scale 2^k; window bands use phi0-based smooth cutoffs.
    double weight(double y) const;

    /// Support of the cutoff in y, intersected with (0, inf).
    Interval support_y() const;

    /// Region where the cutoff is exactly 1 (empty for dyadic bands).
    Interval plateau_y() const;

    /// Dyadic indices k whose annulus lies inside the band support.
    IndexRange indices() const { return band_indices(support_y()); }
};

}  // namespace displab
