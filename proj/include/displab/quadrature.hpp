#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "displab/paley.hpp"
#include "displab/phase.hpp"

namespace displab {

struct QuadOptions {
    double rel_tol = 1e-9;
    double abs_tol = 0.0;
    int max_panels = 400000;
    double panels_per_cycle = 2.0;   // adaptive integrator seeding
    double scan_panels_per_cycle = 0.9;
    double prune_rel = 2e-4;         // drop dyadic terms bounded below this
                                     // fraction of the largest band estimate
    double cycle_budget = 4e5;       // per-annulus oscillation budget; bands
                                     // beyond it are dropped and flagged
    int k_min = -40;                 // hard truncation of unbounded sums
    int k_max = 40;
};

/// One evaluation of a localized oscillatory propagator integral.
struct OscIntegralSample {
    int n = 1;
    double t = 0.0;
    double x = 0.0;      // spatial point (radius |x| when n = 2)
    double s = 0.0;      // derivative weight exponent
    double delta = 1.0;
    int k = 0;           // dyadic index, meaningful when dyadic = true
    bool dyadic = false;
    std::complex<double> value{0.0, 0.0};
    double abs_error = 0.0;
    bool accepted = true;
    bool boundary = false;
};

class QuadratureError : public std::runtime_error {
  public:
    QuadratureError(const std::string& msg, OscIntegralSample partial_sample)
        : std::runtime_error(msg), partial(partial_sample) {}
    OscIntegralSample partial;
};

/// I^s_{t,x,band} = int_0^inf e^{i x xi} e^{i (t/delta) g(delta xi)}
/// w(delta xi) xi^s dxi, adaptive Gauss-Kronrod with oscillation-aware panel
/// seeding. The band supplies the window w and delta.
OscIntegralSample integral_1d(const PhaseModel& model, double t, double x,
                              const FrequencyBand& band, double s,
                              const QuadOptions& opts = {});

/// 2d radial reduction: int_{R^2} e^{i x.xi} e^{i(t/delta) g(delta|xi|)}
/// w(delta|xi|)|xi|^s dxi = int_0^inf e^{i(t/delta) g(delta r)}
/// J0(r|x|) w(delta r) r^{1+s} dr with the 2pi-normalized Bessel kernel.
OscIntegralSample integral_2d_radial(const PhaseModel& model, double t,
                                     double absx, const FrequencyBand& band,
                                     double s, const QuadOptions& opts = {});

struct SearchSpec {
    double x_lo = 0.0;    // smallest |x| of a log grid (auto when 0)
    double x_hi = -1.0;   // largest |x| (auto = 2 max|g'| t when <= 0)
    int coarse_points = 256;
    int refine_steps = 40;
    bool log_grid = false;
    bool include_negative = true;  // n = 1: scan both signs of x
};

struct SupResult {
    OscIntegralSample best;
    double argmax_x = 0.0;
    bool boundary = false;
};

/// sup over x of |I^s|: coarse scan on a shared-node discretization,
/// golden-section refinement around the best candidates, then one honest
/// adaptive evaluation at the argmax.
SupResult sup_over_x(const PhaseModel& model, double t,
                     const FrequencyBand& band, double s, int n,
                     const SearchSpec& spec = {}, const QuadOptions& opts = {});

/// How a lemma's left-hand side aggregates dyadic pieces.
enum class SumMode { single, sum_of_sups, sup_of_sum };

struct BandValue {
    double value = 0.0;
    double x_at_max = 0.0;
    int k_lo = 0, k_hi = 0;  // dyadic indices actually summed
    bool boundary = false;
    bool truncated = false;  // hit the hard k-window
};

/// Lemma left-hand side at time t: a single sup, a sum of per-annulus sups,
/// or the sup of the pointwise dyadic sum, with negligible annuli pruned by
/// a-priori bounds.
BandValue lemma_lhs(const PhaseModel& model, double t,
                    const FrequencyBand& band, double s, int n, SumMode mode,
                    const SearchSpec& spec = {}, const QuadOptions& opts = {});

}  // namespace displab
