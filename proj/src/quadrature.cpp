#include "displab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>

#include "displab/bessel.hpp"

namespace displab {

namespace {

// QUADPACK 7-15 Gauss-Kronrod pair on [-1, 1]; nodes symmetric, odd indices
// are the embedded Gauss points.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kTwoPi = 6.283185307179586476925286766559;

using cplx = std::complex<double>;

// Localized propagator integrand without the x-kernel:
//   base(xi) = w(delta xi) xi^{s + n - 1} exp(i (t/delta) g(delta xi)),
// integrated against exp(i x xi) (n=1) or J0(x xi) (n=2).
struct BandIntegrand {
    const PhaseModel* model;
    FrequencyBand band;
    double t, s;
    int n;
    double a, b;  // xi interval

    double weight_pow() const { return s + (n - 1); }

    cplx base(double xi) const {
        double y = band.delta * xi;
        double w = band.weight(y);
        if (w == 0.0) return {0.0, 0.0};
        double amp = w * std::pow(xi, weight_pow());
        double ph = (t / band.delta) * model->eval(y);
        return cplx(amp * std::cos(ph), amp * std::sin(ph));
    }
    cplx with_kernel(double xi, double x) const {
        cplx v = base(xi);
        if (v == 0.0) return v;
        if (n == 1) {
            double ph = x * xi;
            return v * cplx(std::cos(ph), std::sin(ph));
        }
        return v * bessel_j0(xi * x);
    }
};

struct BandGeometry {
    double a = 0.0, b = 0.0;       // xi interval
    double tv_g = 0.0;             // total variation of g over the band
    double max_g1 = 0.0, min_abs_g1 = 0.0;
    double min_abs_g2 = 0.0;
    double g1_lo = 0.0, g1_hi = 0.0;  // range of g'
    double sup_f = 0.0;            // sup of |w xi^{s+n-1}|
    double l1_f = 0.0;             // int of |w xi^{s+n-1}|
};

BandGeometry probe_band(const PhaseModel& model, const FrequencyBand& band,
                        double s, int n) {
    Interval sup = band.support_y();
    if (!std::isfinite(sup.hi))
        throw std::invalid_argument(
            "unbounded band support: evaluate through dyadic sums");
    double ylo = std::max(sup.lo, 0.0);
    double yhi = sup.hi;
    if (ylo <= 0.0 && s + (n - 1) <= -1.0)
        throw std::invalid_argument(
            "band touches xi = 0 with non-integrable weight xi^" +
            std::to_string(s + (n - 1)));

    BandGeometry geo;
    geo.a = ylo / band.delta;
    geo.b = yhi / band.delta;

    const int M = 129;
    double pow_w = s + (n - 1);
    double prev_g = 0.0;
    bool have_prev = false;
    geo.min_abs_g1 = std::numeric_limits<double>::infinity();
    geo.min_abs_g2 = std::numeric_limits<double>::infinity();
    geo.g1_lo = std::numeric_limits<double>::infinity();
    geo.g1_hi = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= M; ++i) {
        double fr = (i + 0.5) / (M + 1);
        double y = ylo + (yhi - ylo) * fr;
        if (y <= 0.0) continue;
        auto jet = model.jet(y);
        if (have_prev) geo.tv_g += std::fabs(jet[0] - prev_g);
        prev_g = jet[0];
        have_prev = true;
        geo.max_g1 = std::max(geo.max_g1, std::fabs(jet[1]));
        geo.min_abs_g1 = std::min(geo.min_abs_g1, std::fabs(jet[1]));
        geo.min_abs_g2 = std::min(geo.min_abs_g2, std::fabs(jet[2]));
        geo.g1_lo = std::min(geo.g1_lo, jet[1]);
        geo.g1_hi = std::max(geo.g1_hi, jet[1]);
        double xi = y / band.delta;
        double f = band.weight(y) * std::pow(xi, pow_w);
        geo.sup_f = std::max(geo.sup_f, std::fabs(f));
        geo.l1_f += std::fabs(f);
    }
    geo.tv_g *= 1.25;  // sampled variation underestimates
    geo.l1_f *= (geo.b - geo.a) / (M + 1);
    return geo;
}

double cycle_count(const BandGeometry& geo, double t, double delta,
                   double absx) {
    double phase_range = std::fabs(t) / delta * geo.tv_g;
    double kernel_range = absx * (geo.b - geo.a);
    return (phase_range + kernel_range) / kTwoPi;
}

struct PanelResult {
    cplx val{0.0, 0.0};
    double err = 0.0;
    double abs_sum = 0.0;
};

template <typename F>
PanelResult gk15(const F& f, double a, double b) {
    double hc = 0.5 * (b - a);
    double mid = 0.5 * (a + b);
    cplx kron{0.0, 0.0}, gauss{0.0, 0.0};
    double abs_sum = 0.0;
    for (int i = 0; i < 8; ++i) {
        if (i == 7) {
            cplx v = f(mid);
            kron += kWgk[7] * v;
            gauss += kWg[3] * v;
            abs_sum += kWgk[7] * std::abs(v);
            break;
        }
        cplx v1 = f(mid - hc * kXgk[i]);
        cplx v2 = f(mid + hc * kXgk[i]);
        kron += kWgk[i] * (v1 + v2);
        abs_sum += kWgk[i] * (std::abs(v1) + std::abs(v2));
        if (i % 2 == 1) gauss += kWg[i / 2] * (v1 + v2);
    }
    PanelResult r;
    r.val = kron * hc;
    r.err = std::abs(kron - gauss) * hc;
    r.abs_sum = abs_sum * hc;
    return r;
}

struct AdaptiveResult {
    cplx val{0.0, 0.0};
    double err = 0.0;
    bool converged = true;
};

template <typename F>
AdaptiveResult integrate_adaptive(const F& f, double a, double b,
                                  double cycles, const QuadOptions& opts) {
    int n0 = static_cast<int>(
        std::clamp(std::ceil(cycles * opts.panels_per_cycle), 8.0,
                   static_cast<double>(opts.max_panels)));

    struct HeapPanel {
        double a, b, err;
        cplx val;
        double abs_sum;
        bool operator<(const HeapPanel& o) const { return err < o.err; }
    };
    std::priority_queue<HeapPanel> heap;
    cplx total{0.0, 0.0};
    double toterr = 0.0, totabs = 0.0;
    double h = (b - a) / n0;
    for (int i = 0; i < n0; ++i) {
        double pa = a + i * h, pb = (i == n0 - 1) ? b : a + (i + 1) * h;
        PanelResult pr = gk15(f, pa, pb);
        total += pr.val;
        toterr += pr.err;
        totabs += pr.abs_sum;
        heap.push({pa, pb, pr.err, pr.val, pr.abs_sum});
    }
    int panels = n0;
    auto tol = [&]() {
        double floor = 32.0 * std::numeric_limits<double>::epsilon() * totabs;
        return std::max({opts.abs_tol, opts.rel_tol * std::abs(total), floor});
    };
    while (toterr > tol() && panels < opts.max_panels && !heap.empty()) {
        HeapPanel p = heap.top();
        heap.pop();
        if (p.err <= 1e-4 * tol()) {  // remaining panels are all tiny
            heap.push(p);
            break;
        }
        double m = 0.5 * (p.a + p.b);
        PanelResult l = gk15(f, p.a, m);
        PanelResult r = gk15(f, m, p.b);
        total += l.val + r.val - p.val;
        toterr += l.err + r.err - p.err;
        totabs += l.abs_sum + r.abs_sum - p.abs_sum;
        heap.push({p.a, m, l.err, l.val, l.abs_sum});
        heap.push({m, p.b, r.err, r.val, r.abs_sum});
        ++panels;
    }
    AdaptiveResult res;
    res.val = total;
    res.err = toterr;
    res.converged = toterr <= tol();
    return res;
}

OscIntegralSample make_sample(const PhaseModel& model, double t, double x,
                              const FrequencyBand& band, double s, int n,
                              const QuadOptions& opts) {
    BandIntegrand F{&model, band, t, s, n, 0.0, 0.0};
    BandGeometry geo = probe_band(model, band, s, n);
    F.a = geo.a;
    F.b = geo.b;
    double cycles = cycle_count(geo, t, band.delta, std::fabs(x));
    if (cycles * opts.panels_per_cycle > 4.0 * opts.max_panels) {
        OscIntegralSample sample;
        sample.n = n;
        sample.t = t;
        sample.x = x;
        sample.s = s;
        sample.delta = band.delta;
        sample.accepted = false;
        throw QuadratureError(
            "integral too oscillatory for the panel budget (cycles ~ " +
                std::to_string(cycles) + ")",
            sample);
    }
    auto f = [&](double xi) { return F.with_kernel(xi, x); };
    AdaptiveResult r = integrate_adaptive(f, geo.a, geo.b, cycles, opts);

    OscIntegralSample sample;
    sample.n = n;
    sample.t = t;
    sample.x = x;
    sample.s = s;
    sample.delta = band.delta;
    sample.dyadic = band.kind == BandKind::dyadic;
    sample.k = band.k;
    sample.value = r.val;
    sample.abs_error = r.err;
    sample.accepted =
        r.err <= 1e-8 * std::max(1.0, std::abs(r.val));
    if (!r.converged && !sample.accepted &&
        r.err > 1e-4 * std::max(1.0, std::abs(r.val)))
        throw QuadratureError("quadrature did not converge (err ~ " +
                                  std::to_string(r.err) + ")",
                              sample);
    return sample;
}

// ---- shared-node scan engine ----------------------------------------------

// Accumulate I(x) for every x in xs (complex), streaming over composite
// GK panels so nodes are evaluated once.
void scan_accumulate(const BandIntegrand& F, const BandGeometry& geo,
                     const std::vector<double>& xs,
                     std::vector<cplx>& acc, double pp_cycle,
                     int max_panels) {
    double max_absx = 0.0;
    for (double x : xs) max_absx = std::max(max_absx, std::fabs(x));
    double cycles = cycle_count(geo, F.t, F.band.delta, max_absx);
    int npan = static_cast<int>(std::clamp(std::ceil(cycles * pp_cycle), 8.0,
                                           static_cast<double>(max_panels)));
    double h = (geo.b - geo.a) / npan;
    size_t nx = xs.size();
    for (int p = 0; p < npan; ++p) {
        double pa = geo.a + p * h;
        double pb = (p == npan - 1) ? geo.b : pa + h;
        double hc = 0.5 * (pb - pa), mid = 0.5 * (pa + pb);
        for (int i = 0; i < 15; ++i) {
            int j = i < 8 ? i : 14 - i;
            double xi = (i < 7) ? mid - hc * kXgk[j]
                                : (i == 7 ? mid : mid + hc * kXgk[j]);
            cplx base = F.base(xi) * (kWgk[j] * hc);
            if (base == cplx(0.0, 0.0)) continue;
            if (F.n == 1) {
                for (size_t m = 0; m < nx; ++m) {
                    double ph = xs[m] * xi;
                    acc[m] += base * cplx(std::cos(ph), std::sin(ph));
                }
            } else {
                for (size_t m = 0; m < nx; ++m)
                    acc[m] += base * bessel_j0(xi * xs[m]);
            }
        }
    }
}

// Scan-grade single evaluation (non-adaptive composite at this x).
double scan_eval_single(const BandIntegrand& F, const BandGeometry& geo,
                        double x, double pp_cycle, int max_panels) {
    std::vector<double> xs{x};
    std::vector<cplx> acc{cplx(0.0, 0.0)};
    scan_accumulate(F, geo, xs, acc, pp_cycle, max_panels);
    return std::abs(acc[0]);
}

std::vector<double> build_x_grid(const SearchSpec& spec, int n, double x_lo,
                                 double x_hi) {
    std::vector<double> xs;
    int npts = std::max(spec.coarse_points, 16);
    if (spec.log_grid) {
        double lo = x_lo > 0.0 ? x_lo : x_hi * 1e-6;
        for (int i = 0; i < npts; ++i)
            xs.push_back(lo * std::pow(x_hi / lo, double(i) / (npts - 1)));
    } else {
        for (int i = 0; i < npts; ++i)
            xs.push_back(x_hi * double(i) / (npts - 1));
    }
    if (n == 1 && spec.include_negative) {
        size_t base = xs.size();
        for (size_t i = 0; i < base; ++i)
            if (xs[i] != 0.0) xs.push_back(-xs[i]);
    }
    return xs;
}

// Golden-section maximization of fn on [lo, hi].
template <typename Fn>
std::pair<double, double> golden_max(const Fn& fn, double lo, double hi,
                                     int steps) {
    const double phi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = fn(x1), f2 = fn(x2);
    for (int i = 0; i < steps; ++i) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = fn(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = fn(x1);
        }
    }
    return f1 > f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

struct ScanOutcome {
    double best_x = 0.0;
    double best_val = 0.0;
    bool boundary = false;
};

// Coarse scan + golden refinement around the best three local maxima.
template <typename PointEval>
ScanOutcome refine_scan(const std::vector<double>& xs,
                        const std::vector<double>& vals,
                        const PointEval& point_eval, int refine_steps) {
    // local maxima indices, value-sorted
    std::vector<size_t> cand;
    for (size_t i = 0; i < xs.size(); ++i) {
        double l = i > 0 ? vals[i - 1] : -1.0;
        double r = i + 1 < xs.size() ? vals[i + 1] : -1.0;
        if (vals[i] >= l && vals[i] >= r) cand.push_back(i);
    }
    std::sort(cand.begin(), cand.end(),
              [&](size_t a, size_t b) { return vals[a] > vals[b]; });
    if (cand.size() > 3) cand.resize(3);

    ScanOutcome out;
    for (size_t idx : cand) {
        double lo = idx > 0 ? xs[idx - 1] : xs[idx];
        double hi = idx + 1 < xs.size() ? xs[idx + 1] : xs[idx];
        double bx = xs[idx], bv = vals[idx];
        if (hi > lo) {
            auto [gx, gv] = golden_max(point_eval, lo, hi, refine_steps);
            if (gv > bv) {
                bx = gx;
                bv = gv;
            }
        }
        if (bv > out.best_val) {
            out.best_val = bv;
            out.best_x = bx;
        }
    }
    if (!cand.empty()) {
        // sorted grids are not monotone in |x| for two-sided scans; flag a
        // boundary hit against the extreme magnitudes
        double xmax = 0.0;
        for (double x : xs) xmax = std::max(xmax, std::fabs(x));
        if (std::fabs(out.best_x) >= 0.999 * xmax && xmax > 0.0)
            out.boundary = true;
    }
    return out;
}

double auto_x_hi(const BandGeometry& geo, double t) {
    return 2.0 * std::fabs(t) * geo.max_g1;
}

}  // namespace

OscIntegralSample integral_1d(const PhaseModel& model, double t, double x,
                              const FrequencyBand& band, double s,
                              const QuadOptions& opts) {
    return make_sample(model, t, x, band, s, 1, opts);
}

OscIntegralSample integral_2d_radial(const PhaseModel& model, double t,
                                     double absx, const FrequencyBand& band,
                                     double s, const QuadOptions& opts) {
    if (absx < 0.0)
        throw std::invalid_argument("integral_2d_radial: |x| must be >= 0");
    return make_sample(model, t, absx, band, s, 2, opts);
}

SupResult sup_over_x(const PhaseModel& model, double t,
                     const FrequencyBand& band, double s, int n,
                     const SearchSpec& spec, const QuadOptions& opts) {
    if (n != 1 && n != 2) throw std::invalid_argument("n must be 1 or 2");
    BandIntegrand F{&model, band, t, s, n, 0.0, 0.0};
    BandGeometry geo = probe_band(model, band, s, n);
    F.a = geo.a;
    F.b = geo.b;

    double x_hi = spec.x_hi > 0.0 ? spec.x_hi : auto_x_hi(geo, t);
    SupResult res;
    if (t == 0.0 || x_hi <= 0.0) {
        res.best = make_sample(model, t, 0.0, band, s, n, opts);
        res.argmax_x = 0.0;
        return res;
    }

    std::vector<double> xs = build_x_grid(spec, n, spec.x_lo, x_hi);
    std::vector<cplx> acc(xs.size(), cplx(0.0, 0.0));
    scan_accumulate(F, geo, xs, acc, opts.scan_panels_per_cycle,
                    opts.max_panels);
    std::vector<double> vals(xs.size());
    for (size_t i = 0; i < xs.size(); ++i) vals[i] = std::abs(acc[i]);

    auto point_eval = [&](double x) {
        return scan_eval_single(F, geo, x, opts.scan_panels_per_cycle,
                                opts.max_panels);
    };
    ScanOutcome sc = refine_scan(xs, vals, point_eval, spec.refine_steps);

    res.best = make_sample(model, t, sc.best_x, band, s, n, opts);
    res.argmax_x = sc.best_x;
    res.boundary = sc.boundary;
    res.best.boundary = sc.boundary;
    return res;
}

namespace {

struct KTerm {
    int k;
    FrequencyBand band;
    BandGeometry geo;
    double est;       // a-priori peak estimate for pruning
    double cycles;    // t-phase plus stationary-x oscillation count
};

std::vector<KTerm> candidate_terms(const PhaseModel& model,
                                   const FrequencyBand& band, double t,
                                   double s, int n, const QuadOptions& opts,
                                   bool* truncated) {
    IndexRange idx = band.indices();
    auto [klo, khi] = idx.clamp(opts.k_min, opts.k_max);
    *truncated = (!idx.lo && klo == opts.k_min) || (!idx.hi && khi == opts.k_max);
    std::vector<KTerm> terms;
    for (int k = klo; k <= khi; ++k) {
        KTerm term;
        term.k = k;
        term.band = FrequencyBand::dyadic(k, band.delta);
        term.geo = probe_band(model, term.band, s, n);
        double trivial = term.geo.l1_f * (n == 2 ? kTwoPi : 1.0);
        double est = trivial;
        if (term.geo.min_abs_g2 > 0.0 && t != 0.0) {
            // stationary-phase scale: sup|f| sqrt(2 pi / |phi''|)
            double phi2 = std::fabs(t) * band.delta * term.geo.min_abs_g2;
            double sp = term.geo.sup_f * std::sqrt(kTwoPi / phi2) *
                        (n == 2 ? kTwoPi : 1.0);
            est = std::min(est, 4.0 * sp);
        }
        term.est = est;
        term.cycles = cycle_count(term.geo, t, band.delta,
                                  2.0 * std::fabs(t) * term.geo.max_g1);
        terms.push_back(std::move(term));
    }
    return terms;
}

// Keep an x value for an annulus only when the full phase can be stationary
// nearby; elsewhere the contribution decays non-stationarily and is dropped
// from the pointwise sum (the omission is uniformly small against the
// resonant terms).
bool x_near_stationary(const KTerm& term, double t, double x, int n) {
    if (t == 0.0) return true;
    double w = std::fabs(t) * (term.geo.g1_hi - term.geo.g1_lo);
    double scale = std::fabs(x) +
                   std::fabs(t) * std::max(std::fabs(term.geo.g1_lo),
                                           std::fabs(term.geo.g1_hi));
    double margin = 2.0 * w + 0.05 * scale;
    auto dist = [&](double xx) {
        double a = xx + t * term.geo.g1_lo, b = xx + t * term.geo.g1_hi;
        if (a > b) std::swap(a, b);
        return (a > 0.0) ? a : (b < 0.0 ? -b : 0.0);
    };
    if (n == 1) return dist(x) <= margin;
    return std::min(dist(std::fabs(x)), dist(-std::fabs(x))) <= margin;
}

}  // namespace

BandValue lemma_lhs(const PhaseModel& model, double t,
                    const FrequencyBand& band, double s, int n, SumMode mode,
                    const SearchSpec& spec, const QuadOptions& opts) {
    BandValue out;
    if (mode == SumMode::single || band.kind == BandKind::dyadic) {
        SupResult r = sup_over_x(model, t, band, s, n, spec, opts);
        out.value = std::abs(r.best.value);
        out.x_at_max = r.argmax_x;
        out.boundary = r.boundary;
        out.k_lo = out.k_hi = band.k;
        return out;
    }

    bool truncated = false;
    std::vector<KTerm> terms =
        candidate_terms(model, band, t, s, n, opts, &truncated);
    out.truncated = truncated;
    if (terms.empty()) return out;

    double max_est = 0.0;
    for (const auto& term : terms) max_est = std::max(max_est, term.est);

    // Keep annuli that are both significant and affordable. Significant
    // annuli beyond the oscillation budget are dropped and flagged; their
    // a-priori estimates decay away from the resonant window, so the sum
    // is perturbed at the pruning level only.
    std::vector<KTerm> kept;
    for (auto& term : terms) {
        bool significant = term.est >= opts.prune_rel * max_est;
        bool affordable = term.cycles <= opts.cycle_budget;
        if (significant && affordable) {
            kept.push_back(term);
        } else if (significant && !affordable) {
            out.truncated = true;
        }
    }
    if (kept.empty()) return out;
    out.k_lo = kept.front().k;
    out.k_hi = kept.back().k;

    if (mode == SumMode::sum_of_sups) {
        double sum = 0.0;
        for (const auto& term : kept) {
            SupResult r = sup_over_x(model, t, term.band, s, n, spec, opts);
            sum += std::abs(r.best.value);
            if (std::fabs(r.argmax_x) > std::fabs(out.x_at_max))
                out.x_at_max = r.argmax_x;
        }
        out.value = sum;
        return out;
    }

    // sup_of_sum: shared x grid across the kept annuli; each annulus only
    // contributes near its own stationary window.
    double x_hi = spec.x_hi;
    double x_lo = spec.x_lo;
    if (x_hi <= 0.0) {
        double g1max = 0.0;
        for (const auto& term : kept) g1max = std::max(g1max, term.geo.max_g1);
        x_hi = 2.0 * std::fabs(t) * g1max;
    }
    if (x_lo <= 0.0) {
        double g1min = std::numeric_limits<double>::infinity();
        for (const auto& term : kept)
            if (term.geo.min_abs_g1 > 0.0)
                g1min = std::min(g1min, term.geo.min_abs_g1);
        x_lo = std::isfinite(g1min) ? 0.25 * std::fabs(t) * g1min : 0.0;
    }
    if (t == 0.0 || x_hi <= 0.0) {
        double sum = 0.0;
        for (const auto& term : kept)
            sum += std::abs(make_sample(model, t, 0.0, term.band, s, n, opts)
                                .value);
        out.value = sum;
        return out;
    }

    SearchSpec grid_spec = spec;
    grid_spec.x_hi = x_hi;
    grid_spec.x_lo = x_lo;
    std::vector<double> xs = build_x_grid(grid_spec, n, x_lo, x_hi);
    std::vector<double> sums(xs.size(), 0.0);
    for (const auto& term : kept) {
        std::vector<double> xs_k;
        std::vector<size_t> idx_k;
        for (size_t i = 0; i < xs.size(); ++i) {
            if (x_near_stationary(term, t, xs[i], n)) {
                xs_k.push_back(xs[i]);
                idx_k.push_back(i);
            }
        }
        if (xs_k.empty()) continue;
        std::vector<cplx> acc(xs_k.size(), cplx(0.0, 0.0));
        BandIntegrand F{&model, term.band, t, s, n, term.geo.a, term.geo.b};
        scan_accumulate(F, term.geo, xs_k, acc, opts.scan_panels_per_cycle,
                        opts.max_panels);
        for (size_t i = 0; i < xs_k.size(); ++i)
            sums[idx_k[i]] += std::abs(acc[i]);
    }

    auto point_eval = [&](double x) {
        double total = 0.0;
        for (const auto& term : kept) {
            if (!x_near_stationary(term, t, x, n)) continue;
            BandIntegrand F{&model, term.band, t, s, n, term.geo.a,
                            term.geo.b};
            total += scan_eval_single(F, term.geo, x,
                                      opts.scan_panels_per_cycle,
                                      opts.max_panels);
        }
        return total;
    };
    ScanOutcome sc = refine_scan(xs, sums, point_eval, spec.refine_steps);
    out.value = sc.best_val;
    out.x_at_max = sc.best_x;
    out.boundary = sc.boundary;
    return out;
}

}  // namespace displab
