#include "displab/decay.hpp"

#include <algorithm>
#include <cmath>

#include "displab/parallel.hpp"

namespace displab {

namespace {

constexpr double kPin = 1e-9;  // tolerance for pinned algebraic parameters

struct Probe {
    std::vector<double> ys;                  // band samples
    std::array<std::vector<double>, 5> d;    // g^{(p)} at ys (signed)
    std::vector<double> ys_low;              // reach down to 0 (dyadic low)
    std::array<std::vector<double>, 5> dlow;
    bool has_end = false;
    End end = End::infinity;
    double alpha = std::numeric_limits<double>::quiet_NaN();
    double ell = std::numeric_limits<double>::quiet_NaN();
    int g2_sign_changes = 0;
    bool truncated_range = false;
};

void sample_range(const PhaseModel& model, double lo, double hi, int count,
                  std::vector<double>& ys,
                  std::array<std::vector<double>, 5>& d) {
    for (int i = 0; i < count; ++i) {
        double y = lo * std::pow(hi / lo, double(i) / (count - 1));
        auto jet = model.jet(y);
        ys.push_back(y);
        for (int p = 0; p < 5; ++p) d[p].push_back(jet[p]);
    }
}

Probe build_probe(const PhaseModel& model, const FrequencyBand& band) {
    Probe probe;
    Interval sup = band.support_y();
    double ylo = sup.lo, yhi = sup.hi;
    if (ylo <= 0.0) ylo = std::min(1e-4, sup.hi * 1e-4);
    if (!std::isfinite(yhi)) {
        yhi = std::max(1e3, 1e3 * sup.lo);
        probe.truncated_range = true;
    }
    sample_range(model, ylo, yhi, 64, probe.ys, probe.d);

    switch (band.kind) {
        case BandKind::halfline_low:
            probe.has_end = true;
            probe.end = End::zero;
            break;
        case BandKind::halfline_high:
            probe.has_end = true;
            probe.end = End::infinity;
            break;
        case BandKind::dyadic:
            probe.has_end = true;
            probe.end = band.k <= 0 ? End::zero : End::infinity;
            break;
        case BandKind::window:
            probe.has_end = false;
            break;
    }
    if (probe.has_end) {
        if (auto a2 = model.known_asymptotic(probe.end, 2)) {
            probe.alpha = a2->alpha;
        } else {
            try {
                probe.alpha = fit_asymptotic(model, probe.end, 2).alpha;
            } catch (const FitError&) {
            }
        }
        if (auto a1 = model.known_asymptotic(probe.end, 1)) {
            probe.ell = a1->ell;
        } else {
            try {
                probe.ell = fit_asymptotic(model, probe.end, 1).ell;
            } catch (const FitError&) {
            }
        }
    }
    // zeros of g'' counted by sign changes on 512 samples
    double prev = 0.0;
    bool have = false;
    for (int i = 0; i < 512; ++i) {
        double y = ylo * std::pow(yhi / ylo, double(i) / 511);
        double v = model.derivative(y, 2);
        if (have && v * prev < 0.0) ++probe.g2_sign_changes;
        if (v != 0.0) {
            prev = v;
            have = true;
        }
    }
    // low-reach samples for low-frequency dyadic estimates
    if (band.kind == BandKind::dyadic) {
        double top = std::ldexp(2.0, band.k);
        sample_range(model, top * 1e-4, top, 64, probe.ys_low, probe.dlow);
    }
    return probe;
}

// A sign change means the derivative vanishes inside the band: no positive
// lower bound exists no matter what the sampled minimum says.
bool has_sign_change(const std::vector<double>& v) {
    double prev = 0.0;
    for (double x : v) {
        if (x == 0.0) return true;
        if (prev != 0.0 && x * prev < 0.0) return true;
        prev = x;
    }
    return false;
}

double sampled_min_abs(const std::vector<double>& v) {
    if (has_sign_change(v)) return 0.0;
    double m = std::numeric_limits<double>::infinity();
    for (double x : v) m = std::min(m, std::fabs(x));
    return m;
}

// min over samples of |g^{(p)}| y^{-alpha}; the lemma lambda is half of it.
double lambda_weighted(const Probe& probe, int p, double alpha) {
    if (has_sign_change(probe.d[p])) return 0.0;
    double m = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < probe.ys.size(); ++i)
        m = std::min(m, std::fabs(probe.d[p][i]) *
                            std::pow(probe.ys[i], -alpha));
    return 0.5 * m;
}

double ratio_spread(const Probe& probe, int p, double alpha, double ell) {
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (size_t i = 0; i < probe.ys.size(); ++i) {
        double v = std::fabs(probe.d[p][i] - (p == 1 ? ell : 0.0)) *
                   std::pow(probe.ys[i], -alpha);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (lo <= 0.0) return std::numeric_limits<double>::infinity();
    return hi / lo;
}

struct Ctx {
    const PhaseModel* model;
    const FrequencyBand* band;
    const Probe* probe;
    double s;
    int n;
    int l_hint;
    std::vector<std::string>* failed;
};

bool fail(const Ctx& ctx, const std::string& lemma, const std::string& why) {
    ctx.failed->push_back(lemma + ": " + why);
    return false;
}

bool is_window_kind(BandKind k) {
    return k == BandKind::window || k == BandKind::halfline_low ||
           k == BandKind::halfline_high;
}

bool need_alpha(const Ctx& ctx, const std::string& id) {
    if (!ctx.probe->has_end || std::isnan(ctx.probe->alpha))
        return fail(ctx, id, "no end exponent available for this band");
    if (std::fabs(ctx.probe->alpha + 2.0) < kPin)
        return fail(ctx, id, "excluded exponent alpha = -2");
    return true;
}

DecayPrediction base_pred(const Ctx& ctx, const std::string& id, SumMode mode) {
    DecayPrediction pr;
    pr.s = ctx.s;
    pr.n = ctx.n;
    pr.lemma = id;
    pr.mode = mode;
    pr.alpha = ctx.probe->alpha;
    pr.g2_zero_count = ctx.probe->g2_sign_changes;
    if (ctx.probe->truncated_range)
        pr.notes.push_back("hypotheses verified on a truncated range");
    return pr;
}

// ---- 1d estimates ----------------------------------------------------------

bool try_vdc_window_1d(const Ctx& c, std::vector<DecayPrediction>& out) {
    const std::string id = "vdc_window_1d";
    if (c.n != 1 || !is_window_kind(c.band->kind)) return false;
    if (std::fabs(c.s) > kPin) return fail(c, id, "requires weight s = 0");
    for (int p = 2; p <= 4; ++p) {
        double lam = 0.5 * sampled_min_abs(c.probe->d[p]);
        if (lam > 0.0) {
            DecayPrediction pr = base_pred(c, id, SumMode::single);
            pr.p = p;
            pr.sigma = 1.0 / p;
            pr.beta = (1.0 - p) / double(p);
            pr.gamma = 0.0;
            pr.notes.push_back("|g^(" + std::to_string(p) +
                               ")| >= " + std::to_string(lam));
            out.push_back(pr);
            return true;
        }
    }
    return fail(c, id, "no derivative of order 2..4 bounded below on band");
}

bool try_dyadic_deriv_1d(const Ctx& c, std::vector<DecayPrediction>& out) {
    const std::string id = "dyadic_deriv_1d";
    if (c.n != 1 || c.band->kind != BandKind::dyadic) return false;
    if (!need_alpha(c, id)) return false;
    double alpha = c.probe->alpha;
    bool any = false;
    for (int p = 2; p <= 4; ++p) {
        // |g^{(p)}| >= lambda y^alpha_p; the end exponent of g^{(p)} is
        // alpha - (p - 2) for power-like tails
        double ap = alpha - (p - 2);
        double lam = lambda_weighted(*c.probe, p, ap);
        if (lam > 0.0 && std::isfinite(lam)) {
            DecayPrediction pr = base_pred(c, id, SumMode::single);
            pr.p = p;
            pr.alpha = ap;
            pr.sigma = 1.0 / p;
            pr.beta = (1.0 - c.s * p - p) / double(p);
            pr.gamma = c.s - ap / p;
            pr.notes.push_back("|g^(" + std::to_string(p) + ")| y^-(" +
                               std::to_string(ap) +
                               ") >= " + std::to_string(lam));
            out.push_back(pr);
            any = true;
            break;
        }
    }
    if (!any) return fail(c, id, "no weighted derivative lower bound");
    // interpolated variant when an order l is forced
    if (c.l_hint >= 2) {
        double lam2 = lambda_weighted(*c.probe, 2, alpha);
        if (lam2 > 0.0) {
            DecayPrediction pr =
                base_pred(c, "dyadic_curvature_interp_1d", SumMode::single);
            pr.l = c.l_hint;
            pr.sigma = 1.0 / c.l_hint;
            pr.beta = (1.0 - c.s * c.l_hint - c.l_hint) / double(c.l_hint);
            pr.gamma = c.s + (c.l_hint - 2.0 - alpha) / c.l_hint;
            out.push_back(pr);
        }
    }
    return true;
}

bool try_curvature_sum_1d(const Ctx& c, std::vector<DecayPrediction>& out) {
    const std::string id = "curvature_sum_1d";
    if (c.n != 1 || !is_window_kind(c.band->kind)) return false;
    if (!need_alpha(c, id)) return false;
    double alpha = c.probe->alpha;
    bool ordered = (alpha / 2.0 > c.s && c.s > -1.0) ||
                   (alpha / 2.0 < c.s && c.s < -1.0);
    if (!ordered)
        return fail(c, id,
                    "needs alpha/2 > s > -1 or alpha/2 < s < -1 (alpha = " +
                        std::to_string(alpha) + ", s = " + std::to_string(c.s) +
                        ")");
    double lam = lambda_weighted(*c.probe, 2, alpha);
    if (!(lam > 0.0))
        return fail(c, id, "|g''| y^-alpha not bounded below on band");
    DecayPrediction pr = base_pred(c, id, SumMode::sum_of_sups);
    pr.p = 2;
    pr.sigma = (c.s + 1.0) / (2.0 + alpha);
    pr.beta = -(1.0 + alpha) * (c.s + 1.0) / (2.0 + alpha);
    pr.gamma = 0.0;
    out.push_back(pr);
    return true;
}

bool try_resonant_sum_1d(const Ctx& c, std::vector<DecayPrediction>& out) {
    const std::string id = "resonant_sum_1d";
    if (c.n != 1 || !is_window_kind(c.band->kind)) return false;
    if (!need_alpha(c, id)) return false;
    double alpha = c.probe->alpha;
    if (std::fabs(alpha + 1.0) < kPin)
        return fail(c, id, "excluded exponent alpha = -1 (wave-type)");
    if (std::fabs(c.s - alpha / 2.0) > kPin)
        return fail(c, id, "requires pinned weight s = alpha/2 = " +
                               std::to_string(alpha / 2.0));
    double lam2 = lambda_weighted(*c.probe, 2, alpha);
    if (!(lam2 > 0.0))
        return fail(c, id, "|g''| y^-alpha not bounded below");
    double ell = std::isnan(c.probe->ell) ? 0.0 : c.probe->ell;
    double spread = ratio_spread(*c.probe, 1, alpha + 1.0, ell);
    if (!(spread < 1e6))
        return fail(c, id, "|g' - ell| not comparable to y^{alpha+1}");
    DecayPrediction pr = base_pred(c, id, SumMode::sup_of_sum);
    pr.p = 2;
    pr.sigma = 0.5;
    pr.beta = -(1.0 + alpha) / 2.0;
    pr.gamma = 0.0;
    pr.notes.push_back("ell = " + std::to_string(ell));
    out.push_back(pr);
    return true;
}

bool try_multideriv_window_1d(const Ctx& c, std::vector<DecayPrediction>& out) {
    const std::string id = "multideriv_window_1d";
    if (c.n != 1) return false;
    // intermediate frequencies only: the statement needs a bounded window
    if (c.band->kind != BandKind::window &&
        c.band->kind != BandKind::halfline_low &&
        c.band->kind != BandKind::dyadic)
        return false;
    for (int l = 2; l <= 4; ++l) {
        if (c.l_hint >= 2 && l != c.l_hint) continue;
        double m = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < c.probe->ys.size(); ++i) {
            double sum = 0.0;
            for (int p = 2; p <= l; ++p) sum += std::fabs(c.probe->d[p][i]);
            m = std::min(m, sum);
        }
        if (m > 0.0 && std::isfinite(m)) {
            DecayPrediction pr = base_pred(c, id, SumMode::single);
            pr.l = l;
            pr.sigma = 1.0 / l;
            pr.beta = -(c.s + 1.0 - 1.0 / l);
            pr.gamma = c.band->kind == BandKind::dyadic
                           ? c.s + 1.0 - 1.0 / l
                           : 0.0;
            pr.notes.push_back("sum_{p=2}^{" + std::to_string(l) +
                               "} |g^(p)| >= " + std::to_string(0.5 * m));
            out.push_back(pr);
            return true;
        }
    }
    return fail(c, id, "derivatives of order 2..4 share a zero on band");
}

// ---- 2d estimates ----------------------------------------------------------

bool try_steep_window_2d(const Ctx& c, std::vector<DecayPrediction>& out) {
    const std::string id = "steep_window_2d";
    if (c.n != 2) return false;
    if (c.band->kind != BandKind::window &&
        c.band->kind != BandKind::halfline_low)
        return false;
    if (std::fabs(c.s) > kPin) return fail(c, id, "requires weight s = 0");
    double lam1 = 0.5 * sampled_min_abs(c.probe->d[1]);
    if (!(lam1 > 0.0)) return fail(c, id, "|g'| not bounded below on band");
    for (int l = 2; l <= 4; ++l) {
        if (c.l_hint >= 2 && l != c.l_hint) continue;
        double m = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < c.probe->ys.size(); ++i) {
            double sum = 0.0;
            for (int p = 2; p <= l; ++p) sum += std::fabs(c.probe->d[p][i]);
            m = std::min(m, sum);
        }
        if (m > 0.0 && std::isfinite(m)) {
            DecayPrediction pr = base_pred(c, id, SumMode::single);
            pr.l = l;
            pr.sigma = 0.5 + 1.0 / l;
            pr.beta = (2.0 - 3.0 * l) / (2.0 * l);
            pr.gamma = 0.0;
            out.push_back(pr);
            return true;
        }
    }
    return fail(c, id, "derivatives of order 2..4 share a zero on band");
}

bool try_wave_lowfreq_2d(const Ctx& c, std::vector<DecayPrediction>& out) {
    const std::string id = "wave_lowfreq_2d";
    if (c.n != 2 || c.band->kind != BandKind::halfline_low) return false;
    if (std::fabs(c.s) > kPin) return fail(c, id, "requires weight s = 0");
    if (!c.model->zero_regular())
        return fail(c, id, "phase must extend C^1 to 0");
    double alpha = c.probe->alpha;
    if (std::isnan(alpha) || alpha < 1.0 - kPin)
        return fail(c, id, "requires curvature exponent alpha >= 1 at 0");
    double lam1 = 0.5 * sampled_min_abs(c.probe->d[1]);
    if (!(lam1 > 0.0)) return fail(c, id, "|g'| not bounded below near 0");
    double lam2 = lambda_weighted(*c.probe, 2, alpha);
    if (!(lam2 > 0.0))
        return fail(c, id, "|g''| y^-alpha not bounded below near 0");
    if (std::fabs(alpha - 1.0) < kPin) {
        double ell = std::isnan(c.probe->ell) ? 1.0 : c.probe->ell;
        double spread = ratio_spread(*c.probe, 1, alpha + 1.0, ell);
        if (!(spread < 1e6))
            return fail(c, id, "|g' - g'(0)| not comparable to y^2");
    }
    DecayPrediction pr = base_pred(c, id, SumMode::single);
    pr.sigma = (5.0 + alpha) / (2.0 * (2.0 + alpha));
    pr.beta = -1.5 * (1.0 + alpha) / (2.0 + alpha);
    pr.gamma = 0.0;
    out.push_back(pr);
    return true;
}

bool try_dyadic_pointwise_2d(const Ctx& c, std::vector<DecayPrediction>& out) {
    const std::string id = "dyadic_pointwise_2d";
    if (c.n != 2 || c.band->kind != BandKind::dyadic) return false;
    if (!need_alpha(c, id)) return false;
    double alpha = c.probe->alpha;
    double ell = std::isnan(c.probe->ell) ? 0.0 : c.probe->ell;
    double beta_tilde = std::fabs(ell) > kPin ? 0.0 : alpha + 1.0;
    double lam1 = lambda_weighted(*c.probe, 1, beta_tilde);
    double lam2 = lambda_weighted(*c.probe, 2, alpha);
    if (!(lam1 > 0.0) || !(lam2 > 0.0))
        return fail(c, id, "g' or g'' weighted lower bound fails");
    DecayPrediction pr = base_pred(c, id, SumMode::single);
    pr.sigma = 1.0;
    pr.beta = -(c.s + 1.0);
    pr.gamma = std::max(c.s + (1.0 - alpha - beta_tilde) / 2.0,
                        c.s + 1.0 - beta_tilde);
    out.push_back(pr);
    if (c.l_hint >= 1 && std::fabs(beta_tilde - (alpha + 1.0)) < kPin) {
        DecayPrediction pr2 =
            base_pred(c, "dyadic_curvature_interp_2d", SumMode::single);
        pr2.l = c.l_hint;
        pr2.sigma = 1.0 / c.l_hint;
        pr2.beta = -(c.s + 2.0 - 1.0 / c.l_hint);
        pr2.gamma = c.s + (2.0 * c.l_hint - 2.0 - alpha) / c.l_hint;
        out.push_back(pr2);
    }
    return true;
}

bool try_curvature_sum_2d(const Ctx& c, std::vector<DecayPrediction>& out) {
    const std::string id = "curvature_sum_2d";
    if (c.n != 2 || !is_window_kind(c.band->kind)) return false;
    if (!need_alpha(c, id)) return false;
    double alpha = c.probe->alpha;
    bool ordered =
        (alpha > c.s && c.s > -2.0) || (alpha < c.s && c.s < -2.0);
    if (!ordered)
        return fail(c, id, "needs alpha > s > -2 or alpha < s < -2");
    double lam1 = lambda_weighted(*c.probe, 1, alpha + 1.0);
    double lam2 = lambda_weighted(*c.probe, 2, alpha);
    if (!(lam1 > 0.0) || !(lam2 > 0.0))
        return fail(c, id, "g' or g'' weighted lower bound fails");
    DecayPrediction pr = base_pred(c, id, SumMode::sum_of_sups);
    pr.sigma = (c.s + 2.0) / (2.0 + alpha);
    pr.beta = -(alpha + 1.0) * (c.s + 2.0) / (2.0 + alpha);
    pr.gamma = 0.0;
    out.push_back(pr);
    return true;
}

bool try_resonant_sum_2d(const Ctx& c, std::vector<DecayPrediction>& out) {
    const std::string id = "resonant_sum_2d";
    if (c.n != 2 || !is_window_kind(c.band->kind)) return false;
    if (!need_alpha(c, id)) return false;
    double alpha = c.probe->alpha;
    if (std::fabs(alpha + 1.0) < kPin)
        return fail(c, id, "excluded exponent alpha = -1 (wave-type)");
    if (std::fabs(c.s - alpha) > kPin)
        return fail(c, id,
                    "requires pinned weight s = alpha = " +
                        std::to_string(alpha));
    double sp1 = ratio_spread(*c.probe, 1, alpha + 1.0, 0.0);
    double sp2 = ratio_spread(*c.probe, 2, alpha, 0.0);
    double sp3 = ratio_spread(*c.probe, 3, alpha - 1.0, 0.0);
    if (!(sp1 < 1e6) || !(sp2 < 1e6))
        return fail(c, id, "g', g'' not comparable to the power scale");
    if (!(sp3 < 1e8))
        return fail(c, id, "|g'''| y^{1-alpha} unbounded on band");
    DecayPrediction pr = base_pred(c, id, SumMode::sup_of_sum);
    pr.sigma = 1.0;
    pr.beta = -(alpha + 1.0);
    pr.gamma = 0.0;
    out.push_back(pr);
    return true;
}

bool try_flat_highfreq_2d(const Ctx& c, std::vector<DecayPrediction>& out) {
    const std::string id = "flat_highfreq_sum_2d";
    if (c.n != 2 || c.band->kind != BandKind::halfline_high) return false;
    if (!need_alpha(c, id)) return false;
    double alpha = c.probe->alpha;
    if (alpha >= -1.0)
        return fail(c, id, "requires alpha < -1 at high frequency");
    double lam1 = 0.5 * sampled_min_abs(c.probe->d[1]);
    double lam2 = lambda_weighted(*c.probe, 2, alpha);
    if (!(lam1 > 0.0) || !(lam2 > 0.0))
        return fail(c, id, "g' or g'' lower bound fails");
    bool ordered = ((alpha - 1.0) / 2.0 < c.s && c.s < -2.0) ||
                   ((alpha - 1.0) / 2.0 > c.s && c.s > -2.0);
    if (ordered) {
        DecayPrediction pr = base_pred(c, id, SumMode::sum_of_sups);
        pr.sigma = 2.0 * (c.s + 2.0) / (alpha + 3.0);
        pr.beta = -(alpha + 1.0) * (c.s + 2.0) / (alpha + 3.0);
        pr.gamma = 0.0;
        out.push_back(pr);
        return true;
    }
    // resonant variant with pinned s = (alpha-1)/2
    if (std::fabs(c.s - (alpha - 1.0) / 2.0) <= kPin &&
        std::fabs(alpha + 2.0) > kPin) {
        double ell = std::isnan(c.probe->ell) ? 0.0 : c.probe->ell;
        double spread = ratio_spread(*c.probe, 1, alpha + 1.0, ell);
        if (!(spread < 1e6))
            return fail(c, "flat_highfreq_resonant_2d",
                        "|g' - ell| not comparable to y^{alpha+1}");
        DecayPrediction pr =
            base_pred(c, "flat_highfreq_resonant_2d", SumMode::sup_of_sum);
        pr.sigma = 1.0;
        pr.beta = -(alpha + 1.0) / 2.0;
        pr.gamma = 0.0;
        pr.notes.push_back("ell = " + std::to_string(ell));
        out.push_back(pr);
        return true;
    }
    return fail(c, id, "weight s outside both admissible ranges");
}

bool try_wave_uniform_2d(const Ctx& c, std::vector<DecayPrediction>& out) {
    if (c.n != 2) return false;
    bool any = false;
    // (1) low-frequency annulus, uniform in delta
    if (c.band->kind == BandKind::dyadic) {
        const std::string id = "wave_dyadic_lowfreq_2d";
        double lam1 = 0.5 * sampled_min_abs(c.probe->dlow[1]);
        int zeros = 0;
        for (size_t i = 1; i < c.probe->dlow[2].size(); ++i)
            if (c.probe->dlow[2][i] * c.probe->dlow[2][i - 1] < 0.0) ++zeros;
        if (lam1 > 0.0 && zeros <= 8) {
            DecayPrediction pr = base_pred(c, id, SumMode::single);
            pr.sigma = 0.5;
            pr.beta = -(c.s + 1.5);
            pr.gamma = c.s + 1.5;
            pr.notes.push_back("g'' sign changes below band: " +
                               std::to_string(zeros));
            out.push_back(pr);
            any = true;
        } else {
            fail(c, id, "|g'| not bounded below between 0 and the band");
        }
    }
    // (2) intermediate window
    if (c.band->kind == BandKind::window) {
        const std::string id = "wave_window_2d";
        double m = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < c.probe->ys.size(); ++i)
            m = std::min(m, std::fabs(c.probe->d[1][i]) +
                                std::fabs(c.probe->d[2][i]));
        if (m > 0.0 && c.probe->g2_sign_changes <= 8) {
            DecayPrediction pr = base_pred(c, id, SumMode::single);
            pr.sigma = 0.5;
            pr.beta = -(c.s + 1.5);
            pr.gamma = 0.0;
            out.push_back(pr);
            any = true;
        } else {
            fail(c, id, "|g'| + |g''| vanishes somewhere on the window");
        }
    }
    // (3)/(4) high-frequency sums at pinned weights
    if (c.band->kind == BandKind::halfline_high && c.probe->has_end &&
        !std::isnan(c.probe->alpha)) {
        double alpha = c.probe->alpha;
        if (std::fabs(c.s - (alpha / 2.0 - 1.0)) <= kPin &&
            std::fabs(alpha + 2.0) > kPin) {
            double lam1 = lambda_weighted(*c.probe, 1, alpha + 1.0);
            double lam2 = lambda_weighted(*c.probe, 2, alpha);
            if (lam1 > 0.0 && lam2 > 0.0) {
                DecayPrediction pr = base_pred(
                    c, "wave_highfreq_curvature_2d", SumMode::sum_of_sups);
                pr.sigma = 0.5;
                pr.beta = -(alpha + 1.0) / 2.0;
                pr.gamma = 0.0;
                out.push_back(pr);
                any = true;
            }
        }
        if (std::fabs(c.s - (alpha - 5.0) / 4.0) <= kPin && alpha < -1.0 &&
            std::fabs(alpha + 3.0) > kPin) {
            double lam1 = 0.5 * sampled_min_abs(c.probe->d[1]);
            double lam2 = lambda_weighted(*c.probe, 2, alpha);
            if (lam1 > 0.0 && lam2 > 0.0) {
                DecayPrediction pr = base_pred(c, "wave_highfreq_flat_2d",
                                               SumMode::sum_of_sups);
                pr.sigma = 0.5;
                pr.beta = -(alpha + 1.0) / 2.0;
                pr.gamma = 0.0;
                out.push_back(pr);
                any = true;
            }
        }
    }
    return any;
}

bool try_wave_multideriv_2d(const Ctx& c, std::vector<DecayPrediction>& out) {
    if (c.n != 2) return false;
    if (c.band->kind != BandKind::window &&
        c.band->kind != BandKind::halfline_low &&
        c.band->kind != BandKind::dyadic)
        return false;
    const std::string id = c.band->kind == BandKind::dyadic
                               ? "wave_multideriv_lowfreq_2d"
                               : "wave_multideriv_window_2d";
    for (int l = 2; l <= 4; ++l) {
        if (c.l_hint >= 2 && l != c.l_hint) continue;
        double m = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < c.probe->ys.size(); ++i) {
            double sum = 0.0;
            for (int p = 1; p <= l; ++p) sum += std::fabs(c.probe->d[p][i]);
            m = std::min(m, sum);
        }
        if (m > 0.0 && std::isfinite(m) && c.probe->g2_sign_changes <= 8) {
            DecayPrediction pr = base_pred(c, id, SumMode::single);
            pr.l = l;
            pr.sigma = 1.0 / l;
            pr.beta = -(c.s + 2.0 - 1.0 / l);
            pr.gamma =
                c.band->kind == BandKind::dyadic ? c.s + 2.0 - 1.0 / l : 0.0;
            out.push_back(pr);
            return true;
        }
    }
    return fail(c, id, "derivatives of order 1..4 share a zero on band");
}

using TryFn = bool (*)(const Ctx&, std::vector<DecayPrediction>&);

const TryFn kTries[] = {
    try_vdc_window_1d,     try_dyadic_deriv_1d,   try_curvature_sum_1d,
    try_resonant_sum_1d,   try_multideriv_window_1d,
    try_steep_window_2d,   try_wave_lowfreq_2d,   try_dyadic_pointwise_2d,
    try_curvature_sum_2d,  try_resonant_sum_2d,   try_flat_highfreq_2d,
    try_wave_uniform_2d,   try_wave_multideriv_2d,
};

}  // namespace

std::vector<std::string> known_lemmas(int n) {
    if (n == 1)
        return {"vdc_window_1d",      "dyadic_deriv_1d",
                "dyadic_curvature_interp_1d", "curvature_sum_1d",
                "resonant_sum_1d",    "multideriv_window_1d"};
    return {"steep_window_2d",          "wave_lowfreq_2d",
            "dyadic_pointwise_2d",      "dyadic_curvature_interp_2d",
            "curvature_sum_2d",         "resonant_sum_2d",
            "flat_highfreq_sum_2d",     "flat_highfreq_resonant_2d",
            "wave_dyadic_lowfreq_2d",   "wave_window_2d",
            "wave_highfreq_curvature_2d", "wave_highfreq_flat_2d",
            "wave_multideriv_lowfreq_2d", "wave_multideriv_window_2d"};
}

DecayPrediction predict(const PhaseModel& model, const FrequencyBand& band,
                        double s, int n, const std::string& selector,
                        int l_hint) {
    if (n != 1 && n != 2) throw std::invalid_argument("n must be 1 or 2");
    Probe probe = build_probe(model, band);
    std::vector<std::string> failed;
    Ctx ctx{&model, &band, &probe, s, n, l_hint, &failed};
    std::vector<DecayPrediction> found;
    for (TryFn fn : kTries) fn(ctx, found);

    if (selector != "auto") {
        for (const auto& pr : found)
            if (pr.lemma == selector) return pr;
        throw NoPrediction("estimate '" + selector +
                               "' does not verify for this model/band/weight",
                           failed);
    }
    if (found.empty())
        throw NoPrediction("no decay estimate applies", failed);
    const DecayPrediction* best = &found[0];
    for (const auto& pr : found)
        if (pr.sigma > best->sigma) best = &pr;
    return *best;
}

std::vector<double> log_spaced(double lo, double hi, int count) {
    std::vector<double> v(count);
    for (int i = 0; i < count; ++i)
        v[i] = lo * std::pow(hi / lo, double(i) / (count - 1));
    return v;
}

std::vector<DecayExperimentRow> run_decay_experiment(
    const PhaseModel& model, const FrequencyBand& band, double s, int n,
    const std::vector<double>& t_grid, SumMode mode, const SearchSpec& spec,
    const QuadOptions& opts) {
    if (t_grid.size() < 2)
        throw std::invalid_argument("t grid needs at least 2 points");
    std::vector<DecayExperimentRow> rows(t_grid.size());
    parallel_for(static_cast<int>(t_grid.size()), [&](int i) {
        BandValue bv = lemma_lhs(model, t_grid[i], band, s, n, mode, spec, opts);
        rows[i] = {t_grid[i], bv.value, bv.x_at_max};
    });
    return rows;
}

SlopeFit fit_slope(const std::vector<std::pair<double, double>>& samples) {
    if (samples.size() < 2)
        throw std::invalid_argument("fit_slope: need at least 2 samples");
    size_t n = samples.size();
    std::vector<double> lx(n), lv(n);
    for (size_t i = 0; i < n; ++i) {
        if (!(samples[i].second > 0.0) || !(samples[i].first > 0.0))
            throw std::invalid_argument(
                "fit_slope: samples must be positive");
        lx[i] = std::log(samples[i].first);
        lv[i] = std::log(samples[i].second);
    }
    double mx = 0, my = 0;
    for (size_t i = 0; i < n; ++i) {
        mx += lx[i];
        my += lv[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (lv[i] - my);
    }
    double slope = sxy / sxx;
    double inter = my - slope * mx;
    double ss = 0.0;
    for (size_t i = 0; i < n; ++i) {
        double r = lv[i] - (slope * lx[i] + inter);
        ss += r * r;
    }
    SlopeFit fit;
    fit.slope = slope;
    fit.count = static_cast<int>(n);
    fit.residual = std::sqrt(ss / n);
    fit.stderr_slope =
        n > 2 ? std::sqrt(ss / (n - 2) / sxx) : 0.0;
    fit.x_lo = std::exp(lx.front());
    fit.x_hi = std::exp(lx.back());
    return fit;
}

SlopeFit fit_slope(const std::vector<DecayExperimentRow>& rows) {
    std::vector<std::pair<double, double>> samples;
    samples.reserve(rows.size());
    for (const auto& r : rows) samples.emplace_back(r.t, r.sup);
    return fit_slope(samples);
}

SlopeFit delta_scaling_experiment(const PhaseModel& model,
                                  const FrequencyBand& band_proto, double s,
                                  int n, double t_fixed,
                                  const std::vector<double>& deltas,
                                  SumMode mode, const SearchSpec& spec,
                                  const QuadOptions& opts) {
    if (deltas.size() < 2)
        throw std::invalid_argument("delta grid needs at least 2 points");
    std::vector<std::pair<double, double>> samples(deltas.size());
    parallel_for(static_cast<int>(deltas.size()), [&](int i) {
        FrequencyBand band = band_proto;
        band.delta = deltas[i];
        BandValue bv = lemma_lhs(model, t_fixed, band, s, n, mode, spec, opts);
        samples[i] = {deltas[i], bv.value};
    });
    return fit_slope(samples);
}

}  // namespace displab
