#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "displab/paley.hpp"

namespace displab {

enum class ModelKind {
    water_wave,
    abcd,
    bbm_kdv,
    ostrovsky,
    reduced_ostrovsky,
    ilw,
    power
};

ModelKind model_kind_from_string(const std::string& s);
std::string to_string(ModelKind k);

enum class End { zero, infinity };

/// Power-law behavior of a derivative of the phase at an end of the domain.
/// For p >= 2: g^{(p)}(y) ~ gamma * y^alpha. For p = 1 the normalization
/// follows the limit structure of g': g'(y) - ell ~ gamma * y^{alpha+1},
/// with ell = 0 when the limit diverges or vanishes.
struct AsymptoticDescriptor {
    End end = End::infinity;
    int deriv_order = 2;
    double alpha = 0.0;
    double gamma = 0.0;
    double ell = 0.0;
};

/// A dispersion phase g with closed-form derivatives up to order 4.
/// Immutable after construction; evaluation is pure and thread-safe.
class PhaseModel {
  public:
    double operator()(double y) const { return jet(y)[0]; }
    double eval(double y) const { return jet(y)[0]; }

    /// g^{(p)}(y) for p in 0..4.
    double derivative(double y, int p) const;

    /// (g, g', g'', g''', g'''') evaluated together.
    std::array<double, 5> jet(double y) const;

    ModelKind kind() const;
    const std::string& id() const;
    const std::map<std::string, double>& params() const;
    double param(const std::string& name) const;

    /// Model's natural scaling parameter (sqrt(mu) for the long-wave models,
    /// rho for ILW, 1 otherwise).
    double delta() const;

    Interval domain() const;

    /// True when g extends to a C^1 function at 0.
    bool zero_regular() const;

    /// All built-in models carry analytic derivative formulas; a finite
    /// difference fallback is never used for them.
    bool closed_form_derivatives() const { return true; }

    /// Exact end behavior where the model knows it in closed form.
    std::optional<AsymptoticDescriptor> known_asymptotic(End end, int p) const;

    struct Impl;
    explicit PhaseModel(std::shared_ptr<const Impl> impl);

  private:
    std::shared_ptr<const Impl> impl_;
};

/// Build a model from its parameter list. Constraint violations throw
/// std::invalid_argument naming the inequality; evaluation outside the
/// domain throws std::domain_error.
///
/// Parameters by kind:
///   water_wave          [mu]            g(y) = sqrt(y tanh y), delta = sqrt(mu)
///   abcd                a,b,c,d [,mu]   g(y) = y sqrt((1-mu a y^2)(1-mu c y^2)
///                                         / ((1+mu b y^2)(1+mu d y^2)))
///   bbm_kdv             p [,mu]         g(y) = y (1-(p+1/6)y^2)/(1-p y^2)
///   ostrovsky           b               g(y) = 1/y - b y^3
///   reduced_ostrovsky                   g(y) = 1/y
///   ilw                 [rho]           g(y) = y^2 coth y - y, delta = rho
///   power               alpha           g(y) = y^{alpha+2}
/// All kinds accept series_threshold to move the near-zero series switch.
PhaseModel make_model(ModelKind kind,
                      const std::map<std::string, double>& params = {});

struct AsymptoticFitOptions {
    double y_lo = 0.0;  // 0: automatic per end
    double y_hi = 0.0;
    int points = 33;
};

class FitError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Least-squares power-law fit of g^{(p)} at an end of the domain, on a
/// log-log grid over [y_lo, y_hi]. For p = 1 the finite limit ell is
/// estimated first (three-point differencing) and subtracted. Sign changes
/// of g^{(p)} over the window raise FitError.
AsymptoticDescriptor fit_asymptotic(const PhaseModel& model, End end, int p,
                                    const AsymptoticFitOptions& opts = {});

}  // namespace displab
