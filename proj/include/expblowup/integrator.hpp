#pragma once

#include "expblowup/interval.hpp"
#include "expblowup/interval_linalg.hpp"
#include "expblowup/problem.hpp"
#include "expblowup/taylor.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace expblowup {

/// Autonomous system y' = F(y) as seen by the validated integrator.
class OdeSystem {
public:
    virtual ~OdeSystem() = default;

    [[nodiscard]] virtual std::size_t dim() const = 0;
    /// Enclosure of F over a box; may throw DomainError outside its domain.
    [[nodiscard]] virtual IntervalVector field(const IntervalVector& y) const = 0;
    /// Recording of F used for Taylor coefficients.
    [[nodiscard]] virtual const taylor::Tape& tape() const = 0;
    /// Whether the Taylor recurrences may be evaluated on `box`.
    [[nodiscard]] virtual bool taylor_admissible(const IntervalVector& /*box*/) const { return true; }
    /// Description of a state-invariant breach on `box`, if any.
    [[nodiscard]] virtual std::optional<std::string> invariant_violation(const IntervalVector& /*box*/) const
    {
        return std::nullopt;
    }
};

/// y' = A y with a constant point matrix; used as model problem.
class LinearSystem final : public OdeSystem {
public:
    /// `a` is row-major, dim x dim.
    LinearSystem(std::size_t dim, std::vector<double> a);

    [[nodiscard]] std::size_t dim() const override { return dim_; }
    [[nodiscard]] IntervalVector field(const IntervalVector& y) const override;
    [[nodiscard]] const taylor::Tape& tape() const override { return tape_; }

private:
    std::size_t dim_;
    IntervalMatrix a_;
    taylor::Tape tape_;
};

/// Physical time t (dt/dtau = h_{1,1;m}(s)) appended to the compactified state.
struct AugmentedState {
    CompactState c;
    Interval t;
};

/// [s, x..., t]
IntervalVector to_vector(const AugmentedState& a);
AugmentedState to_augmented(const ProblemParams& p, const IntervalVector& v);

/**
 * Desingularized field augmented with physical time, state [s, x..., t].
 * On s < 0 the field uses the C^1 extension h = 0, which keeps a priori
 * boxes around the horizon well defined.
 */
class BlowupSystem final : public OdeSystem {
public:
    explicit BlowupSystem(ProblemParams params);

    [[nodiscard]] const ProblemParams& params() const noexcept { return params_; }
    [[nodiscard]] std::size_t dim() const override { return params_.compact_dim() + 1; }
    [[nodiscard]] IntervalVector field(const IntervalVector& y) const override;
    [[nodiscard]] const taylor::Tape& tape() const override { return tape_; }
    /// The Taylor recurrences divide by s, so s must stay positive.
    [[nodiscard]] bool taylor_admissible(const IntervalVector& box) const override;
    /// Reports x_i > 1.
    [[nodiscard]] std::optional<std::string> invariant_violation(const IntervalVector& box) const override;

private:
    ProblemParams params_;
    taylor::Tape tape_;
};

struct IntegratorOptions {
    int order = 10;              ///< Taylor order, >= 2
    double h0 = 1e-2;            ///< first step
    double hmin = 1e-8;          ///< smallest step tried before giving up
    double tube_inflation = 1.1; ///< a priori box inflation factor, > 1
    long max_steps = 1'000'000;
    double tolerance = 1e-18;    ///< target size of the last Taylor term per step
    int max_halvings = 30;

    /// Throws DomainError on invalid settings.
    void validate() const;
};

/// One accepted step: `state` encloses the solution at tau.hi, `tube`
/// encloses it over all of tau.
struct EnclosureStep {
    Interval tau;
    double h = 0.0; ///< step length (midpoint for the closing step of a fixed-tau run)
    IntervalVector state;
    IntervalVector tube;
};

/// Stops at a fixed tau and/or when a predicate on the latest step holds.
struct StopCondition {
    std::optional<double> tau_end;
    std::function<bool(const EnclosureStep&)> predicate;

    static StopCondition at_tau(double tau) { return {tau, {}}; }
    static StopCondition when(std::function<bool(const EnclosureStep&)> pred) { return {std::nullopt, std::move(pred)}; }
};

/**
 * Interval Taylor integrator with a mean-value (Lohner) form.
 *
 * The solution set is carried as c + B r with a point centre c, a point
 * basis B re-orthogonalised by QR every step and an interval vector r
 * around zero. Each step:
 *   1. finds a box T with y0 + [0,h] F(T) inside T (a priori enclosure),
 *   2. propagates the centre with the order-p Taylor polynomial,
 *   3. adds the Lagrange remainder y_{p+1}(T) h^{p+1},
 *   4. maps the spread with the Jacobian of the Taylor polynomial over
 *      the current box, obtained by differentiating the recurrences.
 * If the Taylor recurrences are not admissible on T, the step falls back to
 * y(h) in y0 + h F(T).
 */
class ValidatedIntegrator {
public:
    /// Carried solution set.
    struct SetState {
        std::vector<double> center;
        std::vector<double> basis; ///< row-major dim x dim
        IntervalVector spread;     ///< r
        IntervalVector box;        ///< enclosure of c + B r
    };

    ValidatedIntegrator(const OdeSystem& system, IntegratorOptions opts);

    [[nodiscard]] const IntegratorOptions& options() const noexcept { return opts_; }

    /// Box T with x + [0,h] F(T) inside T. Throws StepFailure if none is found.
    [[nodiscard]] IntervalVector apriori_enclosure(const IntervalVector& x, double h) const;

    [[nodiscard]] static SetState make_set(const IntervalVector& box);

    /// One step of exactly h from `set` (updated in place) starting at `tau`.
    EnclosureStep step(SetState& set, const Interval& tau, double h) const;

    /// Suggested step from the Taylor coefficients at the centre of `set`.
    [[nodiscard]] double suggest_step(const SetState& set) const;

    /**
     * Adaptive integration from y0 until `stop` fires. Throws
     * BudgetExhausted after max_steps, StepFailure when a step cannot be
     * completed and ReframeNeeded when the failure comes from an invariant
     * breach of the system.
     */
    [[nodiscard]] std::vector<EnclosureStep> integrate(const IntervalVector& y0, const StopCondition& stop) const;

private:
    IntervalVector apriori_span(const IntervalVector& x, const Interval& span) const;
    EnclosureStep step_span(SetState& set, const Interval& tau, const Interval& h) const;

    const OdeSystem& system_;
    IntegratorOptions opts_;
};

// Blow-up-specific entry points on the augmented state.

AugmentedState apriori_enclosure(const ProblemParams& p, const AugmentedState& a, double h,
                                 const IntegratorOptions& opts = {});
EnclosureStep step(const ProblemParams& p, const AugmentedState& a, double h, const IntegratorOptions& opts = {});
std::vector<EnclosureStep> integrate(const ProblemParams& p, const AugmentedState& a0, const StopCondition& stop,
                                     const IntegratorOptions& opts = {});

} // namespace expblowup
