#include "expblowup/integrator.hpp"

#include "expblowup/errors.hpp"
#include "expblowup/safe_h.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace expblowup {

using taylor::Dual;
using taylor::Expr;

// ---------------------------------------------------------------------------
// Systems

LinearSystem::LinearSystem(std::size_t dim, std::vector<double> a)
    : dim_(dim), a_(IntervalMatrix::from_points(dim, dim, a)), tape_(dim)
{
    std::vector<int> outputs;
    for (std::size_t i = 0; i < dim; ++i) {
        int acc = tape_.constant(Interval(0.0));
        for (std::size_t j = 0; j < dim; ++j) {
            if (a[i * dim + j] != 0.0) {
                acc = tape_.add(acc, tape_.scale(Interval(a[i * dim + j]), tape_.variable(j)));
            }
        }
        outputs.push_back(acc);
    }
    tape_.set_outputs(std::move(outputs));
}

IntervalVector LinearSystem::field(const IntervalVector& y) const { return a_ * y; }

IntervalVector to_vector(const AugmentedState& a)
{
    IntervalVector v(a.c.x.size() + 2);
    v[0] = a.c.s;
    for (std::size_t i = 0; i < a.c.x.size(); ++i) {
        v[i + 1] = a.c.x[i];
    }
    v[v.size() - 1] = a.t;
    return v;
}

AugmentedState to_augmented(const ProblemParams& p, const IntervalVector& v)
{
    if (v.size() != p.compact_dim() + 1) {
        throw DimensionError("augmented state must have n components");
    }
    return {unpack(p, v), v[v.size() - 1]};
}

namespace {

taylor::Tape record_blowup_field(const ProblemParams& p)
{
    const std::size_t dim = p.compact_dim() + 1;
    taylor::Tape tape(dim);
    const int m = p.m();
    const Interval& lambda = p.lambda();
    const Interval n2 = p.n_squared();

    const Expr one(tape, tape.constant(Interval(1.0)));
    const Expr zero(tape, tape.constant(Interval(0.0)));
    const Expr s(tape, tape.variable(0));

    auto node = [&](int j) -> Expr {
        if (j == p.center()) {
            return one;
        }
        if (j <= 0 || j >= p.n()) {
            return zero;
        }
        return {tape, tape.variable(p.x_slot(j) + 1)};
    };
    auto laplacian = [&](int i) { return n2 * (node(i - 1) - Interval(2.0) * node(i) + node(i + 1)); };

    const Expr inv_s = recip(s);
    const Expr inv_sm = pow(inv_s, m);
    const Expr decay = exp(-inv_sm);  // exp(-1/s^m)
    const Expr h1 = inv_s * decay;    // s^{-1} exp(-1/s^m)
    const Expr lap_c = laplacian(p.center());

    std::vector<int> outputs;
    outputs.push_back((-(decay * lap_c) - lambda * s).id());
    for (std::size_t slot = 0; slot < p.x_count(); ++slot) {
        const int i = p.grid_node(slot);
        const Expr x = node(i);
        // lambda exp(-(1 - x^m)/s^m)
        const Expr source = lambda * exp((pow(x, m) - one) * inv_sm);
        outputs.push_back((-(x * h1 * lap_c) - lambda * x + h1 * laplacian(i) + source).id());
    }
    outputs.push_back(h1.id());
    tape.set_outputs(std::move(outputs));
    return tape;
}

} // namespace

BlowupSystem::BlowupSystem(ProblemParams params) : params_(params), tape_(record_blowup_field(params_)) {}

IntervalVector BlowupSystem::field(const IntervalVector& y) const
{
    const AugmentedState a = to_augmented(params_, y);
    const IntervalVector f = desing_field(params_, a.c);
    IntervalVector out(dim());
    for (std::size_t i = 0; i < f.size(); ++i) {
        out[i] = f[i];
    }
    const Interval s_plus(std::max(a.c.s.lo(), 0.0), std::max(a.c.s.hi(), 0.0));
    out[dim() - 1] = safe_h(HParams{1, Interval(1.0), params_.m()}, s_plus);
    return out;
}

bool BlowupSystem::taylor_admissible(const IntervalVector& box) const { return box[0].lo() > 0.0; }

std::optional<std::string> BlowupSystem::invariant_violation(const IntervalVector& box) const
{
    for (std::size_t slot = 0; slot < params_.x_count(); ++slot) {
        const Interval& x = box[slot + 1];
        if (x.hi() > 1.0 || (params_.m() % 2 == 0 && x.lo() < -1.0)) {
            return "x_" + std::to_string(params_.grid_node(slot)) + " enclosure leaves the admissible range x <= 1";
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Integrator

void IntegratorOptions::validate() const
{
    if (order < 2) {
        throw DomainError("integrator order must be at least 2");
    }
    if (!(hmin > 0.0)) {
        throw DomainError("hmin must be positive");
    }
    if (!(h0 >= hmin)) {
        throw DomainError("h0 must be at least hmin");
    }
    if (!(tube_inflation > 1.0)) {
        throw DomainError("tube_inflation must exceed 1");
    }
    if (max_steps < 0) {
        throw DomainError("max_steps must be nonnegative");
    }
    if (!(tolerance > 0.0)) {
        throw DomainError("tolerance must be positive");
    }
}

ValidatedIntegrator::ValidatedIntegrator(const OdeSystem& system, IntegratorOptions opts)
    : system_(system), opts_(opts)
{
    opts_.validate();
}

namespace {

constexpr double kTiny = std::numeric_limits<double>::min();
constexpr int kTubeIterations = 12;

Interval inflate(const Interval& x, double factor)
{
    const double m = x.mid();
    const double r = x.rad() * factor + 4.0 * std::numeric_limits<double>::epsilon() * std::abs(m) + kTiny;
    return {rounding::sub_down(m, r), rounding::add_up(m, r)};
}

IntervalMatrix point_matrix(std::size_t d, const std::vector<double>& rowmajor)
{
    return IntervalMatrix::from_points(d, d, rowmajor);
}

// Sum_k coeffs[k] h^k by Horner's rule.
IntervalVector horner(const std::vector<std::vector<Interval>>& coeffs, std::size_t top, const Interval& h)
{
    IntervalVector acc(coeffs[top]);
    for (std::size_t k = top; k-- > 0;) {
        acc = IntervalVector(coeffs[k]) + h * acc;
    }
    return acc;
}

// Enclosure of Q^{-1} for a numerically orthogonal point matrix Q.
std::optional<IntervalMatrix> orthogonal_inverse(const IntervalMatrix& q)
{
    const std::size_t d = q.rows();
    const IntervalMatrix qt = q.transpose();
    const IntervalMatrix e = qt * q - IntervalMatrix::identity(d);
    double eta = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            row = rounding::add_up(row, e(i, j).mag());
        }
        eta = std::max(eta, row);
    }
    if (!(eta < 0.5)) {
        return std::nullopt;
    }
    // (Q^T Q)^{-1} = I + G with |G_ij| <= ||G||_inf <= eta / (1 - eta).
    const double delta = rounding::div_up(eta, rounding::sub_down(1.0, eta));
    IntervalMatrix correction = IntervalMatrix::identity(d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            correction(i, j) += symmetric(delta);
        }
    }
    return correction * qt;
}

} // namespace

IntervalVector ValidatedIntegrator::apriori_enclosure(const IntervalVector& x, double h) const
{
    if (!(h > 0.0)) {
        throw DomainError("apriori_enclosure: step must be positive");
    }
    return apriori_span(x, Interval(0.0, h));
}

IntervalVector ValidatedIntegrator::apriori_span(const IntervalVector& x, const Interval& span) const
{
    if (x.size() != system_.dim()) {
        throw DimensionError("apriori_enclosure: state dimension mismatch");
    }
    try {
        IntervalVector trial = x + span * system_.field(x);
        for (int iter = 0; iter < kTubeIterations; ++iter) {
            IntervalVector inflated(trial.size());
            for (std::size_t i = 0; i < trial.size(); ++i) {
                inflated[i] = inflate(trial[i], opts_.tube_inflation);
            }
            if (auto breach = system_.invariant_violation(inflated)) {
                throw InvariantBreach("a priori enclosure: " + *breach);
            }
            const IntervalVector image = x + span * system_.field(inflated);
            if (inflated.contains(image)) {
                return image;
            }
            trial = image;
        }
    } catch (const DomainError& e) {
        throw StepFailure(std::string("a priori enclosure left the field domain: ") + e.what());
    }
    throw StepFailure("a priori enclosure not found for h = " + std::to_string(span.hi()));
}

ValidatedIntegrator::SetState ValidatedIntegrator::make_set(const IntervalVector& box)
{
    const std::size_t d = box.size();
    SetState set;
    set.center = box.mid();
    set.basis.assign(d * d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
        set.basis[i * d + i] = 1.0;
    }
    set.spread = box - IntervalVector::from_points(set.center);
    set.box = box;
    return set;
}

EnclosureStep ValidatedIntegrator::step(SetState& set, const Interval& tau, double h) const
{
    if (!(h > 0.0)) {
        throw DomainError("step: step length must be positive");
    }
    return step_span(set, tau, Interval(h));
}

// H may be a thin interval around the exact step length.
EnclosureStep ValidatedIntegrator::step_span(SetState& set, const Interval& tau, const Interval& H) const
{
    const std::size_t d = system_.dim();
    const int p = opts_.order;
    const IntervalVector center = IntervalVector::from_points(set.center);
    // The mean-value form needs the segment from the centre to every point.
    const IntervalVector domain = hull(set.box, center);

    const IntervalVector tube = apriori_span(domain, Interval(std::min(0.0, H.lo()), std::max(0.0, H.hi())));
    const Interval tau_next(tau.lo(), (tau + H).hi());

    if (!system_.taylor_admissible(tube)) {
        IntervalVector end = domain + H * system_.field(tube);
        end = intersect(end, tube);
        set = make_set(end);
        return {tau_next, H.mid(), end, tube};
    }

    const auto& tape = system_.tape();

    // Taylor polynomial through the centre plus the Lagrange remainder on the tube.
    const auto centre_coeffs = tape.solution_coefficients<Interval>(center.span(), p);
    const auto tube_coeffs = tape.solution_coefficients<Interval>(tube.span(), p + 1);
    const IntervalVector image = horner(centre_coeffs, static_cast<std::size_t>(p), H) +
                                 pow(H, p + 1) * IntervalVector(tube_coeffs[static_cast<std::size_t>(p) + 1]);

    // Jacobian of the Taylor polynomial over the current box.
    std::vector<Dual> seeds(d);
    for (std::size_t i = 0; i < d; ++i) {
        seeds[i].v = domain[i];
        seeds[i].g.assign(d, Interval(0.0));
        seeds[i].g[i] = Interval(1.0);
    }
    const auto dual_coeffs = tape.solution_coefficients<Dual>(std::span<const Dual>(seeds), p);
    IntervalMatrix jac(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            Interval acc = dual_coeffs[static_cast<std::size_t>(p)][i].g[j];
            for (std::size_t k = static_cast<std::size_t>(p); k-- > 0;) {
                acc = dual_coeffs[k][i].g[j] + H * acc;
            }
            jac(i, j) = acc;
        }
    }

    const IntervalMatrix propagated = jac * point_matrix(d, set.basis);
    const std::vector<double> new_center = image.mid();
    const IntervalVector offset = image - IntervalVector::from_points(new_center);
    const IntervalVector direct = IntervalVector::from_points(new_center) + propagated * set.spread + offset;

    // Re-orthogonalise: QR of the midpoint of the propagated basis, columns
    // ordered by their contribution to the spread.
    const std::vector<double> mid = propagated.mid();
    Eigen::MatrixXd a(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    std::vector<double> weight(d);
    for (std::size_t j = 0; j < d; ++j) {
        double norm = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = mid[i * d + j];
            norm += mid[i * d + j] * mid[i * d + j];
        }
        weight[j] = std::sqrt(norm) * set.spread[j].mag();
    }
    std::vector<std::size_t> perm(d);
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(), [&](std::size_t l, std::size_t r) { return weight[l] > weight[r]; });
    Eigen::MatrixXd ordered(a.rows(), a.cols());
    for (std::size_t j = 0; j < d; ++j) {
        ordered.col(static_cast<Eigen::Index>(j)) = a.col(static_cast<Eigen::Index>(perm[j]));
    }

    std::optional<IntervalMatrix> inverse;
    std::vector<double> basis(d * d);
    if (ordered.allFinite()) {
        const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(ordered).householderQ();
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                basis[i * d + j] = q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            }
        }
        inverse = orthogonal_inverse(point_matrix(d, basis));
    }

    IntervalVector end = intersect(direct, tube);
    if (inverse) {
        const IntervalVector spread = (*inverse * propagated) * set.spread + *inverse * offset;
        const IntervalVector recoordinated = IntervalVector::from_points(new_center) + point_matrix(d, basis) * spread;
        end = intersect(end, recoordinated);
        set.center = new_center;
        set.basis = std::move(basis);
        set.spread = spread;
        set.box = end;
    } else {
        set = make_set(end);
    }
    return {tau_next, H.mid(), end, tube};
}

double ValidatedIntegrator::suggest_step(const SetState& set) const
{
    const int p = opts_.order;
    const IntervalVector center = IntervalVector::from_points(set.center);
    const auto coeffs = system_.tape().solution_coefficients<Interval>(center.span(), p);
    double h = std::numeric_limits<double>::infinity();
    for (int k = p - 1; k <= p; ++k) {
        double norm = 0.0;
        for (const auto& c : coeffs[static_cast<std::size_t>(k)]) {
            norm = std::max(norm, c.mag());
        }
        if (norm > 0.0 && std::isfinite(norm)) {
            h = std::min(h, std::pow(opts_.tolerance / norm, 1.0 / k));
        }
    }
    return 0.9 * h;
}

std::vector<EnclosureStep> ValidatedIntegrator::integrate(const IntervalVector& y0, const StopCondition& stop) const
{
    if (y0.size() != system_.dim()) {
        throw DimensionError("integrate: initial value dimension mismatch");
    }
    if (stop.tau_end && !(*stop.tau_end > 0.0)) {
        throw DomainError("integrate: stop time must be positive");
    }

    std::vector<EnclosureStep> steps;
    SetState set = make_set(y0);
    Interval tau(0.0);
    double h_prev = 0.0;

    while (static_cast<long>(steps.size()) < opts_.max_steps) {
        double h = suggest_step(set);
        h = steps.empty() ? std::min(h, opts_.h0) : std::min(h, 2.0 * h_prev);
        h = std::max(h, opts_.hmin);
        bool final_step = false;
        if (stop.tau_end && *stop.tau_end - tau.lo() <= h) {
            h = *stop.tau_end - tau.lo();
            final_step = true;
        }

        EnclosureStep accepted;
        for (int halving = 0;; ++halving) {
            SetState trial = set;
            try {
                // The closing step covers the exact remaining time.
                accepted = final_step ? step_span(trial, tau, Interval(*stop.tau_end) - tau) : step(trial, tau, h);
                set = std::move(trial);
                break;
            } catch (const InvariantBreach& e) {
                if (halving >= opts_.max_halvings || h / 2.0 < opts_.hmin) {
                    throw ReframeNeeded(std::string("integration left the chart x_i <= 1: ") + e.what());
                }
            } catch (const StepFailure& e) {
                if (halving >= opts_.max_halvings || h / 2.0 < opts_.hmin) {
                    throw StepFailure(std::string("step failed at tau = ") + std::to_string(tau.mid()) + ": " +
                                      e.what());
                }
            }
            h /= 2.0;
            final_step = false;
        }

        if (auto breach = system_.invariant_violation(accepted.state)) {
            throw ReframeNeeded("integration left the chart: " + *breach);
        }

        tau = final_step ? Interval(*stop.tau_end) : tau + Interval(h);
        h_prev = h;
        steps.push_back(std::move(accepted));

        if (final_step) {
            return steps;
        }
        if (stop.predicate && stop.predicate(steps.back())) {
            return steps;
        }
    }
    throw BudgetExhausted("integration budget of " + std::to_string(opts_.max_steps) +
                          " steps exhausted before the stop condition fired");
}

// ---------------------------------------------------------------------------
// Blow-up entry points

AugmentedState apriori_enclosure(const ProblemParams& p, const AugmentedState& a, double h,
                                 const IntegratorOptions& opts)
{
    const BlowupSystem system(p);
    const ValidatedIntegrator integrator(system, opts);
    return to_augmented(p, integrator.apriori_enclosure(to_vector(a), h));
}

EnclosureStep step(const ProblemParams& p, const AugmentedState& a, double h, const IntegratorOptions& opts)
{
    const BlowupSystem system(p);
    const ValidatedIntegrator integrator(system, opts);
    auto set = ValidatedIntegrator::make_set(to_vector(a));
    return integrator.step(set, Interval(0.0), h);
}

std::vector<EnclosureStep> integrate(const ProblemParams& p, const AugmentedState& a0, const StopCondition& stop,
                                     const IntegratorOptions& opts)
{
    const BlowupSystem system(p);
    const ValidatedIntegrator integrator(system, opts);
    return integrator.integrate(to_vector(a0), stop);
}

} // namespace expblowup
