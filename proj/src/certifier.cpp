#include "expblowup/certifier.hpp"

#include "expblowup/errors.hpp"

#include <chrono>
#include <cmath>
#include <limits>

namespace expblowup {

bool same_result(const BlowupCertificate& a, const BlowupCertificate& b)
{
    BlowupCertificate bb = b;
    bb.wall_time_sec = a.wall_time_sec;
    return a == bb;
}

bool trap_check(const LyapunovDomain& dom, const AugmentedState& a)
{
    return lyapunov_value(a.c).hi() < dom.epsilon && a.c.s.lo() > 0.0;
}

double tail_bound(const LyapunovDomain& dom, int m, double l_up)
{
    if (!(l_up > 0.0)) {
        throw DomainError("tail_bound: L upper bound must be positive");
    }
    if (m < 1) {
        throw DomainError("tail_bound: m must be positive");
    }
    if (!(dom.c > 0.0)) {
        throw DomainError("tail_bound: decay constant must be positive");
    }
    // exp(-1 / l^{m/2}) is increasing in l, so the exponent is bounded above.
    const Interval l(l_up);
    const Interval root = m % 2 == 0 ? pow(l, m / 2) : pow(sqrt(l), m);
    const Interval e = exp(-recip(root));
    const Interval factor = Interval(2.0) / (Interval(dom.c) * Interval(static_cast<double>(m)));
    return (factor * e).hi();
}

void CertifyOptions::validate() const
{
    integrator.validate();
    if (epsilon_target && (!(*epsilon_target > 0.0) || *epsilon_target > 1.0)) {
        throw DomainError("epsilon target must lie in (0, 1]");
    }
    if (!(tail_target > 0.0)) {
        throw DomainError("tail target must be positive");
    }
    if (!(trap_margin > 0.0) || trap_margin > 1.0) {
        throw DomainError("trap margin must lie in (0, 1]");
    }
}

CertifiedRun certify_run(const ProblemParams& p, const PhysState& u0, const CertifyOptions& opts)
{
    opts.validate();
    const auto start = std::chrono::steady_clock::now();

    const CompactState origin{Interval(0.0), IntervalVector(p.x_count(), Interval(0.0))};
    for (const auto& f : desing_field(p, origin)) {
        if (!f.contains(0.0)) {
            throw ValidationFailure("the origin of the compactified system is not an equilibrium");
        }
    }

    const LyapunovDomain domain = find_domain(p, opts.epsilon_target.value_or(0.25), opts.validation);
    const double trap_level = opts.trap_margin * domain.epsilon;

    const BlowupSystem system(p);
    const ValidatedIntegrator integrator(system, opts.integrator);
    const AugmentedState a0{compactify(p, u0), Interval(0.0)};

    auto trapped = [&](const EnclosureStep& step) {
        const AugmentedState a = to_augmented(p, step.state);
        if (!(a.c.s.lo() > 0.0)) {
            return false;
        }
        const double l_up = lyapunov_value(a.c).hi();
        return l_up < trap_level && trap_check(domain, a) && tail_bound(domain, p.m(), l_up) <= opts.tail_target;
    };
    std::vector<EnclosureStep> trajectory = integrator.integrate(to_vector(a0), StopCondition::when(trapped));

    const EnclosureStep& last = trajectory.back();
    const AugmentedState end = to_augmented(p, last.state);

    BlowupCertificate cert{p};
    cert.epsilon = domain.epsilon;
    cert.c = domain.c;
    cert.tau_bar = last.tau.hi();
    cert.t_bar = end.t;
    cert.l_at_tau_bar = lyapunov_value(end.c);
    cert.tail = tail_bound(domain, p.m(), cert.l_at_tau_bar.hi());
    cert.t_max = Interval(end.t.lo(), rounding::add_up(end.t.hi(), cert.tail));
    cert.steps_taken = static_cast<long>(trajectory.size());
    cert.wall_time_sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {cert, domain, std::move(trajectory)};
}

BlowupCertificate certify_blowup(const ProblemParams& p, const PhysState& u0, const CertifyOptions& opts)
{
    return certify_run(p, u0, opts).certificate;
}

namespace {

constexpr std::size_t kMinPoints = 10;
constexpr double kHorizonGuard = 1e-10;

} // namespace

RateFit rate_diagnostic(const BlowupCertificate& cert, const std::vector<EnclosureStep>& trajectory)
{
    const double T = cert.t_max.mid();
    const int m = cert.params.m();

    std::vector<double> u;
    std::vector<double> g;
    for (const auto& step : trajectory) {
        const double s_lo = step.state[0].lo();
        const double t = step.state[step.state.size() - 1].mid();
        const double gap = T - t;
        if (!(s_lo > 0.0) || !(gap > kHorizonGuard * T) || !(gap < 1.0)) {
            continue;
        }
        u.push_back(1.0 / step.state[0].mid());
        g.push_back(std::pow(std::log(1.0 / gap), 1.0 / m));
    }
    if (u.size() < kMinPoints) {
        throw InsufficientData("rate_diagnostic needs at least 10 usable steps, found " + std::to_string(u.size()));
    }

    // Final tenth of the usable steps, but never fewer than the minimum.
    const std::size_t window = std::max(kMinPoints, u.size() / 10);
    const std::size_t first = u.size() - window;

    double gg = 0.0;
    double gu = 0.0;
    for (std::size_t i = first; i < u.size(); ++i) {
        gg += g[i] * g[i];
        gu += g[i] * u[i];
    }
    if (!(gg > 0.0)) {
        throw InsufficientData("rate_diagnostic: degenerate time data");
    }
    const double C = gu / gg;

    double sq = 0.0;
    for (std::size_t i = first; i < u.size(); ++i) {
        const double rel = (C * g[i] - u[i]) / u[i];
        sq += rel * rel;
    }
    return {C, std::sqrt(sq / static_cast<double>(window)), window};
}

} // namespace expblowup
