#pragma once

#include "expblowup/integrator.hpp"
#include "expblowup/interval.hpp"
#include "expblowup/lyapunov.hpp"
#include "expblowup/problem.hpp"

#include <optional>
#include <vector>

namespace expblowup {

struct BlowupCertificate {
    ProblemParams params;
    double epsilon = 0.0;
    double c = 0.0;
    double tau_bar = 0.0;
    Interval t_bar;
    double tail = 0.0;
    Interval t_max;
    long steps_taken = 0;
    Interval l_at_tau_bar;
    double wall_time_sec = 0.0;

    friend bool operator==(const BlowupCertificate&, const BlowupCertificate&) = default;
};

/// Same certificate up to wall time.
bool same_result(const BlowupCertificate& a, const BlowupCertificate& b);

/// L(a.c).hi < epsilon and s.lo > 0.
bool trap_check(const LyapunovDomain& dom, const AugmentedState& a);

/// Upper bound of the physical time left after the trajectory is trapped
/// with L <= l_up: (2 / (c m)) exp(-1 / l_up^{m/2}).
double tail_bound(const LyapunovDomain& dom, int m, double l_up);

struct CertifyOptions {
    IntegratorOptions integrator;
    std::optional<double> epsilon_target; ///< default 0.25
    double tail_target = 1e-100;          ///< keep integrating until the tail is this small
    double trap_margin = 0.9;             ///< stop only once L < trap_margin * epsilon
    ValidationOptions validation;

    void validate() const;
};

struct CertifiedRun {
    BlowupCertificate certificate;
    LyapunovDomain domain;
    std::vector<EnclosureStep> trajectory;
};

/**
 * Encloses the blow-up time of the solution starting at u0: validates a
 * Lyapunov domain around the origin of the compactified system, integrates
 * until the enclosure is trapped in it and adds the tail bound.
 */
CertifiedRun certify_run(const ProblemParams& p, const PhysState& u0, const CertifyOptions& opts = {});
BlowupCertificate certify_blowup(const ProblemParams& p, const PhysState& u0, const CertifyOptions& opts = {});

struct RateFit {
    double C = 0.0;
    double residual = 0.0; ///< relative RMS
    std::size_t points = 0;
};

/**
 * Least-squares fit of u_{n/2} = 1/s against C [ln(1/(T - t))]^{1/m}, with T
 * the midpoint of the certified blow-up time. Not rigorous.
 */
RateFit rate_diagnostic(const BlowupCertificate& cert, const std::vector<EnclosureStep>& trajectory);

} // namespace expblowup
