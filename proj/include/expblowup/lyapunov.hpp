#pragma once

#include "expblowup/interval.hpp"
#include "expblowup/problem.hpp"

namespace expblowup {

/// Box s in [0, s_max], |x_i| <= x_radius for every x component.
struct CandidateBox {
    double s_max = 0.0;
    double x_radius = 0.0;

    [[nodiscard]] Interval s_range() const { return {0.0, s_max}; }
    friend bool operator==(const CandidateBox&, const CandidateBox&) = default;
};

/// Box on which dL/dtau <= -c L holds, together with a sublevel epsilon of
/// L that stays inside the box.
struct LyapunovDomain {
    CandidateBox box;
    double epsilon = 0.0;
    double c = 0.0;

    friend bool operator==(const LyapunovDomain&, const LyapunovDomain&) = default;
};

/// s^2 + sum x_i^2
Interval lyapunov_value(const CompactState& c);

struct ValidationOptions {
    int s_pieces = 64;          ///< subdivisions of [0, s_max]
    double epsilon_margin = 0.9;
};

/**
 * Certifies that A = J^T + J is negative definite on the whole box, J being
 * the Jacobian of the desingularized field. On each s piece the bound is
 * the best Gershgorin estimate of D^{-1} A D over diagonal weights
 * D = diag(w, 1, ..., 1), which has the same spectrum as A.
 * Throws ValidationFailure if some disc reaches 0.
 */
LyapunovDomain validate_domain(const ProblemParams& p, const CandidateBox& box, const ValidationOptions& opts = {});

/// Upper bound of the largest eigenvalue of A over the box (negative on success,
/// +inf where the Jacobian is unbounded).
double gershgorin_bound(const ProblemParams& p, const CandidateBox& box, const ValidationOptions& opts = {});

/**
 * Shrinks the square box of side sqrt(epsilon_target)/0.9 by 0.7 until it
 * validates, at most 60 times. Requires 0 < epsilon_target <= 1.
 */
LyapunovDomain find_domain(const ProblemParams& p, double epsilon_target, const ValidationOptions& opts = {});

} // namespace expblowup
