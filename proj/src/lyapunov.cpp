#include "expblowup/lyapunov.hpp"

#include "expblowup/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace expblowup {

Interval lyapunov_value(const CompactState& c)
{
    Interval l = sqr(c.s);
    for (const auto& x : c.x) {
        l += sqr(x);
    }
    return l;
}

namespace {

constexpr double kShrink = 0.7;
constexpr int kMaxShrinks = 60;
constexpr int kWeightSteps = 16;

// Largest Gershgorin disc edge of D^{-1} A D with D = diag(w, 1, ..., 1).
double weighted_disc_edge(const IntervalMatrix& a, double w)
{
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < a.rows(); ++r) {
        double edge = a(r, r).hi();
        for (std::size_t col = 0; col < a.cols(); ++col) {
            if (col == r) {
                continue;
            }
            double scale = 1.0;
            if (r == 0) {
                scale = rounding::div_up(1.0, w);
            } else if (col == 0) {
                scale = w;
            }
            edge = rounding::add_up(edge, rounding::mul_up(a(r, col).mag(), scale));
        }
        worst = std::max(worst, edge);
    }
    return worst;
}

void check_box(const CandidateBox& box)
{
    if (!(box.s_max > 0.0) || !(box.x_radius > 0.0)) {
        throw DomainError("candidate box needs s_max > 0 and x_radius > 0");
    }
    if (box.x_radius > 1.0) {
        throw DomainError("candidate box x_radius must not exceed 1");
    }
}

} // namespace

double gershgorin_bound(const ProblemParams& p, const CandidateBox& box, const ValidationOptions& opts)
{
    check_box(box);
    if (opts.s_pieces < 1) {
        throw DomainError("s_pieces must be positive");
    }
    const Interval x_range = symmetric(box.x_radius);
    const Interval width = Interval(box.s_max) / Interval(static_cast<double>(opts.s_pieces));

    double worst = -std::numeric_limits<double>::infinity();
    double s_lo = 0.0;
    for (int piece = 1; piece <= opts.s_pieces; ++piece) {
        const double s_hi = piece == opts.s_pieces ? box.s_max : (Interval(static_cast<double>(piece)) * width).hi();
        const CompactState region{Interval(s_lo, std::max(s_lo, s_hi)), IntervalVector(p.x_count(), x_range)};
        IntervalMatrix j;
        try {
            j = desing_jacobian(p, region);
        } catch (const SingularityError&) {
            return std::numeric_limits<double>::infinity();
        }
        const IntervalMatrix a = j.transpose() + j;
        double best = std::numeric_limits<double>::infinity();
        for (int k = -kWeightSteps; k <= kWeightSteps; ++k) {
            best = std::min(best, weighted_disc_edge(a, std::exp2(0.25 * k)));
        }
        worst = std::max(worst, best);
        s_lo = std::max(s_lo, s_hi);
    }
    return worst;
}

LyapunovDomain validate_domain(const ProblemParams& p, const CandidateBox& box, const ValidationOptions& opts)
{
    const double bound = gershgorin_bound(p, box, opts);
    if (!(bound < 0.0)) {
        throw ValidationFailure("Gershgorin bound " + std::to_string(bound) +
                                " is not negative on the candidate box");
    }
    const double side = std::min(box.s_max, box.x_radius);
    const double eps = std::min(1.0, rounding::mul_down(opts.epsilon_margin, rounding::mul_down(side, side)));
    return {box, eps, -bound};
}

LyapunovDomain find_domain(const ProblemParams& p, double epsilon_target, const ValidationOptions& opts)
{
    if (!(epsilon_target > 0.0) || epsilon_target > 1.0) {
        throw DomainError("epsilon target must lie in (0, 1]");
    }
    double side = std::sqrt(epsilon_target) / 0.9;
    std::string last;
    for (int attempt = 0; attempt <= kMaxShrinks; ++attempt, side *= kShrink) {
        const CandidateBox box{side, std::min(side, 1.0)};
        try {
            return validate_domain(p, box, opts);
        } catch (const ValidationFailure& e) {
            last = e.what();
        }
    }
    throw ValidationFailure("no Lyapunov domain found below epsilon target " + std::to_string(epsilon_target) +
                            ": " + last);
}

} // namespace expblowup
