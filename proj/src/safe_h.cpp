#include "expblowup/safe_h.hpp"

#include "expblowup/errors.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace expblowup {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_params(const HParams& p, const Interval& s)
{
    if (p.k < 0 || p.m < 1) {
        throw DomainError("h_{k,alpha;m}: need k >= 0 and m >= 1 (k=" + std::to_string(p.k) +
                          ", m=" + std::to_string(p.m) + ")");
    }
    if (p.alpha.lo() < 0.0) {
        throw DomainError("h_{k,alpha;m}: negative alpha");
    }
    if (s.lo() < 0.0) {
        throw DomainError("h_{k,alpha;m}: negative s");
    }
}

// Enclosure of h at a point s >= 0 and a point alpha > 0.
Interval point_value(double s, double alpha, int k, int m)
{
    if (s == 0.0) {
        return {0.0};
    }
    const Interval S(s);
    const Interval P = pow(S, m);
    // alpha / s^m; s^m > 0 exactly, so an underflowed lower endpoint only
    // means the quotient is unbounded above.
    const Interval Q(rounding::div_down(alpha, P.hi()),
                     P.lo() > 0.0 ? rounding::div_up(alpha, P.lo()) : kInf);
    const Interval E = Interval(-static_cast<double>(k)) * log(S) - Q;
    return exp(E);
}

// Upper bound of max_{s > 0} h_{k,alpha;m}(s) = (m alpha/k)^{-k/m} e^{-k/m}.
double peak_upper(double alpha, int k, int m)
{
    const Interval ratio = Interval(static_cast<double>(m)) * Interval(alpha) / Interval(static_cast<double>(k));
    const Interval expo = Interval(-static_cast<double>(k)) / Interval(static_cast<double>(m)) * (log(ratio) + Interval(1.0));
    return exp(expo).hi();
}

// Enclosure of the turning point (m alpha / k)^{1/m}.
Interval turning_point(double alpha, int k, int m)
{
    const Interval ratio = Interval(static_cast<double>(m)) * Interval(alpha) / Interval(static_cast<double>(k));
    if (m == 1) {
        return ratio;
    }
    if (m == 2) {
        return sqrt(ratio);
    }
    return exp(log(ratio) / Interval(static_cast<double>(m)));
}

} // namespace

Interval safe_h(const HParams& p, const Interval& s)
{
    check_params(p, s);
    const int k = p.k;
    const int m = p.m;

    if (p.alpha.hi() == 0.0) {
        if (k == 0) {
            return {1.0};
        }
        if (s.lo() == 0.0) {
            throw SingularityError("h_{k,0;m}(s) = s^{-k} is unbounded at s = 0");
        }
        return pow(recip(s), k);
    }
    if (k > 0 && p.alpha.lo() == 0.0 && s.lo() == 0.0) {
        throw SingularityError("h_{k,alpha;m}(s) is unbounded near s = 0 when alpha may vanish");
    }

    // Upper endpoint: smallest alpha, maximising s.
    const double a_lo = p.alpha.lo();
    double upper = 0.0;
    if (a_lo == 0.0) {
        // k == 0 here (k > 0 with s.lo == 0 was rejected above); h <= 1 or s^{-k}.
        upper = k == 0 ? 1.0 : pow(recip(Interval(s.lo())), k).hi();
    } else if (k == 0) {
        upper = point_value(s.hi(), a_lo, k, m).hi();
    } else {
        const Interval turn = turning_point(a_lo, k, m);
        if (s.hi() <= turn.lo()) {
            upper = point_value(s.hi(), a_lo, k, m).hi();
        } else if (s.lo() >= turn.hi()) {
            upper = point_value(s.lo(), a_lo, k, m).hi();
        } else {
            upper = peak_upper(a_lo, k, m);
        }
    }

    // Lower endpoint: largest alpha; unimodality puts the minimum at an end.
    const double a_hi = p.alpha.hi();
    double lower = 0.0;
    if (s.lo() > 0.0) {
        lower = point_value(s.lo(), a_hi, k, m).lo();
        if (k > 0) {
            lower = std::min(lower, point_value(s.hi(), a_hi, k, m).lo());
        }
    }
    lower = std::max(lower, 0.0);
    return {std::min(lower, upper), upper};
}

Interval safe_h_deriv(const HParams& p, const Interval& s)
{
    check_params(p, s);
    const Interval grow = Interval(static_cast<double>(p.m)) * p.alpha *
                          safe_h(HParams{p.k + p.m + 1, p.alpha, p.m}, s);
    if (p.k == 0) {
        return grow;
    }
    const Interval d = grow - Interval(static_cast<double>(p.k)) * safe_h(HParams{p.k + 1, p.alpha, p.m}, s);
    if (p.alpha.lo() == 0.0) {
        return d;
    }
    // h increases below the turning point and decreases above it.
    if (s.hi() < turning_point(p.alpha.lo(), p.k, p.m).lo()) {
        return {std::max(d.lo(), 0.0), std::max(d.hi(), 0.0)};
    }
    if (s.lo() > turning_point(p.alpha.hi(), p.k, p.m).hi()) {
        return {std::min(d.lo(), 0.0), std::min(d.hi(), 0.0)};
    }
    return d;
}

} // namespace expblowup
