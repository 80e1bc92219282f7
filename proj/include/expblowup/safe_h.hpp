#pragma once

#include "expblowup/interval.hpp"

namespace expblowup {

/// Parameters of h_{k,alpha;m}(s) = s^{-k} exp(-alpha / s^m).
struct HParams {
    int k = 0;             ///< power index, k >= 0
    Interval alpha{1.0};   ///< exponent weight, alpha.lo >= 0
    int m = 1;             ///< exponent of s in the exponential, m >= 1
};

/**
 * Enclosure of {t^{-k} exp(-a / t^m) : t in s, a in alpha}, using the
 * continuous extension h(0) = 0 when alpha > 0.
 *
 * For fixed alpha the function is unimodal in s: increasing on
 * (0, (m alpha / k)^{1/m}) and decreasing beyond, and it is decreasing in
 * alpha. The enclosure is therefore assembled from endpoint values only
 * (plus the closed-form maximum when s straddles the turning point), and the
 * formula is never evaluated at s = 0. Point values are computed in
 * logarithmic form so that s^{-k} overflow and exp underflow cannot meet.
 *
 * Throws DomainError when alpha.lo < 0, s.lo < 0 or m < 1, and
 * SingularityError when k > 0, alpha may vanish and 0 lies in s.
 */
Interval safe_h(const HParams& p, const Interval& s);

/**
 * Enclosure of d/ds h_{k,alpha;m}(s) over s, evaluated through the
 * division-free identity m alpha h_{k+m+1,alpha;m} - k h_{k+1,alpha;m}.
 */
Interval safe_h_deriv(const HParams& p, const Interval& s);

} // namespace expblowup
