#pragma once

#include <iosfwd>
#include <string_view>

namespace expblowup {

/// Directed-rounding primitives. Each result is the exact result rounded
/// toward -inf (`*_down`) or +inf (`*_up`). Exactness is detected with
/// error-free transformations, so the FPU rounding mode is never touched.
namespace rounding {

double add_down(double a, double b);
double add_up(double a, double b);
double sub_down(double a, double b);
double sub_up(double a, double b);
double mul_down(double a, double b);
double mul_up(double a, double b);
double div_down(double a, double b);
double div_up(double a, double b);
double sqrt_down(double a);
double sqrt_up(double a);

/// Moves `x` by `ulps` representable numbers toward -inf / +inf.
double widen_down(double x, int ulps);
double widen_up(double x, int ulps);

} // namespace rounding

/**
 * Closed interval [lo, hi] of doubles used as a guaranteed enclosure of a
 * real number.
 *
 * All arithmetic rounds outward, so for every x in X and y in Y the exact
 * x o y lies in X o Y. Infinite endpoints are allowed and represent
 * overflow; NaN endpoints are rejected.
 */
class Interval {
public:
    constexpr Interval() noexcept = default;

    /// Degenerate interval [v, v].
    Interval(double v); // NOLINT(google-explicit-constructor)

    /// Throws DomainError when lo > hi or either endpoint is NaN.
    Interval(double lo, double hi);

    [[nodiscard]] double lo() const noexcept { return lo_; }
    [[nodiscard]] double hi() const noexcept { return hi_; }

    [[nodiscard]] double mid() const noexcept;
    [[nodiscard]] double width() const noexcept { return hi_ - lo_; }
    /// Upper bound of the radius.
    [[nodiscard]] double rad() const noexcept;
    /// max |x| over the interval.
    [[nodiscard]] double mag() const noexcept;
    /// min |x| over the interval.
    [[nodiscard]] double mig() const noexcept;

    [[nodiscard]] bool is_point() const noexcept { return lo_ == hi_; }
    [[nodiscard]] bool contains(double x) const noexcept { return lo_ <= x && x <= hi_; }
    [[nodiscard]] bool contains(const Interval& o) const noexcept
    {
        return lo_ <= o.lo_ && o.hi_ <= hi_;
    }
    /// True when `o` lies in the interior of this interval.
    [[nodiscard]] bool interior_contains(const Interval& o) const noexcept
    {
        return lo_ < o.lo_ && o.hi_ < hi_;
    }
    [[nodiscard]] bool contains_zero() const noexcept { return lo_ <= 0.0 && 0.0 <= hi_; }

    Interval& operator+=(const Interval& o);
    Interval& operator-=(const Interval& o);
    Interval& operator*=(const Interval& o);
    Interval& operator/=(const Interval& o);

    friend bool operator==(const Interval&, const Interval&) = default;

private:
    double lo_ = 0.0;
    double hi_ = 0.0;
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
/// Throws DomainError when 0 lies in `b`.
Interval operator/(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);

Interval hull(const Interval& a, const Interval& b);
/// Throws DomainError when the intersection is empty.
Interval intersect(const Interval& a, const Interval& b);

[[nodiscard]] inline bool overlaps(const Interval& a, const Interval& b) noexcept
{
    return a.lo() <= b.hi() && b.lo() <= a.hi();
}
/// Symmetric interval [-r, r].
Interval symmetric(double r);

Interval exp(const Interval& a);
/// Natural logarithm; the argument must be nonnegative (log 0 = -inf).
Interval log(const Interval& a);
Interval sqrt(const Interval& a);
Interval sqr(const Interval& a);
Interval pow(const Interval& a, int k);
Interval recip(const Interval& a);
Interval abs(const Interval& a);

/// Tightest enclosure of a decimal literal (one ulp wide unless the
/// literal is exactly representable). Throws InputError on bad syntax.
Interval parse_decimal(std::string_view text);

std::ostream& operator<<(std::ostream& os, const Interval& x);

} // namespace expblowup
