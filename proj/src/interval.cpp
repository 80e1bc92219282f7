#include "expblowup/interval.hpp"

#include "expblowup/errors.hpp"

#include <algorithm>
#include <cerrno>
#include <cfenv>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <string>

namespace expblowup {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMax = std::numeric_limits<double>::max();
// Below this magnitude the fma residual of a product or quotient may be
// inexact (gradual underflow), so exactness is not trusted there.
constexpr double kTinyResult = 1e-280;
// glibc exp/log are accurate to within one ulp; two is kept as slack.
constexpr int kTranscendentalUlps = 2;

double next_down(double x) { return std::nextafter(x, -kInf); }
double next_up(double x) { return std::nextafter(x, kInf); }

// Overflow of a finite operation rounds to the largest finite double in
// the direction opposite to the overflow.
double overflow_down(double r) { return r == kInf ? kMax : r; }
double overflow_up(double r) { return r == -kInf ? -kMax : r; }

double two_sum_err(double a, double b, double s)
{
    const double bb = s - a;
    return (a - (s - bb)) + (b - bb);
}

} // namespace

namespace rounding {

double add_down(double a, double b)
{
    const double s = a + b;
    if (!std::isfinite(s)) {
        return std::isfinite(a) && std::isfinite(b) ? overflow_down(s) : s;
    }
    return two_sum_err(a, b, s) < 0.0 ? next_down(s) : s;
}

double add_up(double a, double b)
{
    const double s = a + b;
    if (!std::isfinite(s)) {
        return std::isfinite(a) && std::isfinite(b) ? overflow_up(s) : s;
    }
    return two_sum_err(a, b, s) > 0.0 ? next_up(s) : s;
}

double sub_down(double a, double b) { return add_down(a, -b); }
double sub_up(double a, double b) { return add_up(a, -b); }

double mul_down(double a, double b)
{
    if (a == 0.0 || b == 0.0) {
        return 0.0;
    }
    const double p = a * b;
    if (!std::isfinite(p)) {
        return std::isfinite(a) && std::isfinite(b) ? overflow_down(p) : p;
    }
    if (std::abs(p) < kTinyResult) {
        return next_down(p);
    }
    return std::fma(a, b, -p) < 0.0 ? next_down(p) : p;
}

double mul_up(double a, double b)
{
    if (a == 0.0 || b == 0.0) {
        return 0.0;
    }
    const double p = a * b;
    if (!std::isfinite(p)) {
        return std::isfinite(a) && std::isfinite(b) ? overflow_up(p) : p;
    }
    if (std::abs(p) < kTinyResult) {
        return next_up(p);
    }
    return std::fma(a, b, -p) > 0.0 ? next_up(p) : p;
}

namespace {

// Sign of (exact a/b) - q, or 2 when exactness cannot be decided.
int quotient_residual_sign(double a, double b, double q)
{
    if (std::isinf(b) || std::isinf(a)) {
        return 0;
    }
    if (std::abs(q) < kTinyResult || std::abs(a) < kTinyResult) {
        return 2;
    }
    const double r = std::fma(-q, b, a);
    if (r == 0.0) {
        return 0;
    }
    return (r > 0.0) == (b > 0.0) ? 1 : -1;
}

} // namespace

double div_down(double a, double b)
{
    if (a == 0.0) {
        return 0.0;
    }
    const double q = a / b;
    if (!std::isfinite(q)) {
        return std::isfinite(a) ? overflow_down(q) : q;
    }
    const int sign = quotient_residual_sign(a, b, q);
    return (sign < 0 || sign == 2) ? next_down(q) : q;
}

double div_up(double a, double b)
{
    if (a == 0.0) {
        return 0.0;
    }
    const double q = a / b;
    if (!std::isfinite(q)) {
        return std::isfinite(a) ? overflow_up(q) : q;
    }
    const int sign = quotient_residual_sign(a, b, q);
    return sign > 0 ? next_up(q) : q;
}

double sqrt_down(double a)
{
    const double r = std::sqrt(a);
    if (r == 0.0 || std::isinf(r)) {
        return r;
    }
    if (a < kTinyResult) {
        return next_down(r);
    }
    return std::fma(-r, r, a) < 0.0 ? next_down(r) : r;
}

double sqrt_up(double a)
{
    const double r = std::sqrt(a);
    if (r == 0.0 || std::isinf(r)) {
        return r;
    }
    if (a < kTinyResult) {
        return next_up(r);
    }
    return std::fma(-r, r, a) > 0.0 ? next_up(r) : r;
}

double widen_down(double x, int ulps)
{
    for (int i = 0; i < ulps; ++i) {
        x = next_down(x);
    }
    return x;
}

double widen_up(double x, int ulps)
{
    for (int i = 0; i < ulps; ++i) {
        x = next_up(x);
    }
    return x;
}

} // namespace rounding

using namespace rounding;

Interval::Interval(double v) : lo_(v), hi_(v)
{
    if (std::isnan(v)) {
        throw DomainError("Interval: NaN endpoint");
    }
}

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi)
{
    if (std::isnan(lo) || std::isnan(hi)) {
        throw DomainError("Interval: NaN endpoint");
    }
    if (lo > hi) {
        throw DomainError("Interval: lower endpoint " + std::to_string(lo) +
                          " exceeds upper endpoint " + std::to_string(hi));
    }
}

double Interval::mid() const noexcept
{
    if (lo_ == -hi_) {
        return 0.0;
    }
    if (std::isinf(lo_) || std::isinf(hi_)) {
        return std::isinf(lo_) ? (std::isinf(hi_) ? 0.0 : -kMax) : kMax;
    }
    const double m = 0.5 * lo_ + 0.5 * hi_;
    return std::clamp(m, lo_, hi_);
}

double Interval::rad() const noexcept
{
    const double m = mid();
    return std::max(sub_up(hi_, m), sub_up(m, lo_));
}

double Interval::mag() const noexcept { return std::max(std::abs(lo_), std::abs(hi_)); }

double Interval::mig() const noexcept
{
    if (contains_zero()) {
        return 0.0;
    }
    return std::min(std::abs(lo_), std::abs(hi_));
}

Interval& Interval::operator+=(const Interval& o) { return *this = *this + o; }
Interval& Interval::operator-=(const Interval& o) { return *this = *this - o; }
Interval& Interval::operator*=(const Interval& o) { return *this = *this * o; }
Interval& Interval::operator/=(const Interval& o) { return *this = *this / o; }

Interval operator+(const Interval& a, const Interval& b)
{
    return {add_down(a.lo(), b.lo()), add_up(a.hi(), b.hi())};
}

Interval operator-(const Interval& a, const Interval& b)
{
    return {sub_down(a.lo(), b.hi()), sub_up(a.hi(), b.lo())};
}

Interval operator-(const Interval& a) { return {-a.hi(), -a.lo()}; }

Interval operator*(const Interval& a, const Interval& b)
{
    if (a.lo() >= 0.0 && b.lo() >= 0.0) {
        return {mul_down(a.lo(), b.lo()), mul_up(a.hi(), b.hi())};
    }
    const double p[4][2] = {{a.lo(), b.lo()}, {a.lo(), b.hi()}, {a.hi(), b.lo()}, {a.hi(), b.hi()}};
    double lo = kInf;
    double hi = -kInf;
    for (const auto& q : p) {
        lo = std::min(lo, mul_down(q[0], q[1]));
        hi = std::max(hi, mul_up(q[0], q[1]));
    }
    return {lo, hi};
}

Interval operator/(const Interval& a, const Interval& b)
{
    if (b.contains_zero()) {
        throw DomainError("Interval division by an interval containing zero");
    }
    const double p[4][2] = {{a.lo(), b.lo()}, {a.lo(), b.hi()}, {a.hi(), b.lo()}, {a.hi(), b.hi()}};
    double lo = kInf;
    double hi = -kInf;
    for (const auto& q : p) {
        lo = std::min(lo, div_down(q[0], q[1]));
        hi = std::max(hi, div_up(q[0], q[1]));
    }
    return {lo, hi};
}

Interval hull(const Interval& a, const Interval& b)
{
    return {std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi())};
}

Interval intersect(const Interval& a, const Interval& b)
{
    const double lo = std::max(a.lo(), b.lo());
    const double hi = std::min(a.hi(), b.hi());
    if (lo > hi) {
        throw DomainError("intersect: disjoint intervals");
    }
    return {lo, hi};
}

Interval symmetric(double r)
{
    r = std::abs(r);
    return {-r, r};
}

Interval exp(const Interval& a)
{
    auto lower = [](double x) {
        if (x == 0.0) {
            return 1.0;
        }
        const double e = std::exp(x);
        return e == 0.0 ? 0.0 : std::max(0.0, widen_down(e, kTranscendentalUlps));
    };
    auto upper = [](double x) {
        if (x == 0.0) {
            return 1.0;
        }
        if (x == -kInf) {
            return 0.0;
        }
        return widen_up(std::exp(x), kTranscendentalUlps);
    };
    return {lower(a.lo()), upper(a.hi())};
}

Interval log(const Interval& a)
{
    if (a.lo() < 0.0) {
        throw DomainError("log of an interval with negative values");
    }
    auto lower = [](double x) {
        if (x == 1.0) {
            return 0.0;
        }
        const double l = std::log(x);
        return std::isinf(l) ? l : widen_down(l, kTranscendentalUlps);
    };
    auto upper = [](double x) {
        if (x == 1.0) {
            return 0.0;
        }
        const double l = std::log(x);
        return std::isinf(l) ? l : widen_up(l, kTranscendentalUlps);
    };
    return {lower(a.lo()), upper(a.hi())};
}

Interval sqrt(const Interval& a)
{
    if (a.lo() < 0.0) {
        throw DomainError("sqrt of an interval with negative values");
    }
    return {sqrt_down(a.lo()), sqrt_up(a.hi())};
}

namespace {

double pow_down_nonneg(double x, int k)
{
    double r = 1.0;
    for (int i = 0; i < k; ++i) {
        r = mul_down(r, x);
    }
    return r;
}

double pow_up_nonneg(double x, int k)
{
    double r = 1.0;
    for (int i = 0; i < k; ++i) {
        r = mul_up(r, x);
    }
    return r;
}

} // namespace

Interval sqr(const Interval& a) { return pow(a, 2); }

Interval pow(const Interval& a, int k)
{
    if (k < 0) {
        return recip(pow(a, -k));
    }
    if (k == 0) {
        return {1.0};
    }
    if (k % 2 == 1) {
        const double lo = a.lo() >= 0.0 ? pow_down_nonneg(a.lo(), k) : -pow_up_nonneg(-a.lo(), k);
        const double hi = a.hi() >= 0.0 ? pow_up_nonneg(a.hi(), k) : -pow_down_nonneg(-a.hi(), k);
        return {lo, hi};
    }
    if (a.lo() >= 0.0) {
        return {pow_down_nonneg(a.lo(), k), pow_up_nonneg(a.hi(), k)};
    }
    if (a.hi() <= 0.0) {
        return {pow_down_nonneg(-a.hi(), k), pow_up_nonneg(-a.lo(), k)};
    }
    return {0.0, pow_up_nonneg(a.mag(), k)};
}

Interval recip(const Interval& a) { return Interval(1.0) / a; }

Interval abs(const Interval& a)
{
    if (a.lo() >= 0.0) {
        return a;
    }
    if (a.hi() <= 0.0) {
        return -a;
    }
    return {0.0, a.mag()};
}

Interval parse_decimal(std::string_view text)
{
    const auto first = text.find_first_not_of(" \t\r\n");
    const auto last = text.find_last_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        throw InputError("empty decimal literal");
    }
    const std::string literal(text.substr(first, last - first + 1));
    const bool plain = std::all_of(literal.begin(), literal.end(), [](char c) {
        return (c >= '0' && c <= '9') || c == '.' || c == '-' || c == '+' || c == 'e' || c == 'E';
    });
    if (!plain) {
        throw InputError("not a decimal literal: '" + literal + "'");
    }

    auto convert = [&literal](int mode) {
        const int saved = std::fegetround();
        std::fesetround(mode);
        char* end = nullptr;
        errno = 0;
        const double v = std::strtod(literal.c_str(), &end);
        const bool complete = end == literal.c_str() + literal.size();
        std::fesetround(saved);
        if (!complete || end == literal.c_str()) {
            throw InputError("not a decimal literal: '" + literal + "'");
        }
        return v;
    };
    const double lo = convert(FE_DOWNWARD);
    const double hi = convert(FE_UPWARD);
    if (!std::isfinite(lo) && !std::isfinite(hi)) {
        throw InputError("decimal literal out of range: '" + literal + "'");
    }
    return {lo, hi};
}

std::ostream& operator<<(std::ostream& os, const Interval& x)
{
    const auto precision = os.precision(17);
    os << '[' << x.lo() << ", " << x.hi() << ']';
    os.precision(precision);
    return os;
}

} // namespace expblowup
