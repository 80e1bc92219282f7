#include "expblowup/errors.hpp"
#include "expblowup/interval.hpp"
#include "expblowup/interval_linalg.hpp"

#include <doctest.h>
#include <mpfr.h>

#include <cfloat>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <sstream>

using namespace expblowup;

namespace {

constexpr int kSamples = 100'000;
constexpr mpfr_prec_t kPrec = 256;

// RAII wrapper around an mpfr_t.
struct Big {
    mpfr_t v;
    Big() { mpfr_init2(v, kPrec); }
    explicit Big(double x) : Big() { mpfr_set_d(v, x, MPFR_RNDN); }
    ~Big() { mpfr_clear(v); }
    Big(const Big&) = delete;
    Big& operator=(const Big&) = delete;
};

using Unary = std::function<int(mpfr_t, const mpfr_t, mpfr_rnd_t)>;
using Binary = std::function<int(mpfr_t, const mpfr_t, const mpfr_t, mpfr_rnd_t)>;

// The exact value, bracketed by its downward and upward roundings, lies in r.
bool brackets(const Interval& r, const Big& down, const Big& up)
{
    return mpfr_cmp_d(down.v, r.lo()) >= 0 && mpfr_cmp_d(up.v, r.hi()) <= 0;
}

double random_magnitude(std::mt19937_64& rng)
{
    const double e = std::uniform_real_distribution<double>(-20.0, 20.0)(rng);
    const double mant = std::uniform_real_distribution<double>(1.0, 2.0)(rng);
    return std::ldexp(mant, static_cast<int>(e));
}

Interval random_interval(std::mt19937_64& rng, bool positive = false)
{
    double a = random_magnitude(rng);
    double b = random_magnitude(rng);
    if (!positive) {
        if (rng() & 1U) {
            a = -a;
        }
        if (rng() & 1U) {
            b = -b;
        }
    }
    if (rng() % 8 == 0) {
        b = a;
    }
    return {std::min(a, b), std::max(a, b)};
}

double sample(std::mt19937_64& rng, const Interval& x)
{
    switch (rng() % 6) {
    case 0:
        return x.lo();
    case 1:
        return x.hi();
    default: {
        const double t = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        return std::clamp(x.lo() + t * (x.hi() - x.lo()), x.lo(), x.hi());
    }
    }
}

int binary_violations(std::uint64_t seed, const std::function<Interval(const Interval&, const Interval&)>& op,
                      const Binary& exact, bool nonzero_divisor = false)
{
    std::mt19937_64 rng(seed);
    int violations = 0;
    for (int i = 0; i < kSamples; ++i) {
        const Interval a = random_interval(rng);
        Interval b = random_interval(rng);
        if (nonzero_divisor && b.contains_zero()) {
            b = b.lo() > -b.hi() ? Interval(b.hi() / 2, b.hi()) : Interval(b.lo(), b.lo() / 2);
            if (b.contains_zero()) {
                b = Interval(1.0, 2.0);
            }
        }
        const Interval r = op(a, b);
        const Big x(sample(rng, a));
        const Big y(sample(rng, b));
        Big down;
        Big up;
        exact(down.v, x.v, y.v, MPFR_RNDD);
        exact(up.v, x.v, y.v, MPFR_RNDU);
        if (!brackets(r, down, up)) {
            ++violations;
        }
    }
    return violations;
}

int unary_violations(std::uint64_t seed, const std::function<Interval(const Interval&)>& op, const Unary& exact,
                     const std::function<Interval(std::mt19937_64&)>& make)
{
    std::mt19937_64 rng(seed);
    int violations = 0;
    for (int i = 0; i < kSamples; ++i) {
        const Interval a = make(rng);
        const Interval r = op(a);
        const Big x(sample(rng, a));
        Big down;
        Big up;
        exact(down.v, x.v, MPFR_RNDD);
        exact(up.v, x.v, MPFR_RNDU);
        if (!brackets(r, down, up)) {
            ++violations;
        }
    }
    return violations;
}

Interval narrow_in(std::mt19937_64& rng, double lo, double hi)
{
    double a = std::uniform_real_distribution<double>(lo, hi)(rng);
    double b = std::uniform_real_distribution<double>(lo, hi)(rng);
    if (rng() % 2 == 0) {
        b = a + (b - a) * 1e-9;
    }
    return {std::min(a, b), std::max(a, b)};
}

} // namespace

TEST_CASE("construction and accessors")
{
    const Interval x(1.0, 3.0);
    CHECK(x.lo() == 1.0);
    CHECK(x.hi() == 3.0);
    CHECK(x.mid() == 2.0);
    CHECK(x.width() == 2.0);
    CHECK(x.rad() == 1.0);
    CHECK(Interval(-4.0, 2.0).mag() == 4.0);
    CHECK(Interval(-4.0, 2.0).mig() == 0.0);
    CHECK(Interval(2.5).is_point());
    CHECK(x.contains(1.0));
    CHECK_FALSE(x.interior_contains(1.0));
    CHECK_THROWS_AS(Interval(2.0, 1.0), DomainError);
    CHECK_THROWS_AS(Interval(std::nan(""), 1.0), DomainError);
}

TEST_CASE("endpoint arithmetic examples")
{
    CHECK(Interval(1, 2) + Interval(3, 4) == Interval(4, 6));
    CHECK(Interval(-1, 1) * Interval(-1, 1) == Interval(-1, 1));
    CHECK(Interval(1, 2) - Interval(3, 4) == Interval(-3, -1));
    CHECK(-Interval(1, 2) == Interval(-2, -1));
    CHECK(Interval(1, 2) / Interval(4, 8) == Interval(0.125, 0.5));
    CHECK_THROWS_AS(Interval(1, 2) / Interval(-1, 1), DomainError);
    CHECK_THROWS_AS(Interval(1, 2) / Interval(0, 1), DomainError);
    CHECK_THROWS_AS(recip(Interval(0.0)), DomainError);
}

TEST_CASE("inexact operations round outward")
{
    const Interval third = Interval(1.0) / Interval(3.0);
    CHECK(third.lo() < third.hi());
    CHECK(third.hi() == std::nextafter(third.lo(), 1.0));
    const Interval sum = Interval(0.1) + Interval(0.2);
    CHECK(sum.lo() < sum.hi());
    CHECK(Interval(1.0) + Interval(2.0) == Interval(3.0));
    CHECK(sqrt(Interval(4.0)) == Interval(2.0));
}

TEST_CASE("set operations")
{
    CHECK(hull(Interval(0, 1), Interval(3, 4)) == Interval(0, 4));
    CHECK(intersect(Interval(0, 3), Interval(2, 4)) == Interval(2, 3));
    CHECK_THROWS_AS(intersect(Interval(0, 1), Interval(2, 3)), DomainError);
    CHECK(symmetric(2.0) == Interval(-2, 2));
}

TEST_CASE("exp examples")
{
    const Interval one = exp(Interval(0.0));
    CHECK(one.lo() >= std::nextafter(1.0, 0.0));
    CHECK(one.hi() <= std::nextafter(1.0, 2.0));
    CHECK(one.contains(1.0));

    const Interval tiny = exp(Interval(-1e300, -750.0));
    CHECK(tiny.lo() == 0.0);
    CHECK(tiny.hi() <= DBL_MIN);

    const Interval huge = exp(Interval(700.0, 800.0));
    CHECK(huge.hi() == std::numeric_limits<double>::infinity());
    CHECK(std::isfinite(huge.lo()));
}

TEST_CASE("elementary functions: domains and special values")
{
    CHECK_THROWS_AS(log(Interval(-1.0, 1.0)), DomainError);
    CHECK(log(Interval(0.0, 1.0)).lo() == -std::numeric_limits<double>::infinity());
    CHECK(log(Interval(0.0, 1.0)).contains(0.0));
    CHECK_THROWS_AS(sqrt(Interval(-1.0, 1.0)), DomainError);
    CHECK(log(Interval(1.0)).contains(0.0));
    CHECK(sqr(Interval(-2, 3)) == Interval(0, 9));
    CHECK(pow(Interval(-2, 3), 2) == Interval(0, 9));
    CHECK(pow(Interval(-2, 3), 3) == Interval(-8, 27));
    CHECK(pow(Interval(2, 4), 0) == Interval(1.0));
    CHECK(pow(Interval(2, 4), -1).contains(0.25));
    CHECK(pow(Interval(2, 4), -1).contains(0.5));
    CHECK_THROWS_AS(pow(Interval(-1, 1), -2), DomainError);
    CHECK(abs(Interval(-3, 2)) == Interval(0, 3));
    CHECK(abs(Interval(-3, -2)) == Interval(2, 3));
}

TEST_CASE("parse_decimal gives a one-ulp enclosure")
{
    for (const char* text : {"0.1", "1", "2.5", "-0.3", "1e-300", "123456789.123456789"}) {
        const Interval x = parse_decimal(text);
        Big exact;
        mpfr_set_str(exact.v, text, 10, MPFR_RNDN);
        CHECK(mpfr_cmp_d(exact.v, x.lo()) >= 0);
        CHECK(mpfr_cmp_d(exact.v, x.hi()) <= 0);
        CHECK(x.hi() <= std::nextafter(x.lo(), INFINITY));
    }
    CHECK(parse_decimal("1").is_point());
    CHECK_THROWS_AS(parse_decimal("abc"), InputError);
    CHECK_THROWS_AS(parse_decimal("1.5x"), InputError);
    CHECK_THROWS_AS(parse_decimal(""), InputError);
}

TEST_CASE("printing")
{
    std::ostringstream os;
    os << Interval(1, 2);
    CHECK(os.str() == "[1, 2]");
}

TEST_SUITE("property")
{
    TEST_CASE("containment fuzzing: arithmetic")
    {
        CHECK(binary_violations(1, std::plus<Interval>(), mpfr_add) == 0);
        CHECK(binary_violations(2, std::minus<Interval>(), mpfr_sub) == 0);
        CHECK(binary_violations(3, std::multiplies<Interval>(), mpfr_mul) == 0);
        CHECK(binary_violations(4, std::divides<Interval>(), mpfr_div, true) == 0);
    }

    TEST_CASE("containment fuzzing: elementary functions")
    {
        auto wide = [](std::mt19937_64& rng) { return narrow_in(rng, -700.0, 700.0); };
        auto positive = [](std::mt19937_64& rng) { return random_interval(rng, true); };
        CHECK(unary_violations(5, [](const Interval& a) { return exp(a); }, mpfr_exp, wide) == 0);
        CHECK(unary_violations(6, [](const Interval& a) { return log(a); }, mpfr_log, positive) == 0);
        CHECK(unary_violations(7, [](const Interval& a) { return sqrt(a); }, mpfr_sqrt, positive) == 0);
        CHECK(unary_violations(8, [](const Interval& a) { return sqr(a); }, mpfr_sqr,
                               [](std::mt19937_64& rng) { return random_interval(rng); }) == 0);
        CHECK(unary_violations(9, [](const Interval& a) { return recip(a); },
                               [](mpfr_t r, const mpfr_t x, mpfr_rnd_t rnd) { return mpfr_ui_div(r, 1, x, rnd); },
                               positive) == 0);
        for (int k : {3, 4, 7, -2, -3}) {
            CHECK(unary_violations(
                      10 + static_cast<std::uint64_t>(k + 5), [k](const Interval& a) { return pow(a, k); },
                      [k](mpfr_t r, const mpfr_t x, mpfr_rnd_t rnd) { return mpfr_pow_si(r, x, k, rnd); },
                      [k](std::mt19937_64& rng) {
                          Interval a = narrow_in(rng, -20.0, 20.0);
                          if (k < 0 && a.contains_zero()) {
                              a = Interval(0.5, 3.0);
                          }
                          return a;
                      }) == 0);
        }
    }

    TEST_CASE("matrix products contain the exact product")
    {
        std::mt19937_64 rng(42);
        int violations = 0;
        for (int trial = 0; trial < 200; ++trial) {
            const std::size_t n = 1 + rng() % 5;
            IntervalMatrix a(n, n);
            IntervalMatrix b(n, n);
            IntervalVector v(n);
            for (std::size_t i = 0; i < n; ++i) {
                v[i] = narrow_in(rng, -3, 3);
                for (std::size_t j = 0; j < n; ++j) {
                    a(i, j) = narrow_in(rng, -3, 3);
                    b(i, j) = narrow_in(rng, -3, 3);
                }
            }
            const IntervalMatrix ab = a * b;
            const IntervalVector av = a * v;
            std::vector<double> pa(n * n);
            std::vector<double> pb(n * n);
            std::vector<double> pv(n);
            for (std::size_t i = 0; i < n; ++i) {
                pv[i] = sample(rng, v[i]);
                for (std::size_t j = 0; j < n; ++j) {
                    pa[i * n + j] = sample(rng, a(i, j));
                    pb[i * n + j] = sample(rng, b(i, j));
                }
            }
            for (std::size_t i = 0; i < n; ++i) {
                Big sum_v(0.0);
                for (std::size_t k = 0; k < n; ++k) {
                    Big t;
                    mpfr_set_d(t.v, pa[i * n + k], MPFR_RNDN);
                    mpfr_mul_d(t.v, t.v, pv[k], MPFR_RNDN);
                    mpfr_add(sum_v.v, sum_v.v, t.v, MPFR_RNDN);
                }
                violations += brackets(av[i], sum_v, sum_v) ? 0 : 1;
                for (std::size_t j = 0; j < n; ++j) {
                    Big sum(0.0);
                    for (std::size_t k = 0; k < n; ++k) {
                        Big t;
                        mpfr_set_d(t.v, pa[i * n + k], MPFR_RNDN);
                        mpfr_mul_d(t.v, t.v, pb[k * n + j], MPFR_RNDN);
                        mpfr_add(sum.v, sum.v, t.v, MPFR_RNDN);
                    }
                    violations += brackets(ab(i, j), sum, sum) ? 0 : 1;
                }
            }
        }
        CHECK(violations == 0);
    }
}

TEST_CASE("vector and matrix dimension checks")
{
    const IntervalVector a(2, Interval(1.0));
    const IntervalVector b(3, Interval(1.0));
    CHECK_THROWS_AS(a + b, DimensionError);
    CHECK_THROWS_AS(dot(a, b), DimensionError);
    CHECK_THROWS_AS(IntervalMatrix(2, 3) * IntervalMatrix(2, 3), DimensionError);
    CHECK_THROWS_AS(IntervalMatrix(2, 3) * a, DimensionError);
    CHECK_THROWS_AS(static_cast<void>(a.at(5)), DimensionError);
    CHECK(dot(a, a) == Interval(2.0));
    CHECK((IntervalMatrix::identity(2) * a) == a);
    const IntervalMatrix m = IntervalMatrix::from_points(2, 2, std::vector<double>{1, 2, 3, 4});
    CHECK(m.transpose()(0, 1) == Interval(3.0));
    CHECK(m.mid() == std::vector<double>{1, 2, 3, 4});
}
