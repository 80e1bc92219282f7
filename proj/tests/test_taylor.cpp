#include "expblowup/errors.hpp"
#include "expblowup/integrator.hpp"
#include "expblowup/taylor.hpp"

#include "reference.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace expblowup;
using namespace expblowup::taylor;


TEST_CASE("linear growth gives the exponential series")
{
    Tape tape(1);
    const Expr y(tape, tape.variable(0));
    tape.set_outputs({y.id()});
    const std::vector<Interval> y0{Interval(1.0)};
    const auto c = tape.solution_coefficients<Interval>(y0, 12);
    double factorial = 1.0;
    for (int k = 0; k <= 12; ++k) {
        if (k > 0) {
            factorial *= k;
        }
        CHECK(c[static_cast<std::size_t>(k)][0].contains(1.0 / factorial));
        CHECK(c[static_cast<std::size_t>(k)][0].width() <= 1e-15);
    }
}

TEST_CASE("quadratic field gives the geometric series")
{
    // y' = y^2, y(0) = a  =>  y = a / (1 - a t), y_k = a^{k+1}.
    Tape tape(1);
    const Expr y(tape, tape.variable(0));
    tape.set_outputs({(y * y).id()});
    const std::vector<Interval> y0{Interval(0.5)};
    const auto c = tape.solution_coefficients<Interval>(y0, 10);
    for (int k = 0; k <= 10; ++k) {
        CHECK(c[static_cast<std::size_t>(k)][0].contains(std::pow(0.5, k + 1)));
    }
}

TEST_CASE("reciprocal and exponential recurrences")
{
    // y' = 1/y, y(0) = 1  =>  y = sqrt(1 + 2t).
    {
        Tape tape(1);
        const Expr y(tape, tape.variable(0));
        tape.set_outputs({recip(y).id()});
        const std::vector<Interval> y0{Interval(1.0)};
        const auto c = tape.solution_coefficients<Interval>(y0, 6);
        // Binomial series of (1 + 2t)^{1/2}.
        double coeff = 1.0;
        for (int k = 0; k <= 6; ++k) {
            CHECK(c[static_cast<std::size_t>(k)][0].contains(coeff));
            coeff *= (0.5 - k) / (k + 1) * 2.0;
        }
    }
    // y' = exp(-y), y(0) = 0  =>  y = ln(1 + t), y_k = (-1)^{k+1}/k.
    {
        Tape tape(1);
        const Expr y(tape, tape.variable(0));
        tape.set_outputs({exp(-y).id()});
        const std::vector<Interval> y0{Interval(0.0)};
        const auto c = tape.solution_coefficients<Interval>(y0, 8);
        CHECK(c[0][0] == Interval(0.0));
        for (int k = 1; k <= 8; ++k) {
            const double expected = (k % 2 == 1 ? 1.0 : -1.0) / k;
            CHECK(c[static_cast<std::size_t>(k)][0].contains(expected));
            CHECK(c[static_cast<std::size_t>(k)][0].width() <= 1e-14);
        }
    }
}

TEST_CASE("dual numbers carry the derivative with respect to the initial value")
{
    // y' = y^2: y_k = a^{k+1}, d y_k / da = (k+1) a^k.
    Tape tape(1);
    const Expr y(tape, tape.variable(0));
    tape.set_outputs({(y * y).id()});
    const std::vector<Dual> y0{Dual{Interval(0.5), {Interval(1.0)}}};
    const auto c = tape.solution_coefficients<Dual>(y0, 6);
    for (int k = 0; k <= 6; ++k) {
        CHECK(c[static_cast<std::size_t>(k)][0].g[0].contains((k + 1) * std::pow(0.5, k)));
    }
}

TEST_CASE("tape validation")
{
    Tape tape(2);
    CHECK_THROWS_AS(tape.variable(2), DimensionError);
    CHECK_THROWS_AS(tape.add(0, 5), Error);
    const int a = tape.variable(0);
    CHECK_THROWS_AS(tape.set_outputs({a}), DimensionError);
    const std::vector<Interval> y0{Interval(1.0), Interval(2.0)};
    CHECK_THROWS_AS(tape.solution_coefficients<Interval>(y0, 3), Error);
    tape.set_outputs({a, a});
    const std::vector<Interval> wrong{Interval(1.0)};
    CHECK_THROWS_AS(tape.solution_coefficients<Interval>(wrong, 3), DimensionError);
    CHECK_THROWS_AS(pow(Expr(tape, a), 0), DomainError);
}

TEST_CASE("recorded blow-up field matches the direct field")
{
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 4 + 2 * static_cast<int>(rng() % 3);
        const int m = 1 + static_cast<int>(rng() % 2);
        const BlowupSystem system(ProblemParams(n, m, Interval(1.0)));
        IntervalVector y(system.dim());
        y[0] = Interval(ref::uniform(rng, 0.05, 0.5));
        for (std::size_t i = 1; i + 1 < y.size(); ++i) {
            y[i] = Interval(ref::uniform(rng, -0.9, 0.9));
        }
        y[y.size() - 1] = Interval(ref::uniform(rng, 0.0, 0.01));
        const IntervalVector direct = system.field(y);
        const auto taped = system.tape().eval<Interval>(y.span());
        for (std::size_t i = 0; i < y.size(); ++i) {
            CHECK(direct[i].mid() == doctest::Approx(taped[i].mid()).epsilon(1e-12).scale(1e-300));
            CHECK_NOTHROW(intersect(direct[i], taped[i]));
        }
    }
}
