#include "expblowup/problem.hpp"

#include "expblowup/errors.hpp"
#include "expblowup/safe_h.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <string>
#include <vector>

namespace expblowup {

ProblemParams::ProblemParams(int n, int m, Interval lambda) : n_(n), m_(m), lambda_(lambda)
{
    if (n < 4) {
        throw DomainError("n must be at least 4 (got " + std::to_string(n) + ")");
    }
    if (n % 2 != 0) {
        throw DomainError("n must be even (got " + std::to_string(n) + ")");
    }
    if (m < 1) {
        throw DomainError("m must be a positive integer (got " + std::to_string(m) + ")");
    }
    if (!(lambda.lo() > 0.0)) {
        throw DomainError("lambda must be positive");
    }
}

std::size_t ProblemParams::x_slot(int i) const
{
    if (i < 1 || i > n_ - 1 || i == center()) {
        throw DomainError("grid node " + std::to_string(i) + " has no x slot");
    }
    return static_cast<std::size_t>(i < center() ? i - 1 : i - 2);
}

int ProblemParams::grid_node(std::size_t slot) const
{
    if (slot >= x_count()) {
        throw DomainError("x slot " + std::to_string(slot) + " out of range");
    }
    const int i = static_cast<int>(slot) + 1;
    return i < center() ? i : i + 1;
}

namespace {

constexpr int kCosUlps = 2;

// Enclosure of cos over a narrow interval inside [0, 2 pi].
Interval cos_narrow(const Interval& theta)
{
    const Interval pi(std::numbers::pi, std::nextafter(std::numbers::pi, 4.0));
    const double c_lo = std::cos(theta.lo());
    const double c_hi = std::cos(theta.hi());
    double lo = std::min(c_lo, c_hi);
    double hi = std::max(c_lo, c_hi);
    lo = rounding::widen_down(lo, kCosUlps);
    hi = rounding::widen_up(hi, kCosUlps);
    if (theta.lo() <= pi.hi() && pi.lo() <= theta.hi()) {
        lo = -1.0;
    }
    if (theta.lo() <= 0.0 || theta.hi() >= (Interval(2.0) * pi).lo()) {
        hi = 1.0;
    }
    return {std::max(lo, -1.0), std::min(hi, 1.0)};
}

Interval neighbor(const ProblemParams& p, const CompactState& c, int j)
{
    if (j == p.center()) {
        return Interval(1.0);
    }
    if (j <= 0 || j >= p.n()) {
        return Interval(0.0);
    }
    return c.x[p.x_slot(j)];
}

Interval discrete_laplacian(const ProblemParams& p, const CompactState& c, int i)
{
    return p.n_squared() *
           (neighbor(p, c, i - 1) - Interval(2.0) * neighbor(p, c, i) + neighbor(p, c, i + 1));
}

// alpha_i = 1 - x_i^m, which must stay nonnegative.
Interval exponent_weight(const Interval& x, int m)
{
    if (x.hi() > 1.0) {
        throw DomainError("x component exceeds 1; exponent weight 1 - x^m would be negative");
    }
    if (m % 2 == 0 && x.lo() < -1.0) {
        throw DomainError("x component below -1; exponent weight 1 - x^m would be negative");
    }
    const Interval a = Interval(1.0) - pow(x, m);
    const double lo = std::max(a.lo(), 0.0);
    return {lo, std::max(a.hi(), lo)};
}

// s restricted to s >= 0; the h factors vanish identically for s <= 0.
Interval nonnegative_part(const Interval& s)
{
    return {std::max(s.lo(), 0.0), std::max(s.hi(), 0.0)};
}

void check_dims(const ProblemParams& p, const CompactState& c)
{
    if (c.x.size() != p.x_count()) {
        throw DimensionError("CompactState has " + std::to_string(c.x.size()) + " x components, expected " +
                             std::to_string(p.x_count()));
    }
}

} // namespace

IntervalVector original_field(const ProblemParams& p, const PhysState& state)
{
    const auto& u = state.u;
    if (u.size() != static_cast<std::size_t>(p.n() - 1)) {
        throw DimensionError("PhysState must have n - 1 components");
    }
    const auto at = [&](int i) { return (i <= 0 || i >= p.n()) ? Interval(0.0) : u[static_cast<std::size_t>(i - 1)]; };
    IntervalVector f(u.size());
    for (int i = 1; i < p.n(); ++i) {
        const Interval lap = p.n_squared() * (at(i - 1) - Interval(2.0) * at(i) + at(i + 1));
        f[static_cast<std::size_t>(i - 1)] = lap + p.lambda() * exp(pow(at(i), p.m()));
    }
    return f;
}

PhysState initial_data(const InitialSpec& spec, const ProblemParams& p)
{
    const auto count = static_cast<std::size_t>(p.n() - 1);
    PhysState state{IntervalVector(count)};

    if (spec.kind == InitialKind::file) {
        std::ifstream in(spec.path);
        if (!in) {
            throw InputError("cannot open initial-data file '" + spec.path.string() + "'");
        }
        std::vector<std::string> lines;
        for (std::string line; std::getline(in, line);) {
            lines.push_back(line);
        }
        while (!lines.empty() && lines.back().find_first_not_of(" \t\r") == std::string::npos) {
            lines.pop_back();
        }
        if (lines.size() != count) {
            throw InputError("initial-data file must have exactly " + std::to_string(count) + " lines, found " +
                             std::to_string(lines.size()));
        }
        for (std::size_t i = 0; i < count; ++i) {
            state.u[i] = parse_decimal(lines[i]);
        }
        return state;
    }

    const Interval amplitude = spec.kind == InitialKind::cosine_m1 ? parse_decimal("2.5") : Interval(1.0);
    const Interval two_pi = Interval(2.0) * Interval(std::numbers::pi, std::nextafter(std::numbers::pi, 4.0));
    for (int i = 1; i < p.n(); ++i) {
        const Interval y = Interval(static_cast<double>(i)) / Interval(static_cast<double>(p.n()));
        state.u[static_cast<std::size_t>(i - 1)] = amplitude * (Interval(1.0) - cos_narrow(two_pi * y));
    }
    return state;
}

CompactState compactify(const ProblemParams& p, const PhysState& state)
{
    if (state.u.size() != static_cast<std::size_t>(p.n() - 1)) {
        throw DimensionError("PhysState must have n - 1 components");
    }
    const Interval peak = state.u[static_cast<std::size_t>(p.center() - 1)];
    if (!(peak.lo() > 0.0)) {
        throw DomainError("compactify: centre value u_{n/2} must be positive");
    }
    CompactState c{recip(peak), IntervalVector(p.x_count())};
    for (std::size_t slot = 0; slot < p.x_count(); ++slot) {
        const int i = p.grid_node(slot);
        c.x[slot] = state.u[static_cast<std::size_t>(i - 1)] / peak;
        if (c.x[slot].hi() > 1.0) {
            throw ReframeNeeded("compactify: u_" + std::to_string(i) +
                                " may exceed the centre value; the blow-up chart at n/2 is not admissible");
        }
    }
    return c;
}

PhysState decompactify(const ProblemParams& p, const CompactState& c)
{
    check_dims(p, c);
    if (c.s.contains_zero()) {
        throw SingularityError("decompactify: s touches the horizon s = 0");
    }
    const Interval peak = recip(c.s);
    PhysState state{IntervalVector(static_cast<std::size_t>(p.n() - 1))};
    state.u[static_cast<std::size_t>(p.center() - 1)] = peak;
    for (std::size_t slot = 0; slot < p.x_count(); ++slot) {
        state.u[static_cast<std::size_t>(p.grid_node(slot) - 1)] = c.x[slot] / c.s;
    }
    return state;
}

IntervalVector desing_field(const ProblemParams& p, const CompactState& c)
{
    check_dims(p, c);
    const int m = p.m();
    const Interval& lambda = p.lambda();
    const Interval s = nonnegative_part(c.s);

    const Interval decay = safe_h(HParams{0, Interval(1.0), m}, s); // exp(-1/s^m)
    const Interval h1 = safe_h(HParams{1, Interval(1.0), m}, s);
    const Interval lap_c = discrete_laplacian(p, c, p.center());

    IntervalVector f(p.compact_dim());
    f[0] = -(decay * lap_c) - lambda * c.s;
    for (std::size_t slot = 0; slot < p.x_count(); ++slot) {
        const int i = p.grid_node(slot);
        const Interval& x = c.x[slot];
        const Interval alpha = exponent_weight(x, m);
        f[slot + 1] = -(x * h1 * lap_c) - lambda * x + h1 * discrete_laplacian(p, c, i) +
                      lambda * safe_h(HParams{0, alpha, m}, s);
    }
    return f;
}

IntervalMatrix desing_jacobian(const ProblemParams& p, const CompactState& c)
{
    check_dims(p, c);
    const int m = p.m();
    const int center = p.center();
    const Interval M(static_cast<double>(m));
    const Interval N2 = p.n_squared();
    const Interval& lambda = p.lambda();
    const Interval s = nonnegative_part(c.s);
    const Interval one(1.0);

    const Interval h0 = safe_h(HParams{0, one, m}, s);
    const Interval h1 = safe_h(HParams{1, one, m}, s);
    // (1 - m s^{-m}) h_{2,1;m}(s), written without the division by s^m.
    const Interval dh1 = safe_h(HParams{2, one, m}, s) - M * safe_h(HParams{m + 2, one, m}, s);
    const Interval lap_c = discrete_laplacian(p, c, center);

    const std::size_t dim = p.compact_dim();
    IntervalMatrix J(dim, dim);

    J(0, 0) = -(M * safe_h(HParams{m + 1, one, m}, s) * lap_c) - lambda;
    for (std::size_t slot = 0; slot < p.x_count(); ++slot) {
        const int j = p.grid_node(slot);
        if (j == center - 1 || j == center + 1) {
            J(0, slot + 1) = -(N2 * h0);
        }
    }

    for (std::size_t row = 0; row < p.x_count(); ++row) {
        const int i = p.grid_node(row);
        const Interval& x = c.x[row];
        const Interval alpha = exponent_weight(x, m);

        J(row + 1, 0) = dh1 * (x * lap_c - discrete_laplacian(p, c, i)) +
                        lambda * M * alpha * safe_h(HParams{m + 1, alpha, m}, s);

        for (std::size_t col = 0; col < p.x_count(); ++col) {
            const int j = p.grid_node(col);
            Interval entry(0.0);
            if (i == j) {
                // d/dx_i of lambda exp(-(1 - x_i^m)/s^m) is +m lambda x_i^{m-1} h_{m,1-x_i^m;m}(s).
                entry = -(h1 * lap_c) - lambda - Interval(2.0) * N2 * h1 +
                        M * lambda * pow(x, m - 1) * safe_h(HParams{m, alpha, m}, s);
            }
            if (j == center - 1 || j == center + 1) {
                entry -= N2 * x * h1;
            }
            if (j == i - 1 || j == i + 1) {
                entry += N2 * h1;
            }
            J(row + 1, col + 1) = entry;
        }
    }
    return J;
}

IntervalVector pack(const CompactState& c)
{
    IntervalVector v(c.x.size() + 1);
    v[0] = c.s;
    for (std::size_t i = 0; i < c.x.size(); ++i) {
        v[i + 1] = c.x[i];
    }
    return v;
}

CompactState unpack(const ProblemParams& p, const IntervalVector& v)
{
    if (v.size() < p.compact_dim()) {
        throw DimensionError("unpack: vector shorter than n - 1");
    }
    CompactState c{v[0], IntervalVector(p.x_count())};
    for (std::size_t i = 0; i < p.x_count(); ++i) {
        c.x[i] = v[i + 1];
    }
    return c;
}

std::string to_string(InitialKind kind)
{
    switch (kind) {
    case InitialKind::cosine_m1:
        return "cosine_m1";
    case InitialKind::cosine_m2:
        return "cosine_m2";
    case InitialKind::file:
        return "file";
    }
    return "unknown";
}

} // namespace expblowup
