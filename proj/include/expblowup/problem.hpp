#pragma once

#include "expblowup/interval.hpp"
#include "expblowup/interval_linalg.hpp"

#include <cstddef>
#include <filesystem>
#include <string>

namespace expblowup {

/// Grid count n (even, >= 4), exponent m >= 1 and reaction coefficient lambda > 0
/// of u_i' = n^2 (u_{i-1} - 2 u_i + u_{i+1}) + lambda exp(u_i^m), u_0 = u_n = 0.
class ProblemParams {
public:
    /// Throws DomainError when an invariant is violated.
    ProblemParams(int n, int m, Interval lambda);

    [[nodiscard]] int n() const noexcept { return n_; }
    [[nodiscard]] int m() const noexcept { return m_; }
    [[nodiscard]] const Interval& lambda() const noexcept { return lambda_; }

    /// Index of the compactified (peak) node, n/2.
    [[nodiscard]] int center() const noexcept { return n_ / 2; }
    /// n^2 as an exact interval.
    [[nodiscard]] Interval n_squared() const { return Interval(static_cast<double>(n_) * n_); }
    /// Number of x components, n - 2.
    [[nodiscard]] std::size_t x_count() const noexcept { return static_cast<std::size_t>(n_ - 2); }
    /// Dimension of the compactified state (s, x), n - 1.
    [[nodiscard]] std::size_t compact_dim() const noexcept { return static_cast<std::size_t>(n_ - 1); }

    /// Position in CompactState::x of grid node i (1 <= i <= n-1, i != n/2).
    [[nodiscard]] std::size_t x_slot(int i) const;
    /// Grid node stored at CompactState::x[slot].
    [[nodiscard]] int grid_node(std::size_t slot) const;

    friend bool operator==(const ProblemParams&, const ProblemParams&) = default;

private:
    int n_;
    int m_;
    Interval lambda_;
};

/// Physical state u_1..u_{n-1}; the Dirichlet values u_0 = u_n = 0 are implicit.
struct PhysState {
    IntervalVector u;
};

/// Directional compactification u_{n/2} = 1/s, u_i = x_i / s. `x` holds the
/// nodes 1..n-1 without n/2, in ascending order.
struct CompactState {
    Interval s;
    IntervalVector x;
};

enum class InitialKind { cosine_m1, cosine_m2, file };

struct InitialSpec {
    InitialKind kind = InitialKind::cosine_m1;
    std::filesystem::path path; ///< used when kind == file
};

/// Right-hand side of the semi-discrete system in u coordinates.
IntervalVector original_field(const ProblemParams& p, const PhysState& u);

/**
 * Initial profile: cosine_m1 gives 2.5 (1 - cos(2 pi i/n)), cosine_m2 gives
 * 1 - cos(2 pi i/n); file reads one decimal per line (exactly n - 1 lines).
 * Throws InputError when the file cannot be read or parsed.
 */
PhysState initial_data(const InitialSpec& spec, const ProblemParams& p);

/**
 * s = 1/u_{n/2}, x_i = u_i / u_{n/2}.
 * Throws DomainError if u_{n/2} may be nonpositive and ReframeNeeded if some
 * x_i may exceed 1 (the peak is not at the centre node).
 */
CompactState compactify(const ProblemParams& p, const PhysState& u);

/// Inverse chart; throws SingularityError when 0 lies in s.
PhysState decompactify(const ProblemParams& p, const CompactState& c);

/**
 * Time-desingularized vector field in (s, x), returned as a vector of
 * length n - 1 ordered (f_s, f_x...). All exp(-a/s^m) factors go through
 * safe_h, so the field is finite on the horizon s = 0. Values of s below 0
 * are accepted and see the C^1 extension h = 0 there.
 * Throws DomainError when some x_i may exceed 1.
 */
IntervalVector desing_field(const ProblemParams& p, const CompactState& c);

/// Jacobian of desing_field, (n-1) x (n-1), same ordering as the field.
IntervalMatrix desing_jacobian(const ProblemParams& p, const CompactState& c);

/// Packs (s, x) into one vector [s, x...].
IntervalVector pack(const CompactState& c);
/// Inverse of pack; extra trailing components are ignored.
CompactState unpack(const ProblemParams& p, const IntervalVector& v);

std::string to_string(InitialKind kind);

} // namespace expblowup
