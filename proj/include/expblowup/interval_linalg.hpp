#pragma once

#include "expblowup/interval.hpp"

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <vector>

namespace expblowup {

/// Fixed-length vector of intervals. Every binary operation checks
/// dimensions and throws DimensionError on mismatch.
class IntervalVector {
public:
    IntervalVector() = default;
    explicit IntervalVector(std::size_t n, Interval fill = Interval{}) : data_(n, fill) {}
    IntervalVector(std::initializer_list<Interval> values) : data_(values) {}
    explicit IntervalVector(std::vector<Interval> values) : data_(std::move(values)) {}

    static IntervalVector from_points(std::span<const double> points);

    [[nodiscard]] std::size_t size() const noexcept { return data_.size(); }
    Interval& operator[](std::size_t i) { return data_[i]; }
    const Interval& operator[](std::size_t i) const { return data_[i]; }
    /// Bounds-checked access.
    [[nodiscard]] const Interval& at(std::size_t i) const;

    [[nodiscard]] std::vector<double> mid() const;
    [[nodiscard]] double max_width() const;
    [[nodiscard]] double max_mag() const;
    [[nodiscard]] bool contains(std::span<const double> point) const;
    [[nodiscard]] bool contains(const IntervalVector& other) const;
    [[nodiscard]] bool interior_contains(const IntervalVector& other) const;

    auto begin() { return data_.begin(); }
    auto end() { return data_.end(); }
    [[nodiscard]] auto begin() const { return data_.begin(); }
    [[nodiscard]] auto end() const { return data_.end(); }
    [[nodiscard]] std::span<const Interval> span() const { return data_; }

    friend bool operator==(const IntervalVector&, const IntervalVector&) = default;

private:
    std::vector<Interval> data_;
};

IntervalVector operator+(const IntervalVector& a, const IntervalVector& b);
IntervalVector operator-(const IntervalVector& a, const IntervalVector& b);
IntervalVector operator*(const Interval& c, const IntervalVector& v);
IntervalVector hull(const IntervalVector& a, const IntervalVector& b);
IntervalVector intersect(const IntervalVector& a, const IntervalVector& b);
Interval dot(const IntervalVector& a, const IntervalVector& b);

/// Dense row-major matrix of intervals.
class IntervalMatrix {
public:
    IntervalMatrix() = default;
    IntervalMatrix(std::size_t rows, std::size_t cols, Interval fill = Interval{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill)
    {
    }

    static IntervalMatrix identity(std::size_t n);
    /// Builds a point matrix from row-major doubles.
    static IntervalMatrix from_points(std::size_t rows, std::size_t cols, std::span<const double> values);

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }

    Interval& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Interval& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    [[nodiscard]] IntervalMatrix transpose() const;
    /// Row-major midpoints.
    [[nodiscard]] std::vector<double> mid() const;
    [[nodiscard]] bool contains(const IntervalMatrix& other) const;

    friend bool operator==(const IntervalMatrix&, const IntervalMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Interval> data_;
};

IntervalMatrix operator+(const IntervalMatrix& a, const IntervalMatrix& b);
IntervalMatrix operator-(const IntervalMatrix& a, const IntervalMatrix& b);
IntervalMatrix operator*(const Interval& c, const IntervalMatrix& m);
IntervalMatrix operator*(const IntervalMatrix& a, const IntervalMatrix& b);
IntervalVector operator*(const IntervalMatrix& a, const IntervalVector& v);

std::ostream& operator<<(std::ostream& os, const IntervalVector& v);
std::ostream& operator<<(std::ostream& os, const IntervalMatrix& m);

} // namespace expblowup
