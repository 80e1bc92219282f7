#include "expblowup/interval_linalg.hpp"

#include "expblowup/errors.hpp"

#include <algorithm>
#include <ostream>
#include <string>

namespace expblowup {

namespace {

void require_same(std::size_t a, std::size_t b, const char* what)
{
    if (a != b) {
        throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(a) + " vs " +
                             std::to_string(b) + ")");
    }
}

} // namespace

IntervalVector IntervalVector::from_points(std::span<const double> points)
{
    IntervalVector v(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        v[i] = Interval(points[i]);
    }
    return v;
}

const Interval& IntervalVector::at(std::size_t i) const
{
    if (i >= data_.size()) {
        throw DimensionError("IntervalVector index " + std::to_string(i) + " out of range");
    }
    return data_[i];
}

std::vector<double> IntervalVector::mid() const
{
    std::vector<double> m(size());
    std::transform(data_.begin(), data_.end(), m.begin(), [](const Interval& x) { return x.mid(); });
    return m;
}

double IntervalVector::max_width() const
{
    double w = 0.0;
    for (const auto& x : data_) {
        w = std::max(w, x.width());
    }
    return w;
}

double IntervalVector::max_mag() const
{
    double w = 0.0;
    for (const auto& x : data_) {
        w = std::max(w, x.mag());
    }
    return w;
}

bool IntervalVector::contains(std::span<const double> point) const
{
    require_same(size(), point.size(), "IntervalVector::contains");
    for (std::size_t i = 0; i < size(); ++i) {
        if (!data_[i].contains(point[i])) {
            return false;
        }
    }
    return true;
}

bool IntervalVector::contains(const IntervalVector& other) const
{
    require_same(size(), other.size(), "IntervalVector::contains");
    for (std::size_t i = 0; i < size(); ++i) {
        if (!data_[i].contains(other[i])) {
            return false;
        }
    }
    return true;
}

bool IntervalVector::interior_contains(const IntervalVector& other) const
{
    require_same(size(), other.size(), "IntervalVector::interior_contains");
    for (std::size_t i = 0; i < size(); ++i) {
        if (!data_[i].interior_contains(other[i])) {
            return false;
        }
    }
    return true;
}

IntervalVector operator+(const IntervalVector& a, const IntervalVector& b)
{
    require_same(a.size(), b.size(), "IntervalVector +");
    IntervalVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        r[i] = a[i] + b[i];
    }
    return r;
}

IntervalVector operator-(const IntervalVector& a, const IntervalVector& b)
{
    require_same(a.size(), b.size(), "IntervalVector -");
    IntervalVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        r[i] = a[i] - b[i];
    }
    return r;
}

IntervalVector operator*(const Interval& c, const IntervalVector& v)
{
    IntervalVector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        r[i] = c * v[i];
    }
    return r;
}

IntervalVector hull(const IntervalVector& a, const IntervalVector& b)
{
    require_same(a.size(), b.size(), "hull");
    IntervalVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        r[i] = hull(a[i], b[i]);
    }
    return r;
}

IntervalVector intersect(const IntervalVector& a, const IntervalVector& b)
{
    require_same(a.size(), b.size(), "intersect");
    IntervalVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        r[i] = intersect(a[i], b[i]);
    }
    return r;
}

Interval dot(const IntervalVector& a, const IntervalVector& b)
{
    require_same(a.size(), b.size(), "dot");
    Interval acc(0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += a[i] * b[i];
    }
    return acc;
}

IntervalMatrix IntervalMatrix::identity(std::size_t n)
{
    IntervalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = Interval(1.0);
    }
    return m;
}

IntervalMatrix IntervalMatrix::from_points(std::size_t rows, std::size_t cols, std::span<const double> values)
{
    require_same(rows * cols, values.size(), "IntervalMatrix::from_points");
    IntervalMatrix m(rows, cols);
    for (std::size_t i = 0; i < values.size(); ++i) {
        m.data_[i] = Interval(values[i]);
    }
    return m;
}

IntervalMatrix IntervalMatrix::transpose() const
{
    IntervalMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            t(c, r) = (*this)(r, c);
        }
    }
    return t;
}

std::vector<double> IntervalMatrix::mid() const
{
    std::vector<double> m(data_.size());
    std::transform(data_.begin(), data_.end(), m.begin(), [](const Interval& x) { return x.mid(); });
    return m;
}

bool IntervalMatrix::contains(const IntervalMatrix& other) const
{
    require_same(rows_, other.rows_, "IntervalMatrix::contains");
    require_same(cols_, other.cols_, "IntervalMatrix::contains");
    for (std::size_t i = 0; i < data_.size(); ++i) {
        if (!data_[i].contains(other.data_[i])) {
            return false;
        }
    }
    return true;
}

IntervalMatrix operator+(const IntervalMatrix& a, const IntervalMatrix& b)
{
    require_same(a.rows(), b.rows(), "IntervalMatrix +");
    require_same(a.cols(), b.cols(), "IntervalMatrix +");
    IntervalMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            r(i, j) = a(i, j) + b(i, j);
        }
    }
    return r;
}

IntervalMatrix operator-(const IntervalMatrix& a, const IntervalMatrix& b)
{
    require_same(a.rows(), b.rows(), "IntervalMatrix -");
    require_same(a.cols(), b.cols(), "IntervalMatrix -");
    IntervalMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            r(i, j) = a(i, j) - b(i, j);
        }
    }
    return r;
}

IntervalMatrix operator*(const Interval& c, const IntervalMatrix& m)
{
    IntervalMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            r(i, j) = c * m(i, j);
        }
    }
    return r;
}

IntervalMatrix operator*(const IntervalMatrix& a, const IntervalMatrix& b)
{
    require_same(a.cols(), b.rows(), "IntervalMatrix *");
    IntervalMatrix r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Interval acc(0.0);
            for (std::size_t k = 0; k < a.cols(); ++k) {
                acc += a(i, k) * b(k, j);
            }
            r(i, j) = acc;
        }
    }
    return r;
}

IntervalVector operator*(const IntervalMatrix& a, const IntervalVector& v)
{
    require_same(a.cols(), v.size(), "IntervalMatrix * IntervalVector");
    IntervalVector r(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Interval acc(0.0);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            acc += a(i, k) * v[k];
        }
        r[i] = acc;
    }
    return r;
}

std::ostream& operator<<(std::ostream& os, const IntervalVector& v)
{
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) {
        os << (i ? ", " : "") << v[i];
    }
    return os << ')';
}

std::ostream& operator<<(std::ostream& os, const IntervalMatrix& m)
{
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            os << (j ? " " : "") << m(i, j);
        }
        os << '\n';
    }
    return os;
}

} // namespace expblowup
