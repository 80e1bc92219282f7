#pragma once

#include "expblowup/errors.hpp"
#include "expblowup/interval.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace expblowup::taylor {

/// Interval value together with its gradient with respect to the initial
/// condition; used to differentiate Taylor coefficients.
struct Dual {
    Interval v;
    std::vector<Interval> g;
};

Dual operator+(const Dual& a, const Dual& b);
Dual operator-(const Dual& a, const Dual& b);
Dual operator-(const Dual& a);
Dual operator*(const Dual& a, const Dual& b);
Dual operator*(const Interval& c, const Dual& a);
Dual exp(const Dual& a);
Dual recip(const Dual& a);

/// Constant with the shape of `proto`.
inline Interval lift(const Interval& /*proto*/, const Interval& c) { return c; }
inline Dual lift(const Dual& proto, const Interval& c) { return Dual{c, std::vector<Interval>(proto.g.size())}; }

enum class Op { variable, constant, add, sub, neg, mul, scale, recip, exp };

struct Node {
    Op op = Op::constant;
    int a = -1;
    int b = -1;
    Interval c;      ///< constant value or scale factor
    int index = -1;  ///< variable index
};

/**
 * Straight-line recording of a vector field y' = F(y) built from + - *,
 * reciprocal and exp. Taylor coefficients of the solution through any
 * initial value are produced by the usual recurrences, one degree at a
 * time, over any scalar type providing those operations.
 */
class Tape {
public:
    explicit Tape(std::size_t variables) : variables_(variables) {}

    int variable(std::size_t index);
    int constant(const Interval& c);
    int add(int a, int b) { return push({.op = Op::add, .a = a, .b = b}); }
    int sub(int a, int b) { return push({.op = Op::sub, .a = a, .b = b}); }
    int neg(int a) { return push({.op = Op::neg, .a = a}); }
    int mul(int a, int b) { return push({.op = Op::mul, .a = a, .b = b}); }
    int scale(const Interval& c, int a) { return push({.op = Op::scale, .a = a, .c = c}); }
    int recip(int a) { return push({.op = Op::recip, .a = a}); }
    int exp(int a) { return push({.op = Op::exp, .a = a}); }

    /// Output node per variable, in variable order.
    void set_outputs(std::vector<int> outputs);

    [[nodiscard]] std::size_t variables() const noexcept { return variables_; }
    [[nodiscard]] std::size_t size() const noexcept { return nodes_.size(); }

    /// F(y) at degree zero.
    template <class S>
    std::vector<S> eval(std::span<const S> y) const;

    /**
     * Normalised Taylor coefficients y_k = y^{(k)}(0)/k!, k = 0..order, of
     * the solution of y' = F(y), y(0) = y0. Result is indexed [k][i].
     */
    template <class S>
    std::vector<std::vector<S>> solution_coefficients(std::span<const S> y0, int order) const;

private:
    int push(Node n);
    void check_operand(int id) const;

    template <class S>
    S node_coefficient(const Node& n, std::size_t k, const std::vector<std::vector<S>>& coef,
                       const std::vector<std::vector<S>>& y, const S& proto) const;

    std::size_t variables_;
    std::vector<Node> nodes_;
    std::vector<int> outputs_;
};

/// Handle used to write a field with ordinary operator syntax.
class Expr {
public:
    Expr(Tape& tape, int id) : tape_(&tape), id_(id) {}
    [[nodiscard]] int id() const noexcept { return id_; }
    [[nodiscard]] Tape& tape() const noexcept { return *tape_; }

private:
    Tape* tape_;
    int id_;
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr operator*(const Expr& a, const Expr& b);
Expr operator*(const Interval& c, const Expr& a);
Expr exp(const Expr& a);
Expr recip(const Expr& a);
/// Repeated multiplication, k >= 1.
Expr pow(const Expr& a, int k);

// ---------------------------------------------------------------------------

template <class S>
std::vector<S> Tape::eval(std::span<const S> y) const
{
    // y_1 = F(y_0) exactly (the 1/1 normalisation is exact).
    return solution_coefficients<S>(y, 1)[1];
}

template <class S>
S Tape::node_coefficient(const Node& n, std::size_t k, const std::vector<std::vector<S>>& coef,
                         const std::vector<std::vector<S>>& y, const S& proto) const
{
    // Block-scope declarations so that the Tape members of the same name do not hide them.
    using expblowup::exp;
    using expblowup::recip;
    using taylor::exp;
    using taylor::recip;
    switch (n.op) {
    case Op::variable:
        return y[k][static_cast<std::size_t>(n.index)];
    case Op::constant:
        return k == 0 ? lift(proto, n.c) : lift(proto, Interval(0.0));
    case Op::add:
        return coef[n.a][k] + coef[n.b][k];
    case Op::sub:
        return coef[n.a][k] - coef[n.b][k];
    case Op::neg:
        return -coef[n.a][k];
    case Op::scale:
        return n.c * coef[n.a][k];
    case Op::mul: {
        const auto& a = coef[n.a];
        const auto& b = coef[n.b];
        S acc = a[0] * b[k];
        for (std::size_t j = 1; j <= k; ++j) {
            acc = acc + a[j] * b[k - j];
        }
        return acc;
    }
    case Op::recip: {
        const auto& a = coef[n.a];
        const auto& r = coef[static_cast<std::size_t>(&n - nodes_.data())];
        if (k == 0) {
            return recip(a[0]);
        }
        S acc = a[1] * r[k - 1];
        for (std::size_t j = 2; j <= k; ++j) {
            acc = acc + a[j] * r[k - j];
        }
        return -(r[0] * acc);
    }
    case Op::exp: {
        const auto& a = coef[n.a];
        const auto& e = coef[static_cast<std::size_t>(&n - nodes_.data())];
        if (k == 0) {
            return exp(a[0]);
        }
        const Interval kk(static_cast<double>(k));
        S acc = (Interval(1.0) / kk) * (a[1] * e[k - 1]);
        for (std::size_t j = 2; j <= k; ++j) {
            acc = acc + (Interval(static_cast<double>(j)) / kk) * (a[j] * e[k - j]);
        }
        return acc;
    }
    }
    throw Error("taylor::Tape: unknown opcode");
}

template <class S>
std::vector<std::vector<S>> Tape::solution_coefficients(std::span<const S> y0, int order) const
{
    if (y0.size() != variables_) {
        throw DimensionError("taylor::Tape: initial value has " + std::to_string(y0.size()) +
                             " components, expected " + std::to_string(variables_));
    }
    if (outputs_.size() != variables_) {
        throw Error("taylor::Tape: outputs not set");
    }
    if (order < 0) {
        throw DomainError("taylor::Tape: negative order");
    }
    const S& proto = y0[0];
    const auto degrees = static_cast<std::size_t>(order) + 1;

    std::vector<std::vector<S>> y;
    y.reserve(degrees);
    y.emplace_back(y0.begin(), y0.end());

    std::vector<std::vector<S>> coef(nodes_.size());
    for (auto& c : coef) {
        c.reserve(degrees);
    }
    for (std::size_t k = 0; k + 1 < degrees; ++k) {
        for (std::size_t id = 0; id < nodes_.size(); ++id) {
            coef[id].push_back(node_coefficient(nodes_[id], k, coef, y, proto));
        }
        const Interval inv = Interval(1.0) / Interval(static_cast<double>(k + 1));
        std::vector<S> next;
        next.reserve(variables_);
        for (int out : outputs_) {
            next.push_back(inv * coef[static_cast<std::size_t>(out)][k]);
        }
        y.push_back(std::move(next));
    }
    return y;
}

} // namespace expblowup::taylor
