#include "expblowup/taylor.hpp"

#include <utility>

namespace expblowup::taylor {

namespace {

void require_same_shape(const Dual& a, const Dual& b)
{
    if (a.g.size() != b.g.size()) {
        throw DimensionError("taylor::Dual: gradient size mismatch");
    }
}

} // namespace

Dual operator+(const Dual& a, const Dual& b)
{
    require_same_shape(a, b);
    Dual r{a.v + b.v, a.g};
    for (std::size_t i = 0; i < r.g.size(); ++i) {
        r.g[i] += b.g[i];
    }
    return r;
}

Dual operator-(const Dual& a, const Dual& b)
{
    require_same_shape(a, b);
    Dual r{a.v - b.v, a.g};
    for (std::size_t i = 0; i < r.g.size(); ++i) {
        r.g[i] -= b.g[i];
    }
    return r;
}

Dual operator-(const Dual& a)
{
    Dual r{-a.v, a.g};
    for (auto& x : r.g) {
        x = -x;
    }
    return r;
}

Dual operator*(const Dual& a, const Dual& b)
{
    require_same_shape(a, b);
    Dual r{a.v * b.v, std::vector<Interval>(a.g.size())};
    for (std::size_t i = 0; i < r.g.size(); ++i) {
        r.g[i] = a.v * b.g[i] + a.g[i] * b.v;
    }
    return r;
}

Dual operator*(const Interval& c, const Dual& a)
{
    Dual r{c * a.v, a.g};
    for (auto& x : r.g) {
        x = c * x;
    }
    return r;
}

Dual exp(const Dual& a)
{
    const Interval e = expblowup::exp(a.v);
    Dual out{e, a.g};
    for (auto& x : out.g) {
        x = e * x;
    }
    return out;
}

Dual recip(const Dual& a)
{
    const Interval r = expblowup::recip(a.v);
    const Interval d = -(r * r);
    Dual out{r, a.g};
    for (auto& x : out.g) {
        x = d * x;
    }
    return out;
}

int Tape::variable(std::size_t index)
{
    if (index >= variables_) {
        throw DimensionError("taylor::Tape: variable index out of range");
    }
    Node n;
    n.op = Op::variable;
    n.index = static_cast<int>(index);
    return push(n);
}

int Tape::constant(const Interval& c)
{
    Node n;
    n.op = Op::constant;
    n.c = c;
    return push(n);
}

void Tape::set_outputs(std::vector<int> outputs)
{
    if (outputs.size() != variables_) {
        throw DimensionError("taylor::Tape: need one output per variable");
    }
    for (int id : outputs) {
        check_operand(id);
    }
    outputs_ = std::move(outputs);
}

int Tape::push(Node n)
{
    switch (n.op) {
    case Op::add:
    case Op::sub:
    case Op::mul:
        check_operand(n.b);
        [[fallthrough]];
    case Op::neg:
    case Op::scale:
    case Op::recip:
    case Op::exp:
        check_operand(n.a);
        break;
    case Op::variable:
    case Op::constant:
        break;
    }
    nodes_.push_back(n);
    return static_cast<int>(nodes_.size()) - 1;
}

void Tape::check_operand(int id) const
{
    if (id < 0 || static_cast<std::size_t>(id) >= nodes_.size()) {
        throw Error("taylor::Tape: operand refers to an unknown node");
    }
}

namespace {

void require_same_tape(const Expr& a, const Expr& b)
{
    if (&a.tape() != &b.tape()) {
        throw Error("taylor::Expr: operands recorded on different tapes");
    }
}

} // namespace

Expr operator+(const Expr& a, const Expr& b)
{
    require_same_tape(a, b);
    return {a.tape(), a.tape().add(a.id(), b.id())};
}

Expr operator-(const Expr& a, const Expr& b)
{
    require_same_tape(a, b);
    return {a.tape(), a.tape().sub(a.id(), b.id())};
}

Expr operator-(const Expr& a) { return {a.tape(), a.tape().neg(a.id())}; }

Expr operator*(const Expr& a, const Expr& b)
{
    require_same_tape(a, b);
    return {a.tape(), a.tape().mul(a.id(), b.id())};
}

Expr operator*(const Interval& c, const Expr& a) { return {a.tape(), a.tape().scale(c, a.id())}; }

Expr exp(const Expr& a) { return {a.tape(), a.tape().exp(a.id())}; }

Expr recip(const Expr& a) { return {a.tape(), a.tape().recip(a.id())}; }

Expr pow(const Expr& a, int k)
{
    if (k < 1) {
        throw DomainError("taylor::pow: exponent must be positive");
    }
    Expr r = a;
    for (int i = 1; i < k; ++i) {
        r = r * a;
    }
    return r;
}

} // namespace expblowup::taylor
