#pragma once

/**
 * @file print.hpp
 * @brief Canonical concrete syntax for quantity and tuplix terms.
 *
 * The printer emits minimally parenthesized text that the parser maps back
 * to the identical tree: parse(print(t)) == t structurally. Subtraction and
 * division are re-sugared from their core encodings (x + -y, x * inv(y)),
 * and nested delays print as delay^n.
 */

#include <string>

#include "ttc/ast.hpp"

namespace ttc {

std::string print(const QPtr& q);
std::string print(const TPtr& t);

namespace detail {

// Quantity precedence: 1 additive, 2 multiplicative, 3 unary minus,
// 5 atoms (literals, variables, function forms). Negative literals print
// as signed tokens, which re-parse at unary level.
inline int q_prec(const QPtr& q) {
    return std::visit(overloaded{
                          [](const QConst& c) { return c.value.sgn_int() < 0 ? 3 : 5; },
                          [](const QVar&) { return 5; },
                          [](const QAdd&) { return 1; },
                          [](const QMul&) { return 2; },
                          [](const QNeg&) { return 3; },
                          [](const QInv&) { return 5; },
                          [](const QSign&) { return 5; },
                          [](const QICap&) { return 5; },
                      },
                      q->node);
}

std::string render_q(const QPtr& q, int min_prec);
std::string render_t(const TPtr& t, bool parenthesize_conj);

/// Rate position after '@' admits a literal, an identifier, or (expr).
inline std::string render_rate(const QPtr& q) {
    if (const auto* c = std::get_if<QConst>(&q->node)) return c->value.to_string();
    if (const auto* v = std::get_if<QVar>(&q->node)) return v->name;
    return "(" + render_q(q, 0) + ")";
}

inline std::string render_q_raw(const QPtr& q) {
    return std::visit(
        overloaded{
            [](const QConst& c) { return c.value.to_string(); },
            [](const QVar& v) { return v.name; },
            [](const QAdd& x) {
                std::string out = render_q(x.lhs, 1);
                if (const auto* n = std::get_if<QNeg>(&x.rhs->node))
                    return out + " - " + render_q(n->arg, 2);
                if (const auto* c = std::get_if<QConst>(&x.rhs->node); c && c->value.sgn_int() < 0)
                    return out + " - " + (-c->value).to_string();
                return out + " + " + render_q(x.rhs, 2);
            },
            [](const QMul& x) {
                std::string out = render_q(x.lhs, 2);
                if (const auto* i = std::get_if<QInv>(&x.rhs->node))
                    return out + " / " + render_q(i->arg, 3);
                return out + " * " + render_q(x.rhs, 3);
            },
            [](const QNeg& x) { return "-" + render_q(x.arg, 4); },
            [](const QInv& x) { return "inv(" + render_q(x.arg, 0) + ")"; },
            [](const QSign& x) { return "sign(" + render_q(x.arg, 0) + ")"; },
            [](const QICap& x) {
                return "icap@" + render_rate(x.rate) + "(" + render_t(x.body, false) + ")";
            },
        },
        q->node);
}

inline std::string render_q(const QPtr& q, int min_prec) {
    std::string body = render_q_raw(q);
    if (q_prec(q) < min_prec) return "(" + body + ")";
    return body;
}

inline std::string join_actions(const std::vector<std::string>& names) {
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out += ",";
        out += names[i];
    }
    return out;
}

inline std::string render_t(const TPtr& t, bool parenthesize_conj) {
    return std::visit(
        overloaded{
            [](const TEmpty&) -> std::string { return "eps"; },
            [](const TBlock&) -> std::string { return "bot"; },
            [](const TTransfer& x) { return x.action + "(" + render_q(x.amount, 0) + ")"; },
            [](const TZeroTest& x) { return "test(" + render_q(x.arg, 0) + ")"; },
            [&](const TConj& x) {
                std::string out = render_t(x.lhs, false) + " & " + render_t(x.rhs, true);
                if (parenthesize_conj) return "(" + out + ")";
                return out;
            },
            [](const TDelay& x) {
                unsigned long n = 1;
                TPtr inner = x.body;
                while (const auto* d = std::get_if<TDelay>(&inner->node)) {
                    ++n;
                    inner = d->body;
                }
                std::string head = n == 1 ? "delay" : "delay^" + std::to_string(n);
                return head + "(" + render_t(inner, false) + ")";
            },
            [](const TPreAbstr& x) {
                return "abs{" + join_actions(x.actions) + "}(" + render_t(x.body, false) + ")";
            },
            [](const TIntEncap& x) {
                return "enc{" + join_actions(x.actions) + "}@" + render_rate(x.rate) + "(" +
                       render_t(x.body, false) + ")";
            },
        },
        t->node);
}

}  // namespace detail

inline std::string print(const QPtr& q) { return detail::render_q(q, 0); }
inline std::string print(const TPtr& t) { return detail::render_t(t, false); }

}  // namespace ttc
