#pragma once

/**
 * @file ast.hpp
 * @brief Abstract syntax for the two sorts of the timed tuplix calculus.
 *
 * Quantity terms are meadow expressions (plus the implicit-capital operator,
 * whose body is a tuplix). Tuplix terms describe time-sliced bundles of
 * transfers. Nodes are immutable and shared; builders return refcounted
 * pointers, so terms form DAGs and copying is cheap.
 *
 * Surface sugar (subtraction, division, numerals, natural powers, max, min,
 * n-fold delay) is desugared by the builders/parser; the core node set below
 * is all any consumer has to handle.
 */

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ttc/rational.hpp"

namespace ttc {

/// The distinguished action every universe contains; pre-abstraction
/// renames other actions to it.
inline const std::string kIota = "iota";

struct Quantity;
struct Tuplix;
using QPtr = std::shared_ptr<const Quantity>;
using TPtr = std::shared_ptr<const Tuplix>;

/// Maps quantity-variable names to carrier values.
using Assignment = std::map<std::string, Rational>;

// --- Quantity nodes ---------------------------------------------------------

struct QConst { Rational value; };
struct QVar   { std::string name; };
struct QAdd   { QPtr lhs, rhs; };
struct QMul   { QPtr lhs, rhs; };
struct QNeg   { QPtr arg; };
struct QInv   { QPtr arg; };
struct QSign  { QPtr arg; };
struct QICap  { QPtr rate; TPtr body; };

struct Quantity {
    std::variant<QConst, QVar, QAdd, QMul, QNeg, QInv, QSign, QICap> node;
};

// --- Tuplix nodes ------------------------------------------------------------

struct TEmpty {};
struct TBlock {};
struct TTransfer { std::string action; QPtr amount; };
struct TZeroTest { QPtr arg; };
struct TConj     { TPtr lhs, rhs; };
struct TDelay    { TPtr body; };
struct TPreAbstr { std::vector<std::string> actions; TPtr body; };  // sorted, unique
struct TIntEncap { std::vector<std::string> actions; QPtr rate; TPtr body; };

struct Tuplix {
    std::variant<TEmpty, TBlock, TTransfer, TZeroTest, TConj, TDelay, TPreAbstr, TIntEncap> node;
};

template <class... Ts> struct overloaded : Ts... { using Ts::operator()...; };
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

// --- Builders ----------------------------------------------------------------

inline QPtr q_const(Rational v) { return std::make_shared<Quantity>(Quantity{QConst{std::move(v)}}); }
inline QPtr q_const(long v) { return q_const(Rational(v)); }
inline QPtr q_zero() { return q_const(0L); }
inline QPtr q_one() { return q_const(1L); }
inline QPtr q_var(std::string name) { return std::make_shared<Quantity>(Quantity{QVar{std::move(name)}}); }
inline QPtr q_add(QPtr a, QPtr b) { return std::make_shared<Quantity>(Quantity{QAdd{std::move(a), std::move(b)}}); }
inline QPtr q_mul(QPtr a, QPtr b) { return std::make_shared<Quantity>(Quantity{QMul{std::move(a), std::move(b)}}); }
inline QPtr q_inv(QPtr a) { return std::make_shared<Quantity>(Quantity{QInv{std::move(a)}}); }
inline QPtr q_sign(QPtr a) { return std::make_shared<Quantity>(Quantity{QSign{std::move(a)}}); }
inline QPtr q_icap(QPtr rate, TPtr body) {
    return std::make_shared<Quantity>(Quantity{QICap{std::move(rate), std::move(body)}});
}

/// Negation folds constants, so a literal node is never wrapped in QNeg;
/// the printer relies on this to emit negative literals that re-parse
/// to the same tree.
inline QPtr q_neg(QPtr a) {
    if (const auto* c = std::get_if<QConst>(&a->node)) return q_const(-c->value);
    return std::make_shared<Quantity>(Quantity{QNeg{std::move(a)}});
}

inline QPtr q_sub(QPtr a, QPtr b) { return q_add(std::move(a), q_neg(std::move(b))); }
inline QPtr q_div(QPtr a, QPtr b) { return q_mul(std::move(a), q_inv(std::move(b))); }

/// max(a,b) desugars to (sign(a-b)+1)/2 * (a-b) + b.
inline QPtr q_max(QPtr a, QPtr b) {
    QPtr d = q_sub(a, b);
    QPtr half = q_div(q_add(q_sign(d), q_one()), q_const(2));
    return q_add(q_mul(half, d), b);
}

inline QPtr q_min(QPtr a, QPtr b) { return q_neg(q_max(q_neg(a), q_neg(b))); }

/// p^0 == 1, p^1 == p, otherwise a left-nested product.
inline QPtr q_pow(QPtr a, unsigned long n) {
    if (n == 0) return q_one();
    QPtr acc = a;
    for (unsigned long i = 1; i < n; ++i) acc = q_mul(acc, a);
    return acc;
}

inline TPtr t_empty() { return std::make_shared<Tuplix>(Tuplix{TEmpty{}}); }
inline TPtr t_block() { return std::make_shared<Tuplix>(Tuplix{TBlock{}}); }
inline TPtr t_transfer(std::string action, QPtr amount) {
    return std::make_shared<Tuplix>(Tuplix{TTransfer{std::move(action), std::move(amount)}});
}
inline TPtr t_test(QPtr q) { return std::make_shared<Tuplix>(Tuplix{TZeroTest{std::move(q)}}); }
inline TPtr t_conj(TPtr a, TPtr b) { return std::make_shared<Tuplix>(Tuplix{TConj{std::move(a), std::move(b)}}); }
inline TPtr t_delay(TPtr t, unsigned long n = 1) {
    for (unsigned long i = 0; i < n; ++i) t = std::make_shared<Tuplix>(Tuplix{TDelay{std::move(t)}});
    return t;
}

inline std::vector<std::string> sorted_unique(std::vector<std::string> names) {
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    return names;
}

inline TPtr t_pabstr(std::vector<std::string> actions, TPtr body) {
    return std::make_shared<Tuplix>(Tuplix{TPreAbstr{sorted_unique(std::move(actions)), std::move(body)}});
}
inline TPtr t_iencap(std::vector<std::string> actions, QPtr rate, TPtr body) {
    return std::make_shared<Tuplix>(
        Tuplix{TIntEncap{sorted_unique(std::move(actions)), std::move(rate), std::move(body)}});
}

// --- Structural equality ------------------------------------------------------

bool equal(const QPtr& a, const QPtr& b);
bool equal(const TPtr& a, const TPtr& b);

inline bool equal(const QPtr& a, const QPtr& b) {
    if (a == b) return true;
    if (a->node.index() != b->node.index()) return false;
    return std::visit(
        overloaded{
            [&](const QConst& x) { return x.value == std::get<QConst>(b->node).value; },
            [&](const QVar& x) { return x.name == std::get<QVar>(b->node).name; },
            [&](const QAdd& x) {
                const auto& y = std::get<QAdd>(b->node);
                return equal(x.lhs, y.lhs) && equal(x.rhs, y.rhs);
            },
            [&](const QMul& x) {
                const auto& y = std::get<QMul>(b->node);
                return equal(x.lhs, y.lhs) && equal(x.rhs, y.rhs);
            },
            [&](const QNeg& x) { return equal(x.arg, std::get<QNeg>(b->node).arg); },
            [&](const QInv& x) { return equal(x.arg, std::get<QInv>(b->node).arg); },
            [&](const QSign& x) { return equal(x.arg, std::get<QSign>(b->node).arg); },
            [&](const QICap& x) {
                const auto& y = std::get<QICap>(b->node);
                return equal(x.rate, y.rate) && equal(x.body, y.body);
            },
        },
        a->node);
}

inline bool equal(const TPtr& a, const TPtr& b) {
    if (a == b) return true;
    if (a->node.index() != b->node.index()) return false;
    return std::visit(
        overloaded{
            [&](const TEmpty&) { return true; },
            [&](const TBlock&) { return true; },
            [&](const TTransfer& x) {
                const auto& y = std::get<TTransfer>(b->node);
                return x.action == y.action && equal(x.amount, y.amount);
            },
            [&](const TZeroTest& x) { return equal(x.arg, std::get<TZeroTest>(b->node).arg); },
            [&](const TConj& x) {
                const auto& y = std::get<TConj>(b->node);
                return equal(x.lhs, y.lhs) && equal(x.rhs, y.rhs);
            },
            [&](const TDelay& x) { return equal(x.body, std::get<TDelay>(b->node).body); },
            [&](const TPreAbstr& x) {
                const auto& y = std::get<TPreAbstr>(b->node);
                return x.actions == y.actions && equal(x.body, y.body);
            },
            [&](const TIntEncap& x) {
                const auto& y = std::get<TIntEncap>(b->node);
                return x.actions == y.actions && equal(x.rate, y.rate) && equal(x.body, y.body);
            },
        },
        a->node);
}

// --- Syntactic queries ---------------------------------------------------------

void collect_free_vars(const QPtr& q, std::set<std::string>& out);
void collect_free_vars(const TPtr& t, std::set<std::string>& out);

inline void collect_free_vars(const QPtr& q, std::set<std::string>& out) {
    std::visit(overloaded{
                   [&](const QConst&) {},
                   [&](const QVar& x) { out.insert(x.name); },
                   [&](const QAdd& x) { collect_free_vars(x.lhs, out); collect_free_vars(x.rhs, out); },
                   [&](const QMul& x) { collect_free_vars(x.lhs, out); collect_free_vars(x.rhs, out); },
                   [&](const QNeg& x) { collect_free_vars(x.arg, out); },
                   [&](const QInv& x) { collect_free_vars(x.arg, out); },
                   [&](const QSign& x) { collect_free_vars(x.arg, out); },
                   [&](const QICap& x) { collect_free_vars(x.rate, out); collect_free_vars(x.body, out); },
               },
               q->node);
}

inline void collect_free_vars(const TPtr& t, std::set<std::string>& out) {
    std::visit(overloaded{
                   [&](const TEmpty&) {},
                   [&](const TBlock&) {},
                   [&](const TTransfer& x) { collect_free_vars(x.amount, out); },
                   [&](const TZeroTest& x) { collect_free_vars(x.arg, out); },
                   [&](const TConj& x) { collect_free_vars(x.lhs, out); collect_free_vars(x.rhs, out); },
                   [&](const TDelay& x) { collect_free_vars(x.body, out); },
                   [&](const TPreAbstr& x) { collect_free_vars(x.body, out); },
                   [&](const TIntEncap& x) { collect_free_vars(x.rate, out); collect_free_vars(x.body, out); },
               },
               t->node);
}

inline std::set<std::string> free_vars(const QPtr& q) {
    std::set<std::string> out;
    collect_free_vars(q, out);
    return out;
}

inline std::set<std::string> free_vars(const TPtr& t) {
    std::set<std::string> out;
    collect_free_vars(t, out);
    return out;
}

inline bool is_closed(const QPtr& q) { return free_vars(q).empty(); }
inline bool is_closed(const TPtr& t) { return free_vars(t).empty(); }

void collect_actions(const QPtr& q, std::set<std::string>& out);
void collect_actions(const TPtr& t, std::set<std::string>& out);

inline void collect_actions(const QPtr& q, std::set<std::string>& out) {
    std::visit(overloaded{
                   [&](const QConst&) {},
                   [&](const QVar&) {},
                   [&](const QAdd& x) { collect_actions(x.lhs, out); collect_actions(x.rhs, out); },
                   [&](const QMul& x) { collect_actions(x.lhs, out); collect_actions(x.rhs, out); },
                   [&](const QNeg& x) { collect_actions(x.arg, out); },
                   [&](const QInv& x) { collect_actions(x.arg, out); },
                   [&](const QSign& x) { collect_actions(x.arg, out); },
                   [&](const QICap& x) { collect_actions(x.rate, out); collect_actions(x.body, out); },
               },
               q->node);
}

inline void collect_actions(const TPtr& t, std::set<std::string>& out) {
    std::visit(overloaded{
                   [&](const TEmpty&) {},
                   [&](const TBlock&) {},
                   [&](const TTransfer& x) { out.insert(x.action); collect_actions(x.amount, out); },
                   [&](const TZeroTest& x) { collect_actions(x.arg, out); },
                   [&](const TConj& x) { collect_actions(x.lhs, out); collect_actions(x.rhs, out); },
                   [&](const TDelay& x) { collect_actions(x.body, out); },
                   [&](const TPreAbstr& x) {
                       out.insert(x.actions.begin(), x.actions.end());
                       collect_actions(x.body, out);
                   },
                   [&](const TIntEncap& x) {
                       out.insert(x.actions.begin(), x.actions.end());
                       collect_actions(x.rate, out);
                       collect_actions(x.body, out);
                   },
               },
               t->node);
}

/// Every action named anywhere in the term (transfer positions and
/// abstraction/encapsulation sets), always including iota.
inline std::set<std::string> actions_of(const TPtr& t) {
    std::set<std::string> out;
    collect_actions(t, out);
    out.insert(kIota);
    return out;
}

/// Maximum nesting depth of delay at the tuplix level. Delays inside
/// implicit-capital bodies sit in quantity position and do not count.
inline unsigned long delay_depth(const TPtr& t) {
    return std::visit(overloaded{
                          [](const TEmpty&) -> unsigned long { return 0; },
                          [](const TBlock&) -> unsigned long { return 0; },
                          [](const TTransfer&) -> unsigned long { return 0; },
                          [](const TZeroTest&) -> unsigned long { return 0; },
                          [](const TConj& x) {
                              return std::max(delay_depth(x.lhs), delay_depth(x.rhs));
                          },
                          [](const TDelay& x) { return 1 + delay_depth(x.body); },
                          [](const TPreAbstr& x) { return delay_depth(x.body); },
                          [](const TIntEncap& x) { return delay_depth(x.body); },
                      },
                      t->node);
}

}  // namespace ttc
