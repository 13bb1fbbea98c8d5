#pragma once

/**
 * @file eval.hpp
 * @brief Evaluation of terms into the standard model.
 *
 * Quantity terms evaluate to exact rationals, tuplix terms to timed
 * tuplices; the two walks are mutually recursive through the
 * implicit-capital operator, whose undefined case (blocked body)
 * evaluates to -1 at the quantity level.
 */

#include <stdexcept>
#include <string>

#include "ttc/ast.hpp"
#include "ttc/model.hpp"

namespace ttc {

struct UnboundVariable : std::runtime_error {
    std::string name;
    explicit UnboundVariable(const std::string& n)
        : std::runtime_error("unbound quantity variable '" + n + "'"), name(n) {}
};

Rational eval_quantity(const QPtr& q, const Assignment& env);
TimedTuplix eval_tuplix(const TPtr& t, const Assignment& env);

inline Rational eval_quantity(const QPtr& q, const Assignment& env) {
    return std::visit(
        overloaded{
            [&](const QConst& c) { return c.value; },
            [&](const QVar& v) {
                auto it = env.find(v.name);
                if (it == env.end()) throw UnboundVariable(v.name);
                return it->second;
            },
            [&](const QAdd& x) { return eval_quantity(x.lhs, env) + eval_quantity(x.rhs, env); },
            [&](const QMul& x) { return eval_quantity(x.lhs, env) * eval_quantity(x.rhs, env); },
            [&](const QNeg& x) { return -eval_quantity(x.arg, env); },
            [&](const QInv& x) { return inv(eval_quantity(x.arg, env)); },
            [&](const QSign& x) { return sign(eval_quantity(x.arg, env)); },
            [&](const QICap& x) {
                ICapResult r = icap_model(eval_quantity(x.rate, env), eval_tuplix(x.body, env));
                return r ? *r : Rational(-1);
            },
        },
        q->node);
}

inline TimedTuplix eval_tuplix(const TPtr& t, const Assignment& env) {
    return std::visit(
        overloaded{
            [&](const TEmpty&) { return TimedTuplix::empty(); },
            [&](const TBlock&) { return TimedTuplix::blocked(); },
            [&](const TTransfer& x) {
                return TimedTuplix::schedule({TransferMap{{x.action, eval_quantity(x.amount, env)}}});
            },
            [&](const TZeroTest& x) {
                return eval_quantity(x.arg, env).is_zero() ? TimedTuplix::empty()
                                                           : TimedTuplix::blocked();
            },
            [&](const TConj& x) {
                return conj_model(eval_tuplix(x.lhs, env), eval_tuplix(x.rhs, env));
            },
            [&](const TDelay& x) { return delay_model(eval_tuplix(x.body, env)); },
            [&](const TPreAbstr& x) {
                std::set<std::string> I(x.actions.begin(), x.actions.end());
                return pabstr_model(I, eval_tuplix(x.body, env));
            },
            [&](const TIntEncap& x) {
                std::set<std::string> H(x.actions.begin(), x.actions.end());
                return iencap_model(H, eval_quantity(x.rate, env), eval_tuplix(x.body, env));
            },
        },
        t->node);
}

/// Denotation of a closed term; throws UnboundVariable if it is not closed.
inline TimedTuplix eval_model(const TPtr& t) { return eval_tuplix(t, {}); }

}  // namespace ttc
