#pragma once

/**
 * @file rewrite.hpp
 * @brief Symbolic normalization of tuplix-closed terms to canonical form,
 *        plus substitution and the randomized quantity-equality check.
 *
 * A canonical tuplix is a guard (the zero-test argument) together with a
 * sequence of per-slice transfer rows whose entries stay symbolic. The
 * normalizer accumulates guard conjuncts and combines k >= 2 of them as
 * g1/g1 + ... + gk/gk, so a closed combined guard is zero exactly when
 * every conjunct is zero. Closed conjuncts are decided on the spot: zero
 * ones vanish, nonzero ones collapse the whole term to the blocking form
 * (guard 1, no slices).
 *
 * Interest-counting encapsulation eliminates each encapsulated action by
 * transposing its slice-i transfers to slice 0 with weight (1+r)^(-i) and
 * guarding the discounted sum. Transposition across slices is only valid
 * for rates != -1, so when the rate is an open term the side guard
 * 1 - (1+r)/(1+r) is conjoined; for a closed rate the weights themselves
 * settle the matter (at r == -1 they vanish beyond slice 0, which is also
 * how the model totalizes that rate).
 *
 * Implicit-capital subterms in quantity position are resolved by
 * normalizing their body: a blocked body becomes the literal -1, an
 * unblocked one folds backward over its slices into nested max terms.
 * Bodies whose blocked/unblocked status hinges on an open guard raise
 * UnresolvableGuard rather than guessing.
 */

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ttc/ast.hpp"
#include "ttc/eval.hpp"
#include "ttc/print.hpp"

namespace ttc {

struct CanonicalTuplix {
    QPtr guard;
    std::vector<std::map<std::string, QPtr>> slices;

    /// Canonical blocked form is exactly guard 1 with no slices.
    bool is_blocked() const {
        const auto* c = std::get_if<QConst>(&guard->node);
        return c && c->value == Rational(1) && slices.empty();
    }
};

struct UnresolvableGuard : std::runtime_error {
    std::string guard_text;
    explicit UnresolvableGuard(std::string text)
        : std::runtime_error("cannot decide guard symbolically: " + text),
          guard_text(std::move(text)) {}
};

namespace detail {

// Builders with value-preserving constant tidying (x+0, x*1, x*0, literal
// folding). Used only on rewrite-produced terms; the parser keeps trees raw.
inline QPtr mk_add(const QPtr& a, const QPtr& b) {
    const auto* ca = std::get_if<QConst>(&a->node);
    const auto* cb = std::get_if<QConst>(&b->node);
    if (ca && cb) return q_const(ca->value + cb->value);
    if (ca && ca->value.is_zero()) return b;
    if (cb && cb->value.is_zero()) return a;
    return q_add(a, b);
}

inline QPtr mk_mul(const QPtr& a, const QPtr& b) {
    const auto* ca = std::get_if<QConst>(&a->node);
    const auto* cb = std::get_if<QConst>(&b->node);
    if (ca && cb) return q_const(ca->value * cb->value);
    if (ca && ca->value.is_zero()) return q_zero();
    if (cb && cb->value.is_zero()) return q_zero();
    if (ca && ca->value == Rational(1)) return b;
    if (cb && cb->value == Rational(1)) return a;
    return q_mul(a, b);
}

inline QPtr mk_div(const QPtr& a, const QPtr& b) { return mk_mul(a, q_inv(b)); }

inline QPtr mk_max(const QPtr& a, const QPtr& b) {
    QPtr d = mk_add(a, q_neg(b));
    QPtr half = mk_div(mk_add(q_sign(d), q_one()), q_const(2));
    return mk_add(mk_mul(half, d), b);
}

struct NormalForm {
    bool bottom = false;
    std::vector<QPtr> guards;  // open conjuncts, first-occurrence order
    std::vector<std::map<std::string, QPtr>> slices;

    void make_bottom() {
        bottom = true;
        guards.clear();
        slices.clear();
    }

    void add_guard(const QPtr& g) {
        if (bottom) return;
        if (is_closed(g)) {
            if (eval_quantity(g, {}).is_zero()) return;
            make_bottom();
            return;
        }
        for (const QPtr& existing : guards)
            if (equal(existing, g)) return;
        guards.push_back(g);
    }

    void trim() {
        while (!slices.empty() && slices.back().empty()) slices.pop_back();
    }
};

NormalForm normalize_impl(const TPtr& t);

/// Rewrites implicit-capital subterms away, bottom-up.
inline QPtr resolve_quantity(const QPtr& q) {
    return std::visit(
        overloaded{
            [&](const QConst&) { return q; },
            [&](const QVar&) { return q; },
            [&](const QAdd& x) { return q_add(resolve_quantity(x.lhs), resolve_quantity(x.rhs)); },
            [&](const QMul& x) { return q_mul(resolve_quantity(x.lhs), resolve_quantity(x.rhs)); },
            [&](const QNeg& x) { return q_neg(resolve_quantity(x.arg)); },
            [&](const QInv& x) { return q_inv(resolve_quantity(x.arg)); },
            [&](const QSign& x) { return q_sign(resolve_quantity(x.arg)); },
            [&](const QICap& x) {
                QPtr rate = resolve_quantity(x.rate);
                NormalForm body = normalize_impl(x.body);
                if (body.bottom) return q_const(-1);
                if (!body.guards.empty())
                    throw UnresolvableGuard(print(body.guards.front()));
                // Backward fold: last slice needs max(sum, 0), earlier ones
                // max(sum + acc/(1+rate), 0). Slice sums pool all entries.
                QPtr one_plus = mk_add(q_one(), rate);
                QPtr acc = q_zero();
                for (std::size_t k = body.slices.size(); k > 0; --k) {
                    QPtr slice_sum = q_zero();
                    for (const auto& [action, amount] : body.slices[k - 1])
                        slice_sum = mk_add(slice_sum, amount);
                    if (k == body.slices.size())
                        acc = mk_max(slice_sum, q_zero());
                    else
                        acc = mk_max(mk_add(slice_sum, mk_div(acc, one_plus)), q_zero());
                }
                return acc;
            },
        },
        q->node);
}

inline NormalForm normalize_impl(const TPtr& t) {
    return std::visit(
        overloaded{
            [&](const TEmpty&) { return NormalForm{}; },
            [&](const TBlock&) {
                NormalForm nf;
                nf.make_bottom();
                return nf;
            },
            [&](const TTransfer& x) {
                NormalForm nf;
                nf.slices.push_back({{x.action, resolve_quantity(x.amount)}});
                return nf;
            },
            [&](const TZeroTest& x) {
                NormalForm nf;
                nf.add_guard(resolve_quantity(x.arg));
                return nf;
            },
            [&](const TConj& x) {
                NormalForm lhs = normalize_impl(x.lhs);
                if (lhs.bottom) return lhs;
                NormalForm rhs = normalize_impl(x.rhs);
                if (rhs.bottom) return rhs;
                for (const QPtr& g : rhs.guards) lhs.add_guard(g);
                if (lhs.bottom) return lhs;
                if (lhs.slices.size() < rhs.slices.size()) lhs.slices.resize(rhs.slices.size());
                for (std::size_t i = 0; i < rhs.slices.size(); ++i) {
                    for (const auto& [action, amount] : rhs.slices[i]) {
                        auto [it, inserted] = lhs.slices[i].emplace(action, amount);
                        if (!inserted) it->second = q_add(it->second, amount);
                    }
                }
                return lhs;
            },
            [&](const TDelay& x) {
                NormalForm nf = normalize_impl(x.body);
                if (nf.bottom) return nf;
                nf.slices.emplace(nf.slices.begin());
                nf.trim();
                return nf;
            },
            [&](const TPreAbstr& x) {
                NormalForm nf = normalize_impl(x.body);
                if (nf.bottom) return nf;
                for (auto& slice : nf.slices) {
                    QPtr collapsed;
                    if (auto it = slice.find(kIota); it != slice.end()) {
                        collapsed = it->second;  // a booked iota amount joins the sum
                        slice.erase(it);
                    }
                    for (const std::string& action : x.actions) {
                        auto it = slice.find(action);
                        if (it == slice.end()) continue;
                        collapsed = collapsed ? q_add(collapsed, it->second) : it->second;
                        slice.erase(it);
                    }
                    if (collapsed) slice.emplace(kIota, collapsed);
                }
                return nf;
            },
            [&](const TIntEncap& x) {
                NormalForm nf = normalize_impl(x.body);
                if (nf.bottom) return nf;
                QPtr rate = resolve_quantity(x.rate);
                const bool rate_closed = is_closed(rate);
                std::optional<Rational> rate_value;
                if (rate_closed) rate_value = eval_quantity(rate, {});
                QPtr one_plus = mk_add(q_one(), rate);
                bool transposed = false;
                for (const std::string& action : x.actions) {
                    QPtr total;
                    for (std::size_t i = 0; i < nf.slices.size(); ++i) {
                        auto it = nf.slices[i].find(action);
                        if (it == nf.slices[i].end()) continue;
                        if (i >= 1) transposed = true;
                        QPtr contribution;
                        if (rate_closed) {
                            Rational w = pow(Rational(1) + *rate_value,
                                             -static_cast<std::int64_t>(i));
                            contribution = mk_mul(q_const(w), it->second);
                        } else if (i == 0) {
                            contribution = it->second;
                        } else {
                            contribution =
                                mk_div(it->second, q_pow(one_plus, static_cast<unsigned long>(i)));
                        }
                        total = total ? mk_add(total, contribution) : contribution;
                        nf.slices[i].erase(it);
                    }
                    if (total) nf.add_guard(total);
                    if (nf.bottom) return nf;
                }
                if (transposed && !rate_closed) {
                    // Transposition needs rate != -1; record the side condition.
                    nf.add_guard(q_sub(q_one(), q_div(one_plus, one_plus)));
                }
                nf.trim();
                return nf;
            },
        },
        t->node);
}

}  // namespace detail

/// Normal form provably equal to t. Throws UnresolvableGuard when an
/// implicit-capital body's blockedness depends on open variables.
inline CanonicalTuplix normalize(const TPtr& t) {
    detail::NormalForm nf = detail::normalize_impl(t);
    if (nf.bottom) return CanonicalTuplix{q_one(), {}};
    QPtr guard;
    if (nf.guards.empty()) {
        guard = q_zero();
    } else if (nf.guards.size() == 1) {
        guard = nf.guards.front();
    } else {
        for (const QPtr& g : nf.guards) {
            QPtr part = q_div(g, g);
            guard = guard ? q_add(guard, part) : part;
        }
    }
    return CanonicalTuplix{guard, std::move(nf.slices)};
}

/// Rebuilds a tuplix term from a canonical form: guard test, slice-0
/// transfers, then the delayed remainder, nested slice by slice.
inline TPtr reify(const CanonicalTuplix& c) {
    if (c.is_blocked()) return t_block();
    TPtr tail;
    for (std::size_t k = c.slices.size(); k > 0; --k) {
        TPtr layer;
        for (const auto& [action, amount] : c.slices[k - 1]) {
            TPtr tr = t_transfer(action, amount);
            layer = layer ? t_conj(layer, tr) : tr;
        }
        if (tail) {
            TPtr delayed = t_delay(tail);
            tail = layer ? t_conj(layer, delayed) : delayed;
        } else {
            tail = layer;  // trimmed, so the last row is never empty
        }
    }
    const auto* zero = std::get_if<QConst>(&c.guard->node);
    const bool trivial_guard = zero && zero->value.is_zero();
    if (!trivial_guard) {
        TPtr guard_term = t_test(c.guard);
        return tail ? t_conj(guard_term, tail) : guard_term;
    }
    return tail ? tail : t_empty();
}

// --- Substitution ---------------------------------------------------------------

QPtr substitute(const QPtr& q, const Assignment& env);
TPtr substitute(const TPtr& t, const Assignment& env);

inline QPtr substitute(const QPtr& q, const Assignment& env) {
    return std::visit(
        overloaded{
            [&](const QConst&) { return q; },
            [&](const QVar& v) {
                auto it = env.find(v.name);
                return it == env.end() ? q : q_const(it->second);
            },
            [&](const QAdd& x) { return q_add(substitute(x.lhs, env), substitute(x.rhs, env)); },
            [&](const QMul& x) { return q_mul(substitute(x.lhs, env), substitute(x.rhs, env)); },
            [&](const QNeg& x) { return q_neg(substitute(x.arg, env)); },
            [&](const QInv& x) { return q_inv(substitute(x.arg, env)); },
            [&](const QSign& x) { return q_sign(substitute(x.arg, env)); },
            [&](const QICap& x) {
                return q_icap(substitute(x.rate, env), substitute(x.body, env));
            },
        },
        q->node);
}

inline TPtr substitute(const TPtr& t, const Assignment& env) {
    return std::visit(
        overloaded{
            [&](const TEmpty&) { return t; },
            [&](const TBlock&) { return t; },
            [&](const TTransfer& x) { return t_transfer(x.action, substitute(x.amount, env)); },
            [&](const TZeroTest& x) { return t_test(substitute(x.arg, env)); },
            [&](const TConj& x) { return t_conj(substitute(x.lhs, env), substitute(x.rhs, env)); },
            [&](const TDelay& x) { return t_delay(substitute(x.body, env)); },
            [&](const TPreAbstr& x) { return t_pabstr(x.actions, substitute(x.body, env)); },
            [&](const TIntEncap& x) {
                return t_iencap(x.actions, substitute(x.rate, env), substitute(x.body, env));
            },
        },
        t->node);
}

// --- Randomized equality on open quantity terms ----------------------------------

struct EqualityVerdict {
    bool probably_equal;
    Assignment counterexample;  // a definitive witness when !probably_equal
};

/// Draws a carrier value; zero and the units come up often so that the
/// totalized-inverse branches get exercised.
inline Rational random_rational(std::mt19937_64& rng) {
    switch (std::uniform_int_distribution<int>(0, 9)(rng)) {
        case 0:
        case 1:
        case 2:
            return Rational(0);
        case 3:
            return Rational(1);
        case 4:
            return Rational(-1);
        case 5:
        case 6: {
            return Rational(std::uniform_int_distribution<long>(-6, 6)(rng));
        }
        case 7:
        case 8: {
            long n = std::uniform_int_distribution<long>(-24, 24)(rng);
            long d = std::uniform_int_distribution<long>(1, 12)(rng);
            return Rational(n, d);
        }
        default: {
            long n = std::uniform_int_distribution<long>(-1000000, 1000000)(rng);
            long d = std::uniform_int_distribution<long>(1, 1000)(rng);
            return Rational(n, d);
        }
    }
}

/// Probabilistic equality over all assignments to the free variables.
/// An inequality verdict is definitive and carries its witness; equality
/// is only "no counterexample in `trials` draws". Deterministic per seed.
inline EqualityVerdict check_equal_random(const QPtr& q1, const QPtr& q2, unsigned trials,
                                          std::uint64_t seed) {
    std::set<std::string> vars = free_vars(q1);
    collect_free_vars(q2, vars);
    std::mt19937_64 rng(seed);
    const unsigned rounds = vars.empty() ? 1 : trials;
    for (unsigned i = 0; i < rounds; ++i) {
        Assignment env;
        for (const std::string& v : vars) env[v] = random_rational(rng);
        if (eval_quantity(q1, env) != eval_quantity(q2, env))
            return EqualityVerdict{false, std::move(env)};
    }
    return EqualityVerdict{true, {}};
}

}  // namespace ttc
