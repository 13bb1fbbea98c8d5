#pragma once

/**
 * @file finance.hpp
 * @brief Financial analyses over closed tuplix terms: purity, implicit
 *        capital, profit comparison, and synthesis of a pure credit product.
 *
 * A behaviour is a pure product at rate r when all of its transfers,
 * pooled slicewise onto iota and discounted back to slice zero at r, sum
 * to exactly zero. The residual reported is that discounted sum.
 */

#include <set>
#include <stdexcept>
#include <string>

#include "ttc/ast.hpp"
#include "ttc/eval.hpp"
#include "ttc/model.hpp"

namespace ttc {

struct PurityReport {
    bool pure = false;
    Rational rate;
    Rational residual;  // meaningful only when not blocked
    bool blocked = false;
};

struct ProfitReport {
    Rational savings_rate;
    ICapResult icap_behaviour;
    ICapResult icap_combined;
    bool profits = false;
};

struct BlockedBehaviour : std::runtime_error {
    BlockedBehaviour() : std::runtime_error("behaviour is blocked") {}
};

struct ActionClash : std::runtime_error {
    explicit ActionClash(const std::string& name)
        : std::runtime_error("action '" + name + "' already occurs in the behaviour") {}
};

/// Conservation check: pool every transfer onto iota and total at `rate`;
/// pure means the behaviour is unblocked and the total is zero. The
/// action universe is everything the term mentions plus `extra_actions`.
inline PurityReport is_pure(const TPtr& t, const Rational& rate,
                            const std::set<std::string>& extra_actions = {}) {
    PurityReport report;
    report.rate = rate;
    TimedTuplix value = eval_model(t);
    if (value.is_blocked()) {
        report.blocked = true;
        return report;
    }
    std::set<std::string> universe = actions_of(t);
    universe.insert(extra_actions.begin(), extra_actions.end());
    TimedTuplix pooled = pabstr_model(universe, value);
    report.residual = atotal(kIota, rate, pooled);
    report.pure = report.residual.is_zero();
    return report;
}

inline ICapResult implicit_capital(const TPtr& t, const Rational& rate) {
    return icap_model(rate, eval_model(t));
}

/// Does owning the product lower the capital the behaviour needs?
inline ProfitReport profits_from(const TPtr& product, const TPtr& behaviour,
                                 const Rational& savings_rate) {
    ProfitReport report;
    report.savings_rate = savings_rate;
    report.icap_behaviour = implicit_capital(behaviour, savings_rate);
    report.icap_combined =
        icap_model(savings_rate, conj_model(eval_model(product), eval_model(behaviour)));
    report.profits = report.icap_behaviour && report.icap_combined &&
                     *report.icap_combined < *report.icap_behaviour;
    return report;
}

/// Builds a credit product that finances the behaviour without capital:
/// borrow the behaviour's implicit capital now, repay it with compound
/// interest after the behaviour's last slice. The result is pure at
/// `rate`, needs no capital itself, and the combination needs none.
/// Fresh action names are required so the loan legs cannot merge with
/// the behaviour's own transfers (note that iota always counts as
/// occurring).
inline TPtr synthesize_pure_credit(const TPtr& behaviour, const Rational& rate,
                                   const std::string& borrow, const std::string& repay) {
    if (rate == Rational(-1)) throw std::invalid_argument("rate -1 is not a usable interest rate");
    ICapResult capital = implicit_capital(behaviour, rate);
    if (!capital) throw BlockedBehaviour();
    const auto used = actions_of(behaviour);
    if (used.count(borrow)) throw ActionClash(borrow);
    if (used.count(repay)) throw ActionClash(repay);
    if (borrow == repay) throw ActionClash(repay);
    if (capital->is_zero()) return t_empty();
    const unsigned long n = delay_depth(behaviour);
    const Rational repayment = pow(Rational(1) + rate, static_cast<std::int64_t>(n)) * *capital;
    return t_conj(t_transfer(borrow, q_const(-*capital)),
                  t_delay(t_transfer(repay, q_const(repayment)), n));
}

}  // namespace ttc
