#pragma once

/**
 * @file json_io.hpp
 * @brief JSON views of model values, canonical forms, and reports.
 *
 * Rationals serialize as exact strings ("7", "-8", "707/100"); nothing
 * here ever rounds.
 */

#include <json.hpp>

#include "ttc/finance.hpp"
#include "ttc/model.hpp"
#include "ttc/print.hpp"
#include "ttc/rewrite.hpp"

namespace ttc {

inline nlohmann::json to_json(const TimedTuplix& t) {
    if (t.is_blocked()) return nlohmann::json{{"blocked", true}};
    nlohmann::json slices = nlohmann::json::array();
    for (const TransferMap& f : t.slices()) {
        nlohmann::json row = nlohmann::json::object();
        for (const auto& [action, value] : f) row[action] = value.to_string();
        slices.push_back(std::move(row));
    }
    return nlohmann::json{{"slices", std::move(slices)}};
}

inline nlohmann::json to_json(const CanonicalTuplix& c) {
    nlohmann::json slices = nlohmann::json::array();
    for (const auto& row : c.slices) {
        nlohmann::json out = nlohmann::json::object();
        for (const auto& [action, amount] : row) out[action] = print(amount);
        slices.push_back(std::move(out));
    }
    return nlohmann::json{
        {"blocked", c.is_blocked()}, {"guard", print(c.guard)}, {"slices", std::move(slices)}};
}

inline nlohmann::json to_json(const ICapResult& r) {
    if (!r) return nlohmann::json{{"defined", false}};
    return nlohmann::json{{"defined", true}, {"amount", r->to_string()}};
}

inline nlohmann::json to_json(const PurityReport& r) {
    return nlohmann::json{{"pure", r.pure},
                          {"blocked", r.blocked},
                          {"rate", r.rate.to_string()},
                          {"residual", r.residual.to_string()}};
}

inline nlohmann::json to_json(const ProfitReport& r) {
    return nlohmann::json{{"savings_rate", r.savings_rate.to_string()},
                          {"icap_behaviour", to_json(r.icap_behaviour)},
                          {"icap_combined", to_json(r.icap_combined)},
                          {"profits", r.profits}};
}

}  // namespace ttc
