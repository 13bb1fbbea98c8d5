#pragma once

/**
 * @file model.hpp
 * @brief Timed tuplices: the denotational values of closed tuplix terms.
 *
 * A timed tuplix is either blocked, or a finite schedule of per-slice
 * transfer maps (action -> amount) with an implicit all-empty tail.
 * Schedules are stored trimmed (no trailing empty slice), so structural
 * equality coincides with semantic equality and is the decision procedure
 * for closed-term equivalence.
 *
 * A map entry a -> 0 is deliberately distinct from an absent entry:
 * performing an action with amount zero is observable, doing nothing is
 * not, and no law collapses the two.
 *
 * Cumulative-interest totals discount later slices back to slice zero:
 * a transfer of v at slice i contributes (1+d)^(-i) * v, making a transfer
 * of v at slice n interchangeable with one of (1+d)*v at slice n+1 for
 * d != -1. At d == -1 the weights degenerate to "slice zero only", keeping
 * every operation total.
 */

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ttc/ast.hpp"
#include "ttc/rational.hpp"

namespace ttc {

using TransferMap = std::map<std::string, Rational>;

class TimedTuplix {
    bool blocked_ = false;
    std::vector<TransferMap> slices_;

    TimedTuplix(bool blocked, std::vector<TransferMap> slices)
        : blocked_(blocked), slices_(std::move(slices)) {}

public:
    static TimedTuplix blocked() { return TimedTuplix(true, {}); }

    /// Builds a schedule, trimming trailing empty slices to canonical form.
    static TimedTuplix schedule(std::vector<TransferMap> slices) {
        while (!slices.empty() && slices.back().empty()) slices.pop_back();
        return TimedTuplix(false, std::move(slices));
    }

    static TimedTuplix empty() { return schedule({}); }

    bool is_blocked() const { return blocked_; }
    const std::vector<TransferMap>& slices() const { return slices_; }

    /// The slice map at index i; empty beyond the stored horizon.
    TransferMap slice_at(std::size_t i) const {
        if (blocked_ || i >= slices_.size()) return {};
        return slices_[i];
    }

    friend bool operator==(const TimedTuplix& a, const TimedTuplix& b) {
        return a.blocked_ == b.blocked_ && a.slices_ == b.slices_;
    }
    friend bool operator!=(const TimedTuplix& a, const TimedTuplix& b) { return !(a == b); }
};

inline bool equal_model(const TimedTuplix& a, const TimedTuplix& b) { return a == b; }

/// Joint effect: blocked absorbs; otherwise slicewise map union with
/// addition on shared actions.
inline TimedTuplix conj_model(const TimedTuplix& a, const TimedTuplix& b) {
    if (a.is_blocked() || b.is_blocked()) return TimedTuplix::blocked();
    const std::size_t n = std::max(a.slices().size(), b.slices().size());
    std::vector<TransferMap> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        TransferMap m = a.slice_at(i);
        for (const auto& [action, value] : b.slice_at(i)) {
            auto [it, inserted] = m.emplace(action, value);
            if (!inserted) it->second += value;
        }
        out.push_back(std::move(m));
    }
    return TimedTuplix::schedule(std::move(out));
}

/// Shifts every slice one step later; blocked stays blocked.
inline TimedTuplix delay_model(const TimedTuplix& t) {
    if (t.is_blocked()) return t;
    std::vector<TransferMap> out;
    out.reserve(t.slices().size() + 1);
    out.emplace_back();
    out.insert(out.end(), t.slices().begin(), t.slices().end());
    return TimedTuplix::schedule(std::move(out));
}

/// Renames the actions in I to iota slicewise, summing the renamed
/// amounts (and any amount already booked on iota) into one entry.
inline TimedTuplix pabstr_model(const std::set<std::string>& I, const TimedTuplix& t) {
    if (t.is_blocked()) return t;
    std::vector<TransferMap> out;
    out.reserve(t.slices().size());
    for (const TransferMap& f : t.slices()) {
        TransferMap m;
        Rational iota_sum;
        bool hit = false;
        for (const auto& [action, value] : f) {
            if (I.count(action)) {
                iota_sum += value;
                hit = true;
            } else {
                m.emplace(action, value);
            }
        }
        if (hit) {
            auto [it, inserted] = m.emplace(kIota, iota_sum);
            if (!inserted) it->second += iota_sum;
        }
        out.push_back(std::move(m));
    }
    return TimedTuplix::schedule(std::move(out));
}

/// Cumulative total for one action: sum over slices where the action
/// occurs of (1+d)^(-i) times the booked amount. Undefined on blocked.
inline Rational atotal(const std::string& action, const Rational& d, const TimedTuplix& t) {
    if (t.is_blocked()) throw std::invalid_argument("atotal: blocked tuplix");
    const Rational w = inv(Rational(1) + d);
    Rational weight(1);
    Rational sum;
    for (const TransferMap& f : t.slices()) {
        if (auto it = f.find(action); it != f.end()) sum += weight * it->second;
        weight *= w;
    }
    return sum;
}

/// Eliminates the actions in H provided each one's cumulative total at
/// rate d is zero; blocks otherwise.
inline TimedTuplix iencap_model(const std::set<std::string>& H, const Rational& d,
                                const TimedTuplix& t) {
    if (t.is_blocked()) return t;
    for (const std::string& action : H)
        if (!atotal(action, d, t).is_zero()) return TimedTuplix::blocked();
    std::vector<TransferMap> out;
    out.reserve(t.slices().size());
    for (const TransferMap& f : t.slices()) {
        TransferMap m;
        for (const auto& [action, value] : f)
            if (!H.count(action)) m.emplace(action, value);
        out.push_back(std::move(m));
    }
    return TimedTuplix::schedule(std::move(out));
}

/// std::nullopt encodes the undefined capital of a blocked behaviour.
using ICapResult = std::optional<Rational>;

/// Least amount of money needed up front to exhibit the behaviour when
/// idle money compounds at rate d. Backward recursion over slices:
/// the last slice needs max(sum, 0), earlier ones max(sum + rest/(1+d), 0).
/// Slice sums already pool every action, so pre-abstraction is implicit.
inline ICapResult icap_model(const Rational& d, const TimedTuplix& t) {
    if (t.is_blocked()) return std::nullopt;
    const Rational w = inv(Rational(1) + d);
    Rational acc;
    const auto& slices = t.slices();
    for (std::size_t k = slices.size(); k > 0; --k) {
        Rational slice_sum;
        for (const auto& [action, value] : slices[k - 1]) slice_sum += value;
        acc = max2(slice_sum + w * acc, Rational(0));
    }
    return acc;
}

}  // namespace ttc
