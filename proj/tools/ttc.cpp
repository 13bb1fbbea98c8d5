// Command-line front end: parse, normalize, evaluate and analyze tuplix
// terms describing time-sliced money transfers.
//
// Exit codes: 0 ok/true, 1 false/unequal, 2 parse error, 3 semantic error.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ttc/eval.hpp"
#include "ttc/finance.hpp"
#include "ttc/json_io.hpp"
#include "ttc/parse.hpp"
#include "ttc/print.hpp"
#include "ttc/rewrite.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFalse = 1;
constexpr int kExitParse = 2;
constexpr int kExitSemantic = 3;

struct Options {
    std::vector<std::string> files;
    std::vector<std::string> exprs;
    std::vector<std::string> rate_specs;
    bool json = false;
    std::uint64_t seed = 12345;
    unsigned trials = 200;
    std::string actions_csv;
    std::string borrow = "loan";
    std::string repay = "repay";
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void add_common(CLI::App* cmd, Options& opt, int max_terms) {
    (void)max_terms;  // arity is validated once files and exprs are pooled
    cmd->add_option("input", opt.files, "input file(s) holding one term each");
    cmd->add_option("-e,--expr", opt.exprs, "inline term text");
    cmd->add_option("--rate", opt.rate_specs,
                    "NAME=RAT binds a variable; a bare RAT (or bound NAME) "
                    "sets the analysis rate")
        ->allow_extra_args(false);
    cmd->add_flag("--json", opt.json, "machine-readable output");
    cmd->add_option("--seed", opt.seed, "seed for randomized checks");
    cmd->add_option("--trials", opt.trials, "trials for randomized checks");
    cmd->add_option("--actions", opt.actions_csv, "extra action names (comma separated)");
}

std::vector<std::string> input_texts(const Options& opt, std::size_t expected) {
    std::vector<std::string> texts;
    for (const std::string& path : opt.files) {
        std::ifstream in(path);
        if (!in) throw UsageError("cannot read input file: " + path);
        std::ostringstream buf;
        buf << in.rdbuf();
        texts.push_back(buf.str());
    }
    for (const std::string& e : opt.exprs) texts.push_back(e);
    if (texts.size() != expected)
        throw UsageError("expected " + std::to_string(expected) + " input term(s), got " +
                         std::to_string(texts.size()));
    return texts;
}

struct RateConfig {
    ttc::Assignment bindings;
    std::optional<ttc::Rational> analysis;
    std::optional<std::string> analysis_name;
};

RateConfig parse_rates(const Options& opt) {
    RateConfig cfg;
    for (const std::string& spec : opt.rate_specs) {
        auto eq = spec.find('=');
        if (eq != std::string::npos) {
            std::string name = spec.substr(0, eq);
            std::string value = spec.substr(eq + 1);
            try {
                cfg.bindings[name] = ttc::Rational::from_literal(value);
            } catch (const std::invalid_argument&) {
                throw UsageError("bad rate binding '" + spec + "'");
            }
            continue;
        }
        try {
            cfg.analysis = ttc::Rational::from_literal(spec);
        } catch (const std::invalid_argument&) {
            cfg.analysis_name = spec;
        }
    }
    return cfg;
}

ttc::Rational analysis_rate(const RateConfig& cfg) {
    if (cfg.analysis) return *cfg.analysis;
    if (cfg.analysis_name) {
        auto it = cfg.bindings.find(*cfg.analysis_name);
        if (it == cfg.bindings.end())
            throw UsageError("rate name '" + *cfg.analysis_name + "' is not bound");
        return it->second;
    }
    if (cfg.bindings.size() == 1) return cfg.bindings.begin()->second;
    throw UsageError("no analysis rate given (use --rate RAT)");
}

std::set<std::string> extra_actions(const Options& opt) {
    std::set<std::string> out;
    std::stringstream ss(opt.actions_csv);
    std::string name;
    while (std::getline(ss, name, ','))
        if (!name.empty()) out.insert(name);
    return out;
}

std::string render_table(const ttc::TimedTuplix& value) {
    if (value.is_blocked()) return "BLOCKED";
    if (value.slices().empty()) return "eps (no transfers)";
    std::set<std::string> actions;
    for (const auto& f : value.slices())
        for (const auto& [a, v] : f) actions.insert(a);
    std::vector<std::string> cols(actions.begin(), actions.end());
    std::vector<std::size_t> widths;
    widths.reserve(cols.size());
    for (const auto& c : cols) widths.push_back(c.size());
    std::vector<std::vector<std::string>> cells;
    for (const auto& f : value.slices()) {
        std::vector<std::string> row;
        for (std::size_t j = 0; j < cols.size(); ++j) {
            auto it = f.find(cols[j]);
            row.push_back(it == f.end() ? "." : it->second.to_string());
            widths[j] = std::max(widths[j], row.back().size());
        }
        cells.push_back(std::move(row));
    }
    auto pad = [&](const std::string& s, std::size_t j) {
        return j + 1 == cols.size() ? s : s + std::string(widths[j] - s.size(), ' ');
    };
    std::ostringstream out;
    out << "slice";
    for (std::size_t j = 0; j < cols.size(); ++j) out << "  " << pad(cols[j], j);
    out << "\n";
    for (std::size_t i = 0; i < cells.size(); ++i) {
        std::string idx = std::to_string(i);
        out << std::string(5 - std::min<std::size_t>(5, idx.size()), ' ') << idx;
        for (std::size_t j = 0; j < cols.size(); ++j) out << "  " << pad(cells[i][j], j);
        out << "\n";
    }
    return out.str();
}

int run_fmt(const Options& opt) {
    std::string text = input_texts(opt, 1).front();
    try {
        std::cout << ttc::print(ttc::parse_tuplix(text)) << "\n";
        return kExitOk;
    } catch (const ttc::ParseError& tuplix_err) {
        try {
            std::cout << ttc::print(ttc::parse_quantity(text)) << "\n";
            return kExitOk;
        } catch (const ttc::ParseError&) {
            throw tuplix_err;  // the tuplix reading is the primary one
        }
    }
}

int run_normalize(const Options& opt) {
    std::string text = input_texts(opt, 1).front();
    RateConfig rates = parse_rates(opt);
    ttc::TPtr term = ttc::substitute(ttc::parse_tuplix(text), rates.bindings);
    ttc::CanonicalTuplix canon = ttc::normalize(term);
    if (opt.json) {
        std::cout << ttc::to_json(canon).dump(2) << "\n";
    } else {
        std::cout << ttc::print(ttc::reify(canon)) << "\n";
    }
    return kExitOk;
}

int run_eval(const Options& opt) {
    std::string text = input_texts(opt, 1).front();
    RateConfig rates = parse_rates(opt);
    ttc::TPtr term = ttc::substitute(ttc::parse_tuplix(text), rates.bindings);
    ttc::TimedTuplix value = ttc::eval_model(term);
    if (opt.json) {
        std::cout << ttc::to_json(value).dump(2) << "\n";
    } else {
        std::cout << render_table(value) << "\n";
    }
    return kExitOk;
}

int run_equal(const Options& opt) {
    auto texts = input_texts(opt, 2);
    RateConfig rates = parse_rates(opt);
    ttc::TPtr lhs = ttc::substitute(ttc::parse_tuplix(texts[0]), rates.bindings);
    ttc::TPtr rhs = ttc::substitute(ttc::parse_tuplix(texts[1]), rates.bindings);
    std::set<std::string> vars = ttc::free_vars(lhs);
    ttc::collect_free_vars(rhs, vars);
    if (vars.empty()) {
        bool eq = ttc::equal_model(ttc::eval_model(lhs), ttc::eval_model(rhs));
        if (opt.json)
            std::cout << nlohmann::json{{"equal", eq}, {"definitive", true}}.dump(2) << "\n";
        else
            std::cout << (eq ? "equal" : "unequal") << "\n";
        return eq ? kExitOk : kExitFalse;
    }
    std::mt19937_64 rng(opt.seed);
    for (unsigned i = 0; i < opt.trials; ++i) {
        ttc::Assignment env;
        for (const std::string& v : vars) env[v] = ttc::random_rational(rng);
        if (!ttc::equal_model(ttc::eval_tuplix(lhs, env), ttc::eval_tuplix(rhs, env))) {
            if (opt.json) {
                nlohmann::json witness = nlohmann::json::object();
                for (const auto& [name, value] : env) witness[name] = value.to_string();
                std::cout << nlohmann::json{{"equal", false},
                                            {"definitive", true},
                                            {"witness", std::move(witness)}}
                                 .dump(2)
                          << "\n";
            } else {
                std::cout << "unequal; witness:";
                for (const auto& [name, value] : env)
                    std::cout << " " << name << "=" << value.to_string();
                std::cout << "\n";
            }
            return kExitFalse;
        }
    }
    if (opt.json)
        std::cout << nlohmann::json{{"equal", true},
                                    {"definitive", false},
                                    {"trials", opt.trials}}
                         .dump(2)
                  << "\n";
    else
        std::cout << "equal (probabilistic: " << opt.trials << " trials)\n";
    return kExitOk;
}

int run_icap(const Options& opt) {
    std::string text = input_texts(opt, 1).front();
    RateConfig rates = parse_rates(opt);
    ttc::TPtr term = ttc::substitute(ttc::parse_tuplix(text), rates.bindings);
    ttc::ICapResult r = ttc::implicit_capital(term, analysis_rate(rates));
    if (opt.json) {
        std::cout << ttc::to_json(r).dump(2) << "\n";
    } else if (r) {
        std::cout << r->to_string() << "\n";
    } else {
        std::cout << "undefined (blocked behaviour)\n";
    }
    return kExitOk;
}

int run_pure(const Options& opt) {
    std::string text = input_texts(opt, 1).front();
    RateConfig rates = parse_rates(opt);
    ttc::TPtr term = ttc::substitute(ttc::parse_tuplix(text), rates.bindings);
    ttc::PurityReport r = ttc::is_pure(term, analysis_rate(rates), extra_actions(opt));
    if (opt.json) {
        std::cout << ttc::to_json(r).dump(2) << "\n";
    } else if (r.blocked) {
        std::cout << "pure: false (blocked)\n";
    } else {
        std::cout << "pure: " << (r.pure ? "true" : "false")
                  << " (residual " << r.residual.to_string() << " at rate "
                  << r.rate.to_string() << ")\n";
    }
    return r.pure ? kExitOk : kExitFalse;
}

int run_profit(const Options& opt) {
    auto texts = input_texts(opt, 2);
    RateConfig rates = parse_rates(opt);
    ttc::TPtr product = ttc::substitute(ttc::parse_tuplix(texts[0]), rates.bindings);
    ttc::TPtr behaviour = ttc::substitute(ttc::parse_tuplix(texts[1]), rates.bindings);
    ttc::ProfitReport r = ttc::profits_from(product, behaviour, analysis_rate(rates));
    if (opt.json) {
        std::cout << ttc::to_json(r).dump(2) << "\n";
    } else {
        auto show = [](const ttc::ICapResult& c) {
            return c ? c->to_string() : std::string("undefined");
        };
        std::cout << "capital alone:    " << show(r.icap_behaviour) << "\n"
                  << "capital combined: " << show(r.icap_combined) << "\n"
                  << "profits: " << (r.profits ? "true" : "false") << "\n";
    }
    return r.profits ? kExitOk : kExitFalse;
}

int run_synth(const Options& opt) {
    std::string text = input_texts(opt, 1).front();
    RateConfig rates = parse_rates(opt);
    ttc::TPtr behaviour = ttc::substitute(ttc::parse_tuplix(text), rates.bindings);
    ttc::Rational rate = analysis_rate(rates);
    ttc::TPtr product = ttc::synthesize_pure_credit(behaviour, rate, opt.borrow, opt.repay);
    if (opt.json) {
        ttc::ICapResult capital = ttc::implicit_capital(behaviour, rate);
        std::cout << nlohmann::json{{"term", ttc::print(product)},
                                    {"capital_financed", capital->to_string()},
                                    {"rate", rate.to_string()}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << ttc::print(product) << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"interpreter and analysis toolkit for timed tuplix terms"};
    app.require_subcommand(1);

    Options opt;
    auto* fmt = app.add_subcommand("fmt", "parse a term and reprint it canonically");
    add_common(fmt, opt, 1);
    auto* normalize = app.add_subcommand("normalize", "rewrite to guard + slice rows");
    add_common(normalize, opt, 1);
    auto* eval = app.add_subcommand("eval", "evaluate a closed term to its schedule");
    add_common(eval, opt, 1);
    auto* equal = app.add_subcommand("equal", "compare two terms (randomized when open)");
    add_common(equal, opt, 2);
    auto* icap = app.add_subcommand("icap", "implicit capital of a behaviour at a rate");
    add_common(icap, opt, 1);
    auto* pure = app.add_subcommand("pure", "conservation check at a rate");
    add_common(pure, opt, 1);
    auto* profit = app.add_subcommand("profit", "does the product lower the behaviour's capital?");
    add_common(profit, opt, 2);
    auto* synth = app.add_subcommand("synth", "build a pure credit product for a behaviour");
    add_common(synth, opt, 1);
    synth->add_option("--borrow", opt.borrow, "action name for the loan leg");
    synth->add_option("--repay", opt.repay, "action name for the repayment leg");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitParse;
    }

    try {
        if (app.got_subcommand(fmt)) return run_fmt(opt);
        if (app.got_subcommand(normalize)) return run_normalize(opt);
        if (app.got_subcommand(eval)) return run_eval(opt);
        if (app.got_subcommand(equal)) return run_equal(opt);
        if (app.got_subcommand(icap)) return run_icap(opt);
        if (app.got_subcommand(pure)) return run_pure(opt);
        if (app.got_subcommand(profit)) return run_profit(opt);
        if (app.got_subcommand(synth)) return run_synth(opt);
    } catch (const ttc::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSemantic;
    }
    return kExitOk;
}
