#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

struct CliResult {
    int code;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    std::string cmd = std::string(TTC_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    EXPECT_NE(pipe, nullptr);
    std::string out;
    char buf[4096];
    while (fgets(buf, sizeof buf, pipe)) out += buf;
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string q(const std::string& s) { return "\"" + s + "\""; }

}  // namespace

TEST(Cli, EvalRendersTimeline) {
    CliResult r = run_cli("eval -e " + q("a(7) & delay(a'(-8))"));
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("a'"), std::string::npos);
    EXPECT_NE(r.out.find("7"), std::string::npos);
    EXPECT_NE(r.out.find("-8"), std::string::npos);
}

TEST(Cli, EvalBlockedAndEmpty) {
    EXPECT_EQ(run_cli("eval -e bot").out, "BLOCKED\n");
    EXPECT_EQ(run_cli("eval -e bot").code, 0);
    EXPECT_EQ(run_cli("eval -e " + q("test(1)")).out, "BLOCKED\n");
    CliResult r = run_cli("eval -e eps");
    EXPECT_EQ(r.code, 0);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run_cli("eval -e " + q("a(")).code, 2);         // parse error
    EXPECT_EQ(run_cli("eval -e " + q("a(u)")).code, 3);       // unbound variable
    EXPECT_EQ(run_cli("normalize -e " + q("a(icap@0(test(u)))")).code, 3);
    EXPECT_EQ(run_cli("synth --rate 0 -e bot").code, 3);      // blocked behaviour
}

TEST(Cli, BindingsSubstitute) {
    CliResult r = run_cli("eval --rate u=3 -e " + q("a(u)"));
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("3"), std::string::npos);
}

TEST(Cli, EqualClosedAndOpen) {
    EXPECT_EQ(run_cli("equal -e " + q("test(0)") + " -e eps").code, 0);
    EXPECT_EQ(run_cli("equal -e " + q("a(0)") + " -e eps").code, 1);
    // the derived canonical shape is model-equal at every assignment,
    // including the degenerate rate where the transposition law is mute
    CliResult open = run_cli(
        "equal --trials 120 -e " + q("enc{a}@p(a(u) & delay(a(5)) & delay^2(b(u-7)))") + " -e " +
        q("test(u + 5/(1+p)) & delay^2(b(u-7))"));
    EXPECT_EQ(open.code, 0);
    EXPECT_NE(open.out.find("probabilistic"), std::string::npos);
}

TEST(Cli, EqualSeedDeterminism) {
    std::string args = "equal --seed 5 -e " + q("a(u)") + " -e " + q("a(u+1)");
    CliResult first = run_cli(args);
    CliResult second = run_cli(args);
    EXPECT_EQ(first.code, 1);
    EXPECT_EQ(first.out, second.out);
}

TEST(Cli, CapitalAndPurity) {
    CliResult icap = run_cli("icap --rate 1/100 -e " +
                             q("a(7) & delay(a'(-8)) & b(-5) & delay^2(b'((1+1/10)^2*5))"));
    EXPECT_EQ(icap.code, 0);
    EXPECT_EQ(icap.out, "2\n");
    EXPECT_NE(run_cli("icap --rate 0 -e bot").out.find("undefined"), std::string::npos);

    CliResult pure = run_cli("pure --rate 1/10 -e " + q("b(-5) & delay^2(b'((11/10)^2*5))"));
    EXPECT_EQ(pure.code, 0);
    EXPECT_NE(pure.out.find("pure: true"), std::string::npos);
    EXPECT_EQ(run_cli("pure --rate 1/100 -e " + q("b(-5) & delay^2(b'((11/10)^2*5))")).code, 1);
    EXPECT_EQ(run_cli("pure --rate 1/10 --actions x,y -e " +
                      q("b(-5) & delay^2(b'((11/10)^2*5))"))
                  .code,
              0);
}

TEST(Cli, RateNameReferenceAndBindings) {
    // q is substituted into the term; the bare name p picks the analysis rate
    CliResult r = run_cli(
        "icap --rate p=1/100 --rate q=1/10 --rate p -e " +
        q("b(-5) & delay^2(b'((1+q)^2*5)) & a(7) & delay(a'(-8))"));
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "2\n");
    // an unbound rate name is rejected
    EXPECT_EQ(run_cli("icap --rate nosuch -e " + q("a(1)")).code, 2);
}

TEST(Cli, ProfitScenario) {
    CliResult r = run_cli("profit --rate 1/100 -e " + q("b(-5) & delay^2(b'((1+1/10)^2*5))") +
                          " -e " + q("a(7) & delay(a'(-8))"));
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("profits: true"), std::string::npos);
    CliResult no = run_cli("profit --rate 1/100 -e eps -e " + q("a(7) & delay(a'(-8))"));
    EXPECT_EQ(no.code, 1);
}

TEST(Cli, SynthPrintsProduct) {
    CliResult r = run_cli("synth --rate 1/100 -e " + q("a(7) & delay(a'(-8))"));
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "loan(-7) & delay(repay(707/100))\n");
    EXPECT_EQ(run_cli("synth --rate 1/100 --no-such-flag -e " + q("a(1)")).code, 2);
    CliResult renamed = run_cli("synth --rate 1/100 --borrow give --repay back -e " +
                                q("a(7) & delay(a'(-8))"));
    EXPECT_EQ(renamed.out, "give(-7) & delay(back(707/100))\n");
}

TEST(Cli, FmtIsIdempotent) {
    CliResult once = run_cli("fmt -e " + q("a( 7 )&delay( a'( -8 ) )"));
    EXPECT_EQ(once.code, 0);
    EXPECT_EQ(once.out, "a(7) & delay(a'(-8))\n");
    std::string printed = once.out.substr(0, once.out.size() - 1);
    CliResult twice = run_cli("fmt -e " + q(printed));
    EXPECT_EQ(twice.out, once.out);
    // falls back to quantity terms
    EXPECT_EQ(run_cli("fmt -e " + q("u  +1")).out, "u + 1\n");
}

TEST(Cli, JsonOutputs) {
    CliResult eval = run_cli("eval --json -e " + q("a(7) & delay(a'(-8))"));
    EXPECT_EQ(eval.code, 0);
    nlohmann::json v = nlohmann::json::parse(eval.out);
    ASSERT_TRUE(v.contains("slices"));
    EXPECT_EQ(v["slices"][0]["a"], "7");
    EXPECT_EQ(v["slices"][1]["a'"], "-8");

    nlohmann::json blocked = nlohmann::json::parse(run_cli("eval --json -e bot").out);
    EXPECT_EQ(blocked["blocked"], true);

    nlohmann::json icap = nlohmann::json::parse(
        run_cli("icap --json --rate 1/100 -e " +
                q("a(7) & delay(a'(-8)) & b(-5) & delay^2(b'((1+1/10)^2*5))"))
            .out);
    EXPECT_EQ(icap["defined"], true);
    EXPECT_EQ(icap["amount"], "2");

    nlohmann::json canon = nlohmann::json::parse(
        run_cli("normalize --json -e " + q("enc{a}@1(a(1) & delay(a(-2)))")).out);
    EXPECT_EQ(canon["blocked"], false);
    EXPECT_EQ(canon["guard"], "0");

    nlohmann::json pure = nlohmann::json::parse(
        run_cli("pure --json --rate 1/10 -e " + q("b(-5) & delay^2(b'((11/10)^2*5))")).out);
    EXPECT_EQ(pure["pure"], true);
    EXPECT_EQ(pure["residual"], "0");
    EXPECT_EQ(pure["rate"], "1/10");

    nlohmann::json profit = nlohmann::json::parse(
        run_cli("profit --json --rate 1/100 -e " + q("b(-5) & delay^2(b'((1+1/10)^2*5))") +
                " -e " + q("a(7) & delay(a'(-8))"))
            .out);
    EXPECT_EQ(profit["profits"], true);
    EXPECT_EQ(profit["icap_behaviour"]["amount"], "7");
    EXPECT_EQ(profit["icap_combined"]["amount"], "2");
}

TEST(Cli, FileInput) {
    std::string path = ::testing::TempDir() + "/ttc_cli_input.ttc";
    {
        std::ofstream out(path);
        out << "# a two-slice behaviour\n";
        out << "a(7) & delay(a'(-8))\n";
    }
    CliResult r = run_cli("icap --rate 1/100 " + path);
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "7\n");
    EXPECT_EQ(run_cli("eval /no/such/file.ttc").code, 2);
}
