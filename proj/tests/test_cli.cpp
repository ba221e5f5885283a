#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "../tools/cli.hpp"

#include <json.hpp>

#include <cstdlib>
#include <sstream>

using nlohmann::json;

namespace {

struct Out {
    int code;
    std::string out, err;
};

Out call(std::vector<std::string> args, const std::string& input = "")
{
    std::istringstream in(input);
    std::ostringstream out, err;
    const int code = limitalg::cli::run(args, in, out, err);
    return {code, out.str(), err.str()};
}

json call_json(std::vector<std::string> args, const std::string& input = "")
{
    args.push_back("--json");
    const auto r = call(args, input);
    REQUIRE_MESSAGE(!r.out.empty(), r.err);
    return json::parse(r.out);
}

const char* kSwapSys = "points = 1 2\nphi: 1->2 2->1\n";

} // namespace

TEST_CASE("preset piped into donsig")
{
    const auto p = call({"preset", "refinement-2"});
    CHECK(p.code == 0);
    const auto d = call({"donsig", "-", "--level", "3"}, p.out);
    CHECK(d.code == 0);
    CHECK(d.out.find("not semisimple") != std::string::npos);
    const auto list = call({"preset", "--list"});
    CHECK(list.out.find("paper-example-taf") != std::string::npos);
}

TEST_CASE("radical verdicts and exit codes")
{
    auto j = call_json({"radical", "paper-example-taf", "--unit", "1:0:1:2", "--exponent", "3"});
    CHECK(j["verdict"] == "in-radical");
    CHECK(j["certificates"]["kind"] == "uniform-nilpotency");
    CHECK(j["certificates"]["exponent"] == 3);
    auto r = call({"radical", "paper-example-taf", "--unit", "1:0:1:2", "--exponent", "2"});
    CHECK(r.code == 2);
    r = call({"radical", "standard-2", "--unit", "0:0:1:2"});
    CHECK(r.code == 0);
    CHECK(r.out.find("not-in-radical (chain-cycle)") != std::string::npos);
}

TEST_CASE("input errors exit 1")
{
    CHECK(call({"links", "standard-2", "--unit", "0:0:1:2", "--bogus"}).code == 1);
    CHECK(call({"links", "standard-2", "--unit", "0:0:9:2"}).code == 1);
    CHECK(call({"links", "no-such-preset", "--unit", "0:0:1:2"}).code == 1);
    const auto r = call({"validate", "-"}, "level 0 = [2]\nlevel 1 = [3]\nembed 0 -> 1 {\n");
    CHECK(r.code == 1);
    CHECK(r.err.rfind("error: ", 0) == 0);
    CHECK(call({}).code == 1);
    CHECK(call({"--help"}).code == 0);
}

TEST_CASE("json output is deterministic")
{
    const std::vector<std::vector<std::string>> cmds = {
        {"links", "standard-2", "--unit", "0:0:1:2"},
        {"donsig", "paper-example-taf", "--level", "2"},
        {"audit-order", "standard-2", "--level", "3"},
        {"audit-technical", "--random-trials", "5", "--seed", "4"},
        {"crossed", "t2-z2-sign", "lattice"},
        {"embed", "standard-2", "--unit", "0:0:1:2", "--to", "2"},
    };
    for (auto c : cmds) {
        c.push_back("--json");
        const auto a = call(c), b = call(c);
        CHECK_MESSAGE(a.out == b.out, c[0]);
        CHECK(a.out.find("timings") == std::string::npos);
        const auto j = json::parse(a.out);
        for (const char* key : {"command", "inputs", "verdict", "certificates"})
            CHECK(j.contains(key));
    }
    auto c = cmds[0];
    c.push_back("--json");
    c.push_back("--timings");
    CHECK(json::parse(call(c).out).contains("timings"));
}

TEST_CASE("LIMITALG_HORIZON sets the default horizon")
{
    ::setenv("LIMITALG_HORIZON", "7", 1);
    auto j = call_json({"links", "standard-2", "--unit", "0:0:1:2"});
    CHECK(j["inputs"]["horizon"] == 7);
    j = call_json({"links", "standard-2", "--unit", "0:0:1:2", "--horizon", "3"});
    CHECK(j["inputs"]["horizon"] == 3);
    ::setenv("LIMITALG_HORIZON", "x", 1);
    CHECK(call({"links", "standard-2", "--unit", "0:0:1:2"}).code == 1);
    ::unsetenv("LIMITALG_HORIZON");
    j = call_json({"links", "standard-2", "--unit", "0:0:1:2"});
    CHECK(j["inputs"]["horizon"] == 12);
}

TEST_CASE("crossed subcommands")
{
    auto j = call_json({"crossed", "t2-z2-sign", "radical"});
    CHECK(j["verdict"] == "radical dimension 2");
    CHECK(call({"crossed", "t2-z2-sign", "tight"}).out.find("tight") != std::string::npos);
    CHECK(call({"crossed", "c2-z2-flip", "diag"}).code == 0);
    CHECK(call({"crossed", "t2-z2-sign", "links-lemma"}).out.find("witness for every element") !=
          std::string::npos);
    CHECK(call({"crossed", "t2-z2-sign", "nonsense"}).code == 1);
}

TEST_CASE("peters subcommands read systems from stdin")
{
    auto r = call({"peters", "-", "enum", "--horizon", "0"}, kSwapSys);
    CHECK(r.code == 0);
    CHECK(r.out.find("2 sequences") != std::string::npos);
    r = call({"peters", "-", "check", "--seq", "1;1"}, kSwapSys);
    CHECK(r.out.find("star fails at n=0") != std::string::npos);
    r = call({"peters", "-", "check", "--seq", "1 2; 1; "}, kSwapSys);
    CHECK(r.out.find("star holds") != std::string::npos);
    r = call({"peters", "-", "truncate", "--n", "6", "--seq", "1 2; 1; "}, kSwapSys);
    CHECK(r.out.find("roundtrip exact") != std::string::npos);
    CHECK(call({"peters", "-", "check", "--seq", "7"}, kSwapSys).code == 1);
}

TEST_CASE("audit-technical")
{
    auto r = call({"audit-technical", "refinement-2", "--unit", "0:0:1:2", "--random-trials", "20",
                   "--seed", "5"});
    CHECK(r.code == 0);
    CHECK(r.out.find("chain unsatisfiable") != std::string::npos);
    const auto doc = call({"preset", "refinement-2"}).out;
    CHECK(call({"validate", "-"}, doc).out.find("valid") != std::string::npos);
}
