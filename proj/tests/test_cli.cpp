#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "qchar/cli.hpp"
#include "qchar/multivar.hpp"

using namespace qchar;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("jd emits the factored sum") {
    const Run r = run({"jd", "--n", "1", "--d", "2", "--json"});
    REQUIRE(r.code == 0);
    const FactoredExpr expected(VScalar(1), ZMonomial{0}, {}, {PochFactor{1, {0}, 2}, PochFactor{1, {1}, 2}});
    CHECK(termsum_equal(termsum_from_json(r.out), TermSum::single(expected)).equal);
}

TEST_CASE("verify reports and exit codes") {
    Run r = run({"verify", "--identity", "toda", "--n", "1", "--cutoff", "0"});
    CHECK(r.code == 0);
    r = run({"verify", "--identity", "theorem31", "--n", "2", "--k", "1", "--window", "3,-10,40"});
    CHECK(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["identity"] == "theorem31");
    CHECK(doc["pass"] == true);
    CHECK(doc["witness"].is_null());
    CHECK(doc["truncation_bounds"].contains("max_height"));

    r = run({"verify", "--identity", "shift", "--n", "2", "--d", "1,1", "--interval", "0:2", "--seed", "7"});
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["params"]["seed"] == 7);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run({"jd", "--n", "1", "--bogus"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"verify", "--identity", "nonsense"}).code == 2);
    CHECK(run({"fermi", "--n", "2", "--d", "1"}).code == 2);
    CHECK(run({"char", "--n", "1", "--k", "1", "--window", "1,5,2"}).code == 2);
}

TEST_CASE("output is deterministic") {
    const std::vector<std::string> args{"verify", "--identity", "convolution", "--n", "2", "--k", "1", "--d", "1,1"};
    const Run a = run(args), b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("fermi on a finite interval") {
    const Run r = run({"fermi", "--n", "1", "--d", "1", "--interval", "1:1"});
    REQUIRE(r.code == 0);
    const FactoredExpr expected(VScalar::v_power(2), ZMonomial{1}, {}, {PochFactor{1, {0}, 1}});
    CHECK(termsum_equal(termsum_from_json(r.out), TermSum::single(expected)).equal);
}

}
