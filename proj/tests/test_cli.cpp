#include <cmath>
#include <sstream>

#include "doctest.h"
#include "oplab/cli.hpp"
#include "oplab/json_io.hpp"
#include "oplab/report.hpp"

using namespace oplab;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

const char* kAlpha = R"({"prefix":[1.0,0.5]})";
const char* kElement =
    R"({"n":2,"e":[{"index":1,"matrix":[[1,0],[0,0]]},{"index":2,"matrix":[[0,0],[1,0]]}]})";

}  // namespace

TEST_CASE("norm subcommand reports both norm routes") {
    CliRun r = run({"norm", "--alpha", kAlpha, "--element", kElement});
    REQUIRE(r.code == 0);
    Json j = parse_json(r.out);
    CHECK(j.at("command") == "norm");
    CHECK(j.at("outputs").at("value").get<double>() ==
          doctest::Approx(std::sqrt(1.25)).epsilon(1e-12));
    CHECK(j.at("outputs").at("concrete").get<double>() ==
          doctest::Approx(std::sqrt(1.25)).epsilon(1e-12));
}

TEST_CASE("cbnorm subcommand on the diagonal identity") {
    CliRun r = run({"cbnorm", "--alpha", R"({"prefix":[0.5,0.5]})", "--beta", kAlpha,
                    "--depth", "2"});
    REQUIRE(r.code == 0);
    Json j = parse_json(r.out);
    CHECK(j.at("outputs").at("value").get<double>() ==
          doctest::Approx(std::sqrt(1.25)).epsilon(1e-12));
    CHECK(j.at("outputs").at("certified").get<bool>());

    // flag combinations are validated before any work happens
    CliRun bad = run({"cbnorm", "--alpha", kAlpha});
    CHECK(bad.code == 64);
}

TEST_CASE("sequence verdicts through the CLI") {
    std::string sorted = R"({"prefix":[1.0,0.5],"flags":["sorted"]})";
    CliRun r = run({"seq-equiv", "--alpha", sorted, "--beta", sorted});
    REQUIRE(r.code == 0);
    Json j = parse_json(r.out);
    CHECK(j.at("outputs").at("verdict").at("kind") == "equivalent");
    CHECK(j.at("outputs").at("verdict").at("K").get<std::uint64_t>() == 1);

    // missing sorted flag is a precondition failure, not a parse failure
    CliRun unsorted = run({"seq-dom", "--alpha", kAlpha, "--beta", kAlpha});
    CHECK(unsorted.code == 2);
}

TEST_CASE("star-equiv on identical level sequences") {
    std::string seq = R"({"prefix":[1,2],"tail":{"kind":"const","value":"inf"}})";
    CliRun r = run({"star-equiv", "--beta", seq, "--gamma", seq});
    REQUIRE(r.code == 0);
    Json j = parse_json(r.out);
    CHECK(j.at("outputs").at("verdict").at("kind") == "equivalent");
    CHECK(j.at("outputs").at("verdict").at("K").get<std::uint64_t>() <= 1);
}

TEST_CASE("reduction subcommands") {
    CliRun n = run({"reduce-n", "--spectrum", "[1.0,0.125]", "--k", "2"});
    REQUIRE(n.code == 0);
    CHECK(parse_json(n.out).at("outputs").at("value").get<std::uint64_t>() == 4);

    CliRun y = run({"reduce-y", "--beta",
                    R"({"prefix":[1],"tail":{"kind":"const","value":"inf"}})",
                    "--spectrum", "[1.0,0.5]"});
    REQUIRE(y.code == 0);
    Json yj = parse_json(y.out);
    CHECK(yj.at("outputs").at("angles").at(0).at("sin").get<double>() ==
          doctest::Approx(0.75).epsilon(1e-15));

    CliRun be = run({"b-epsilon", "--bits", "[1,0]", "--depth", "4"});
    REQUIRE(be.code == 0);
    Json bj = parse_json(be.out);
    CHECK(bj.at("outputs").at("sample") == Json::array({0, 0, 2, 0}));

    CliRun phi = run({"reduce-phi", "--point", R"({"prefix":[0]})", "--alpha",
                      R"({"tail":{"kind":"log4"}})", "--depth", "5"});
    REQUIRE(phi.code == 0);
    Json pj = parse_json(phi.out);
    CHECK(pj.at("outputs").at("values") == Json::array({1, 2, 2, 2, 3}));
    CHECK(pj.at("certificates").at("blocks").at(0).at("p") == "1");
}

TEST_CASE("banach subcommands") {
    CliRun r = run({"banach-c", "--phi-t", "0.3", "--dim", "50"});
    REQUIRE(r.code == 0);
    CHECK(parse_json(r.out).at("outputs").at("c").get<double>() ==
          doctest::Approx(0.3).epsilon(1e-10));

    CliRun none = run({"banach-c"});
    CHECK(none.code == 64);

    std::string phi3 = R"({"dim":4,"columns":[[0.3,0.7,0,0,0],[0,0,1,0,0]]})";
    CliRun iso = run({"banach-isometric", "--left", phi3, "--right", phi3});
    REQUIRE(iso.code == 0);
    CHECK(parse_json(iso.out).at("outputs").at("isometric").get<bool>());
}

TEST_CASE("distortion closed form through the CLI") {
    CliRun r = run({"distortion", "--n", "2", "--side", "outside"});
    REQUIRE(r.code == 0);
    CHECK(parse_json(r.out).at("outputs").at("value").get<double>() ==
          doctest::Approx(std::exp2(1.5)).epsilon(1e-12));
    CliRun overflow = run({"distortion", "--n", "9"});
    CHECK(overflow.code == 2);
}

TEST_CASE("usage and parse failures map to the documented exit codes") {
    CHECK(run({}).code == 64);
    CHECK(run({"no-such-command"}).code == 64);
    CHECK(run({"norm", "--alpha", kAlpha}).code == 64);  // missing --element
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"norm", "--alpha", "{not json", "--element", kElement}).code == 65);
    CHECK(run({"norm", "--alpha", "/no/such/file.json", "--element", kElement}).code == 65);
}

TEST_CASE("identical invocations render identical bytes") {
    std::vector<std::string> args = {"cbnorm", "--general",
                                     R"({"A":[[0.5]],"B":[[0.5]],"T":[[1.0]]})",
                                     "--seed", "7"};
    CliRun a = run(args);
    CliRun b = run(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);

    CliRun other = run({"cbnorm", "--general", R"({"A":[[0.5]],"B":[[0.5]],"T":[[1.0]]})",
                        "--seed", "8"});
    Json ja = parse_json(a.out), jo = parse_json(other.out);
    CHECK(ja.at("seed").get<std::uint64_t>() == 7);
    CHECK(jo.at("seed").get<std::uint64_t>() == 8);
}

TEST_CASE("table format renders flat key-value lines") {
    CliRun r = run({"distortion", "--n", "1", "--format", "table"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("command: distortion") != std::string::npos);
    CHECK(r.out.find("outputs.value:") != std::string::npos);
}

TEST_CASE("run reports round-trip through JSON") {
    CliRun r = run({"norm", "--alpha", kAlpha, "--element", kElement});
    REQUIRE(r.code == 0);
    Json j = parse_json(r.out);
    RunReport rep = RunReport::from_json(j);
    CHECK(rep.command == "norm");
    CHECK(rep.to_json() == j);
    CHECK(rep.render("json") == r.out);
    CHECK_THROWS_AS(rep.render("yaml"), InvalidInputError);
}
