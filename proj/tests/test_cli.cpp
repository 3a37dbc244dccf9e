#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "emdd/cli.hpp"

using json = nlohmann::ordered_json;

namespace {

const std::string kDataDir = EMDD_DATA_DIR;

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = emdd::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = std::string("/tmp/emdd_cli_") + name;
    std::ofstream f(path);
    f << content;
    return path;
}

}  // namespace

TEST_CASE("emd subcommand") {
    CliResult r = run({"emd", "--dists", "4,0,1;1,2,2;0,5,0", "--json"});
    REQUIRE(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["discrete"] == 6);
    CHECK(doc["continuous"]["num"] == "6");
    CHECK(doc["continuous"]["den"] == "5");
    CHECK(doc["unit_normalized"]["decimal"] == "0.600000");

    CliResult text = run({"emd", "--dists", "3,3,4;1,0,9"});
    CHECK(text.code == 0);
    CHECK(text.out.find("discrete EMD:        7") != std::string::npos);
    CHECK(text.out.find("0.700000") != std::string::npos);

    CliResult zero = run({"emd", "--dists", "1,2;1,2", "--json"});
    CHECK(json::parse(zero.out)["discrete"] == 0);
}

TEST_CASE("emd plan output") {
    CliResult r = run({"emd", "--dists", "3,3,4;1,0,9", "--plan", "--json"});
    REQUIRE(r.code == 0);
    json doc = json::parse(r.out);
    REQUIRE(doc.contains("plan"));
    json want = json::array({json{{"position", {1, 1}}, {"weight", 1}},
                             json{{"position", {1, 3}}, {"weight", 2}},
                             json{{"position", {2, 3}}, {"weight", 3}},
                             json{{"position", {3, 3}}, {"weight", 4}}});
    CHECK(doc["plan"] == want);
}

TEST_CASE("emd input errors") {
    CHECK(run({"emd", "--dists", "1,2;1,2,0"}).code == 4);       // shape mismatch
    CHECK(run({"emd", "--dists", "1,2;2,2"}).code == 4);         // mass mismatch
    CHECK(run({"emd", "--dists", "1,2"}).code == 4);             // single distribution
    CHECK(run({"emd", "--dists", "1,x;1,0"}).code == 4);         // parse failure
    CHECK(run({"emd", "--dists", "1,2;2,2"}).err.find("--rescale") != std::string::npos);

    CliResult rescaled = run({"emd", "--dists", "2,0;1,2", "--rescale", "--json"});
    REQUIRE(rescaled.code == 0);
    json doc = json::parse(rescaled.out);
    CHECK(doc["rescaled"] == true);
    CHECK(doc["mass"] == 3);
    CHECK(doc["distributions"][0] == json::array({3, 0}));
}

TEST_CASE("emd csv input") {
    std::string plain = write_temp("dists.csv", "4,0,1\n1,2,2\n0,5,0\n");
    CliResult r = run({"emd", "--csv", plain, "--json"});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["discrete"] == 6);

    CliResult table = run({"emd", "--csv", kDataDir + "/math232_spring2019.csv", "--json"});
    REQUIRE(table.code == 0);
    CHECK(json::parse(table.out)["discrete"] == 49);

    CHECK(run({"emd", "--csv", "/tmp/emdd_definitely_missing.csv"}).code == 4);
}

TEST_CASE("expected subcommand") {
    CliResult r = run({"expected", "-d", "2", "-n", "2", "--json"});
    REQUIRE(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["expected"]["num"] == "1");
    CHECK(doc["expected"]["den"] == "3");
    CHECK(doc["expected"]["decimal"] == "0.333333");

    CliResult norm = run({"expected", "-d", "7", "-n", "5", "--normalized"});
    CHECK(norm.out == "0.298621\n");

    CliResult third = run({"expected", "-d", "3", "-n", "4", "--digits", "4"});
    CHECK(third.out.find("1.0286") != std::string::npos);

    CliResult table = run({"expected", "--table", "4", "--json"});
    json tdoc = json::parse(table.out);
    REQUIRE(tdoc["rows"].size() == 3);
    CHECK(tdoc["rows"][0]["pair"]["decimal"] == "0.333333");
    CHECK(tdoc["rows"][0]["ratio"]["num"] == "3");
    CHECK(tdoc["rows"][0]["ratio"]["den"] == "2");

    CliResult disc = run({"expected", "-d", "2", "-n", "2", "--discrete", "1", "--json"});
    json ddoc = json::parse(disc.out);
    CHECK(ddoc["expected_discrete"]["num"] == "1");
    CHECK(ddoc["expected_discrete"]["den"] == "2");

    CliResult degenerate = run({"expected", "-d", "1", "-n", "5", "--json"});
    REQUIRE(degenerate.code == 0);
    CHECK(json::parse(degenerate.out)["unit_normalized"].is_null());
}

TEST_CASE("histogram subcommand") {
    CliResult r = run({"histogram", "-d", "2", "-n", "3", "-s", "5", "--json"});
    REQUIRE(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["total"] == 441);
    CHECK(doc["counts"][0] == 21);
    CHECK(doc["skewness"].get<double>() > 0);

    CliResult gf = run({"histogram", "-d", "2", "-n", "3", "-s", "5", "--via-genfunc", "--json"});
    json gdoc = json::parse(gf.out);
    CHECK(gdoc["counts"] == doc["counts"]);

    CliResult single = run({"histogram", "-d", "1", "-n", "3", "-s", "5", "--json"});
    json sdoc = json::parse(single.out);
    CHECK(sdoc["counts"] == json::array({21}));

    CliResult csv = run({"histogram", "-d", "2", "-n", "2", "-s", "2", "--csv"});
    CHECK(csv.out.rfind("value,count\n0,3\n1,4\n2,2\n", 0) == 0);

    CliResult over = run({"histogram", "-d", "5", "-n", "5", "-s", "20"});
    CHECK(over.code == 3);
    CHECK(over.err.find("--via-genfunc") != std::string::npos);

    setenv("EMDD_ENUM_BUDGET", "10", 1);
    CHECK(run({"histogram", "-d", "2", "-n", "3", "-s", "5"}).code == 3);
    CHECK(run({"histogram", "-d", "2", "-n", "3", "-s", "5", "--budget", "500"}).code == 0);
    unsetenv("EMDD_ENUM_BUDGET");
}

TEST_CASE("monge subcommand") {
    CliResult builtin = run({"monge", "--builtin", "3", "4", "--json"});
    REQUIRE(builtin.code == 0);
    json doc = json::parse(builtin.out);
    CHECK(doc["monge"] == true);
    CHECK(doc["counterexample"].is_null());
    CHECK(doc["shape"] == json::array({4, 4, 4}));

    std::string violator = write_temp("violator.csv", "1,0\n0,1\n");
    CliResult bad = run({"monge", violator, "--json"});
    REQUIRE(bad.code == 0);
    json bdoc = json::parse(bad.out);
    CHECK(bdoc["monge"] == false);
    CHECK(bdoc["counterexample"]["x"] == json::array({1, 2}));
    CHECK(bdoc["counterexample"]["y"] == json::array({2, 1}));

    std::string shaped = write_temp("shaped.csv", "shape:2,2,2\n5,1\n1,2\n1,2\n2,1\n");
    CliResult s = run({"monge", shaped, "--json"});
    REQUIRE(s.code == 0);
    CHECK(json::parse(s.out)["monge"] == false);

    std::string good3d = write_temp("good3d.csv", "shape:2,2,2\n0,1\n1,1\n1,1\n1,0\n");
    CHECK(json::parse(run({"monge", good3d, "--json"}).out)["monge"] == true);

    CHECK(run({"monge"}).code == 4);
    CHECK(run({"monge", "--builtin", "8", "10"}).code == 3);
    std::string ragged = write_temp("ragged.csv", "1,2\n3\n");
    CHECK(run({"monge", ragged}).code == 4);
    std::string wrong_count = write_temp("wrong_count.csv", "shape:2,2\n1,2,3\n");
    CHECK(run({"monge", wrong_count}).code == 4);
}

TEST_CASE("grades subcommand") {
    CliResult spring = run({"grades", kDataDir + "/math232_spring2019.csv", "--json"});
    REQUIRE(spring.code == 0);
    json doc = json::parse(spring.out);
    CHECK(doc["common_mass"] == 31);
    CHECK(doc["discrete"] == 49);
    CHECK(doc["unit_normalized"]["decimal"] == "0.131720");
    CHECK(doc["expected_normalized"]["decimal"] == "0.298621");
    CHECK(doc["degenerate"] == false);

    CliResult fall = run({"grades", kDataDir + "/math232_fall2019.csv", "--json"});
    json fdoc = json::parse(fall.out);
    CHECK(fdoc["discrete"] == 56);
    CHECK(fdoc["unit_normalized"]["decimal"] == "0.141414");

    std::string single = write_temp("single.csv", "label,A,B\nonly,3,2\n");
    CliResult s = run({"grades", single, "--json"});
    REQUIRE(s.code == 0);
    json sdoc = json::parse(s.out);
    CHECK(sdoc["discrete"] == 0);
    CHECK(sdoc["degenerate"] == true);
    CHECK(sdoc["warning"].is_string());

    CHECK(run({"grades", "/tmp/emdd_definitely_missing.csv"}).code == 4);
}

TEST_CASE("usage errors and help") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"emd", "--no-such-flag"}).code == 2);
    CliResult help = run({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("emd") != std::string::npos);
}

TEST_CASE("json output is deterministic and round-trips") {
    std::vector<std::vector<std::string>> invocations = {
        {"emd", "--dists", "4,0,1;1,2,2;0,5,0", "--plan", "--json"},
        {"expected", "-d", "3", "-n", "3", "--json"},
        {"expected", "--table", "5", "--json"},
        {"histogram", "-d", "2", "-n", "3", "-s", "4", "--json"},
        {"monge", "--builtin", "2", "3", "--json"},
        {"grades", kDataDir + "/math232_fall2019.csv", "--json"},
    };
    for (const auto& args : invocations) {
        CliResult first = run(args);
        CliResult second = run(args);
        REQUIRE(first.code == 0);
        CHECK(first.out == second.out);
        json parsed = json::parse(first.out);
        CHECK(parsed.dump(2) + "\n" == first.out);
    }
}
