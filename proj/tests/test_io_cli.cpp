#include <catch_amalgamated.hpp>

#include <valent/cli.hpp>

#include "helpers.hpp"

#include <cstdio>
#include <sstream>

using namespace valent;
using namespace testgen;

namespace {

const std::string kData = VALENT_DATA_DIR;

struct CliResult {
    int code;
    std::string out, err;
};

CliResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("lattice files parse to the worked examples") {
    Lattice l2 = parse_lattice_file(kData + "/example2d.json");
    CHECK(l2.field().p() == 3);
    CHECK(lattice_equal(l2, example_2x2(3)));

    Lattice l3 = parse_lattice_file(kData + "/example3d.json");
    CHECK(lattice_equal(l3, example_3x3(3)));

    Lattice lp = parse_lattice_file(kData + "/example_puiseux.json");
    CHECK(lp.field().is_puiseux());
    CHECK(lp.representative().at(0, 0).valuation() == Val(Rat(1, 2)));
}

TEST_CASE("parse errors carry distinct diagnostics") {
    auto parse = [](const char* text) { return parse_lattice_json(Json::parse(text)); };

    CHECK_THROWS_WITH(parse(R"({"field":{"type":"p-adic","p":3},"matrix":[["1","x"],["0","1"]]})"),
                      Catch::Matchers::ContainsSubstring("malformed rational"));
    CHECK_THROWS_WITH(parse(R"({"field":{"type":"p-adic","p":4},"matrix":[["1"]]})"),
                      Catch::Matchers::ContainsSubstring("prime"));
    CHECK_THROWS_WITH(parse(R"({"field":{"type":"p-adic","p":3},"matrix":[["1","1"],["1","1"]]})"),
                      Catch::Matchers::ContainsSubstring("singular"));
    CHECK_THROWS_WITH(parse(R"({"field":{"type":"p-adic","p":3},"matrix":[["1","0","0"],["0","1"]]})"),
                      Catch::Matchers::ContainsSubstring("square"));
    CHECK_THROWS_WITH(parse(R"({"field":{"type":"puiseux"},"matrix":[[[{"c":"1"}]]]})"),
                      Catch::Matchers::ContainsSubstring("puiseux term"));
    CHECK_THROWS_WITH(parse(R"({"field":{"type":"real"},"matrix":[["1"]]})"),
                      Catch::Matchers::ContainsSubstring("field type"));
    CHECK_THROWS_AS(parse_lattice_file(kData + "/nonexistent.json"), std::invalid_argument);

    std::string big = R"({"field":{"type":"p-adic","p":2},"matrix":[)";
    for (int i = 0; i < 13; ++i) {
        big += i ? ",[" : "[";
        for (int j = 0; j < 13; ++j) big += std::string(j ? "," : "") + "\"" + (i == j ? "1" : "0") + "\"";
        big += "]";
    }
    big += "]}";
    CHECK_THROWS_WITH(parse(big.c_str()), Catch::Matchers::ContainsSubstring("maximum"));
}

TEST_CASE("serialization round-trips through the parser") {
    for (FieldDescriptor f : {FieldDescriptor::padic(5), FieldDescriptor::puiseux()}) {
        CounterRng rng = CounterRng::derive(6200, f.is_padic() ? 1 : 2);
        for (int trial = 0; trial < 15; ++trial) {
            int d = static_cast<int>(rng.below(3)) + 2;
            Lattice l = random_lattice(f, d, rng);
            Lattice back = parse_lattice_json(lattice_to_json(f, l.representative()));
            CHECK(back.representative() == l.representative());
        }
    }
}

TEST_CASE("cli entropy matches the published vector") {
    CliResult r = run_cli({"entropy", kData + "/example2d.json"});
    REQUIRE(r.code == 0);
    CHECK(r.out == R"({"":"0","1":"0","2":"1","1,2":"2"})"
                   "\n");
    for (std::string method : {"minors", "iterative"}) {
        CliResult m = run_cli({"entropy", kData + "/example2d.json", "--method", method});
        CHECK(m.out == r.out);
    }
}

TEST_CASE("cli hnf output re-parses to an equal lattice") {
    for (std::string name : {"example2d.json", "example3d.json", "example_puiseux.json"}) {
        CliResult r = run_cli({"hnf", kData + "/" + name});
        REQUIRE(r.code == 0);
        Lattice original = parse_lattice_file(kData + "/" + name);
        Lattice reparsed = parse_lattice_json(Json::parse(r.out));
        CHECK(lattice_equal(original, reparsed));
    }
}

TEST_CASE("cli smith factors multiply back") {
    CliResult r = run_cli({"smith", kData + "/example2d.json"});
    REQUIRE(r.code == 0);
    Json j = Json::parse(r.out);
    FieldDescriptor f = parse_field_descriptor(j.at("field"));
    auto matrix_of = [&](const char* key) {
        Json wrapped;
        wrapped["field"] = j.at("field");
        wrapped["matrix"] = j.at(key);
        return parse_lattice_json(wrapped).representative();
    };
    Matrix u = matrix_of("U"), d = matrix_of("D"), v = matrix_of("V");
    CHECK(u * d * v == example_2x2(3).representative());
    CHECK(u.is_integral());
    CHECK(v.is_integral());
}

TEST_CASE("cli phi, tail, pmf and ci") {
    CliResult phi = run_cli({"phi", kData + "/example2d.json", "--v", "1,1"});
    CHECK(phi.out == R"({"phi":"1"})"
                     "\n");
    CliResult phibox = run_cli({"phi", kData + "/example2d.json", "--box", "0,0:1,1"});
    CHECK(Json::parse(phibox.out).at("1,1") == "1");

    CliResult tail = run_cli({"tail", kData + "/example2d.json", "--v", "1,1"});
    CHECK(tail.out == R"({"tail":"1/3"})"
                      "\n");

    CliResult pmf = run_cli({"pmf", kData + "/example2d.json", "--box", "0,1:2,2"});
    Json pj = Json::parse(pmf.out);
    // Q(0,1) - Q(1,1) - Q(0,2) + Q(1,2) = 1 - 1/3 - 1/3 + 1/3
    CHECK(pj.at("0,1") == "2/3");
    CHECK(pj.at("1,1") == "0");  // val(X1) = 1 forces val(X2) >= 2 here

    CliResult ci = run_cli({"ci", kData + "/example2d.json", "--i", "1", "--j", "2", "--given", ""});
    CHECK(ci.code == 0);
    CHECK(ci.out == "false\n");

    CliResult ci3 = run_cli({"ci", kData + "/example3d.json", "--i", "1", "--j", "2", "--given", "3"});
    CHECK(ci3.out == "false\n");
}

TEST_CASE("cli supermodular and d3fan") {
    CliResult super = run_cli({"supermodular", kData + "/example3d.json"});
    Json sj = Json::parse(super.out);
    CHECK(sj.at("inside") == true);
    CHECK(sj.at("tight").empty());
    CHECK(sj.at("violated").empty());

    CliResult fan = run_cli({"d3fan", kData + "/example3d.json"});
    Json fj = Json::parse(fan.out);
    CHECK(fj.at("in_C") == true);
    CHECK(fj.at("in_P") == true);
}

TEST_CASE("cli index") {
    std::string file = "/tmp/valent_test_index_2adic.json";
    {
        std::ofstream o(file);
        o << R"({"field":{"type":"p-adic","p":2},"matrix":[["1","0"],["2","4"]]})";
    }
    CliResult r = run_cli({"index", file, "--v", "1,1", "--modexp", "4"});
    CHECK(r.code == 0);
    CHECK(Json::parse(r.out).at("index") == "2");
    std::remove(file.c_str());
}

TEST_CASE("cli s2pre emits a re-parseable puiseux lattice") {
    CliResult r = run_cli({"s2pre", "--x1", "1/2", "--x2", "1/3", "--x12", "1"});
    REQUIRE(r.code == 0);
    Lattice l = parse_lattice_json(Json::parse(r.out));
    EntropyVector h = entropy_vector(l);
    CHECK(h.at(0b01) == Rat(1) / 2);
    CHECK(h.at(0b10) == Rat(1) / 3);
    CHECK(h.at(0b11) == 1);
}

TEST_CASE("cli export-tropical") {
    CliResult r = run_cli({"export-tropical", kData + "/example2d.json"});
    CHECK(r.out ==
          "I: e:0,0 h:0\n"
          "I:1 e:1,0 h:0\n"
          "I:2 e:0,1 h:1\n"
          "I:1,2 e:1,1 h:2\n");
}

TEST_CASE("cli sample and report are seed-deterministic") {
    std::vector<std::string> args{"sample", kData + "/example2d.json", "--n", "500",
                                  "--precision", "20", "--seed", "11"};
    CliResult a = run_cli(args);
    CliResult b = run_cli(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    Json j = Json::parse(a.out);
    CHECK(j.at("usable") == true);
    long total = 0;
    for (const auto& [key, count] : j.at("counts").items()) total += count.get<long>();
    CHECK(total + j.at("censored").get<long>() == 500);

    CliResult rep = run_cli({"report", kData + "/example2d.json", "--n", "2000", "--precision", "22", "--seed",
                             "12", "--box", "0,1:2,3"});
    REQUIRE(rep.code == 0);
    std::istringstream lines(rep.out);
    std::string line;
    int rows = 0;
    while (std::getline(lines, line)) {
        Json row = Json::parse(line);
        CHECK(row.contains("v"));
        CHECK(row.contains("empirical"));
        CHECK(row.contains("exact"));
        ++rows;
    }
    CHECK(rows == 3 * 3);
}

TEST_CASE("cli error paths and exit codes") {
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"no-such-command"}).code == 2);
    CHECK(run_cli({"entropy"}).code == 2);                                            // missing file
    CHECK(run_cli({"entropy", kData + "/example2d.json", "--method", "fast"}).code == 2);
    CHECK(run_cli({"sample", kData + "/example2d.json", "--n", "10", "--precision", "20"}).code == 2);  // no seed
    CHECK(run_cli({"--help"}).code == 0);

    CliResult missing = run_cli({"entropy", kData + "/nope.json"});
    CHECK(missing.code == 1);
    CHECK(missing.err.find("error") != std::string::npos);

    CliResult puiseux_tail = run_cli({"tail", kData + "/example_puiseux.json", "--v", "0,0"});
    CHECK(puiseux_tail.code == 1);
    CHECK(puiseux_tail.err.find("Haar") != std::string::npos);

    CliResult outside = run_cli({"s2pre", "--x1", "1", "--x2", "1", "--x12", "1"});
    CHECK(outside.code == 1);

    CliResult phi_missing = run_cli({"phi", kData + "/example2d.json"});
    CHECK(phi_missing.code == 1);
}
