#include "cli.hpp"
#include "fbt/errors.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <sstream>

using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result call(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = fbt::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

json call_json(std::vector<std::string> args) {
    const auto r = call(std::move(args));
    REQUIRE(r.code == 0);
    return json::parse(r.out);
}

}  // namespace

TEST_CASE("real arguments") {
    using fbt::cli::parse_real;
    CHECK(parse_real("0.25") == 0.25);
    CHECK(parse_real(" 1e-3 ") == 1e-3);
    CHECK(parse_real("log(3)") == doctest::Approx(std::log(3.0)));
    CHECK(parse_real("2*log(3)") == doctest::Approx(2 * std::log(3.0)));
    CHECK_THROWS_AS(parse_real("log(-1)"), fbt::ValidationError);
    CHECK_THROWS_AS(parse_real("3x"), fbt::ValidationError);
    CHECK(fbt::cli::parse_real_list("0.1, log(2),0.3").size() == 3);
    CHECK(fbt::cli::parse_real_list(" ").empty());
}

TEST_CASE("word commands") {
    auto j = call_json({"word", "linv", "a1^2 a2^-3"});
    CHECK(j["l_minus"].get<double>() == doctest::Approx(std::log(6.0) + std::log(9.0)));
    CHECK(j["syllables"].size() == 2);
    CHECK(call_json({"word", "enum", "--budget", "log(3)"})["count"] == 5);
    const auto csv = call({"word", "enum", "--budget", "log(3)", "--format", "csv"});
    CHECK(csv.out.rfind("word,l_minus,l_plus\n", 0) == 0);
    CHECK(call_json({"word", "canon", "a2 a1 a2^-1"})["canonical"] == "a1^1");
}

TEST_CASE("braid commands") {
    CHECK(call_json({"braid", "theta", "s1^-4 d^1 s1^4"})["theta"] == "a1^-2 a2^2");
    auto nf = call_json({"braid", "nf", "s1^-4 d s1^4"})["normal_form"];
    CHECK(nf["j"] == 1);
    CHECK(nf["k"] == -4);
    CHECK(nf["l"] == 1);
    CHECK(call_json({"braid", "census", "--budget", "0"})["count"] == 10);
    CHECK(call_json({"braid", "bracket", "--k", "1", "--k2", "-1", "--lambda", "0"})["lemma3a"] == true);
}

TEST_CASE("config3 and conformal commands") {
    CHECK(call_json({"config3", "in-h", "0", "0", "1", "1", "2", "2"})["in_h"] == true);
    CHECK(call_json({"config3", "in-h", "0", "0", "1", "1", "2", "3"})["in_h"] == false);
    auto lam = call_json({"conformal", "lambda", "--kind", "round", "--p", "1", "--q", "2"});
    CHECK(lam["lambda"].get<double>() == doctest::Approx(2 * M_PI / std::log(2.0)));
    auto grid = call_json({"conformal", "grid", "--kind", "rectangle", "--p", "2", "--q", "1", "--h", "0.05"});
    CHECK(grid["relative_error"].get<double>() < 0.01);
    auto tb = call_json({"conformal", "torus-bounds", "--sigma", "0.1"});
    CHECK(tb["lambda3_upper"].get<double>() == doctest::Approx(120.0));
}

TEST_CASE("bounds commands") {
    auto j = call_json({"bounds", "thm1", "--g", "0", "--m", "1", "--lambda4", "0"});
    CHECK(j["bound"]["exact"] == "4.5");
    CHECK(j["inputs"]["m"] == 1);
    CHECK(call_json({"bounds", "thm3", "--m", "1", "--lambda8", "0"})["bound"]["exact"] == "11390625");
    auto p = call_json({"bounds", "prop1a", "--alpha", "1", "--sigma", "0.1", "--C", "1", "--c", "0.5"});
    CHECK(p["bound"]["ln"].get<double>() == doctest::Approx(std::log(7.0) + 192 * M_PI * 3 / 0.1));
    CHECK(p.contains("lower"));

    const auto t = call({"bounds", "table", "--kind", "prop1a", "--sweep", "0.5,0.25,0.1"});
    REQUIRE(t.code == 0);
    std::istringstream lines(t.out);
    std::string line;
    int rows = 0;
    double prev = 0;
    std::getline(lines, line);
    CHECK(line == "alpha,sigma,ln,decimal");
    while (std::getline(lines, line)) {
        const auto a = line.find(',', line.find(',') + 1);
        const double ln = std::stod(line.substr(a + 1, line.find(',', a + 1) - a - 1));
        CHECK(ln > prev);
        prev = ln;
        ++rows;
    }
    CHECK(rows == 3);
}

TEST_CASE("errors map to exit codes") {
    auto r = call({"bounds", "table", "--kind", "prop1a", "--sweep", ""});
    CHECK(r.code == fbt::cli::kExitValidation);
    CHECK(r.err.rfind("error: validation: ", 0) == 0);
    CHECK(call({"word", "linv", "a1^x"}).code == 2);
    CHECK(call({"bounds", "thm1", "--g", "1", "--m", "1", "--lambda3", "0"}).code == 2);
    CHECK(call({"bounds", "prop1a", "--sigma", "1.5"}).code == 2);
    CHECK(call({"dbar", "kernel", "--re", "1", "--im", "1"}).code == 2);
    CHECK(call({"nonsense"}).code == 2);
    CHECK(call({"conformal", "grid", "--kind", "round", "--p", "1", "--q", "2", "--h", "0.02", "--max-iter", "3"})
              .code == fbt::cli::kExitConvergence);
}
