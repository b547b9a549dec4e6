#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "idexp/script.hpp"

using namespace idexp;

TEST_CASE("field descriptor parsing") {
    CHECK(parse_field_descriptor("Q") == Field::rationals());
    CHECK(parse_field_descriptor("Fp(2)") == Field::prime(2));
    CHECK(parse_field_descriptor("Fp(3,lam)") == Field::prime_function(3));
    CHECK_THROWS_AS(parse_field_descriptor("GF(4)"), ParseError);
}

TEST_CASE("script parsing") {
    std::string text = R"(
# a comment
ring Q [x, y, z];
pair E = (x^3 - y^3*z^2 : 2);
pair F = (x^3 - y^3*z^2 : 3);
boundary (z : new);
order E at [x, z];
blowup E center [x, y] chart y;
)";
    SessionScript s = parse_script(text);
    CHECK(s.ring.nvars() == 3);
    CHECK(s.pairs.size() == 2);
    CHECK(s.boundary.size() == 1);
    REQUIRE(s.commands.size() == 2);
    CHECK(s.commands[0].kind == ScriptCommand::Kind::Order);
    CHECK(s.commands[1].kind == ScriptCommand::Kind::Blowup);
    CHECK(s.commands[1].center == std::vector<std::string>{"x", "y"});
    const Pair& e = s.find_pair("E");
    CHECK(e.components()[0].weight == Rat(2));
}

TEST_CASE("script with split and prime function field") {
    std::string text =
        "ring Fp(2, lam) [u, y] split (u | y);\n"
        "pair E = (y^2 + lam*u^2 : 2);\n"
        "delta E split (u | y);\n";
    SessionScript s = parse_script(text);
    CHECK(s.ring.field() == Field::prime_function(2));
    CHECK(s.ring.has_split());
    CHECK(s.ring.y_indices() == std::vector<size_t>{1});
}

TEST_CASE("parse errors carry positions") {
    CHECK_THROWS_AS(parse_script("pair E = (x : 1);"), ParseError);  // ring first
    CHECK_THROWS_AS(parse_script("ring Q [x];\npair E = (x : 0);"), ParseError);
    CHECK_THROWS_AS(parse_script("ring Zp(5) [x];"), ParseError);
    CHECK_THROWS_AS(parse_script("ring Q [x];\npair E = (x : 1);\npair E = (x : 1);"),
                    ParseError);
    CHECK_THROWS_AS(parse_script("ring Q [x];\norder F at origin;"), ParseError);
    try {
        parse_script("ring Q [x];\npair E = (w : 1);");
        CHECK(false);
    } catch (const ParseError& err) {
        CHECK(err.line >= 1);
    }
}

TEST_CASE("print/parse round trip") {
    std::string text =
        "ring Fp(3) [x, y, z];\n"
        "pair E = (x^3 - y^3*z^2 : 2);\n"
        "pair G = (x, y^2 : 3) standard;\n"
        "boundary (z : old);\n"
        "order E at origin;\n"
        "order E at [x, z];\n"
        "sing E;\n"
        "tangent E;\n"
        "ridge E;\n"
        "directrix E;\n"
        "blowup E center [x, y] chart y;\n"
        "decompose E;\n"
        "reduce E;\n"
        "invariant E depth 2;\n"
        "delta E split (y, z | x);\n"
        "gb (x*y, x + y);\n";
    SessionScript s = parse_script(text);
    std::string printed = print_script(s);
    SessionScript s2 = parse_script(printed);
    CHECK(print_script(s2) == printed);
    CHECK(s2.pairs.size() == s.pairs.size());
    for (size_t i = 0; i < s.pairs.size(); ++i) {
        CHECK(s2.pairs[i].first == s.pairs[i].first);
        CHECK(s2.pairs[i].second == s.pairs[i].second);
    }
}

TEST_CASE("corpus scripts round trip through print/parse") {
    namespace fs = std::filesystem;
    std::vector<fs::path> scripts;
    for (const auto& entry : fs::directory_iterator(IDEXP_CORPUS_DEFAULT))
        if (entry.path().extension() == ".ie") scripts.push_back(entry.path());
    std::sort(scripts.begin(), scripts.end());
    REQUIRE(!scripts.empty());
    for (const auto& path : scripts) {
        CAPTURE(path.string());
        std::ifstream in(path);
        std::stringstream buf;
        buf << in.rdbuf();
        SessionScript s = parse_script(buf.str());
        std::string printed = print_script(s);
        SessionScript s2 = parse_script(printed);
        CHECK(print_script(s2) == printed);
        REQUIRE(s2.pairs.size() == s.pairs.size());
        for (size_t i = 0; i < s.pairs.size(); ++i) CHECK(s2.pairs[i].second == s.pairs[i].second);
        CHECK(s2.commands.size() == s.commands.size());
    }
}

TEST_CASE("execution is deterministic and covers the command set") {
    std::string text =
        "ring Q [x, y, z];\n"
        "pair E = (x^3 - y^3*z^2 : 2);\n"
        "order E at [x, z];\n"
        "sing E;\n"
        "tangent E;\n"
        "blowup E center [x, y] chart y;\n"
        "gb (y^2 - x^3, y^2 - z^5);\n";
    SessionScript s = parse_script(text);
    std::string out1 = execute_script(s, false);
    std::string out2 = execute_script(s, false);
    CHECK(out1 == out2);
    CHECK(out1.find("ord = 1") != std::string::npos);
    CHECK(out1.find("== blowup E") != std::string::npos);
    // json mode parses
    std::string js = execute_script(s, true);
    CHECK(js.find("\"command\"") != std::string::npos);
}
