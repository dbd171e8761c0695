#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <texsom/kv_config.hpp>
#include <texsom/types.hpp>

#include <cstdio>
#include <fstream>
#include <map>
#include <string>

using namespace texsom;

namespace {

std::map<std::string, std::string> parse(const std::string& text) {
    return parse_kv_text(text, "test");
}

}  // namespace

TEST_CASE("assignments are trimmed and comments stripped") {
    const auto kv = parse(
        "# leading comment\n"
        "\n"
        "  epochs = 40  \n"
        "eta0=0.25# trailing comment\n"
        "model =isom\n");
    CHECK(kv.size() == 3);
    CHECK(kv.at("epochs") == "40");
    CHECK(kv.at("eta0") == "0.25");
    CHECK(kv.at("model") == "isom");
}

TEST_CASE("value keeps everything after the first equals sign") {
    const auto kv = parse("expr=a=b\n");
    CHECK(kv.at("expr") == "a=b");
}

TEST_CASE("malformed lines name the source and line") {
    CHECK_THROWS_WITH_AS(parse("epochs=1\nnot an assignment\n"),
                         doctest::Contains("test:2"), ConfigError);
    CHECK_THROWS_WITH_AS(parse("=5\n"), doctest::Contains("empty key"), ConfigError);
    CHECK_THROWS_WITH_AS(parse("a=1\na=2\n"), doctest::Contains("duplicate key 'a'"),
                         ConfigError);
}

TEST_CASE("typed getters parse and fall back") {
    const auto kv = parse("n=12\nrate=1e-3\nflag=Yes\nbig=18446744073709551615\n");
    CHECK(kv_get_int(kv, "n", 0) == 12);
    CHECK(kv_get_int(kv, "absent", 7) == 7);
    CHECK(kv_get_double(kv, "rate", 0.0) == doctest::Approx(1e-3));
    CHECK(kv_get_bool(kv, "flag", false));
    CHECK_FALSE(kv_get_bool(kv, "absent", false));
    CHECK(kv_get_u64(kv, "big", 0) == 18446744073709551615ull);
    CHECK(kv_get(kv, "absent", "dflt") == "dflt");
}

TEST_CASE("unparseable values name the key") {
    const auto kv = parse("n=12x\nempty=\nneg=-3\nmaybe=kinda\n");
    CHECK_THROWS_WITH_AS(kv_get_int(kv, "n", 0), doctest::Contains("'n'"), ConfigError);
    CHECK_THROWS_AS(kv_get_int(kv, "empty", 0), ConfigError);
    CHECK_THROWS_WITH_AS(kv_get_u64(kv, "neg", 0), doctest::Contains("unsigned"),
                         ConfigError);
    CHECK_THROWS_AS(kv_get_bool(kv, "maybe", false), ConfigError);
    CHECK(kv_get_int(kv, "neg", 0) == -3);
}

TEST_CASE("file loading reports missing files as io errors") {
    CHECK_THROWS_AS(parse_kv_file("no_such_config.txt"), IoError);

    const std::string path = "kv_config_test.tmp";
    {
        std::ofstream out(path, std::ios::binary);
        out << "folds=5\n";
    }
    const auto kv = parse_kv_file(path);
    CHECK(kv_get_int(kv, "folds", 0) == 5);
    std::remove(path.c_str());
}
