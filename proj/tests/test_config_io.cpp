#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "vilenkin/config.hpp"
#include "vilenkin/io.hpp"
#include "vilenkin/rng.hpp"

using namespace vilenkin;

namespace {

std::filesystem::path temp_file(const char* name) {
    return std::filesystem::temp_directory_path() / name;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("config parser handles sections, arrays and comments") {
    std::istringstream in(R"(
# experiment header
m = [2, 2, 2]          # radices
seed = 42
tolerance = 1e-8
label = "walsh three"

[maximal]
p = [0.25, 0.5]
enabled = true
)");
    const TomlTable t = parse_toml(in);
    CHECK(t.at("seed").as_int() == 42);
    CHECK_THAT(t.at("tolerance").as_double(), Catch::Matchers::WithinRel(1e-8, 1e-15));
    CHECK(t.at("label").as_string() == "walsh three");
    CHECK(t.at("m").as_array().size() == 3);
    CHECK(t.at("maximal.p").as_array().at(1).as_double() == 0.5);
    CHECK(t.at("maximal.enabled").as_bool());
    CHECK(t.has("m"));
    CHECK_FALSE(t.has("missing"));
    CHECK_THROWS_AS(t.at("missing"), std::runtime_error);
}

TEST_CASE("config parser rejects malformed lines") {
    std::istringstream bad1("just words\n");
    CHECK_THROWS_AS(parse_toml(bad1), std::runtime_error);
    std::istringstream bad2("x = [1, 2\n");
    CHECK_THROWS_AS(parse_toml(bad2), std::runtime_error);
    std::istringstream bad3("x = @@\n");
    CHECK_THROWS_AS(parse_toml(bad3), std::runtime_error);
}

TEST_CASE("experiment config fills defaults and honors overrides") {
    std::istringstream in(R"(
m = [2, 2, 2, 2, 2]
seed = 9
atom_count = 64
p = [0.4]
families = ["fejer", "riesz"]
cap_factor = 8
)");
    const ExperimentConfig cfg = ExperimentConfig::from_table(parse_toml(in));
    CHECK(cfg.group().levels() == 5);
    CHECK(cfg.seed == 9);
    CHECK(cfg.atom_count == 64);
    REQUIRE(cfg.p_grid.size() == 1);
    CHECK(cfg.p_grid[0] == 0.4);
    REQUIRE(cfg.families.size() == 2);
    CHECK(cfg.family_list()[1].label() == "riesz");
    CHECK(cfg.cap_factor == 8);

    const ExperimentConfig defaults = ExperimentConfig::from_table(TomlTable{});
    CHECK(defaults.group().size() == 64);
    CHECK(defaults.atom_count == 200);
    CHECK(defaults.p_grid.size() == 3);
    CHECK(defaults.families.size() == 7);
}

TEST_CASE("radix list parsing accepts comma and x separators") {
    CHECK(parse_radices("2,2,2") == std::vector<int>({2, 2, 2}));
    CHECK(parse_radices("2x3x4") == std::vector<int>({2, 3, 4}));
    CHECK(parse_radices(" 5 , 6 ") == std::vector<int>({5, 6}));
    CHECK_THROWS_AS(parse_radices("2,two"), std::invalid_argument);
    CHECK_THROWS_AS(parse_radices(""), std::invalid_argument);
}

TEST_CASE("signal JSON round-trips exactly") {
    GroupSpec spec({2, 3, 2});
    Rng rng(61);
    Signal f(spec);
    for (index_t x = 0; x < spec.size(); ++x)
        f[x] = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    const auto path = temp_file("vilenkin_test_signal.json");
    write_signal(path.string(), f);
    const Signal back = read_signal(path.string());
    CHECK(back.spec == spec);
    CHECK(max_abs_diff(f, back) == 0.0);  // doubles survive the JSON trip bit-exactly
    std::filesystem::remove(path);
}

TEST_CASE("spectrum JSON round-trips and kinds are enforced") {
    GroupSpec spec({2, 2});
    Spectrum s(spec);
    s[0] = cplx(0.5, -0.25);
    s[3] = cplx(-1.0, 2.0);
    const auto path = temp_file("vilenkin_test_spectrum.json");
    write_spectrum(path.string(), s);
    const Spectrum back = read_spectrum(path.string());
    for (index_t k = 0; k < spec.size(); ++k) CHECK(back[k] == s[k]);
    CHECK_THROWS_AS(read_signal(path.string()), std::runtime_error);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(read_spectrum("/nonexistent/never.json"), std::runtime_error);
}

TEST_CASE("csv writer emits deterministic numeric formatting") {
    const auto path = temp_file("vilenkin_test_table.csv");
    {
        CsvWriter csv(path.string(), {"n", "value", "name"});
        csv.row({CsvWriter::col(3), CsvWriter::col(1.0 / 3.0), CsvWriter::col(std::string("a"))});
        csv.row({CsvWriter::col(index_t{12}), CsvWriter::col(2.5e-11), CsvWriter::col(std::string("b"))});
    }
    CHECK(slurp(path) == "n,value,name\n3,0.333333333333,a\n12,2.5e-11,b\n");
    std::filesystem::remove(path);
}

TEST_CASE("seeded rng streams are reproducible and splittable") {
    Rng a(123), b(123);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

    Rng c = Rng::derive(123, {1, 2});
    Rng d = Rng::derive(123, {1, 2});
    Rng e = Rng::derive(123, {2, 1});
    bool all_same = true, any_diff = false;
    for (int i = 0; i < 50; ++i) {
        const std::uint64_t x = c.next_u64(), y = d.next_u64(), z = e.next_u64();
        all_same = all_same && x == y;
        any_diff = any_diff || x != z;
    }
    CHECK(all_same);
    CHECK(any_diff);

    Rng u(7);
    for (int i = 0; i < 1000; ++i) {
        const double v = u.uniform(-2.0, 3.0);
        CHECK(v >= -2.0);
        CHECK(v < 3.0);
        CHECK(u.below(17) < 17);
    }
}
