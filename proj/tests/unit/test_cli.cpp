#include "doctest.h"
#include "stratlab/config.hpp"
#include "stratlab/error.hpp"
#include "stratlab/report.hpp"
#include "stratlab/suites.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace stratlab;

namespace {
std::string temp_file(const std::string& name, const std::string& text) {
    const auto p = std::filesystem::temp_directory_path() / name;
    std::ofstream(p) << text;
    return p.string();
}

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::InvalidArgument;
}
} // namespace

TEST_CASE("config files") {
    const auto path = temp_file("stratlab_cfg_ok.ini", "suite = representation\nseed = 9\nmc = 4000\ntheta = 3\n");
    const auto c = load_config(path);
    CHECK(c.suite == "representation");
    REQUIRE(c.seed.has_value());
    CHECK(*c.seed == 9);
    CHECK(c.mc == 4000);
    CHECK(c.theta == 3.0);
    CHECK(kind_of([] { load_config(temp_file("stratlab_cfg_bad.ini", "colour = blue\n")); }) == ErrorKind::ConfigError);
    CHECK(kind_of([] { load_config(temp_file("stratlab_cfg_val.ini", "theta = fast\n")); }) == ErrorKind::ConfigError);
}

TEST_CASE("validation") {
    RunConfig c;
    c.suite = "localtime";
    CHECK(kind_of([&] { validate(c); }) == ErrorKind::ConfigError);
    c.seed = 1;
    CHECK_NOTHROW(validate(c));
    c.suite = "everything";
    CHECK(kind_of([&] { validate(c); }) == ErrorKind::ConfigError);
    c.suite = "green";
    c.seed.reset();
    CHECK_NOTHROW(validate(c));
}

TEST_CASE("config hash ignores the output directory only") {
    RunConfig a, b;
    b.out = "elsewhere";
    CHECK(config_hash(a) == config_hash(b));
    b.seed = 3;
    CHECK(config_hash(a) != config_hash(b));
    CHECK(config_hash(a).size() == 16);
}

TEST_CASE("report formatting") {
    Report r;
    r.add(check_rel("b.second", "x", "k=1", 2.0, 2.0000001, 1e-6));
    r.add(check_abs("a.first", "y, with comma", "", 1.0, 1.5, 0.1));
    r.sort();
    CHECK(r.rows.front().id == "a.first");
    CHECK(r.first_failure() == "a.first");
    CHECK(r.failures() == 1);
    const std::string csv = to_csv(r, "abc");
    CHECK(csv.rfind("check_id,equation,inputs,expected,actual,tolerance,pass\n", 0) == 0);
    CHECK(csv.find("a.first,\"y, with comma\",cfg=abc,1,1.5,0.1,false\n") != std::string::npos);
    CHECK(csv.find("b.second,x,cfg=abc;k=1,2,2.0000001,1e-06,true\n") != std::string::npos);
    CHECK(kv({{"a", 0.5}, {"b", 3}}) == "a=0.5;b=3");
    CHECK(to_dat(DataSeries{"s", "x", "y", {{1, 2}, {3, 0.25}}}) == "# x y\n1 2\n3 0.25\n");
}

TEST_CASE("suites are deterministic") {
    RunConfig c;
    c.seed = 42;
    c.mc = 4000;
    const auto a = run_suite("wick", c), b = run_suite("wick", c);
    CHECK(to_csv(a, config_hash(c)) == to_csv(b, config_hash(c)));
    CHECK(a.all_pass());
    c.seed.reset();
    CHECK(kind_of([&] { run_suite("wick", c); }) == ErrorKind::ConfigError);
    const auto g = run_suite("green", c);
    CHECK(g.all_pass());
    for (std::size_t i = 1; i < g.rows.size(); ++i) CHECK(g.rows[i - 1].id <= g.rows[i].id);
}
