#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "trimkd/cli_support.hpp"
#include "trimkd/errors.hpp"
#include "trimkd/special.hpp"

using namespace trimkd;
using namespace trimkd::cli;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name, const std::string& content)
        : path(std::string("/tmp/trimkd_test_") + name) {
        std::ofstream os(path);
        os << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("single column ingestion") {
    TempFile f("a.csv", "1.0\n2.5\n-0.3\n");
    const auto v = ingest_sample(f.path, CsvFormat::single_column);
    REQUIRE(v.size() == 3);
    CHECK(v[0] == 1.0);
    CHECK(v[1] == 2.5);
    CHECK(v[2] == -0.3);
}

TEST_CASE("header skipping and named columns") {
    TempFile f("b.csv", "height\n170.2\n165.0\n");
    const auto v1 = ingest_sample(f.path, CsvFormat::single_column);
    REQUIRE(v1.size() == 2);
    CHECK(v1[0] == 170.2);
    const auto v2 = ingest_sample(f.path, CsvFormat::named_column, "height");
    CHECK(v1 == v2);

    TempFile g("c.csv", "id,height,age\n1,170.2,30\n2,165.0,40\n");
    const auto v3 = ingest_sample(g.path, CsvFormat::named_column, "height");
    REQUIRE(v3.size() == 2);
    CHECK(v3[1] == 165.0);
    CHECK_THROWS_AS(ingest_sample(g.path, CsvFormat::named_column, "weight"), data_error);
}

TEST_CASE("bad cells name their line") {
    TempFile f("d.csv", "1.0\n2.0\nabc\n");
    CHECK_THROWS_WITH_AS(ingest_sample(f.path, CsvFormat::single_column),
                         doctest::Contains("line 3"), data_error);
    CHECK_THROWS_AS(ingest_sample("/tmp/trimkd_missing_file.csv", CsvFormat::single_column), data_error);
    TempFile g("e.csv", "x\ny\n1.0\n");
    CHECK_THROWS_AS(ingest_sample(g.path, CsvFormat::single_column), data_error);
}

TEST_CASE("model grammar") {
    const auto n = parse_model("normal:0,1");
    CHECK(n.cdf(0.0) == 0.5);
    const auto u = parse_model("uniform:-1,3");
    CHECK(u.quantile(0.5) == 1.0);
    const auto mix = parse_model("mix:0.9;normal:0,1;normal:3,1");
    CHECK(mix.cdf(1.0) ==
          doctest::Approx(0.9 * special::normal_cdf(1.0) + 0.1 * special::normal_cdf(-2.0))
              .epsilon(1e-15));
    const auto nested = parse_model("mix:0.5;mix:0.5;uniform:0,1;uniform:1,2;uniform:2,3");
    CHECK(nested.cdf(1.0) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(nested.cdf(3.0) == 1.0);

    CHECK_THROWS_AS(parse_model("gamma:1,1"), parameter_error);
    CHECK_THROWS_AS(parse_model("normal:1"), parameter_error);
    CHECK_THROWS_AS(parse_model("mix:0.5;normal:0,1"), parameter_error);
    CHECK_THROWS_AS(parse_model("normal:0,1;normal:1,1"), parameter_error);
}

TEST_CASE("envelope output is deterministic and carries tables") {
    Envelope env("distance");
    env.set("model", std::string("normal:0,1"));
    env.set("alpha", 0.1);
    env.set("n", static_cast<std::size_t>(1000));
    env.set("reject", false);
    auto& t = env.add_table("curve", {"t", "value"});
    t.add_row({0.0, 1.0 / 3.0});
    t.add_row({0.5, 0.1234567890123});

    std::ostringstream a, b;
    env.write(a);
    env.write(b);
    CHECK(a.str() == b.str());
    CHECK(a.str().find("command = distance") == 0);
    CHECK(a.str().find("alpha = 0.1\n") != std::string::npos);
    CHECK(a.str().find("0.333333") != std::string::npos);   // six significant digits
    CHECK(a.str().find("0.123457") != std::string::npos);
    CHECK(a.str().find("[table curve]") != std::string::npos);
    CHECK(a.str().find("[/table]") != std::string::npos);

    std::ostringstream c;
    env.write_csv(c);
    CHECK(c.str().find("# table:curve") == 0);
    CHECK(c.str().find("t,value") != std::string::npos);
}
