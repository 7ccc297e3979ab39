#include <doctest.h>

#include <atomic>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "fadsar/util/csv.hpp"
#include "fadsar/util/numeric.hpp"
#include "fadsar/util/parallel.hpp"
#include "fadsar/util/rng.hpp"

using namespace fadsar;

TEST_CASE("rng is deterministic per seed") {
    util::Rng a(42), b(42), c(43);
    bool all_equal = true;
    bool any_differs = false;
    for (int i = 0; i < 1000; ++i) {
        const auto x = a.next_u64();
        all_equal = all_equal && x == b.next_u64();
        any_differs = any_differs || x != c.next_u64();
    }
    CHECK(all_equal);
    CHECK(any_differs);
}

TEST_CASE("rng uniform stays in range") {
    util::Rng rng(7);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.uniform(-3.0, 5.0);
        CHECK(u >= -3.0);
        CHECK(u < 5.0);
    }
}

TEST_CASE("rng uniform_int covers the inclusive range") {
    util::Rng rng(11);
    std::array<int, 5> seen{};
    for (int i = 0; i < 5000; ++i) {
        const int v = rng.uniform_int(2, 6);
        REQUIRE(v >= 2);
        REQUIRE(v <= 6);
        ++seen[v - 2];
    }
    for (const int count : seen) CHECK(count > 0);
}

TEST_CASE("rng gaussian has roughly the requested moments") {
    util::Rng rng(99);
    const int n = 200000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.gaussian(3.0, 2.0);
        sum += x;
        sum2 += x * x;
    }
    const double mean = sum / n;
    const double stddev = std::sqrt(sum2 / n - mean * mean);
    CHECK(mean == doctest::Approx(3.0).epsilon(0.02));
    CHECK(stddev == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("parallel_for visits every index exactly once") {
    for (const int workers : {1, 4, 8}) {
        const std::size_t n = 1000;
        std::vector<std::atomic<int>> hits(n);
        util::parallel_for(n, workers, [&](std::size_t i) { hits[i].fetch_add(1); });
        for (const auto& h : hits) CHECK(h.load() == 1);
    }
}

TEST_CASE("parallel_for writes indexed slots identically at any worker count") {
    const std::size_t n = 500;
    std::vector<double> serial(n), threaded(n);
    const auto work = [](std::size_t i) { return std::sqrt(static_cast<double>(i)) * 1.5; };
    util::parallel_for(n, 1, [&](std::size_t i) { serial[i] = work(i); });
    util::parallel_for(n, 8, [&](std::size_t i) { threaded[i] = work(i); });
    CHECK(serial == threaded);
}

TEST_CASE("parallel_for rethrows the worker exception") {
    CHECK_THROWS_AS(util::parallel_for(100, 4,
                                       [](std::size_t i) {
                                           if (i == 37) throw std::runtime_error("boom");
                                       }),
                    std::runtime_error);
    util::parallel_for(0, 4, [](std::size_t) { throw std::runtime_error("never runs"); });
}

TEST_CASE("format/parse round-trips doubles exactly") {
    for (const double v : {0.0, 1.0, -1.5, 0.1, 1e-300, 3.14159265358979, 1e17,
                           0.49551, 0.21215}) {
        const auto parsed = util::parse_double(util::format_double(v));
        REQUIRE(parsed.has_value());
        CHECK(*parsed == v);
    }
}

TEST_CASE("parse helpers reject trailing junk and bad input") {
    CHECK(util::parse_int("123") == 123);
    CHECK(util::parse_int("-4") == -4);
    CHECK_FALSE(util::parse_int("12x").has_value());
    CHECK_FALSE(util::parse_int("").has_value());
    CHECK_FALSE(util::parse_double("1.5 ").has_value());
    CHECK(util::parse_double("-2.25") == -2.25);
    CHECK(util::parse_bool("true") == true);
    CHECK(util::parse_bool("False") == false);
    CHECK(util::parse_bool("1") == true);
    CHECK(util::parse_bool("0") == false);
    CHECK_FALSE(util::parse_bool("yes").has_value());
}

TEST_CASE("csv line splitting handles quotes") {
    CHECK(util::split_csv_line("a,b,c") == std::vector<std::string>{"a", "b", "c"});
    CHECK(util::split_csv_line("a,,c") == std::vector<std::string>{"a", "", "c"});
    CHECK(util::split_csv_line("\"a,b\",c") == std::vector<std::string>{"a,b", "c"});
    CHECK(util::split_csv_line("\"he said \"\"hi\"\"\",x") ==
          std::vector<std::string>{"he said \"hi\"", "x"});
    CHECK(util::split_csv_line("a,b\r") == std::vector<std::string>{"a", "b"});
    CHECK(util::split_csv_line("") == std::vector<std::string>{""});
}

TEST_CASE("csv escape round-trips through split") {
    for (const std::string& field :
         {std::string("plain"), std::string("with,comma"), std::string("with \"quote\""),
          std::string(""), std::string("trailing ")}) {
        const auto line = util::csv_escape(field) + "," + util::csv_escape("second");
        CHECK(util::split_csv_line(line) == std::vector<std::string>{field, "second"});
    }
}

TEST_CASE("read_csv skips BOM and blank lines") {
    std::istringstream in("\xEF\xBB\xBFname,value\n\na,1\n\nb,2\n");
    const auto table = util::read_csv(in);
    CHECK(table.header == std::vector<std::string>{"name", "value"});
    REQUIRE(table.rows.size() == 2);
    CHECK(table.rows[0] == std::vector<std::string>{"a", "1"});
    CHECK(table.rows[1] == std::vector<std::string>{"b", "2"});
    CHECK(table.column("name") == 0);
    CHECK(table.column("value") == 1);
    CHECK(table.column("missing") == -1);
}
