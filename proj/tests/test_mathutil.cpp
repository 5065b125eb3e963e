#include <doctest.h>

#include <cmath>
#include <vector>

#include "tvmg/mathutil.hpp"

using namespace tvmg;

TEST_CASE("normal quantile and cdf round-trip") {
    for (double p : {0.001, 0.05, 0.1, 0.5, 0.9, 0.95, 0.975, 0.999}) {
        CHECK(normal_cdf(normal_quantile(p)) == doctest::Approx(p).epsilon(1e-12));
    }
    CHECK(normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(normal_critical_value(0.90) == doctest::Approx(1.6448536269514722).epsilon(1e-10));
    CHECK(normal_critical_value(0.95) == doctest::Approx(1.959963984540054).epsilon(1e-10));
}

TEST_CASE("two-sided p-values") {
    CHECK(normal_two_sided_p(0.0) == doctest::Approx(1.0));
    CHECK(normal_two_sided_p(1.6448536269514722) == doctest::Approx(0.10).epsilon(1e-10));
    CHECK(normal_two_sided_p(-1.6448536269514722) == doctest::Approx(0.10).epsilon(1e-10));
}

TEST_CASE("sample quantile interpolation") {
    std::vector<double> v{1.0, 2.0, 3.0, 4.0};
    CHECK(sample_quantile(v, 0.0) == 1.0);
    CHECK(sample_quantile(v, 1.0) == 4.0);
    CHECK(sample_quantile(v, 0.5) == doctest::Approx(2.5));
    std::vector<double> single{7.0};
    CHECK(sample_quantile(single, 0.25) == 7.0);
}

TEST_CASE("fnv digest is stable") {
    CHECK(fnv1a64(std::string("")) == 14695981039346656037ull);
    CHECK(fnv1a64(std::string("a")) == 0xaf63dc4c8601ec8cull);
}
