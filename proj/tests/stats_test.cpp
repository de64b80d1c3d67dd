#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <vector>

#include "evsched/rng.hpp"
#include "evsched/stats.hpp"

using namespace evsched;

namespace {

// Reference implementation straight from the rank formula, kept separate
// from the library code path.
double quantile_reference(std::vector<double> v, double q) {
    std::sort(v.begin(), v.end());
    const double h = q * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(h);
    const double frac = h - static_cast<double>(lo);
    if (lo + 1 >= v.size()) return v.back();
    return v[lo] + frac * (v[lo + 1] - v[lo]);
}

}  // namespace

TEST_CASE("quantile of a singleton is the value at any level") {
    const std::vector<double> v{5.0};
    for (double q : {0.0, 0.25, 0.5, 0.99, 1.0}) {
        CHECK(quantile(v, q) == 5.0);
    }
}

TEST_CASE("quantile interpolates linearly between order statistics") {
    const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
    CHECK(quantile(v, 0.5) == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(quantile(v, 0.0) == 1.0);
    CHECK(quantile(v, 1.0) == 4.0);
}

TEST_CASE("quantile rejects empty input and bad levels") {
    CHECK_THROWS_AS(quantile(std::vector<double>{}, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(quantile(std::vector<double>{1.0}, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(quantile(std::vector<double>{1.0}, 1.1), std::invalid_argument);
}

TEST_CASE("quantile is monotone in the level and permutation invariant") {
    Rng rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + rng.index(40);
        std::vector<double> v(n);
        for (double& x : v) x = rng.uniform(-10.0, 10.0);

        double previous = quantile(v, 0.0);
        for (double q = 0.05; q <= 1.0; q += 0.05) {
            const double current = quantile(v, q);
            CHECK(current >= previous);
            previous = current;
        }

        std::vector<double> shuffled = v;
        rng.shuffle(shuffled);
        for (double q : {0.25, 0.5, 0.75}) {
            CHECK(quantile(v, q) == quantile(shuffled, q));
            CHECK(quantile(v, q) == doctest::Approx(quantile_reference(v, q)).epsilon(1e-14));
        }

        const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
        CHECK(quantile(v, 0.25) >= *mn);
        CHECK(quantile(v, 0.75) <= *mx);
    }
}
