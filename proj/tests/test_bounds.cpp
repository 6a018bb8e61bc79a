#include "stc/bounds.hpp"
#include "stc/errors.hpp"

#include <doctest.h>

#include <cmath>

using namespace stc;

namespace {

// Pascal's triangle in doubles, exact below 2^53.
double pascal(int n, int k) {
    std::vector<double> row{1};
    for (int i = 1; i <= n; ++i) {
        std::vector<double> next(static_cast<std::size_t>(i) + 1, 1);
        for (int j = 1; j < i; ++j) next[static_cast<std::size_t>(j)] = row[static_cast<std::size_t>(j) - 1] + row[static_cast<std::size_t>(j)];
        row = next;
    }
    return row[static_cast<std::size_t>(k)];
}

} // namespace

TEST_CASE("size bound example") {
    CHECK(pascal(23, 7) == 245157.0);
    const double got = code_size_log_upper_bound({14, 2, 4, 2});
    CHECK(std::abs(got - std::log2(245157.0)) <= 1e-9 * std::log2(245157.0));
    CHECK(got == doctest::Approx(17.9033).epsilon(1e-5));
}

TEST_CASE("log binomial agrees with Pascal's triangle") {
    for (int n = 0; n <= 60; ++n) {
        for (int k = 0; k <= n; ++k) {
            const double want = std::log(pascal(n, k)) / std::log(3.0);
            REQUIRE(log_binomial(n, k, 3) == doctest::Approx(want).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(log_binomial(3, 4, 2), ParameterError);
}

TEST_CASE("log binomial paths agree at their seams") {
    // exact u128 vs summed product vs log-gamma
    const long double n = 5e5L, k = 300;
    const double summed = log_binomial(n, k, 2);
    const double lg = static_cast<double>((std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1)) / std::log(2.0L));
    CHECK(summed == doctest::Approx(lg).epsilon(1e-10));
    CHECK(log_binomial(4e6L, 2e6L, 2) == doctest::Approx(4e6 - 0.5 * std::log2(M_PI * 2e6)).epsilon(1e-9));
}

TEST_CASE("single-window identity") {
    for (int q : {2, 3, 5}) {
        for (int lm = 1; lm <= 6; ++lm) {
            const long double k = std::pow(static_cast<long double>(q), lm);
            CHECK(log_binomial(k + 1, k, q) == doctest::Approx(std::log(static_cast<double>(k) + 1) / std::log(q)));
        }
    }
}

TEST_CASE("size bound monotone in n") {
    for (int q : {2, 4}) {
        for (long long lm = 2; lm <= 6; ++lm) {
            for (long long lo = 1; lo < lm; ++lo) {
                double prev = -1;
                for (long long n = lm; n <= 400; ++n) {
                    const double b = code_size_log_upper_bound({n, q, lm, lo});
                    REQUIRE(b >= prev);
                    REQUIRE(b >= 0);
                    prev = b;
                }
            }
        }
    }
    CHECK_THROWS_AS(code_size_log_upper_bound({10, 2, 4, 4}), ParameterError);
}

TEST_CASE("asymptotic rate bound") {
    CHECK(std::abs(asymptotic_rate_upper_bound(2, 0.5) - 1.0) <= 1e-12);
    CHECK(std::abs(asymptotic_rate_upper_bound(2, 0.25) - 2.0 / 3.0) <= 1e-12);
    CHECK(asymptotic_rate_upper_bound(1, 0.3) == 0);
    CHECK(asymptotic_rate_upper_bound(0.5, 0.9) == 0);
    for (double a : {1.5, 2.0, 3.0, 7.0}) CHECK(asymptotic_rate_upper_bound(a, 1 / a) == doctest::Approx(1.0));
    CHECK_THROWS_AS(asymptotic_rate_upper_bound(2, 0.6), ParameterError);
    CHECK_THROWS_AS(asymptotic_rate_upper_bound(2, 0), ParameterError);
}

TEST_CASE("size bound per symbol trends toward the asymptotic rate") {
    // l_min = ceil(a log n), l_over = ceil(gamma l_min) with (a, gamma) = (2, 1/4)
    const double target = asymptotic_rate_upper_bound(2, 0.25);
    double prev_gap = 1e9;
    for (int e : {10, 20, 40, 80, 160, 320}) {
        const long long lm = 2LL * e;
        const long long lo = (lm + 3) / 4;
        // n = 2^e does not fit in 64 bits beyond e = 62; evaluate the
        // binomial directly in that case.
        double rate;
        if (e <= 62) {
            const long long n = 1LL << e;
            rate = code_size_log_upper_bound({n, 2, lm, lo}) / static_cast<double>(n);
        } else {
            const long double n = std::pow(2.0L, e);
            const long double windows = std::ceil(n / static_cast<long double>(lm - lo));
            const long double profiles = std::pow(2.0L, lm);
            rate = log_binomial(windows + profiles, windows, 2) / static_cast<double>(n);
        }
        const double gap = rate - target;
        CHECK(gap > 0);
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
    CHECK(prev_gap < 0.05);
}

TEST_CASE("construction redundancy estimate") {
    const double want = 4096.0 * (1.0 / 3.0 + 0.5 / std::pow(12.0, 0.4));
    CHECK(construction_redundancy_bound(4096, 2, 2, 0.25, 0.1) == doctest::Approx(want).epsilon(1e-12));
    CHECK(construction_redundancy_bound(4096, 2, 2, 0.25, 0.1) == doctest::Approx(2123.312822587).epsilon(1e-10));
    CHECK(construction_redundancy_bound(4096, 2, 2, 0.5, 0.1) ==
          doctest::Approx(4096.0 * 0.5 / std::pow(12.0, 0.4)));
    double prev = 1e18;
    for (double g = 0.05; g <= 0.5; g += 0.05) {
        const double b = construction_redundancy_bound(4096, 2, 2, g, 0.1);
        CHECK(b <= prev);
        prev = b;
    }
    CHECK_THROWS_AS(construction_redundancy_bound(4096, 2, 2, 0.25, 0.6), ParameterError);
    CHECK_THROWS_AS(construction_redundancy_bound(4096, 2, 1, 0.25, 0.1), ParameterError);
}

TEST_CASE("report formatting") {
    const auto r = bound_report({14, 2, 4, 2}, 2.0, 0.25);
    const std::string kv = r.to_key_value();
    CHECK(kv.find("log_size_upper=17.9033") != std::string::npos);
    CHECK(kv.find("rate_upper_asymptotic=0.666666666667") != std::string::npos);
    CHECK(kv.find("log_base=q") != std::string::npos);
}
