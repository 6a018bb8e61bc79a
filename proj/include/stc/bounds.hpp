#pragma once
// Upper bounds on the size and rate of trace codes, and the leading-term
// redundancy estimate of the constructive code. Logarithms are base q.

#include "stc/seqcore.hpp"

#include <optional>
#include <string>

namespace stc {

// log_q binomial(n, k) for integers 0 <= k <= n given as reals. Exact integer
// arithmetic when the value fits 128 bits, a summed product for
// min(k, n-k) <= 1e6, a Stirling expansion beyond.
double log_binomial(long double n, long double k, int q);

// log_q binomial(ceil(n/(l_min-l_over)) + q^l_min, q^l_min).
// Requires l_over < l_min <= n.
double code_size_log_upper_bound(const TraceParams& p);

// (1 - 1/a)/(1 - gamma) clamped to [0, 1]; 0 when a <= 1.
// Requires 0 < gamma <= 1/a when a > 1.
double asymptotic_rate_upper_bound(double a, double gamma);

// n ((1/a - gamma)/(1 - gamma) + (1/a)/(log_q n)^(0.5 - eps)); a leading-term
// estimate without the unspecified lower-order constant.
double construction_redundancy_bound(long long n, int q, double a, double gamma, double eps);

struct BoundReport {
    TraceParams params;
    double log_size_upper = 0;
    double rate_upper = 0;  // log_size_upper / n, capped at 1
    std::optional<double> a;
    std::optional<double> gamma;
    std::optional<double> rate_upper_asymptotic;

    std::string to_key_value() const;
};

BoundReport bound_report(const TraceParams& p, std::optional<double> a = {}, std::optional<double> gamma = {});

} // namespace stc
