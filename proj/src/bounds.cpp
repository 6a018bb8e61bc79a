#include "stc/bounds.hpp"

#include "stc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace stc {

namespace {

using u128 = unsigned __int128;

constexpr long double kSumLimit = 1e6L;

std::optional<u128> exact_binomial(long double n, long double k) {
    if (n > 1.8e19L) return std::nullopt;
    const auto nn = static_cast<unsigned long long>(n);
    const auto kk = static_cast<unsigned long long>(k);
    u128 c = 1;
    for (unsigned long long i = 1; i <= kk; ++i) {
        // c * (nn - kk + i) / i stays integral; guard the multiplication.
        const u128 f = nn - kk + i;
        if (c > (~u128(0)) / f) return std::nullopt;
        c = c * f / i;
    }
    return c;
}

long double ln_u128(u128 v) {
    const auto hi = static_cast<long double>(static_cast<unsigned long long>(v >> 64));
    const auto lo = static_cast<long double>(static_cast<unsigned long long>(v));
    return std::log(hi * 18446744073709551616.0L + lo);
}

void check_rate_domain(double a, double gamma) {
    if (!(gamma > 0) || gamma > 1.0 / a + 1e-12) {
        throw ParameterError("gamma=" + std::to_string(gamma) + " outside (0, 1/a] for a=" + std::to_string(a));
    }
}

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

} // namespace

double log_binomial(long double n, long double k, int q) {
    if (q < 2) throw ParameterError("logarithm base q must be >= 2");
    if (k < 0 || n < k) throw ParameterError("binomial requires 0 <= k <= n");
    k = std::min(k, n - k);
    const long double lnq = std::log(static_cast<long double>(q));
    if (k == 0) return 0.0;
    if (auto c = exact_binomial(n, k)) return static_cast<double>(ln_u128(*c) / lnq);
    long double acc = 0;
    if (k <= kSumLimit) {
        const long double base = n - k;
        for (long double i = 1; i <= k; i += 1) acc += std::log1p(base / i);
    } else {
        // lgamma(m+k+1) - lgamma(m+1) in Stirling-difference form; the direct
        // difference cancels catastrophically once n >> k.
        const long double m = n - k;
        acc = k * std::log(m + k) + (m + 0.5L) * std::log1p(k / m) - k + 1 / (12 * (m + k)) - 1 / (12 * m) -
              std::lgamma(k + 1);
    }
    return static_cast<double>(acc / lnq);
}

double code_size_log_upper_bound(const TraceParams& p) {
    p.validate();
    if (p.l_over >= p.l_min) {
        throw ParameterError("size bound requires l_over < l_min (got l_min=" + std::to_string(p.l_min) +
                             ", l_over=" + std::to_string(p.l_over) + ")");
    }
    const long long step = p.l_min - p.l_over;
    const long double windows = static_cast<long double>((p.n + step - 1) / step);
    const long double profiles = std::pow(static_cast<long double>(p.q), static_cast<long double>(p.l_min));
    return log_binomial(windows + profiles, profiles, p.q);
}

double asymptotic_rate_upper_bound(double a, double gamma) {
    if (a <= 1) return 0.0;
    check_rate_domain(a, gamma);
    return std::clamp((1.0 - 1.0 / a) / (1.0 - gamma), 0.0, 1.0);
}

double construction_redundancy_bound(long long n, int q, double a, double gamma, double eps) {
    if (!(a > 1)) throw ParameterError("a must exceed 1");
    check_rate_domain(a, gamma);
    if (!(eps > 0 && eps < 0.5)) throw ParameterError("eps must lie in (0, 0.5)");
    if (q < 2 || n < 2) throw ParameterError("need q >= 2 and n >= 2");
    const double logn = std::log(static_cast<double>(n)) / std::log(static_cast<double>(q));
    const double first = (1.0 / a - gamma) / (1.0 - gamma);
    const double second = (1.0 / a) / std::pow(logn, 0.5 - eps);
    return static_cast<double>(n) * (std::max(first, 0.0) + second);
}

BoundReport bound_report(const TraceParams& p, std::optional<double> a, std::optional<double> gamma) {
    BoundReport r;
    r.params = p;
    r.log_size_upper = code_size_log_upper_bound(p);
    r.rate_upper = std::min(1.0, r.log_size_upper / static_cast<double>(p.n));
    r.a = a;
    r.gamma = gamma;
    if (a && gamma) r.rate_upper_asymptotic = asymptotic_rate_upper_bound(*a, *gamma);
    return r;
}

std::string BoundReport::to_key_value() const {
    std::ostringstream os;
    os << "n=" << params.n << "\nq=" << params.q << "\nl_min=" << params.l_min << "\nl_over=" << params.l_over
       << "\nlog_base=q\nlog_size_upper=" << fmt(log_size_upper) << "\nrate_upper=" << fmt(rate_upper) << "\n";
    if (a) os << "a=" << fmt(*a) << "\n";
    if (gamma) os << "gamma=" << fmt(*gamma) << "\n";
    if (rate_upper_asymptotic) os << "rate_upper_asymptotic=" << fmt(*rate_upper_asymptotic) << "\n";
    return os.str();
}

} // namespace stc
