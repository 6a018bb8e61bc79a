#include "oracles.hpp"
#include "stc/channel.hpp"
#include "stc/errors.hpp"

#include <doctest.h>

#include <random>

using namespace stc;

namespace {

Trace trace_of_strings(int q, const std::vector<std::string>& frags) {
    Trace t;
    for (const auto& f : frags) t.add(Seq::parse(q, f));
    return t;
}

oracle::Multiset as_multiset(const Trace& t) {
    oracle::Multiset m;
    for (const auto& f : t.fragments()) m.push_back(f.str());
    std::sort(m.begin(), m.end());
    return m;
}

TraceClass from_oracle(oracle::Class c) {
    switch (c) {
    case oracle::Class::valid: return TraceClass::valid;
    case oracle::Class::complete_but_invalid: return TraceClass::complete_but_invalid;
    case oracle::Class::trace_but_incomplete: return TraceClass::trace_but_incomplete;
    case oracle::Class::not_a_trace: break;
    }
    return TraceClass::not_a_trace;
}

} // namespace

TEST_CASE("worked example classifications") {
    const Seq x = Seq::parse(2, "11101110101111");
    const TraceParams p{14, 2, 6, 2};
    CHECK(validate_trace(x, trace_of_strings(2, {"1110111", "111010", "101111"}), p) == TraceClass::valid);
    CHECK(validate_trace(x, trace_of_strings(2, {"111011", "110101", "101111"}), p) ==
          TraceClass::complete_but_invalid);
    CHECK(validate_trace(x, trace_of_strings(2, {"110111", "110101", "01111"}), p) ==
          TraceClass::trace_but_incomplete);
    CHECK(validate_trace(x, trace_of_strings(2, {"000"}), p) == TraceClass::not_a_trace);
    CHECK(validate_trace(x, Trace(), p) == TraceClass::not_a_trace);
}

TEST_CASE("validator matches brute force on random fragment sets") {
    std::mt19937_64 rng(11);
    for (int iter = 0; iter < 3000; ++iter) {
        const int n = 4 + static_cast<int>(rng() % 6);
        std::string xs;
        for (int i = 0; i < n; ++i) xs.push_back(static_cast<char>('0' + rng() % 2));
        const std::size_t lm = 2 + rng() % 3, lo = 1 + rng() % lm;
        if (lm > static_cast<std::size_t>(n)) continue;
        std::vector<std::string> frags;
        const std::size_t k = 1 + rng() % 4;
        for (std::size_t j = 0; j < k; ++j) {
            const std::size_t len = 1 + rng() % static_cast<std::size_t>(n);
            const std::size_t at = rng() % (static_cast<std::size_t>(n) - len + 1);
            frags.push_back(rng() % 8 == 0 ? std::string(len, '1') : xs.substr(at, len));
        }
        const TraceParams p{n, 2, static_cast<long long>(lm), static_cast<long long>(lo)};
        INFO("x=" << xs << " lm=" << lm << " lo=" << lo);
        REQUIRE(validate_trace(Seq::parse(2, xs), trace_of_strings(2, frags), p) ==
                from_oracle(oracle::classify(xs, frags, lm, lo)));
    }
}

TEST_CASE("spectrum enumeration matches brute force") {
    for (int n = 3; n <= 8; ++n) {
        for (const auto& s : oracle::all_strings(2, n)) {
            // chain counts explode for short windows on longer strings
            for (std::size_t lm = n <= 6 ? 2 : 3; lm <= 4 && lm <= static_cast<std::size_t>(n); ++lm) {
                for (std::size_t lo = 1; lo <= lm; ++lo) {
                    const auto got = enumerate_spectrum(Seq::parse(2, s), {n, 2, static_cast<long long>(lm),
                                                                          static_cast<long long>(lo)});
                    std::set<oracle::Multiset> mine;
                    for (const auto& t : got) mine.insert(as_multiset(t));
                    REQUIRE(mine == oracle::all_traces(s, lm, lo));
                }
            }
        }
    }
}

TEST_CASE("spectrum enumeration honours the cap") {
    const Seq x = Seq::parse(2, "0000000000000000000000000");
    CHECK_THROWS_AS(enumerate_spectrum(x, {25, 2, 2, 1}, 1000), ResourceError);
}

TEST_CASE("every policy yields a valid trace") {
    std::mt19937_64 rng(3);
    for (int iter = 0; iter < 400; ++iter) {
        const int n = 8 + static_cast<int>(rng() % 30);
        std::vector<Symbol> v(static_cast<std::size_t>(n));
        for (auto& s : v) s = static_cast<Symbol>(rng() % 3);
        const Seq x(Alphabet(3), v);
        const long long lm = 2 + static_cast<long long>(rng() % 6);
        const long long lo = 1 + static_cast<long long>(rng() % static_cast<unsigned long long>(lm - 1));
        const TraceParams p{n, 3, lm, lo};
        for (const char* name : {"canonical", "uniform_random", "max_fragmentation", "min_fragmentation"}) {
            const auto policy = SamplePolicy::parse(name, static_cast<std::uint64_t>(iter));
            const auto t = sample_trace(x, p, policy);
            REQUIRE(validate_trace(x, t, p) == TraceClass::valid);
            if (policy.kind != PolicyKind::canonical) {
                const auto plan = sample_plan(x, p, policy);
                REQUIRE(plan.violation().empty());
                REQUIRE(trace_of(x, plan) == t);
            }
        }
    }
}

TEST_CASE("policy shapes") {
    const Seq x = Seq::parse(2, "11101110101111");
    const TraceParams p{14, 2, 4, 2};
    CHECK(sample_trace(x, p, SamplePolicy::parse("canonical")) == canonical_trace(x, p));
    CHECK(sample_trace(x, p, SamplePolicy::parse("min")).fragment_count() == 1);
    CHECK(sample_trace(x, p, SamplePolicy::parse("max")).fragment_count() == 11);
    const auto a = sample_trace(x, p, SamplePolicy::parse("random", 9));
    const auto b = sample_trace(x, p, SamplePolicy::parse("random", 9));
    CHECK(a == b);
    CHECK_THROWS_AS(SamplePolicy::parse("bogus"), ParameterError);
    CHECK(SamplePolicy::parse("max").name() == "max_fragmentation");
}

TEST_CASE("plan violations are named") {
    // {starts}, {lengths}
    const TraceParams p{10, 2, 3, 2};
    CHECK(CutPlan{{0, 4}, {6, 6}, p}.violation().empty());
    CHECK(CutPlan{{1, 4}, {6, 6}, p}.violation() == "first fragment does not start at 0");
    CHECK(CutPlan{{0, 6}, {6, 4}, p}.violation() == "gap after fragment 0");
    CHECK(CutPlan{{0, 4}, {6, 5}, p}.violation() == "last fragment is not a suffix");
    CHECK(CutPlan{{0, 4}, {6, 2}, p}.violation() == "fragment 1 shorter than l_min");
    CHECK(CutPlan{{0, 4}, {6, 6}, {10, 2, 3, 3}}.violation() == "overlap after fragment 0 below l_over");
}
