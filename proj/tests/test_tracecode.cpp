#include "oracles.hpp"
#include "stc/channel.hpp"
#include "stc/constrained.hpp"
#include "stc/errors.hpp"
#include "stc/tracecode.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace stc;

namespace {

Seq random_message(const ConstructionParams& p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Symbol> v(static_cast<std::size_t>(p.message_length()));
    for (auto& s : v) s = static_cast<Symbol>(rng() % static_cast<unsigned>(p.q));
    return Seq(Alphabet(p.q), v);
}

// Closed forms evaluated independently with real arithmetic.
long long r_oracle(int f, int I) {
    const int F = static_cast<int>(std::ceil(static_cast<double>(I) / f)) - 1;
    return f + 3 + (F + 1) * (f + 2);
}

long long ell_oracle(long long l_min, long long l_over, int f, int I) {
    const int F = static_cast<int>(std::ceil(static_cast<double>(I) / f)) - 1;
    const double piece = std::floor(static_cast<double>(l_min - r_oracle(f, I)) / (F + 1));
    return static_cast<long long>(std::ceil((l_over - 2.0 * f - 5) / (1 + (f + 2) / piece) - 1e-12));
}

} // namespace

TEST_CASE("desk instance parameters") {
    const auto p = derive_params(4, 256, 16, 12, 2, 2);
    CHECK(p.F == 0);
    CHECK(p.r == 9);
    CHECK(p.ell == 2);
    CHECK(p.blocks_per_index == 1);
    CHECK(p.n_block_out == 7);
    CHECK(p.lambda == doctest::Approx(1 - 2.0 / 16));
    CHECK(p.msg_len == static_cast<long long>(rf_capacity({4, 2, 2, 7})));
    CHECK(p.r - (p.f + 3) - (p.F + 1) * (p.f + 2) == 0);
    const auto rep = redundancy_report(p);
    CHECK(rep.measured == 256 - 16 * p.msg_len);
    CHECK(rep.measured >= 16 * (p.n_block_out - p.msg_len));
    CHECK(rep.rate == doctest::Approx(16.0 * p.msg_len / 256));
    CHECK(rep.rate <= rep.rate_upper);
}

TEST_CASE("feasibility errors name the constraint") {
    try {
        derive_params(2, 1024, 16, 12, 2, 2);
        FAIL("expected a feasibility error");
    } catch (const ParameterError& e) {
        CHECK(std::string(e.what()) == "RF capacity: n_block_out 112 > q^l+l-1 = 5");
    }
    CHECK_THROWS_WITH_AS(derive_params(4, 250, 16, 12, 2, 2), doctest::Contains("divisibility"), ParameterError);
    CHECK_THROWS_WITH_AS(derive_params(4, 144, 9, 8, 2, 2), doctest::Contains("block room"), ParameterError);
    CHECK_THROWS_WITH_AS(derive_params(4, 256, 16, 8, 2, 2), doctest::Contains("window"), ParameterError);
    CHECK_THROWS_AS(derive_params(4, 256, 16, 12, 0, 2), ParameterError);
}

TEST_CASE("encode_index examples") {
    // A parameter set with I = 4, f = 2, q = 2.
    const auto p = derive_params(2, 16 * 30, 30, 29, 2, 4);
    CHECK(p.F == 1);
    const auto e0 = encode_index(0, p);
    REQUIRE(e0.segments.size() == 2);
    CHECK(e0.segments[0].str() == "1001");
    CHECK(e0.segments[1].str() == "1001");
    const auto e5 = encode_index(5, p);
    CHECK(e5.segments[0].str() == "1011");
    CHECK(e5.segments[1].str() == "1011");
    CHECK_THROWS_AS(encode_index(16, p), ParameterError);
    CHECK_THROWS_AS(encode_index(-1, p), ParameterError);
}

TEST_CASE("encode_index unwraps to the base-q index") {
    for (int I = 1; I <= 8; ++I) {
        for (int f = 1; f <= 3; ++f) {
            const int F = (I + f - 1) / f - 1;
            const long long lm = f + 3 + I + 2 * (F + 1) + 40;
            const long long n = (1LL << I) * lm;
            ConstructionParams p;
            try {
                p = derive_params(2, n, lm, lm - 1, f, I);
            } catch (const ParameterError&) {
                continue;
            }
            for (long long i = 0; i < p.index_count; ++i) {
                const auto e = encode_index(i, p);
                REQUIRE(e.segments.size() == static_cast<std::size_t>(F + 1));
                std::string joined;
                std::size_t wrapped = 0;
                for (int k = 0; k <= F; ++k) {
                    const std::string s = e.segments[static_cast<std::size_t>(k)].str();
                    REQUIRE(s.front() == '1');
                    REQUIRE(s.back() == '1');
                    REQUIRE(s.size() == static_cast<std::size_t>(p.segment_length(k)) + 2);
                    joined += s.substr(1, s.size() - 2);
                    wrapped += s.size();
                }
                REQUIRE(joined == oracle::digits(static_cast<unsigned long long>(i), 2, I));
                REQUIRE(wrapped == static_cast<std::size_t>(2 * (F + 1) + I));
            }
        }
    }
}

TEST_CASE("codeword structure") {
    for (const auto& p : {derive_params(4, 256, 16, 12, 2, 2), derive_params(3, 90, 15, 14, 2, 1),
                          derive_params(3, 27 * 40, 40, 36, 3, 3)}) {
        const Seq z = encode(random_message(p, 1), p);
        REQUIRE(static_cast<long long>(z.size()) == p.n);
        const std::string s = z.str();
        const std::string head = "1" + std::string(static_cast<std::size_t>(p.f), '0') + "11";
        const std::string body = "1" + std::string(static_cast<std::size_t>(p.f), '0') + "01";
        long long heads = 0;
        for (long long b = 0; b < p.n / p.l_min; ++b) {
            const std::string marker = s.substr(static_cast<std::size_t>(b * p.l_min), head.size());
            const bool is_head = b % p.blocks_per_index == 0;
            CHECK(marker == (is_head ? head : body));
            heads += marker == head;
        }
        CHECK(heads == p.index_count);
        CHECK(oracle::longest_zero_run(s) <= static_cast<std::size_t>(p.f) + 1);
        // data symbols keep zero runs below f
        const auto layout = codeword_layout(p);
        std::string y;
        for (std::size_t k = 0; k < layout.size(); ++k)
            if (layout[k].kind == SlotKind::data) y.push_back(s[k]);
        CHECK(y.size() == static_cast<std::size_t>(p.index_count * p.n_block_out));
        for (long long i = 0; i < p.index_count; ++i) {
            const std::string yi = y.substr(static_cast<std::size_t>(i * p.n_block_out), static_cast<std::size_t>(p.n_block_out));
            CHECK(oracle::repeat_free(yi, static_cast<std::size_t>(p.ell)));
            CHECK(oracle::longest_zero_run(yi) < static_cast<std::size_t>(p.f));
        }
    }
}

TEST_CASE("round trip on small instances") {
    for (const auto& p : {derive_params(4, 256, 16, 12, 2, 2), derive_params(3, 90, 15, 14, 2, 1),
                          derive_params(3, 27 * 40, 40, 36, 3, 3), derive_params(2, 4 * 64 * 2, 64, 60, 3, 2)}) {
        CAPTURE(p.to_key_value());
        for (std::uint64_t seed = 0; seed < 25; ++seed) {
            const Seq x = random_message(p, seed);
            const Seq z = encode(x, p);
            CHECK(decode(Trace(std::vector<Seq>{z}), p) == x);
            CHECK(decode(canonical_trace(z, p.trace_params()), p) == x);
            for (const char* name : {"uniform_random", "max_fragmentation"}) {
                CHECK(decode(sample_trace(z, p.trace_params(), SamplePolicy::parse(name, seed)), p) == x);
            }
        }
    }
}

TEST_CASE("decode rejects foreign traces explicitly") {
    const auto p = derive_params(4, 256, 16, 12, 2, 2);
    const Seq z = encode(random_message(p, 3), p);
    std::vector<Symbol> bad = z.symbols();
    bad[0] = 0;  // breaks the first marker
    CHECK_THROWS_AS(decode(Trace(std::vector<Seq>{Seq(Alphabet(4), bad)}), p), DecodeError);
    CHECK_THROWS_AS(decode(Trace(), p), DecodeError);
    // A fragment covering only part of the codeword leaves data unresolved.
    CHECK_THROWS_WITH_AS(decode(Trace(std::vector<Seq>{z.substr(0, 128)}), p), doctest::Contains("ambiguous"),
                         DecodeError);
    CHECK_THROWS_AS(encode(Seq(4, {1, 2}), p), ParameterError);
}

TEST_CASE("l_min-windows carry their index at the true phase") {
    for (const auto& p : {derive_params(4, 256, 16, 12, 2, 2), derive_params(3, 90, 15, 14, 2, 1),
                          derive_params(3, 27 * 40, 40, 36, 3, 3)}) {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const Seq z = encode(random_message(p, seed), p);
            for (long long s = 0; s + p.l_min <= p.n; ++s) {
                const auto cands = index_from_window(z.view().subspan(static_cast<std::size_t>(s), static_cast<std::size_t>(p.l_min)), p);
                bool hit = false;
                for (const auto& c : cands) {
                    if (c.phase == s % p.l_min) {
                        CHECK(c.index == s / (p.blocks_per_index * p.l_min));
                        hit = true;
                    }
                }
                REQUIRE(hit);
            }
        }
    }
}

TEST_CASE("l_over-windows contain l consecutive data symbols") {
    for (const auto& p : {derive_params(4, 256, 16, 12, 2, 2), derive_params(3, 27 * 40, 40, 36, 3, 3)}) {
        const auto layout = codeword_layout(p);
        for (long long s = 0; s + p.l_over <= p.n; ++s) {
            long long best = 0, run = 0, prev = -2;
            for (long long k = s; k < s + p.l_over; ++k) {
                const auto& slot = layout[static_cast<std::size_t>(k)];
                if (slot.kind != SlotKind::data) continue;
                run = slot.y == prev + 1 ? run + 1 : 1;
                prev = slot.y;
                best = std::max(best, run);
            }
            REQUIRE(best >= p.ell);
        }
    }
}

TEST_CASE("closed forms across a sweep") {
    int accepted = 0;
    for (int q : {3, 4, 5}) {
        for (int f : {2, 3}) {
            for (int I = 1; I <= 3; ++I) {
                for (long long lm = 24; lm <= 64; lm += 4) {
                    const long long n = static_cast<long long>(std::pow(q, I)) * lm;
                    for (long long lo : {lm - 1, lm - 4}) {
                        ConstructionParams p;
                        try {
                            p = derive_params(q, n, lm, lo, f, I);
                        } catch (const ParameterError&) {
                            continue;
                        }
                        ++accepted;
                        CHECK(p.r == r_oracle(f, I));
                        CHECK(p.ell == ell_oracle(lm, lo, f, I));
                        CHECK(static_cast<double>(p.r) - (I + 2.0 * I / f + 2.0 * f) <= 8.0);
                        CHECK(static_cast<double>(p.ell) <= p.lambda * static_cast<double>(lo));
                    }
                }
            }
        }
    }
    CHECK(accepted >= 50);
}

TEST_CASE("parameter blocks round trip") {
    const auto p = derive_params(4, 256, 16, 12, 2, 2);
    const auto back = params_from_key_value(p.to_key_value());
    CHECK(back.to_key_value() == p.to_key_value());
    CHECK_THROWS_AS(params_from_key_value("q=4\nn=256\nl_min=16\nl_over=12\nf=2\nI=2\nell=3\n"), ParameterError);
    CHECK_THROWS_AS(params_from_key_value("q=4\nn=256\n"), ParameterError);
    CHECK_THROWS_AS(params_from_key_value("mode=other\nq=4\nn=256\n"), ParameterError);
}
