#include "stc/tracecode.hpp"

#include "parallel.hpp"
#include "stc/bounds.hpp"
#include "stc/config.hpp"
#include "stc/constrained.hpp"
#include "stc/errors.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace stc {

namespace {

[[noreturn]] void infeasible(const std::string& what) { throw ParameterError(what); }

long long ceil_div(long long a, long long b) { return (a + b - 1) / b; }

RfParams block_codec(const ConstructionParams& p) {
    return {p.q, static_cast<std::size_t>(p.ell), static_cast<std::size_t>(p.f),
            static_cast<std::size_t>(p.n_block_out)};
}

// Kind and sub-index (digit or data position) of every offset of a sub-block.
struct BlockMap {
    std::vector<SlotKind> kind;
    std::vector<int> sub;  // digit index for index_digit, data index for data, -1 otherwise
    std::vector<Symbol> fixed;
};

BlockMap block_map(const ConstructionParams& p) {
    BlockMap m;
    auto put = [&](SlotKind k, int sub, Symbol s) {
        m.kind.push_back(k);
        m.sub.push_back(sub);
        m.fixed.push_back(s);
    };
    put(SlotKind::marker, -1, 1);
    for (int i = 0; i < p.f; ++i) put(SlotKind::marker, -1, 0);
    put(SlotKind::marker, -1, 1);  // head/body bit, patched per sub-block
    put(SlotKind::marker, -1, 1);
    int data = 0, digit = 0;
    for (int k = 0; k <= p.F; ++k) {
        for (long long d = 0; d < p.piece_length(k); ++d) put(SlotKind::data, data++, 0);
        put(SlotKind::wrap, -1, 1);
        for (int d = 0; d < p.segment_length(k); ++d) put(SlotKind::index_digit, digit++, 0);
        put(SlotKind::wrap, -1, 1);
    }
    return m;
}

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

} // namespace

long long ConstructionParams::piece_length(int k) const {
    const long long base = data_per_block / (F + 1);
    const long long extra = data_per_block % (F + 1);
    return base + (k < extra ? 1 : 0);
}

ConstructionParams derive_params(int q, long long n, long long l_min, long long l_over, int f, int I) {
    if (q < 2 || q > kMaxAlphabet) infeasible("alphabet: q=" + std::to_string(q) + " outside [2, 256]");
    if (f < 1) infeasible("segment length f must be >= 1");
    if (I < 1) infeasible("index length I must be >= 1");
    TraceParams tp{n, q, l_min, l_over};
    tp.validate();

    ConstructionParams p;
    p.q = q;
    p.n = n;
    p.l_min = l_min;
    p.l_over = l_over;
    p.f = f;
    p.I = I;
    p.F = (I + f - 1) / f - 1;
    p.r = f + 3 + static_cast<long long>(p.F + 1) * (f + 2);
    p.lambda = 1.0 - static_cast<double>(I) / static_cast<double>(l_min);
    p.index_count = static_cast<long long>(ipow(static_cast<unsigned long long>(q), static_cast<unsigned>(I)));

    const long long period = p.index_count * l_min;
    if (period / l_min != p.index_count || n % period != 0) {
        infeasible("divisibility: q^I*l_min = " + std::to_string(p.index_count) + "*" + std::to_string(l_min) +
                   " does not divide n = " + std::to_string(n));
    }
    p.blocks_per_index = n / period;
    if (l_min - p.r < p.F + 1) {
        infeasible("block room: l_min - r = " + std::to_string(l_min - p.r) + " < F+1 = " + std::to_string(p.F + 1));
    }
    const long long piece = (l_min - p.r) / (p.F + 1);
    const long long num = (l_over - 2LL * f - 5) * piece;
    const long long den = piece + f + 2;
    p.ell = num > 0 ? ceil_div(num, den) : -((-num) / den);
    if (p.ell < 1) infeasible("window: l = " + std::to_string(p.ell) + " < 1 (l_over too small for f)");

    // Index segments use I symbols in total, so any slack of r over the
    // actual framing (when f does not divide I) goes to the data pieces.
    p.data_per_block = l_min - (f + 3) - I - 2LL * (p.F + 1);
    p.n_block_out = p.data_per_block * p.blocks_per_index;

    // q^l + l - 1, saturating well above any admissible n_block_out.
    long long words = 1;
    for (long long e = 0; e < p.ell && words <= n; ++e) words *= q;
    if (p.n_block_out > words + p.ell - 1) {
        infeasible("RF capacity: n_block_out " + std::to_string(p.n_block_out) + " > q^l+l-1 = " +
                   std::to_string(words + p.ell - 1));
    }
    if (p.ell >= p.n_block_out) {
        infeasible("window: l = " + std::to_string(p.ell) + " >= n_block_out = " + std::to_string(p.n_block_out));
    }
    try {
        p.msg_len = static_cast<long long>(rf_capacity(block_codec(p)));
    } catch (const ParameterError& e) {
        infeasible(std::string("block codec: ") + e.what());
    }
    if (p.msg_len < 1) infeasible("block codec: capacity 0 for n_block_out = " + std::to_string(p.n_block_out));
    return p;
}

ConstructionParams derive_params_asymptotic(int q, long long n, double a, double gamma, double eps) {
    if (q < 2) infeasible("alphabet: q must be >= 2");
    if (n < 2) infeasible("length: n must be >= 2");
    if (!(a > 1)) infeasible("asymptotic: a must exceed 1");
    if (!(gamma > 0) || gamma * a > 1.0 + 1e-12) infeasible("asymptotic: gamma outside (0, 1/a]");
    if (!(eps > 0 && eps < 0.5)) infeasible("asymptotic: eps outside (0, 0.5)");
    const double logn = std::log(static_cast<double>(n)) / std::log(static_cast<double>(q));
    const auto l_min = static_cast<long long>(std::ceil(a * logn - 1e-9));
    const auto l_over = static_cast<long long>(std::ceil(gamma * static_cast<double>(l_min) - 1e-9));
    const auto f = static_cast<int>(std::ceil(std::sqrt(logn) - 1e-9));
    const auto I = static_cast<int>(std::ceil((1 - gamma * a) / (1 - gamma) * logn + std::pow(logn, 0.5 + eps) - 1e-9));
    ConstructionParams p = derive_params(q, n, l_min, l_over, f, I);
    p.mode = DerivationMode::asymptotic;
    p.a = a;
    p.gamma = gamma;
    p.eps = eps;
    const double loglog = std::log(logn);
    if (loglog > 0) {
        const double ratio = std::log(static_cast<double>(f)) / loglog;
        if (eps < std::max(ratio, 1 - ratio) - 0.5) {
            p.warnings.push_back("eps=" + fmt(eps) + " below " + fmt(std::max(ratio, 1 - ratio) - 0.5));
        }
    }
    return p;
}

std::string ConstructionParams::to_key_value() const {
    std::ostringstream os;
    os << "mode=" << (mode == DerivationMode::explicit_params ? "explicit" : "asymptotic") << "\n";
    os << "q=" << q << "\nn=" << n << "\nl_min=" << l_min << "\nl_over=" << l_over << "\nf=" << f << "\nI=" << I
       << "\n";
    if (mode == DerivationMode::asymptotic) os << "a=" << fmt(a) << "\ngamma=" << fmt(gamma) << "\neps=" << fmt(eps) << "\n";
    os << "F=" << F << "\nr=" << r << "\nell=" << ell << "\nlambda=" << fmt(lambda) << "\nindex_count=" << index_count
       << "\nblocks_per_index=" << blocks_per_index << "\ndata_per_block=" << data_per_block
       << "\nn_block_out=" << n_block_out << "\nmsg_len=" << msg_len << "\nmessage_length=" << message_length()
       << "\nrf_scheme=" << to_string(rf_scheme(block_codec(*this))) << "\n";
    for (const auto& w : warnings) os << "# warning: " << w << "\n";
    return os.str();
}

ConstructionParams params_from_key_value(const std::string& text) {
    const KeyValues kv = parse_key_values(text);
    auto need_int = [&](const char* key) {
        auto v = get_integer(kv, key);
        if (!v) throw ParameterError(std::string("missing key ") + key);
        return *v;
    };
    auto need_real = [&](const char* key) {
        auto v = get_real(kv, key);
        if (!v) throw ParameterError(std::string("missing key ") + key);
        return *v;
    };
    const auto mode = kv.count("mode") ? kv.at("mode") : std::string("explicit");
    const int q = static_cast<int>(need_int("q"));
    const long long n = need_int("n");
    ConstructionParams p;
    if (mode == "asymptotic") {
        p = derive_params_asymptotic(q, n, need_real("a"), need_real("gamma"), need_real("eps"));
    } else if (mode == "explicit") {
        p = derive_params(q, n, need_int("l_min"), need_int("l_over"), static_cast<int>(need_int("f")),
                          static_cast<int>(need_int("I")));
    } else {
        throw ParameterError("unknown mode '" + mode + "'");
    }
    // Derived keys, when present, must agree with the re-derivation.
    auto check = [&](const char* key, long long v) {
        if (auto got = get_integer(kv, key); got && *got != v) {
            throw ParameterError(std::string("key ") + key + "=" + std::to_string(*got) + " disagrees with derived " +
                                 std::to_string(v));
        }
    };
    check("F", p.F);
    check("r", p.r);
    check("ell", p.ell);
    check("n_block_out", p.n_block_out);
    check("msg_len", p.msg_len);
    return p;
}

EncodedIndex encode_index(long long i, const ConstructionParams& p) {
    if (i < 0 || i >= p.index_count) {
        throw ParameterError("index " + std::to_string(i) + " outside [0, " + std::to_string(p.index_count) + ")");
    }
    const auto digits = to_base_q(static_cast<unsigned long long>(i), p.q, static_cast<std::size_t>(p.I));
    EncodedIndex e;
    e.index = i;
    std::size_t at = 0;
    for (int k = 0; k <= p.F; ++k) {
        std::vector<Symbol> seg{1};
        for (int d = 0; d < p.segment_length(k); ++d) seg.push_back(digits[at++]);
        seg.push_back(1);
        e.segments.emplace_back(Alphabet(p.q), std::move(seg));
    }
    return e;
}

std::vector<Slot> codeword_layout(const ConstructionParams& p) {
    const BlockMap m = block_map(p);
    std::vector<Slot> out(static_cast<std::size_t>(p.n));
    std::size_t pos = 0;
    for (long long i = 0; i < p.index_count; ++i) {
        const auto digits = to_base_q(static_cast<unsigned long long>(i), p.q, static_cast<std::size_t>(p.I));
        for (long long j = 0; j < p.blocks_per_index; ++j) {
            for (std::size_t off = 0; off < m.kind.size(); ++off, ++pos) {
                Slot& s = out[pos];
                s.kind = m.kind[off];
                switch (s.kind) {
                case SlotKind::data:
                    s.y = i * p.n_block_out + j * p.data_per_block + m.sub[off];
                    break;
                case SlotKind::index_digit:
                    s.fixed = digits[static_cast<std::size_t>(m.sub[off])];
                    break;
                default:
                    s.fixed = m.fixed[off];
                    if (off == static_cast<std::size_t>(p.f) + 1) s.fixed = j == 0 ? 1 : 0;
                }
            }
        }
    }
    return out;
}

Seq encode(const Seq& x, const ConstructionParams& p) {
    if (x.q() != p.q) throw ParameterError("message alphabet does not match q");
    if (static_cast<long long>(x.size()) != p.message_length()) {
        throw ParameterError("message length " + std::to_string(x.size()) + " != q^I*msg_len = " +
                             std::to_string(p.message_length()));
    }
    const RfParams fp = block_codec(p);
    std::vector<Seq> blocks(static_cast<std::size_t>(p.index_count));
    detail::parallel_for(blocks.size(), [&](std::size_t i) {
        blocks[i] = rf_encode(x.substr(i * static_cast<std::size_t>(p.msg_len), static_cast<std::size_t>(p.msg_len)), fp);
    });
    const auto layout = codeword_layout(p);
    std::vector<Symbol> z(layout.size());
    for (std::size_t pos = 0; pos < layout.size(); ++pos) {
        const Slot& s = layout[pos];
        if (s.kind == SlotKind::data) {
            z[pos] = blocks[static_cast<std::size_t>(s.y / p.n_block_out)][static_cast<std::size_t>(s.y % p.n_block_out)];
        } else {
            z[pos] = s.fixed;
        }
    }
    return Seq(Alphabet(p.q), std::move(z));
}

std::vector<WindowIndex> index_from_window(std::span<const Symbol> w, const ConstructionParams& p) {
    if (static_cast<long long>(w.size()) != p.l_min) throw ParameterError("window length must equal l_min");
    const BlockMap m = block_map(p);
    const auto L = static_cast<std::size_t>(p.l_min);
    const std::size_t bit = static_cast<std::size_t>(p.f) + 1;
    std::vector<WindowIndex> out;
    for (std::size_t phase = 0; phase < L; ++phase) {
        std::vector<Symbol> suffix, prefix;  // digits of the current / next sub-block
        bool ok = true;
        bool head_bit = false;
        for (std::size_t k = 0; k < L && ok; ++k) {
            const std::size_t off = (phase + k) % L;
            const bool current = phase + k < L;
            switch (m.kind[off]) {
            case SlotKind::data:
                break;
            case SlotKind::index_digit:
                (current ? suffix : prefix).push_back(w[k]);
                break;
            default:
                if (off == bit) {
                    if (w[k] > 1) ok = false;
                    head_bit = w[k] == 1;
                } else if (w[k] != m.fixed[off]) {
                    ok = false;
                }
            }
        }
        if (!ok) continue;
        const bool current_bit = phase <= bit;
        WindowIndex wi;
        wi.phase = static_cast<long long>(phase);
        wi.mu = static_cast<int>(prefix.size());
        if (current_bit) {
            // One sub-block per index: every sub-block is a head.
            if (p.blocks_per_index == 1 && !head_bit) continue;
            wi.next_is_head = p.blocks_per_index == 1;
        } else {
            wi.next_is_head = head_bit;
            if (p.blocks_per_index == 1 && !head_bit) continue;
        }
        // Data symbols obey the block codec's zero-run limit.
        std::size_t run = 0;
        for (std::size_t k = 0; k < L && ok; ++k) {
            const std::size_t off = (phase + k) % L;
            if (phase + k == L && wi.next_is_head) run = 0;
            if (m.kind[off] != SlotKind::data) continue;
            run = w[k] == 0 ? run + 1 : 0;
            ok = run < static_cast<std::size_t>(p.f);
        }
        if (!ok) continue;
        std::vector<Symbol> digits(prefix);
        if (wi.mu > 0 && wi.next_is_head) {
            // The prefix belongs to the next index; step it back unless the
            // suffix is not all (q-1), in which case the prefixes coincide.
            const bool suffix_max = std::all_of(suffix.begin(), suffix.end(), [&](Symbol s) { return s == p.q - 1; });
            if (suffix_max) {
                unsigned long long v = from_base_q(digits, p.q);
                if (v == 0) continue;
                digits = to_base_q(v - 1, p.q, digits.size());
            }
        }
        digits.insert(digits.end(), suffix.begin(), suffix.end());
        wi.index = static_cast<long long>(from_base_q(digits, p.q));
        if (wi.mu > 0 && wi.next_is_head && wi.index + 1 >= p.index_count) continue;
        out.push_back(wi);
    }
    return out;
}

RedundancyReport redundancy_report(const ConstructionParams& p) {
    RedundancyReport r;
    r.measured = p.n - p.message_length();
    r.rate = static_cast<double>(p.message_length()) / static_cast<double>(p.n);
    if (p.l_over < p.l_min) {
        r.log_size_upper = code_size_log_upper_bound(p.trace_params());
        r.rate_upper = std::min(1.0, r.log_size_upper / static_cast<double>(p.n));
    } else {
        r.log_size_upper = static_cast<double>(p.n);
        r.rate_upper = 1.0;
    }
    if (p.mode == DerivationMode::asymptotic) {
        r.has_asymptotic = true;
        r.rate_upper_asymptotic = asymptotic_rate_upper_bound(p.a, p.gamma);
        r.thm1_estimate = construction_redundancy_bound(p.n, p.q, p.a, p.gamma, p.eps);
    }
    return r;
}

std::string RedundancyReport::to_key_value() const {
    std::ostringstream os;
    os << "measured_redundancy=" << measured << "\nrate=" << fmt(rate) << "\nlog_size_upper=" << fmt(log_size_upper)
       << "\nrate_upper=" << fmt(rate_upper) << "\n";
    if (has_asymptotic) {
        os << "rate_upper_asymptotic=" << fmt(rate_upper_asymptotic) << "\nthm1_leading_term_estimate="
           << fmt(thm1_estimate) << "\n";
    }
    return os.str();
}

} // namespace stc
