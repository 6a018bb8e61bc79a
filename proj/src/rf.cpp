// Repeat-free codec with a zero-run limit and fixed output length.
//
// Two schemes sit behind the same contract:
//  - table: for q^n_out <= 2^23 every admissible codeword is enumerated in
//    lexicographic order and messages are their ranks;
//  - elimination: the payload is RLL-encoded (runs <= t-2), terminated by
//    T = 1 0^{t-1} 1, and repeated windows are excised one at a time. Each
//    excision leaves a single 1 at the victim location (so zero runs never
//    merge) and appends a record (victim, source) in front of T. Records are
//    zero-run-free, so T holds the only (t-1)-run and marks the end of the
//    body. The output is padded to n_out by a depth-first search over
//    symbols that keep every window unique.

#include "rll_block.hpp"

#include "stc/constrained.hpp"
#include "stc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

namespace stc {

namespace {

constexpr unsigned long long kTableLimit = 1ull << 23;

// q^e capped at limit + 1.
unsigned long long capped_pow(int q, std::size_t e, unsigned long long limit) {
    unsigned long long r = 1;
    for (std::size_t i = 0; i < e; ++i) {
        r *= static_cast<unsigned>(q);
        if (r > limit) return limit + 1;
    }
    return r;
}

std::size_t ceil_log(int q, std::size_t n) {
    std::size_t e = 0;
    unsigned long long p = 1;
    while (p < n) {
        p *= static_cast<unsigned>(q);
        ++e;
    }
    return e;
}

std::string_view view_of(const std::vector<Symbol>& v, std::size_t pos, std::size_t len) {
    return {reinterpret_cast<const char*>(v.data()) + pos, len};
}

// ---------------------------------------------------------------------------
// Table scheme

class RfTable {
public:
    static const RfTable& get(const RfParams& fp) {
        static std::mutex mu;
        static std::map<std::tuple<int, std::size_t, std::size_t, std::size_t>, std::unique_ptr<RfTable>> cache;
        std::lock_guard lock(mu);
        auto& slot = cache[{fp.q, fp.window, fp.t, fp.n_out}];
        if (!slot) slot.reset(new RfTable(fp));
        return *slot;
    }

    std::size_t capacity() const { return capacity_; }

    std::vector<Symbol> encode(std::span<const Symbol> w) const {
        return to_base_q(codewords_[from_base_q(w, q_)], q_, n_);
    }

    std::vector<Symbol> decode(std::span<const Symbol> y) const {
        const auto v = static_cast<std::uint32_t>(from_base_q(y, q_));
        auto it = std::lower_bound(codewords_.begin(), codewords_.end(), v);
        if (it == codewords_.end() || *it != v) throw DecodeError("not a repeat-free codeword", 0);
        const auto rank = static_cast<unsigned long long>(it - codewords_.begin());
        if (rank >= message_count_) throw DecodeError("codeword rank beyond message space", 0);
        return to_base_q(rank, q_, capacity_);
    }

private:
    explicit RfTable(const RfParams& fp) : q_(fp.q), n_(fp.n_out), window_(fp.window), t_(fp.t) {
        window_count_ = capped_pow(q_, window_, kTableLimit);
        seen_.assign(window_count_, 0);
        current_.assign(n_, 0);
        dfs(0, 0);
        message_count_ = 1;
        while (message_count_ * static_cast<unsigned>(q_) <= codewords_.size()) {
            message_count_ *= static_cast<unsigned>(q_);
            ++capacity_;
        }
        seen_.clear();
        seen_.shrink_to_fit();
    }

    void dfs(std::size_t pos, std::size_t zero_run) {
        if (pos == n_) {
            codewords_.push_back(static_cast<std::uint32_t>(from_base_q(current_, q_)));
            return;
        }
        for (int s = 0; s < q_; ++s) {
            const std::size_t run = (s == 0) ? zero_run + 1 : 0;
            if (run >= t_) continue;
            current_[pos] = static_cast<Symbol>(s);
            if (pos + 1 >= window_) {
                auto code = from_base_q(std::span<const Symbol>(current_).subspan(pos + 1 - window_, window_), q_);
                if (seen_[code]) continue;
                seen_[code] = 1;
                dfs(pos + 1, run);
                seen_[code] = 0;
            } else {
                dfs(pos + 1, run);
            }
        }
    }

    int q_;
    std::size_t n_, window_, t_;
    unsigned long long window_count_ = 0;
    std::vector<char> seen_;
    std::vector<Symbol> current_;
    std::vector<std::uint32_t> codewords_;
    unsigned long long message_count_ = 1;
    std::size_t capacity_ = 0;
};

// ---------------------------------------------------------------------------
// Elimination scheme

class Elimination {
public:
    explicit Elimination(const RfParams& fp) : fp_(fp) {
        digits_ = 1;
        unsigned long long reach = static_cast<unsigned>(digit_base());
        while (reach < fp.n_out) {
            reach *= static_cast<unsigned>(digit_base());
            ++digits_;
        }
        record_len_ = 2 * digits_ * (fp.q == 2 ? 2 : 1);
        tail_.push_back(1);
        tail_.insert(tail_.end(), fp.t - 1, 0);
        tail_.push_back(1);
    }

    bool feasible() const {
        if (fp_.window >= fp_.n_out) return false;
        if (fp_.q == 2 ? fp_.t < 3 : fp_.t < 2) return false;
        return record_len_ + 1 < fp_.window;
    }

    const detail::RllBlockCode& payload_code() const {
        return detail::RllBlockCode::get(fp_.q, static_cast<int>(fp_.t - 1));
    }

    std::size_t capacity() const {
        const auto& rll = payload_code();
        if (tail_.size() > fp_.n_out) return 0;
        const std::size_t room = fp_.n_out - tail_.size();
        std::size_t m = 0;
        while (rll.encoded_length(m + 1) <= room) ++m;
        return m;
    }

    std::vector<Symbol> encode(std::span<const Symbol> w) const {
        std::vector<Symbol> s = payload_code().encode(w);
        std::size_t body = s.size();
        s.insert(s.end(), tail_.begin(), tail_.end());
        const std::size_t win = fp_.window;

        for (;;) {
            auto pair = first_repeat(s);
            if (!pair) break;
            auto [a, b] = *pair;
            std::size_t victim, source;
            if (b + win <= body) {
                victim = b;
                source = a;
            } else if (a + win <= body) {
                victim = a;
                source = b;
            } else {
                throw ResourceError("repeat overlaps the terminator; cannot eliminate");
            }
            std::vector<Symbol> next;
            next.reserve(s.size());
            next.insert(next.end(), s.begin(), s.begin() + static_cast<std::ptrdiff_t>(victim));
            next.push_back(1);
            next.insert(next.end(), s.begin() + static_cast<std::ptrdiff_t>(victim + win),
                        s.begin() + static_cast<std::ptrdiff_t>(body));
            append_record(next, victim, source);
            body = next.size();
            next.insert(next.end(), tail_.begin(), tail_.end());
            s = std::move(next);
        }
        pad(s);
        return s;
    }

    std::vector<Symbol> decode(std::span<const Symbol> y, std::size_t message_len) const {
        const std::size_t win = fp_.window;
        const std::size_t t = fp_.t;
        // The first run of >= t-1 zeros belongs to the terminator.
        std::size_t run = 0, run_start = 0;
        bool found = false;
        for (std::size_t i = 0; i < y.size(); ++i) {
            if (y[i] == 0) {
                if (run == 0) run_start = i;
                if (++run >= t - 1) {
                    found = true;
                    break;
                }
            } else {
                run = 0;
            }
        }
        if (!found || run_start == 0) throw DecodeError("terminator not found");
        const std::size_t body_len = run_start - 1;
        if (y[body_len] != 1 || run_start + t - 1 >= y.size() || y[run_start + t - 1] != 1) {
            throw DecodeError("malformed terminator", body_len);
        }
        const std::size_t m0 = payload_code().encoded_length(message_len);
        const std::size_t shrink = win - 1 - record_len_;
        if (body_len > m0 || (m0 - body_len) % shrink != 0) {
            throw DecodeError("body length inconsistent with message length", body_len);
        }
        std::size_t steps = (m0 - body_len) / shrink;

        std::vector<Symbol> body(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(body_len));
        while (steps-- > 0) {
            if (body.size() < record_len_ + 1) throw DecodeError("record underflow", body.size());
            const std::size_t rec_at = body.size() - record_len_;
            auto [victim, source] = read_record(std::span<const Symbol>(body).subspan(rec_at), rec_at);
            body.resize(rec_at);
            if (victim >= body.size() || body[victim] != 1) throw DecodeError("bad excision marker", victim);
            // u = s with the victim window removed
            std::vector<Symbol> u;
            u.reserve(body.size() + tail_.size());
            u.insert(u.end(), body.begin(), body.begin() + static_cast<std::ptrdiff_t>(victim));
            u.insert(u.end(), body.begin() + static_cast<std::ptrdiff_t>(victim + 1), body.end());
            const std::size_t u_body = u.size();
            u.insert(u.end(), tail_.begin(), tail_.end());
            const std::size_t s_len = u.size() + win;
            if (source == victim || source + win > s_len) throw DecodeError("bad record source", rec_at);

            std::vector<Symbol> wnd(win);
            if (source < victim) {
                for (std::size_t k = 0; k < win; ++k) {
                    const std::size_t src = source + k;
                    wnd[k] = src < victim ? u[src] : wnd[src - victim];
                }
            } else {
                for (std::size_t k = win; k-- > 0;) {
                    const std::size_t src = source + k;
                    wnd[k] = src >= victim + win ? u[src - win] : wnd[src - victim];
                }
            }
            std::vector<Symbol> restored;
            restored.reserve(u_body + win);
            restored.insert(restored.end(), u.begin(), u.begin() + static_cast<std::ptrdiff_t>(victim));
            restored.insert(restored.end(), wnd.begin(), wnd.end());
            restored.insert(restored.end(), u.begin() + static_cast<std::ptrdiff_t>(victim),
                            u.begin() + static_cast<std::ptrdiff_t>(u_body));
            body = std::move(restored);
        }
        if (body.size() != m0) throw DecodeError("payload length mismatch after reinsertion", body.size());
        return payload_code().decode(body);
    }

private:
    int digit_base() const { return fp_.q == 2 ? 2 : fp_.q - 1; }

    std::optional<std::pair<std::size_t, std::size_t>> first_repeat(const std::vector<Symbol>& s) const {
        const std::size_t win = fp_.window;
        if (s.size() < win) return std::nullopt;
        std::unordered_map<std::string_view, std::size_t> first;
        first.reserve(s.size());
        for (std::size_t b = 0; b + win <= s.size(); ++b) {
            auto [it, inserted] = first.emplace(view_of(s, b, win), b);
            if (!inserted) return std::make_pair(it->second, b);
        }
        return std::nullopt;
    }

    void append_field(std::vector<Symbol>& out, std::size_t value) const {
        const auto base = static_cast<std::size_t>(digit_base());
        std::vector<Symbol> d(digits_);
        for (std::size_t k = digits_; k-- > 0;) {
            d[k] = static_cast<Symbol>(value % base);
            value /= base;
        }
        for (Symbol x : d) {
            if (fp_.q == 2) {
                out.push_back(1);
                out.push_back(x);
            } else {
                out.push_back(static_cast<Symbol>(x + 1));
            }
        }
    }

    void append_record(std::vector<Symbol>& out, std::size_t victim, std::size_t source) const {
        append_field(out, victim);
        append_field(out, source);
    }

    std::pair<std::size_t, std::size_t> read_record(std::span<const Symbol> rec, std::size_t offset) const {
        const auto base = static_cast<std::size_t>(digit_base());
        std::size_t fields[2] = {0, 0};
        std::size_t pos = 0;
        for (auto& f : fields) {
            for (std::size_t k = 0; k < digits_; ++k) {
                Symbol d;
                if (fp_.q == 2) {
                    if (rec[pos] != 1) throw DecodeError("malformed record", offset + pos);
                    d = rec[pos + 1];
                    pos += 2;
                } else {
                    if (rec[pos] == 0) throw DecodeError("malformed record", offset + pos);
                    d = static_cast<Symbol>(rec[pos] - 1);
                    pos += 1;
                }
                f = f * base + d;
            }
        }
        return {fields[0], fields[1]};
    }

    void pad(std::vector<Symbol>& s) const {
        const std::size_t n = fp_.n_out;
        const std::size_t win = fp_.window;
        const std::size_t max_run = fp_.t - 2;
        if (s.size() > n) throw ResourceError("encoded body exceeds n_out");
        s.reserve(n);
        std::unordered_set<std::string_view> windows;
        for (std::size_t i = 0; i + win <= s.size(); ++i) windows.insert(view_of(s, i, win));

        // Iterative DFS; choice[i] is the next symbol to try at depth i.
        const std::size_t base = s.size();
        std::vector<int> choice(n - base, 0);
        std::vector<std::size_t> runs(n - base + 1, 0);
        runs[0] = 0;  // the terminator ends in 1
        std::size_t depth = 0;
        std::size_t budget = 4'000'000;
        auto order = [this](int c) { return c + 1 < fp_.q ? c + 1 : 0; };  // 1, 2, ..., q-1, 0
        while (depth < n - base) {
            if (budget-- == 0) throw ResourceError("padding search exhausted");
            bool placed = false;
            while (choice[depth] < fp_.q) {
                const auto sym = static_cast<Symbol>(order(choice[depth]++));
                const std::size_t run = sym == 0 ? runs[depth] + 1 : 0;
                if (run > max_run) continue;
                s.push_back(sym);
                if (s.size() >= win) {
                    auto v = view_of(s, s.size() - win, win);
                    if (windows.count(v)) {
                        s.pop_back();
                        continue;
                    }
                    windows.insert(v);
                }
                runs[depth + 1] = run;
                placed = true;
                break;
            }
            if (placed) {
                ++depth;
                if (depth < n - base) choice[depth] = 0;
                continue;
            }
            if (depth == 0) throw ResourceError("padding search exhausted");
            --depth;
            if (s.size() >= win) windows.erase(view_of(s, s.size() - win, win));
            s.pop_back();
        }
    }

    RfParams fp_;
    std::size_t digits_ = 1;
    std::size_t record_len_ = 0;
    std::vector<Symbol> tail_;
};

} // namespace

void RfParams::validate() const {
    if (q < 2 || q > kMaxAlphabet) throw ParameterError("RF q=" + std::to_string(q) + " outside [2, 256]");
    if (window < 1) throw ParameterError("RF window must be >= 1");
    if (t < 1) throw ParameterError("RF zero-run limit t must be >= 1");
    // n_out <= q^window + window - 1
    const unsigned long long windows = capped_pow(q, window, 1ull << 62);
    if (n_out > windows + window - 1) {
        throw ParameterError("RF capacity: n_out " + std::to_string(n_out) + " > q^l+l-1 = " +
                             std::to_string(windows + window - 1));
    }
}

bool RfParams::in_redundancy_regime() const {
    const std::size_t lg = ceil_log(q, n_out);
    if (window < lg) return false;
    const long long bound = 2 * static_cast<long long>((window - lg) / 5) - 3;
    return static_cast<long long>(t) <= bound;
}

std::string to_string(RfScheme s) {
    switch (s) {
    case RfScheme::none: return "none";
    case RfScheme::table: return "table";
    case RfScheme::elimination: return "elimination";
    }
    return "?";
}

RfScheme rf_scheme(const RfParams& fp) {
    fp.validate();
    if (fp.n_out <= fp.window) return RfScheme::none;
    if (capped_pow(fp.q, fp.n_out, kTableLimit) <= kTableLimit) return RfScheme::table;
    if (Elimination(fp).feasible()) return RfScheme::elimination;
    return RfScheme::none;
}

std::size_t rf_capacity(const RfParams& fp) {
    fp.validate();
    if (fp.n_out <= fp.window) return 0;
    switch (rf_scheme(fp)) {
    case RfScheme::table: return RfTable::get(fp).capacity();
    case RfScheme::elimination: return Elimination(fp).capacity();
    case RfScheme::none: break;
    }
    throw ParameterError("no repeat-free scheme for q=" + std::to_string(fp.q) + " l=" + std::to_string(fp.window) +
                         " t=" + std::to_string(fp.t) + " n_out=" + std::to_string(fp.n_out));
}

Seq rf_encode(const Seq& w, const RfParams& fp) {
    fp.validate();
    if (w.q() != fp.q) throw ParameterError("message alphabet does not match RF q");
    if (fp.window >= fp.n_out) {
        throw ParameterError("repeat-free window " + std::to_string(fp.window) + " must be < n_out " +
                             std::to_string(fp.n_out));
    }
    const std::size_t m = rf_capacity(fp);
    if (w.size() != m) {
        throw ParameterError("RF message length " + std::to_string(w.size()) + " != capacity " + std::to_string(m));
    }
    if (rf_scheme(fp) == RfScheme::table) return Seq(w.alphabet(), RfTable::get(fp).encode(w.view()));
    return Seq(w.alphabet(), Elimination(fp).encode(w.view()));
}

Seq rf_decode(const Seq& y, const RfParams& fp) {
    fp.validate();
    if (y.q() != fp.q) throw ParameterError("codeword alphabet does not match RF q");
    if (y.size() != fp.n_out) {
        throw DecodeError("RF codeword length " + std::to_string(y.size()) + " != " + std::to_string(fp.n_out),
                          y.size());
    }
    if (fp.window >= fp.n_out) throw ParameterError("repeat-free window must be < n_out");
    if (max_zero_run(y) >= fp.t) throw DecodeError("zero run of length >= t in RF codeword");
    if (!is_repeat_free(y, fp.window)) throw DecodeError("repeated window in RF codeword");
    const std::size_t m = rf_capacity(fp);
    if (rf_scheme(fp) == RfScheme::table) return Seq(y.alphabet(), RfTable::get(fp).decode(y.view()));
    return Seq(y.alphabet(), Elimination(fp).decode(y.view(), m));
}

double rf_redundancy_target(const RfParams& fp) {
    const double n = static_cast<double>(fp.n_out);
    const double half = std::floor(static_cast<double>(fp.t) / 2.0);
    if (fp.q == 2) return 2.0 * std::ceil(4.0 * std::pow(2.0, -half) * n);
    const double q = fp.q;
    return std::ceil(q * q / (q - 2.0) * std::pow(q, -half) * n);
}

} // namespace stc
