#include "stc/seqcore.hpp"

#include "stc/errors.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <unordered_set>

namespace stc {

Alphabet::Alphabet(int size) : q(size) {
    if (size < 2 || size > kMaxAlphabet) {
        throw ParameterError("alphabet size q=" + std::to_string(size) + " outside [2, 256]");
    }
}

Seq::Seq(Alphabet alphabet, std::vector<Symbol> symbols)
    : alphabet_(alphabet), symbols_(std::move(symbols)) {
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        if (!alphabet_.contains(symbols_[i])) {
            throw ParameterError("symbol " + std::to_string(symbols_[i]) + " at offset " +
                                 std::to_string(i) + " not in alphabet of size " +
                                 std::to_string(alphabet_.q));
        }
    }
}

Seq::Seq(int q, std::initializer_list<int> symbols) : alphabet_(q) {
    symbols_.reserve(symbols.size());
    for (int s : symbols) {
        if (!alphabet_.contains(s)) {
            throw ParameterError("symbol " + std::to_string(s) + " not in alphabet of size " +
                                 std::to_string(q));
        }
        symbols_.push_back(static_cast<Symbol>(s));
    }
}

Seq Seq::parse(int q, std::string_view text) {
    Alphabet a(q);
    std::vector<Symbol> out;
    if (q <= 10) {
        out.reserve(text.size());
        for (std::size_t i = 0; i < text.size(); ++i) {
            char c = text[i];
            if (c < '0' || c > '9' || !a.contains(c - '0')) {
                throw ParameterError("bad symbol '" + std::string(1, c) + "' at offset " +
                                     std::to_string(i) + " for q=" + std::to_string(q));
            }
            out.push_back(static_cast<Symbol>(c - '0'));
        }
    } else {
        std::size_t pos = 0;
        while (pos < text.size()) {
            std::size_t end = text.find(',', pos);
            if (end == std::string_view::npos) end = text.size();
            auto tok = text.substr(pos, end - pos);
            int v = -1;
            auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (ec != std::errc() || ptr != tok.data() + tok.size() || !a.contains(v)) {
                throw ParameterError("bad symbol '" + std::string(tok) + "' at offset " +
                                     std::to_string(pos) + " for q=" + std::to_string(q));
            }
            out.push_back(static_cast<Symbol>(v));
            pos = end + 1;
        }
    }
    return Seq(a, std::move(out));
}

Seq Seq::substr(std::size_t pos, std::size_t len) const {
    if (pos > symbols_.size() || len > symbols_.size() - pos) {
        throw ParameterError("substring [" + std::to_string(pos) + ", +" + std::to_string(len) +
                             ") out of range for length " + std::to_string(symbols_.size()));
    }
    Seq out;
    out.alphabet_ = alphabet_;
    out.symbols_.assign(symbols_.begin() + static_cast<std::ptrdiff_t>(pos),
                        symbols_.begin() + static_cast<std::ptrdiff_t>(pos + len));
    return out;
}

std::string to_text(std::span<const Symbol> symbols, int q) {
    std::string s;
    if (q <= 10) {
        s.reserve(symbols.size());
        for (Symbol c : symbols) s.push_back(static_cast<char>('0' + c));
    } else {
        for (std::size_t i = 0; i < symbols.size(); ++i) {
            if (i) s.push_back(',');
            s += std::to_string(symbols[i]);
        }
    }
    return s;
}

std::string Seq::str() const { return to_text(symbols_, alphabet_.q); }

Trace::Trace(std::vector<Seq> fragments) {
    for (const auto& f : fragments) add(f);
}

void Trace::add(const Seq& fragment, std::size_t count) {
    if (fragment.empty()) throw ParameterError("trace fragments must be non-empty");
    if (count == 0) return;
    if (!entries_.empty() && entries_.front().value.q() != fragment.q()) {
        throw ParameterError("trace fragments over different alphabets");
    }
    auto it = std::lower_bound(entries_.begin(), entries_.end(), fragment,
                               [](const Entry& e, const Seq& v) { return e.value < v; });
    if (it != entries_.end() && it->value == fragment) {
        it->count += count;
    } else {
        entries_.insert(it, Entry{fragment, count});
    }
}

std::vector<Seq> Trace::fragments() const {
    std::vector<Seq> out;
    for (const auto& e : entries_) out.insert(out.end(), e.count, e.value);
    return out;
}

std::size_t Trace::fragment_count() const noexcept {
    std::size_t total = 0;
    for (const auto& e : entries_) total += e.count;
    return total;
}

std::size_t Trace::count(const Seq& value) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), value,
                               [](const Entry& e, const Seq& v) { return e.value < v; });
    return (it != entries_.end() && it->value == value) ? it->count : 0;
}

void TraceParams::validate() const {
    if (q < 2 || q > kMaxAlphabet) throw ParameterError("q=" + std::to_string(q) + " outside [2, 256]");
    if (!(1 <= l_over && l_over <= l_min && l_min <= n)) {
        throw ParameterError("trace parameters require 1 <= l_over <= l_min <= n (got n=" +
                             std::to_string(n) + ", l_min=" + std::to_string(l_min) +
                             ", l_over=" + std::to_string(l_over) + ")");
    }
}

namespace {

std::string_view window(std::span<const Symbol> x, std::size_t pos, std::size_t len) {
    return {reinterpret_cast<const char*>(x.data()) + pos, len};
}

} // namespace

bool is_repeat_free(std::span<const Symbol> x, std::size_t l) {
    if (l < 1 || l >= x.size()) {
        throw ParameterError("repeat-free window " + std::to_string(l) +
                             " must satisfy 1 <= l < |x| = " + std::to_string(x.size()));
    }
    std::unordered_set<std::string_view> seen;
    seen.reserve(x.size() - l + 1);
    for (std::size_t i = 0; i + l <= x.size(); ++i) {
        if (!seen.insert(window(x, i, l)).second) return false;
    }
    return true;
}

bool is_repeat_free(const Seq& x, std::size_t l) { return is_repeat_free(x.view(), l); }

std::size_t max_zero_run(std::span<const Symbol> x) {
    std::size_t best = 0, run = 0;
    for (Symbol s : x) {
        run = (s == 0) ? run + 1 : 0;
        best = std::max(best, run);
    }
    return best;
}

std::size_t max_zero_run(const Seq& x) { return max_zero_run(x.view()); }

Trace canonical_trace(const Seq& x, const TraceParams& p) {
    p.validate();
    if (static_cast<long long>(x.size()) != p.n) {
        throw ParameterError("sequence length " + std::to_string(x.size()) + " != n=" +
                             std::to_string(p.n));
    }
    if (p.l_min == p.n) return Trace({x});
    if (p.l_min == p.l_over) {
        throw ParameterError("canonical trace needs l_over < l_min when l_min < n");
    }
    const auto n = static_cast<std::size_t>(p.n);
    const auto lm = static_cast<std::size_t>(p.l_min);
    const auto step = static_cast<std::size_t>(p.l_min - p.l_over);
    Trace t;
    std::size_t start = 0;
    for (; start + lm < n; start += step) t.add(x.substr(start, lm));
    t.add(x.substr(n - lm, lm));
    return t;
}

std::vector<Symbol> to_base_q(unsigned long long value, int q, std::size_t width) {
    std::vector<Symbol> out(width, 0);
    for (std::size_t k = width; k-- > 0;) {
        out[k] = static_cast<Symbol>(value % static_cast<unsigned>(q));
        value /= static_cast<unsigned>(q);
    }
    if (value != 0) {
        throw ParameterError("value does not fit in " + std::to_string(width) + " base-" +
                             std::to_string(q) + " digits");
    }
    return out;
}

unsigned long long from_base_q(std::span<const Symbol> digits, int q) {
    unsigned long long v = 0;
    for (Symbol d : digits) v = v * static_cast<unsigned>(q) + d;
    return v;
}

unsigned long long ipow(unsigned long long base, unsigned exp) {
    unsigned long long r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (base != 0 && r > std::numeric_limits<unsigned long long>::max() / base) {
            throw ParameterError(std::to_string(base) + "^" + std::to_string(exp) +
                                 " overflows 64 bits");
        }
        r *= base;
    }
    return r;
}

} // namespace stc
