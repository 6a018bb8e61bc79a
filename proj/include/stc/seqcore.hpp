#pragma once
// Sequences over a q-ary alphabet, fragment multisets (traces) and the basic
// predicates used throughout the codec.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace stc {

using Symbol = std::uint8_t;

constexpr int kMaxAlphabet = 256;

struct Alphabet {
    int q = 2;

    explicit Alphabet(int size);
    Alphabet() = default;

    bool contains(int s) const noexcept { return s >= 0 && s < q; }
    friend bool operator==(const Alphabet&, const Alphabet&) = default;
};

// A finite string over [q]. Symbols are validated on construction.
class Seq {
public:
    Seq() = default;
    Seq(Alphabet alphabet, std::vector<Symbol> symbols);
    Seq(int q, std::initializer_list<int> symbols);

    // Digits for q <= 10 ("0110"), comma separated integers otherwise.
    static Seq parse(int q, std::string_view text);

    int q() const noexcept { return alphabet_.q; }
    Alphabet alphabet() const noexcept { return alphabet_; }
    std::size_t size() const noexcept { return symbols_.size(); }
    bool empty() const noexcept { return symbols_.empty(); }

    Symbol operator[](std::size_t i) const { return symbols_[i]; }
    const std::vector<Symbol>& symbols() const noexcept { return symbols_; }
    std::span<const Symbol> view() const noexcept { return symbols_; }

    Seq substr(std::size_t pos, std::size_t len) const;
    std::string str() const;

    friend bool operator==(const Seq& a, const Seq& b) {
        return a.alphabet_ == b.alphabet_ && a.symbols_ == b.symbols_;
    }
    friend std::strong_ordering operator<=>(const Seq& a, const Seq& b) {
        if (auto c = a.alphabet_.q <=> b.alphabet_.q; c != 0) return c;
        return a.symbols_ <=> b.symbols_;
    }

private:
    Alphabet alphabet_{};
    std::vector<Symbol> symbols_;
};

std::string to_text(std::span<const Symbol> symbols, int q);

// Unordered multiset of fragments, kept sorted by value with multiplicities so
// equality does not depend on insertion order.
class Trace {
public:
    struct Entry {
        Seq value;
        std::size_t count = 0;
        friend bool operator==(const Entry&, const Entry&) = default;
        friend auto operator<=>(const Entry& a, const Entry& b) {
            if (auto c = a.value <=> b.value; c != 0) return c;
            return a.count <=> b.count;
        }
    };

    Trace() = default;
    explicit Trace(std::vector<Seq> fragments);

    void add(const Seq& fragment, std::size_t count = 1);

    const std::vector<Entry>& entries() const noexcept { return entries_; }
    std::vector<Seq> fragments() const;       // expanded, with repetition
    std::size_t fragment_count() const noexcept;  // sum of multiplicities
    std::size_t distinct_count() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    std::size_t count(const Seq& value) const;

    friend bool operator==(const Trace&, const Trace&) = default;
    friend auto operator<=>(const Trace& a, const Trace& b) { return a.entries_ <=> b.entries_; }

private:
    std::vector<Entry> entries_;
};

struct TraceParams {
    long long n = 0;
    int q = 2;
    long long l_min = 1;
    long long l_over = 1;

    // Throws ParameterError unless q >= 2 and 1 <= l_over <= l_min <= n.
    void validate() const;
    friend bool operator==(const TraceParams&, const TraceParams&) = default;
};

// True iff all l-windows of x at distinct locations differ. Requires 1 <= l < |x|.
bool is_repeat_free(std::span<const Symbol> x, std::size_t l);
bool is_repeat_free(const Seq& x, std::size_t l);

// Length of the longest run of zeros (0 if none).
std::size_t max_zero_run(std::span<const Symbol> x);
std::size_t max_zero_run(const Seq& x);

// L_min-windows stepping by l_min - l_over from the prefix; the last fragment
// is the L_min-suffix (it may overlap its predecessor by more than l_over).
Trace canonical_trace(const Seq& x, const TraceParams& p);

// Base-q digits of value, most significant first, exactly `width` digits.
std::vector<Symbol> to_base_q(unsigned long long value, int q, std::size_t width);
unsigned long long from_base_q(std::span<const Symbol> digits, int q);

// q^e, throwing ParameterError on overflow of 64 bits.
unsigned long long ipow(unsigned long long base, unsigned exp);

} // namespace stc
