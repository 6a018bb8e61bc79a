#include "rll_block.hpp"

#include "stc/constrained.hpp"
#include "stc/errors.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace stc {

namespace detail {

namespace {

constexpr u128 kLimit = u128(1) << 126;

u128 pow128(int q, std::size_t e) {
    u128 r = 1;
    for (std::size_t i = 0; i < e; ++i) r *= static_cast<unsigned>(q);
    return r;
}

} // namespace

const RllBlockCode& RllBlockCode::get(int q, int k) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<RllBlockCode>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[{q, k}];
    if (!slot) slot.reset(new RllBlockCode(q, k));
    return *slot;
}

RllBlockCode::RllBlockCode(int q, int k) : q_(q) {
    if (q < 2 || q > kMaxAlphabet) throw ParameterError("RLL alphabet size out of range");
    if (k < 1) throw ParameterError("RLL run limit must be >= 1");
    // Longest block whose q^L still fits comfortably in 128 bits.
    const auto max_len = static_cast<std::size_t>(std::floor(126.0 / std::log2(static_cast<double>(q))));
    // Runs inside one block never exceed its length, so larger k behave alike.
    k_ = std::min<std::size_t>(static_cast<std::size_t>(k), max_len + 1);

    completions_.assign(max_len + 1, std::vector<u128>(k_, 0));
    for (std::size_t j = 0; j < k_; ++j) completions_[0][j] = 1;
    for (std::size_t len = 1; len <= max_len; ++len) {
        for (std::size_t j = 0; j < k_; ++j) {
            u128 c = static_cast<u128>(q - 1) * completions_[len - 1][0];
            if (j + 1 < k_) c += completions_[len - 1][j + 1];
            completions_[len][j] = c;
        }
    }

    out_len_.push_back(0);
    for (std::size_t r = 1;; ++r) {
        const u128 need = pow128(q, r);
        if (need >= kLimit) break;
        std::size_t len = out_len_.back() + 1;
        while (len <= max_len && count(len, k_ - 1) < need) ++len;
        if (len > max_len) break;
        out_len_.push_back(len);
    }
    block_in_ = out_len_.size() - 1;
    if (block_in_ == 0) throw ParameterError("RLL block code has no capacity for q=" + std::to_string(q));
}

std::size_t RllBlockCode::encoded_length(std::size_t message_len) const {
    return (message_len / block_in_) * block_out() + out_len_[message_len % block_in_];
}

std::size_t RllBlockCode::message_length(std::size_t encoded_len) const {
    const std::size_t full = encoded_len / block_out();
    const std::size_t rem = encoded_len % block_out();
    for (std::size_t r = 0; r < block_in_; ++r) {
        if (out_len_[r] == rem) return full * block_in_ + r;
    }
    throw DecodeError("length " + std::to_string(encoded_len) + " is not an RLL codeword length", encoded_len);
}

void RllBlockCode::unrank(u128 v, std::size_t len, Symbol* out) const {
    std::size_t state = k_ - 1;
    for (std::size_t pos = 0; pos < len; ++pos) {
        const std::size_t left = len - pos - 1;
        for (int s = 0; s < q_; ++s) {
            const std::size_t next = (s == 0) ? state + 1 : 0;
            if (next >= k_) continue;
            const u128 c = count(left, next);
            if (v < c) {
                out[pos] = static_cast<Symbol>(s);
                state = next;
                break;
            }
            v -= c;
        }
    }
}

u128 RllBlockCode::rank(const Symbol* in, std::size_t len, std::size_t offset) const {
    u128 v = 0;
    std::size_t state = k_ - 1;
    for (std::size_t pos = 0; pos < len; ++pos) {
        const std::size_t left = len - pos - 1;
        const int sym = in[pos];
        for (int s = 0; s < sym; ++s) {
            const std::size_t next = (s == 0) ? state + 1 : 0;
            if (next < k_) v += count(left, next);
        }
        state = (sym == 0) ? state + 1 : 0;
        if (state >= k_) throw DecodeError("zero run too long at offset " + std::to_string(offset + pos), offset + pos);
    }
    return v;
}

std::vector<Symbol> RllBlockCode::encode(std::span<const Symbol> w) const {
    std::vector<Symbol> out(encoded_length(w.size()));
    std::size_t in_pos = 0, out_pos = 0;
    while (in_pos < w.size()) {
        const std::size_t r = std::min(block_in_, w.size() - in_pos);
        u128 v = 0;
        for (std::size_t i = 0; i < r; ++i) v = v * static_cast<unsigned>(q_) + w[in_pos + i];
        unrank(v, out_len_[r], out.data() + out_pos);
        in_pos += r;
        out_pos += out_len_[r];
    }
    return out;
}

std::vector<Symbol> RllBlockCode::decode(std::span<const Symbol> u) const {
    const std::size_t m = message_length(u.size());
    std::vector<Symbol> out(m);
    std::size_t in_pos = 0, out_pos = 0;
    while (out_pos < m) {
        const std::size_t r = std::min(block_in_, m - out_pos);
        const std::size_t len = out_len_[r];
        u128 v = rank(u.data() + in_pos, len, in_pos);
        if (v >= pow128(q_, r)) throw DecodeError("block at offset " + std::to_string(in_pos) + " out of range", in_pos);
        for (std::size_t i = r; i-- > 0;) {
            out[out_pos + i] = static_cast<Symbol>(v % static_cast<unsigned>(q_));
            v /= static_cast<unsigned>(q_);
        }
        in_pos += len;
        out_pos += r;
    }
    return out;
}

} // namespace detail

void RllParams::validate() const {
    if (q < 2 || q > kMaxAlphabet) throw ParameterError("RLL q=" + std::to_string(q) + " outside [2, 256]");
    if (k < 2) throw ParameterError("RLL run limit k=" + std::to_string(k) + " must be >= 2");
}

std::size_t rll_encoded_length(std::size_t message_len, const RllParams& rp) {
    rp.validate();
    return detail::RllBlockCode::get(rp.q, rp.k).encoded_length(message_len);
}

std::size_t rll_overhead(std::size_t message_len, const RllParams& rp) {
    return rll_encoded_length(message_len, rp) - message_len;
}

Seq rll_encode(const Seq& w, const RllParams& rp) {
    rp.validate();
    if (w.q() != rp.q) throw ParameterError("message alphabet does not match RLL q");
    return Seq(w.alphabet(), detail::RllBlockCode::get(rp.q, rp.k).encode(w.view()));
}

Seq rll_decode(const Seq& u, const RllParams& rp) {
    rp.validate();
    if (u.q() != rp.q) throw ParameterError("codeword alphabet does not match RLL q");
    return Seq(u.alphabet(), detail::RllBlockCode::get(rp.q, rp.k).decode(u.view()));
}

} // namespace stc
