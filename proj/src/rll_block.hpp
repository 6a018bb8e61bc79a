#pragma once
// Block enumerative coder into strings without a run of k zeros.
//
// Each block is ranked among the strings that can follow a run of k-1 zeros
// (so a block never starts with 0 and never contains 0^k); blocks therefore
// concatenate freely. k = 1 yields zero-free strings.

#include "stc/seqcore.hpp"

#include <cstddef>
#include <vector>

namespace stc::detail {

using u128 = unsigned __int128;

class RllBlockCode {
public:
    // Shared, immutable table for (q, k).
    static const RllBlockCode& get(int q, int k);

    std::size_t encoded_length(std::size_t message_len) const;
    // Inverse of encoded_length; throws DecodeError when no length matches.
    std::size_t message_length(std::size_t encoded_len) const;

    std::vector<Symbol> encode(std::span<const Symbol> w) const;
    std::vector<Symbol> decode(std::span<const Symbol> u) const;

    std::size_t block_in() const noexcept { return block_in_; }
    std::size_t block_out() const noexcept { return out_len_[block_in_]; }

private:
    RllBlockCode(int q, int k);

    u128 count(std::size_t len, std::size_t state) const { return completions_[len][state]; }
    void unrank(u128 v, std::size_t len, Symbol* out) const;
    u128 rank(const Symbol* in, std::size_t len, std::size_t offset) const;

    int q_;
    std::size_t k_;
    // completions_[L][j]: strings of length L valid after a trailing run of j zeros.
    std::vector<std::vector<u128>> completions_;
    // out_len_[r]: block length carrying r message symbols, strictly increasing.
    std::vector<std::size_t> out_len_;
    std::size_t block_in_ = 0;
};

} // namespace stc::detail
