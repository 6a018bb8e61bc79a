#pragma once
// Marker/index-framed trace code: parameter derivation, encoding of
// q^I repeat-free blocks into one codeword, and decoding from any
// (l_min, l_over)-trace of that codeword.
//
// Codeword layout: z = z_0 ... z_{q^I-1}, each z_i split into B sub-blocks of
// length l_min. Sub-block j of z_i is
//   marker_j  (y piece_0) 1 c_i^(0) 1  (y piece_1) 1 c_i^(1) 1 ... (y piece_F) 1 c_i^(F) 1
// where marker_0 = 1 0^f 1 1, marker_{j>0} = 1 0^f 0 1, c_i^(k) are the f-length
// segments of the base-q index (last one of length I - F f), and the y pieces
// carry the repeat-free encoding y_i of the i-th message block.

#include "stc/seqcore.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace stc {

enum class DerivationMode { explicit_params, asymptotic };

struct ConstructionParams {
    int q = 2;
    long long n = 0;
    long long l_min = 0;
    long long l_over = 0;
    int f = 0;
    int I = 0;
    int F = 0;
    long long r = 0;
    long long ell = 0;
    double lambda = 0;
    long long index_count = 0;       // q^I
    long long blocks_per_index = 0;  // B = n / (q^I l_min)
    long long data_per_block = 0;    // y symbols per sub-block
    long long n_block_out = 0;       // |y_i| = data_per_block * B
    long long msg_len = 0;           // |x_i|

    DerivationMode mode = DerivationMode::explicit_params;
    double a = 0, gamma = 0, eps = 0;  // asymptotic mode only
    std::vector<std::string> warnings;

    long long message_length() const { return index_count * msg_len; }
    TraceParams trace_params() const { return {n, q, l_min, l_over}; }
    int segment_length(int k) const { return k < F ? f : I - F * f; }
    long long piece_length(int k) const;

    std::string to_key_value() const;
};

// Throws ParameterError naming the first violated feasibility constraint.
ConstructionParams derive_params(int q, long long n, long long l_min, long long l_over, int f, int I);

// l_min = ceil(a log_q n), l_over = ceil(gamma l_min), f = ceil(sqrt(log_q n)),
// I = ceil((1 - gamma a)/(1 - gamma) log_q n + (log_q n)^(0.5 + eps)).
ConstructionParams derive_params_asymptotic(int q, long long n, double a, double gamma, double eps);

// Re-derives from the input keys of a key=value block (mode, q, n and either
// l_min/l_over/f/I or a/gamma/eps).
ConstructionParams params_from_key_value(const std::string& text);

struct EncodedIndex {
    long long index = 0;
    std::vector<Seq> segments;  // 1 c^(k) 1
};

EncodedIndex encode_index(long long i, const ConstructionParams& p);

enum class SlotKind : std::uint8_t { marker, wrap, index_digit, data };

struct Slot {
    SlotKind kind = SlotKind::data;
    Symbol fixed = 0;   // symbol for non-data slots
    long long y = -1;   // global coordinate in y_0 y_1 ... for data slots
};

// Role of every codeword position.
std::vector<Slot> codeword_layout(const ConstructionParams& p);

// |x| must equal p.message_length().
Seq encode(const Seq& x, const ConstructionParams& p);

// Throws DecodeError when the trace is inconsistent with every codeword or the
// alignment cannot be resolved.
Seq decode(const Trace& t, const ConstructionParams& p);

// Index information carried by one l_min-window, read at an assumed phase
// (window start modulo l_min): the (I - mu)-suffix of the current block's index
// and the mu-prefix of the next block's index, combined into the current index.
struct WindowIndex {
    long long phase = 0;
    long long index = 0;
    int mu = 0;
    bool next_is_head = false;
};

// All phases at which the window is consistent with the layout, with the
// index each implies.
std::vector<WindowIndex> index_from_window(std::span<const Symbol> window, const ConstructionParams& p);

struct RedundancyReport {
    long long measured = 0;  // n - q^I msg_len
    double rate = 0;
    double thm1_estimate = 0;  // only meaningful in asymptotic mode
    double log_size_upper = 0;
    double rate_upper = 0;
    double rate_upper_asymptotic = 0;
    bool has_asymptotic = false;

    std::string to_key_value() const;
};

RedundancyReport redundancy_report(const ConstructionParams& p);

} // namespace stc
