#pragma once
// Constrained codecs used as building blocks of the trace code:
//  - zero-run-limited (RLL) encoding into Z(n, k): no run of k zeros;
//  - repeat-free encoding into RF_l with a zero-run limit and a fixed output
//    length.

#include "stc/seqcore.hpp"

#include <cstddef>
#include <string>

namespace stc {

struct RllParams {
    int q = 2;
    int k = 2;  // forbidden zero-run length

    void validate() const;
};

// Fixed-rate framing: the output length depends only on |w| and is strictly
// increasing in |w|, so the decoder recovers |w| from the codeword length.
std::size_t rll_encoded_length(std::size_t message_len, const RllParams& rp);
std::size_t rll_overhead(std::size_t message_len, const RllParams& rp);

Seq rll_encode(const Seq& w, const RllParams& rp);
Seq rll_decode(const Seq& u, const RllParams& rp);

struct RfParams {
    int q = 2;
    std::size_t window = 2;  // every window of this length is unique
    std::size_t t = 2;       // forbidden zero-run length
    std::size_t n_out = 0;   // fixed codeword length

    // Throws ParameterError when n_out > q^window + window - 1 or t == 0.
    void validate() const;

    // t <= 2 floor((window - ceil(log_q n_out)) / 5) - 3
    bool in_redundancy_regime() const;
};

enum class RfScheme { none, table, elimination };

std::string to_string(RfScheme s);

// Which scheme backs the codec for these parameters.
RfScheme rf_scheme(const RfParams& fp);

// Largest message length accepted by rf_encode; 0 when n_out <= window.
std::size_t rf_capacity(const RfParams& fp);

Seq rf_encode(const Seq& w, const RfParams& fp);
Seq rf_decode(const Seq& y, const RfParams& fp);

// Redundancy target n_out - m for the given parameters:
// ceil(q^2/(q-2) q^-floor(t/2) n) for q > 2, 2 ceil(4 * 2^-floor(t/2) n) for q = 2.
double rf_redundancy_target(const RfParams& fp);

} // namespace stc
