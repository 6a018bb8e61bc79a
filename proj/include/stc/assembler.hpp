#pragma once
// Reconstruction of repeat-free strings from a trace by suffix-prefix
// chaining.

#include "stc/seqcore.hpp"

#include <string>
#include <vector>

namespace stc {

enum class AssemblyOutcome { unique, ambiguous, inconsistent };

std::string to_string(AssemblyOutcome o);

struct AssemblyResult {
    AssemblyOutcome outcome = AssemblyOutcome::inconsistent;
    Seq seq;                     // set when unique
    std::vector<Seq> witnesses;  // two conflicting merges when ambiguous
    std::string reason;          // set when not unique

    bool ok() const noexcept { return outcome == AssemblyOutcome::unique; }
};

// Requires a non-empty trace whose fragments all have length >= l_over
// (ParameterError otherwise). Fragments nested inside others are checked
// against the final string rather than chained.
AssemblyResult assemble_rf(const Trace& t, std::size_t l_over);

} // namespace stc
