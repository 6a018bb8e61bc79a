#pragma once
// The (l_min, l_over)-trace channel: sampling, validation and exhaustive
// enumeration of trace spectra at desk scale.

#include "stc/seqcore.hpp"

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace stc {

// Located fragments; a Trace is the forgetful image of a plan.
struct CutPlan {
    std::vector<std::size_t> starts;
    std::vector<std::size_t> lengths;
    TraceParams params;

    std::size_t size() const noexcept { return starts.size(); }

    // Empty string if the plan is an admissible (l_min, l_over)-trace plan,
    // otherwise a description of the first violated constraint.
    std::string violation() const;
};

Trace trace_of(const Seq& x, const CutPlan& plan);

enum class PolicyKind { canonical, uniform_random, max_fragmentation, min_fragmentation };

struct SamplePolicy {
    PolicyKind kind = PolicyKind::canonical;
    std::uint64_t seed = 0;

    static SamplePolicy parse(const std::string& name, std::uint64_t seed = 0);
    std::string name() const;
};

CutPlan sample_plan(const Seq& x, const TraceParams& p, const SamplePolicy& policy);
Trace sample_trace(const Seq& x, const TraceParams& p, const SamplePolicy& policy);

enum class TraceClass { valid, complete_but_invalid, trace_but_incomplete, not_a_trace };

std::string to_string(TraceClass c);

// Exhaustive backtracking over occurrence locations of every fragment. The
// empty multiset is classified as not_a_trace.
TraceClass validate_trace(const Seq& x, const Trace& t, const TraceParams& p);

// All distinct (l_min, l_over)-traces of x. Throws ResourceError once more than
// `cap` partial multisets would have to be stored.
std::set<Trace> enumerate_spectrum(const Seq& x, const TraceParams& p, std::size_t cap = 1u << 22);

} // namespace stc
