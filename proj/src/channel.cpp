#include "stc/channel.hpp"

#include "stc/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

namespace stc {

std::string CutPlan::violation() const {
    const auto n = static_cast<std::size_t>(params.n);
    const auto lmin = static_cast<std::size_t>(params.l_min);
    const auto lover = static_cast<std::size_t>(params.l_over);
    if (starts.empty() || starts.size() != lengths.size()) return "plan is empty or malformed";
    if (starts.front() != 0) return "first fragment does not start at 0";
    for (std::size_t j = 0; j < starts.size(); ++j) {
        if (lengths[j] < lmin) return "fragment " + std::to_string(j) + " shorter than l_min";
        if (starts[j] + lengths[j] > n) return "fragment " + std::to_string(j) + " runs past the end";
        if (j + 1 < starts.size()) {
            if (starts[j + 1] <= starts[j]) return "starts not strictly increasing at " + std::to_string(j);
            if (starts[j + 1] >= starts[j] + lengths[j]) return "gap after fragment " + std::to_string(j);
            if (starts[j] + lengths[j] - starts[j + 1] < lover)
                return "overlap after fragment " + std::to_string(j) + " below l_over";
        }
    }
    if (starts.back() + lengths.back() != n) return "last fragment is not a suffix";
    return {};
}

Trace trace_of(const Seq& x, const CutPlan& plan) {
    Trace t;
    for (std::size_t j = 0; j < plan.size(); ++j) t.add(x.substr(plan.starts[j], plan.lengths[j]));
    return t;
}

SamplePolicy SamplePolicy::parse(const std::string& name, std::uint64_t seed) {
    if (name == "canonical") return {PolicyKind::canonical, seed};
    if (name == "uniform_random" || name == "random") return {PolicyKind::uniform_random, seed};
    if (name == "max_fragmentation" || name == "max") return {PolicyKind::max_fragmentation, seed};
    if (name == "min_fragmentation" || name == "min") return {PolicyKind::min_fragmentation, seed};
    throw ParameterError("unknown sampling policy '" + name + "'");
}

std::string SamplePolicy::name() const {
    switch (kind) {
    case PolicyKind::canonical: return "canonical";
    case PolicyKind::uniform_random: return "uniform_random";
    case PolicyKind::max_fragmentation: return "max_fragmentation";
    case PolicyKind::min_fragmentation: return "min_fragmentation";
    }
    return "?";
}

namespace {

// l_min-windows every `step` symbols plus the l_min-suffix.
CutPlan window_plan(const TraceParams& p, std::size_t step) {
    CutPlan plan{{}, {}, p};
    const auto n = static_cast<std::size_t>(p.n);
    const auto lm = static_cast<std::size_t>(p.l_min);
    if (lm == n) {
        plan.starts.push_back(0);
        plan.lengths.push_back(n);
        return plan;
    }
    if (p.l_min == p.l_over) throw ParameterError("window fragmentation needs l_over < l_min");
    std::size_t start = 0;
    for (; start + lm < n; start += step) {
        plan.starts.push_back(start);
        plan.lengths.push_back(lm);
    }
    plan.starts.push_back(n - lm);
    plan.lengths.push_back(lm);
    return plan;
}

// Left-to-right sequential draws. Every admissible prefix of a plan can be
// completed as long as the current start leaves room for an l_min fragment,
// so the draw intervals below are never empty.
CutPlan random_plan(const TraceParams& p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto uniform = [&rng](std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    };
    const auto n = static_cast<std::size_t>(p.n);
    const auto lmin = static_cast<std::size_t>(p.l_min);
    const auto lover = static_cast<std::size_t>(p.l_over);
    CutPlan plan{{}, {}, p};
    std::size_t start = 0;
    for (;;) {
        std::size_t len;
        if (start + lmin == n) {
            len = lmin;
        } else {
            // A non-final fragment must leave room for a successor start in
            // (start, start + len - l_over].
            std::size_t lo = std::max(lmin, lover + 1);
            len = uniform(std::min(lo, n - start), n - start);
        }
        plan.starts.push_back(start);
        plan.lengths.push_back(len);
        const std::size_t end = start + len;
        if (end == n) {
            // A suffix may still be followed by nested suffixes; stop here.
            break;
        }
        const std::size_t hi = std::min(end - lover, n - lmin);
        start = uniform(start + 1, hi);
    }
    return plan;
}

} // namespace

CutPlan sample_plan(const Seq& x, const TraceParams& p, const SamplePolicy& policy) {
    p.validate();
    if (static_cast<long long>(x.size()) != p.n) {
        throw ParameterError("sequence length " + std::to_string(x.size()) + " != n=" + std::to_string(p.n));
    }
    switch (policy.kind) {
    case PolicyKind::min_fragmentation:
        return CutPlan{{0}, {x.size()}, p};
    case PolicyKind::canonical:
        return window_plan(p, static_cast<std::size_t>(p.l_min - p.l_over));
    case PolicyKind::max_fragmentation:
        // every l_min-window: the most fragments any trace can have
        return window_plan(p, 1);
    case PolicyKind::uniform_random:
        return random_plan(p, policy.seed);
    }
    throw ParameterError("bad policy");
}

Trace sample_trace(const Seq& x, const TraceParams& p, const SamplePolicy& policy) {
    if (policy.kind == PolicyKind::canonical) return canonical_trace(x, p);
    return trace_of(x, sample_plan(x, p, policy));
}

std::string to_string(TraceClass c) {
    switch (c) {
    case TraceClass::valid: return "valid";
    case TraceClass::complete_but_invalid: return "complete_but_invalid";
    case TraceClass::trace_but_incomplete: return "trace_but_incomplete";
    case TraceClass::not_a_trace: return "not_a_trace";
    }
    return "?";
}

namespace {

std::vector<std::size_t> occurrences(const Seq& x, const Seq& v) {
    std::vector<std::size_t> out;
    if (v.size() > x.size()) return out;
    auto hay = x.symbols();
    auto needle = v.symbols();
    for (std::size_t i = 0; i + needle.size() <= hay.size(); ++i) {
        if (std::equal(needle.begin(), needle.end(), hay.begin() + static_cast<std::ptrdiff_t>(i))) out.push_back(i);
    }
    return out;
}

// Kuhn's augmenting paths: can every fragment copy get its own start location?
bool has_distinct_placement(const std::vector<std::vector<std::size_t>>& occ,
                            const std::vector<std::size_t>& counts, std::size_t n) {
    std::vector<std::size_t> copies;
    for (std::size_t v = 0; v < occ.size(); ++v) copies.insert(copies.end(), counts[v], v);
    std::vector<long> owner(n, -1);
    std::function<bool(std::size_t, std::vector<char>&)> augment = [&](std::size_t c, std::vector<char>& seen) {
        for (std::size_t s : occ[copies[c]]) {
            if (seen[s]) continue;
            seen[s] = 1;
            if (owner[s] < 0 || augment(static_cast<std::size_t>(owner[s]), seen)) {
                owner[s] = static_cast<long>(c);
                return true;
            }
        }
        return false;
    };
    for (std::size_t c = 0; c < copies.size(); ++c) {
        std::vector<char> seen(n, 0);
        if (!augment(c, seen)) return false;
    }
    return true;
}

// Depth-first search over fragments in start order. `strict` adds the length
// and overlap constraints on top of completeness.
class ChainSearch {
public:
    ChainSearch(const std::vector<Seq>& values, const std::vector<std::vector<std::size_t>>& occ,
                std::vector<std::size_t> counts, const TraceParams& p, bool strict)
        : values_(values), occ_(occ), counts_(std::move(counts)), p_(p), strict_(strict) {
        for (auto c : counts_) remaining_ += c;
    }

    bool run() {
        for (std::size_t v = 0; v < values_.size(); ++v) {
            if (!admissible_length(v) || occ_[v].empty() || occ_[v].front() != 0) continue;
            --counts_[v];
            --remaining_;
            bool ok = step(0, values_[v].size());
            ++counts_[v];
            ++remaining_;
            if (ok) return true;
        }
        return false;
    }

private:
    bool admissible_length(std::size_t v) const {
        return !strict_ || static_cast<long long>(values_[v].size()) >= p_.l_min;
    }

    std::string key(std::size_t prev_start, std::size_t prev_end) const {
        std::string k;
        k.reserve(counts_.size() * 2 + 16);
        for (auto c : counts_) {
            k.push_back(static_cast<char>(c & 0xff));
            k.push_back(static_cast<char>((c >> 8) & 0xff));
        }
        k += std::to_string(prev_start) + ":" + std::to_string(prev_end);
        return k;
    }

    // Every remaining copy needs its own start after prev_start.
    bool placeable(std::size_t prev_start) const {
        const auto n = static_cast<std::size_t>(p_.n);
        if (remaining_ > n - 1 - prev_start) return false;
        for (std::size_t v = 0; v < values_.size(); ++v) {
            if (counts_[v] == 0) continue;
            const auto& o = occ_[v];
            const auto later = static_cast<std::size_t>(o.end() - std::upper_bound(o.begin(), o.end(), prev_start));
            if (later < counts_[v]) return false;
        }
        return true;
    }

    bool step(std::size_t prev_start, std::size_t prev_end) {
        const auto n = static_cast<std::size_t>(p_.n);
        if (remaining_ == 0) return prev_end == n;
        if (!placeable(prev_start)) return false;
        std::string k = key(prev_start, prev_end);
        if (failed_.count(k)) return false;
        std::vector<std::pair<std::size_t, std::size_t>> cand;  // (start, value)
        for (std::size_t v = 0; v < values_.size(); ++v) {
            if (counts_[v] == 0 || !admissible_length(v)) continue;
            for (std::size_t s : occ_[v]) {
                if (s <= prev_start) continue;
                if (s >= prev_end) break;
                if (strict_ && prev_end - s < static_cast<std::size_t>(p_.l_over)) break;
                cand.emplace_back(s, v);
            }
        }
        std::sort(cand.begin(), cand.end());
        for (auto [s, v] : cand) {
            --counts_[v];
            --remaining_;
            bool ok = step(s, s + values_[v].size());
            ++counts_[v];
            ++remaining_;
            if (ok) return true;
        }
        failed_.insert(std::move(k));
        return false;
    }

    const std::vector<Seq>& values_;
    const std::vector<std::vector<std::size_t>>& occ_;
    std::vector<std::size_t> counts_;
    std::size_t remaining_ = 0;
    TraceParams p_;
    bool strict_;
    std::unordered_set<std::string> failed_;
};

} // namespace

TraceClass validate_trace(const Seq& x, const Trace& t, const TraceParams& p) {
    if (t.empty() || x.empty()) return TraceClass::not_a_trace;
    std::vector<Seq> values;
    std::vector<std::size_t> counts;
    std::vector<std::vector<std::size_t>> occ;
    for (const auto& e : t.entries()) {
        if (e.value.q() != x.q()) return TraceClass::not_a_trace;
        values.push_back(e.value);
        counts.push_back(e.count);
        occ.push_back(occurrences(x, e.value));
        if (occ.back().empty()) return TraceClass::not_a_trace;
    }
    if (!has_distinct_placement(occ, counts, x.size())) return TraceClass::not_a_trace;

    TraceParams pp = p;
    pp.n = static_cast<long long>(x.size());
    if (!ChainSearch(values, occ, counts, pp, false).run()) return TraceClass::trace_but_incomplete;
    bool params_ok = pp.q >= 2 && 1 <= pp.l_over && pp.l_over <= pp.l_min && pp.l_min <= pp.n;
    if (!params_ok || !ChainSearch(values, occ, counts, pp, true).run()) return TraceClass::complete_but_invalid;
    return TraceClass::valid;
}

namespace {

using Multiset = std::vector<std::uint32_t>;  // sorted fragment ids

struct MultisetHash {
    std::size_t operator()(const Multiset& m) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (auto v : m) h = (h ^ v) * 1099511628211ull;
        return h;
    }
};

class SpectrumEnumerator {
public:
    SpectrumEnumerator(const Seq& x, const TraceParams& p, std::size_t cap) : x_(x), p_(p), cap_(cap) {
        n_ = x.size();
    }

    std::set<Trace> run() {
        const auto lmin = static_cast<std::size_t>(p_.l_min);
        std::unordered_set<Multiset, MultisetHash> all;
        for (std::size_t len = lmin; len <= n_; ++len) {
            auto id = intern(0, len);
            for (const auto& rest : tails(0, len)) all.insert(with(rest, id));
        }
        std::set<Trace> out;
        for (const auto& m : all) {
            Trace t;
            for (auto id : m) t.add(values_[id]);
            out.insert(std::move(t));
        }
        return out;
    }

private:
    std::uint32_t intern(std::size_t start, std::size_t len) {
        auto sv = std::string_view(reinterpret_cast<const char*>(x_.symbols().data()) + start, len);
        auto it = ids_.find(sv);
        if (it != ids_.end()) return it->second;
        auto id = static_cast<std::uint32_t>(values_.size());
        values_.push_back(x_.substr(start, len));
        ids_.emplace(sv, id);
        return id;
    }

    static Multiset with(const Multiset& m, std::uint32_t id) {
        Multiset out;
        out.reserve(m.size() + 1);
        auto pos = std::upper_bound(m.begin(), m.end(), id);
        out.insert(out.end(), m.begin(), pos);
        out.push_back(id);
        out.insert(out.end(), pos, m.end());
        return out;
    }

    // Multisets of the fragments that may follow a fragment spanning
    // [prev_start, prev_end).
    const std::vector<Multiset>& tails(std::size_t prev_start, std::size_t prev_end) {
        const std::size_t key = prev_start * (n_ + 1) + prev_end;
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;

        const auto lmin = static_cast<std::size_t>(p_.l_min);
        const auto lover = static_cast<std::size_t>(p_.l_over);
        std::unordered_set<Multiset, MultisetHash> acc;
        if (prev_end == n_) acc.insert(Multiset{});
        if (prev_end >= lover) {
            const std::size_t hi = std::min(prev_end - lover, n_ >= lmin ? n_ - lmin : 0);
            for (std::size_t s = prev_start + 1; s <= hi; ++s) {
                for (std::size_t len = lmin; s + len <= n_; ++len) {
                    auto id = intern(s, len);
                    const auto& rest = tails(s, s + len);
                    for (const auto& m : rest) {
                        acc.insert(with(m, id));
                        if (acc.size() + stored_ > cap_) {
                            throw ResourceError("spectrum enumeration exceeded cap=" + std::to_string(cap_));
                        }
                    }
                }
            }
        }
        stored_ += acc.size();
        auto& slot = memo_[key];
        slot.assign(acc.begin(), acc.end());
        return slot;
    }

    const Seq& x_;
    TraceParams p_;
    std::size_t cap_;
    std::size_t n_ = 0;
    std::size_t stored_ = 0;
    std::vector<Seq> values_;
    std::unordered_map<std::string_view, std::uint32_t> ids_;
    std::unordered_map<std::size_t, std::vector<Multiset>> memo_;
};

} // namespace

std::set<Trace> enumerate_spectrum(const Seq& x, const TraceParams& p, std::size_t cap) {
    p.validate();
    if (static_cast<long long>(x.size()) != p.n) {
        throw ParameterError("sequence length " + std::to_string(x.size()) + " != n=" + std::to_string(p.n));
    }
    return SpectrumEnumerator(x, p, cap).run();
}

} // namespace stc
