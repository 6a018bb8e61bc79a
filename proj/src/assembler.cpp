#include "stc/assembler.hpp"

#include "stc/channel.hpp"
#include "stc/errors.hpp"

#include <algorithm>
#include <string_view>

namespace stc {

namespace {

std::string_view sv(const Seq& s) {
    return {reinterpret_cast<const char*>(s.symbols().data()), s.size()};
}

// v may start d symbols after u.
struct Option {
    std::size_t pred;
    std::size_t d;
};

Seq merge(const Seq& u, const Seq& v, std::size_t d) {
    std::vector<Symbol> out(u.symbols().begin(), u.symbols().begin() + static_cast<std::ptrdiff_t>(d));
    out.insert(out.end(), v.symbols().begin(), v.symbols().end());
    if (d + v.size() < u.size()) out.insert(out.end(), u.symbols().begin() + static_cast<std::ptrdiff_t>(d + v.size()), u.symbols().end());
    return Seq(u.alphabet(), std::move(out));
}

AssemblyResult fail(AssemblyOutcome o, std::string reason) {
    AssemblyResult r;
    r.outcome = o;
    r.reason = std::move(reason);
    return r;
}

} // namespace

std::string to_string(AssemblyOutcome o) {
    switch (o) {
    case AssemblyOutcome::unique: return "unique";
    case AssemblyOutcome::ambiguous: return "ambiguous";
    case AssemblyOutcome::inconsistent: return "inconsistent";
    }
    return "?";
}

AssemblyResult assemble_rf(const Trace& t, std::size_t l_over) {
    if (t.empty()) throw ParameterError("cannot assemble an empty trace");
    if (l_over < 1) throw ParameterError("l_over must be >= 1");
    const int q = t.entries().front().value.q();
    for (const auto& e : t.entries()) {
        if (e.value.size() < l_over) {
            throw ParameterError("fragment of length " + std::to_string(e.value.size()) + " shorter than l_over=" +
                                 std::to_string(l_over));
        }
        if (e.value.q() != q) throw ParameterError("fragments over different alphabets");
    }

    // Maximal distinct values.
    std::vector<Seq> frags;
    const auto& entries = t.entries();
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& v = entries[i].value;
        bool nested = false;
        for (std::size_t j = 0; j < entries.size() && !nested; ++j) {
            const auto& w = entries[j].value;
            nested = j != i && w.size() > v.size() && sv(w).find(sv(v)) != std::string_view::npos;
        }
        if (!nested) frags.push_back(v);
    }
    const std::size_t m = frags.size();

    std::vector<std::vector<Option>> preds(m);
    for (std::size_t u = 0; u < m; ++u) {
        for (std::size_t v = 0; v < m; ++v) {
            if (u == v) continue;
            const auto a = sv(frags[u]);
            const auto b = sv(frags[v]);
            const std::size_t top = std::min(a.size(), b.size());
            for (std::size_t o = l_over; o < top; ++o) {
                if (a.substr(a.size() - o) == b.substr(0, o)) preds[v].push_back({u, a.size() - o});
            }
        }
    }
    auto has_option = [&](std::size_t v, std::size_t u, std::size_t d) {
        return std::any_of(preds[v].begin(), preds[v].end(), [&](const Option& o) { return o.pred == u && o.d == d; });
    };

    // Keep only options not explained through a closer predecessor.
    std::vector<std::size_t> immediate(m, m), immediate_d(m, 0);
    for (std::size_t v = 0; v < m; ++v) {
        std::vector<Option> keep;
        for (const auto& o : preds[v]) {
            bool redundant = false;
            for (const auto& w : preds[v]) {
                if (w.d < o.d && w.pred != o.pred && has_option(w.pred, o.pred, o.d - w.d)) {
                    redundant = true;
                    break;
                }
            }
            if (!redundant) keep.push_back(o);
        }
        if (keep.size() > 1) {
            AssemblyResult r = fail(AssemblyOutcome::ambiguous, "fragment " + frags[v].str() + " has " +
                                                                    std::to_string(keep.size()) +
                                                                    " candidate predecessors");
            r.witnesses.push_back(merge(frags[keep[0].pred], frags[v], keep[0].d));
            r.witnesses.push_back(merge(frags[keep[1].pred], frags[v], keep[1].d));
            return r;
        }
        if (keep.size() == 1) {
            immediate[v] = keep[0].pred;
            immediate_d[v] = keep[0].d;
        }
    }

    std::size_t head = m;
    std::vector<std::size_t> next(m, m);
    for (std::size_t v = 0; v < m; ++v) {
        if (immediate[v] == m) {
            if (head != m) return fail(AssemblyOutcome::inconsistent, "more than one fragment without predecessor");
            head = v;
            continue;
        }
        const std::size_t u = immediate[v];
        if (next[u] != m) return fail(AssemblyOutcome::inconsistent, "fragment " + frags[u].str() + " has two successors");
        next[u] = v;
    }
    if (head == m) return fail(AssemblyOutcome::inconsistent, "no fragment without predecessor");

    std::vector<Symbol> out = frags[head].symbols();
    std::size_t start = 0, visited = 1;
    for (std::size_t u = head; next[u] != m; u = next[u]) {
        const std::size_t v = next[u];
        const std::size_t s = start + immediate_d[v];
        const auto& sym = frags[v].symbols();
        out.insert(out.end(), sym.begin() + static_cast<std::ptrdiff_t>(out.size() - s), sym.end());
        start = s;
        if (++visited > m) break;
    }
    if (visited != m) return fail(AssemblyOutcome::inconsistent, "fragments do not form a single chain");

    Seq x(Alphabet(q), std::move(out));
    for (const auto& e : entries) {
        if (sv(x).find(sv(e.value)) == std::string_view::npos) {
            return fail(AssemblyOutcome::inconsistent, "fragment " + e.value.str() + " absent from the assembly");
        }
    }
    // Fragments are at least l_min long, so the shortest one stands in for it.
    std::size_t shortest = x.size();
    for (const auto& e : entries) shortest = std::min(shortest, e.value.size());
    const TraceParams tp{static_cast<long long>(x.size()), q, static_cast<long long>(shortest),
                         static_cast<long long>(l_over)};
    if (validate_trace(x, t, tp) != TraceClass::valid) {
        return fail(AssemblyOutcome::inconsistent, "the trace does not cover the assembly as a chain");
    }
    AssemblyResult r;
    r.outcome = AssemblyOutcome::unique;
    r.seq = std::move(x);
    return r;
}

} // namespace stc
