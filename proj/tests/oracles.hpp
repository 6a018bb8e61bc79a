#pragma once
// Brute-force reference implementations over plain strings of digit
// characters. Deliberately naive and independent of the library code.

#include <algorithm>
#include <functional>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using Multiset = std::vector<std::string>;  // sorted

inline std::string digits(unsigned long long v, int q, int width) {
    std::string s(static_cast<std::size_t>(width), '0');
    for (int i = width - 1; i >= 0; --i) {
        s[static_cast<std::size_t>(i)] = static_cast<char>('0' + v % static_cast<unsigned>(q));
        v /= static_cast<unsigned>(q);
    }
    return s;
}

inline std::vector<std::string> all_strings(int q, int n) {
    std::vector<std::string> out;
    unsigned long long total = 1;
    for (int i = 0; i < n; ++i) total *= static_cast<unsigned>(q);
    for (unsigned long long v = 0; v < total; ++v) out.push_back(digits(v, q, n));
    return out;
}

inline bool repeat_free(const std::string& x, std::size_t l) {
    for (std::size_t i = 0; i + l <= x.size(); ++i)
        for (std::size_t j = i + 1; j + l <= x.size(); ++j)
            if (x.compare(i, l, x, j, l) == 0) return false;
    return true;
}

inline std::size_t longest_zero_run(const std::string& x) {
    std::size_t best = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::size_t j = i;
        while (j < x.size() && x[j] == '0') ++j;
        best = std::max(best, j - i);
    }
    return best;
}

// Every (l_min, l_over)-trace: starts strictly increase, each start lies
// before the previous fragment's end with overlap >= l_over, the first
// fragment starts at 0 and the last ends at n.
inline std::set<Multiset> all_traces(const std::string& x, std::size_t l_min, std::size_t l_over) {
    const std::size_t n = x.size();
    std::set<Multiset> out;
    std::vector<std::string> cur;
    std::function<void(std::size_t)> chain = [&](std::size_t start) {
        for (std::size_t len = l_min; start + len <= n; ++len) {
            const std::size_t end = start + len;
            cur.push_back(x.substr(start, len));
            if (end == n) {
                Multiset m = cur;
                std::sort(m.begin(), m.end());
                out.insert(m);
            }
            for (std::size_t next = start + 1; next < end && end - next >= l_over; ++next) chain(next);
            cur.pop_back();
        }
    };
    chain(0);
    return out;
}

inline std::vector<std::string> canonical(const std::string& x, std::size_t l_min, std::size_t l_over) {
    std::vector<std::string> out;
    std::size_t s = 0;
    while (s + l_min < x.size()) {
        out.push_back(x.substr(s, l_min));
        s += l_min - l_over;
    }
    out.push_back(x.substr(x.size() - l_min));
    std::sort(out.begin(), out.end());
    return out;
}

enum class Class { valid, complete_but_invalid, trace_but_incomplete, not_a_trace };

// Tries every assignment of occurrence positions to the fragments.
inline Class classify(const std::string& x, std::vector<std::string> frags, std::size_t l_min, std::size_t l_over) {
    if (frags.empty()) return Class::not_a_trace;
    std::vector<std::vector<std::size_t>> occ(frags.size());
    for (std::size_t i = 0; i < frags.size(); ++i) {
        for (std::size_t p = 0; p + frags[i].size() <= x.size(); ++p)
            if (x.compare(p, frags[i].size(), frags[i]) == 0) occ[i].push_back(p);
        if (occ[i].empty()) return Class::not_a_trace;
    }
    bool any = false, complete = false, valid = false;
    std::vector<std::size_t> pick(frags.size());
    std::function<void(std::size_t)> go = [&](std::size_t i) {
        if (i == frags.size()) {
            std::vector<std::pair<std::size_t, std::size_t>> iv;
            for (std::size_t k = 0; k < frags.size(); ++k) iv.push_back({pick[k], frags[k].size()});
            std::sort(iv.begin(), iv.end());
            for (std::size_t k = 1; k < iv.size(); ++k)
                if (iv[k].first == iv[k - 1].first) return;
            any = true;
            bool c = iv.front().first == 0 && iv.back().first + iv.back().second == x.size();
            bool v = true;
            for (std::size_t k = 0; k + 1 < iv.size(); ++k) {
                const std::size_t end = iv[k].first + iv[k].second;
                if (iv[k + 1].first >= end) c = false;
                else if (end - iv[k + 1].first < l_over) v = false;
            }
            for (auto& e : iv)
                if (e.second < l_min) v = false;
            complete = complete || c;
            valid = valid || (c && v);
            return;
        }
        for (std::size_t p : occ[i]) {
            pick[i] = p;
            go(i + 1);
        }
    };
    go(0);
    if (valid) return Class::valid;
    if (complete) return Class::complete_but_invalid;
    if (any) return Class::trace_but_incomplete;
    return Class::not_a_trace;
}

} // namespace oracle
