// Trace decoding.
//
// Every non-data symbol of a codeword is determined by the parameters, so a
// fragment can only sit where it agrees with that template. Fragments with a
// single admissible location are placed first; the remaining ones are placed
// once exactly one location overlaps at least l consecutive already-known
// symbols of the same y_i (windows of y_i are unique, so such an overlap
// pins the location). Whatever stays unresolved is reported, not guessed.

#include "stc/tracecode.hpp"

#include "parallel.hpp"
#include "stc/constrained.hpp"
#include "stc/errors.hpp"

namespace stc {

namespace {

struct Candidate {
    std::size_t pos;
    bool alive = true;
};

class Decoder {
public:
    Decoder(const Trace& t, const ConstructionParams& p)
        : p_(p), layout_(codeword_layout(p)), y_(static_cast<std::size_t>(p.index_count * p.n_block_out), -1) {
        for (const auto& e : t.entries()) frags_.push_back(&e.value);
    }

    Seq run() {
        std::vector<std::vector<Candidate>> cands(frags_.size());
        for (std::size_t f = 0; f < frags_.size(); ++f) {
            cands[f] = locate(*frags_[f]);
            if (cands[f].empty()) {
                throw DecodeError("fragment " + std::to_string(f) + " fits no codeword location", f);
            }
        }

        std::vector<bool> placed(frags_.size(), false);
        for (bool progress = true; progress;) {
            progress = false;
            for (std::size_t f = 0; f < frags_.size(); ++f) {
                if (placed[f]) continue;
                const Seq& v = *frags_[f];
                std::size_t alive = 0, last = 0, anchored = 0, anchor = 0;
                for (std::size_t c = 0; c < cands[f].size(); ++c) {
                    auto& cand = cands[f][c];
                    if (!cand.alive) continue;
                    if (contradicts(v, cand.pos)) {
                        cand.alive = false;
                        continue;
                    }
                    ++alive;
                    last = c;
                    if (known_run(v, cand.pos) >= static_cast<std::size_t>(p_.ell)) {
                        ++anchored;
                        anchor = c;
                    }
                }
                if (alive == 0) throw DecodeError("fragment " + std::to_string(f) + " is inconsistent with the others", f);
                if (alive == 1 || anchored == 1) {
                    place(v, cands[f][alive == 1 ? last : anchor].pos);
                    placed[f] = true;
                    progress = true;
                }
            }
        }

        for (std::size_t k = 0; k < y_.size(); ++k) {
            if (y_[k] < 0) throw DecodeError("ambiguous alignment: data symbol " + std::to_string(k) + " unresolved");
        }

        std::vector<Symbol> z(layout_.size());
        for (std::size_t pos = 0; pos < z.size(); ++pos) {
            const Slot& s = layout_[pos];
            z[pos] = s.kind == SlotKind::data ? static_cast<Symbol>(y_[static_cast<std::size_t>(s.y)]) : s.fixed;
        }
        for (std::size_t f = 0; f < frags_.size(); ++f) {
            const auto& sym = frags_[f]->symbols();
            bool found = false;
            for (const auto& cand : cands[f]) {
                if (std::equal(sym.begin(), sym.end(), z.begin() + static_cast<std::ptrdiff_t>(cand.pos))) {
                    found = true;
                    break;
                }
            }
            if (!found) throw DecodeError("fragment " + std::to_string(f) + " absent from the reconstruction", f);
        }

        const RfParams fp{p_.q, static_cast<std::size_t>(p_.ell), static_cast<std::size_t>(p_.f),
                          static_cast<std::size_t>(p_.n_block_out)};
        const auto N = static_cast<std::size_t>(p_.n_block_out);
        const auto m = static_cast<std::size_t>(p_.msg_len);
        std::vector<Symbol> x(static_cast<std::size_t>(p_.message_length()));
        detail::parallel_for(static_cast<std::size_t>(p_.index_count), [&](std::size_t i) {
            std::vector<Symbol> yi(N);
            for (std::size_t k = 0; k < N; ++k) yi[k] = static_cast<Symbol>(y_[i * N + k]);
            Seq xi = rf_decode(Seq(Alphabet(p_.q), std::move(yi)), fp);
            std::copy(xi.symbols().begin(), xi.symbols().end(), x.begin() + static_cast<std::ptrdiff_t>(i * m));
        });
        return Seq(Alphabet(p_.q), std::move(x));
    }

private:
    // Template-consistent locations whose data part respects the zero-run limit.
    std::vector<Candidate> locate(const Seq& v) const {
        std::vector<Candidate> out;
        const std::size_t L = v.size();
        const auto N = p_.n_block_out;
        for (std::size_t pos = 0; pos + L <= layout_.size(); ++pos) {
            bool ok = true;
            std::size_t run = 0;
            long long block = -1;
            for (std::size_t k = 0; k < L && ok; ++k) {
                const Slot& s = layout_[pos + k];
                if (s.kind != SlotKind::data) {
                    ok = v[k] == s.fixed;
                    continue;
                }
                if (s.y / N != block) {
                    block = s.y / N;
                    run = 0;
                }
                run = v[k] == 0 ? run + 1 : 0;
                ok = run < static_cast<std::size_t>(p_.f);
            }
            if (ok) out.push_back({pos});
        }
        return out;
    }

    bool contradicts(const Seq& v, std::size_t pos) const {
        for (std::size_t k = 0; k < v.size(); ++k) {
            const Slot& s = layout_[pos + k];
            if (s.kind != SlotKind::data) continue;
            const int known = y_[static_cast<std::size_t>(s.y)];
            if (known >= 0 && known != v[k]) return true;
        }
        return false;
    }

    // Longest stretch of consecutive, already-known y symbols of one y_i.
    std::size_t known_run(const Seq& v, std::size_t pos) const {
        std::size_t best = 0, run = 0;
        long long block = -1;
        for (std::size_t k = 0; k < v.size(); ++k) {
            const Slot& s = layout_[pos + k];
            if (s.kind != SlotKind::data) continue;
            if (s.y / p_.n_block_out != block) {
                block = s.y / p_.n_block_out;
                run = 0;
            }
            run = y_[static_cast<std::size_t>(s.y)] >= 0 ? run + 1 : 0;
            best = std::max(best, run);
        }
        return best;
    }

    void place(const Seq& v, std::size_t pos) {
        for (std::size_t k = 0; k < v.size(); ++k) {
            const Slot& s = layout_[pos + k];
            if (s.kind == SlotKind::data) y_[static_cast<std::size_t>(s.y)] = v[k];
        }
    }

    const ConstructionParams& p_;
    std::vector<Slot> layout_;
    std::vector<int> y_;
    std::vector<const Seq*> frags_;
};

} // namespace

Seq decode(const Trace& t, const ConstructionParams& p) {
    if (t.empty()) throw DecodeError("empty trace");
    for (const auto& e : t.entries()) {
        if (e.value.q() != p.q) throw ParameterError("fragment alphabet does not match q");
        if (static_cast<long long>(e.value.size()) > p.n) throw DecodeError("fragment longer than the codeword");
    }
    return Decoder(t, p).run();
}

} // namespace stc
