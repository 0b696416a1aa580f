#include "crownic/factorize.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <unordered_map>
#include <utility>

#include "crownic/crown.hpp"
#include "json.hpp"

namespace crownic {

namespace {

int mod2(int v) { return ((v % 2) + 2) % 2; }
int modn(int v, int n) { return ((v % n) + n) % n; }

void put(Word& w, Letter l, int index, int n) {
    append_letter(w, GeneratorSymbol{l, index, 1}, n);
}

void cat(Word& w, const Word& tail, int n) {
    for (const auto& s : tail) append_letter(w, s, n);
}

PartialInjection s1pow_map(int p, int n) {
    int half = n / 2;
    int q = ((p % half) + half) % half;
    PartialInjection r = PartialInjection::identity(n);
    const PartialInjection s = sigma1(n);
    for (int i = 0; i < q; ++i) r = compose(r, s);
    return r;
}

}  // namespace

Word reduce_sigma1_power(int p, int n) {
    check_even_n(n);
    Word w;
    int half = n / 2;
    int q = ((p % half) + half) % half;
    if (q > 0) append_letter(w, GeneratorSymbol{Letter::S1, 0, q}, n);
    return w;
}

Word reduce_epsilon(int i, int n) {
    Word w;
    if (i == 1) {
        put(w, Letter::E1, 0, n);
    } else if (i == n) {
        put(w, Letter::EN, 0, n);
    } else if (i % 2 == 0) {
        cat(w, reduce_sigma1_power((n - i) / 2, n), n);
        put(w, Letter::EN, 0, n);
        cat(w, reduce_sigma1_power(i / 2, n), n);
    } else {
        cat(w, reduce_sigma1_power((n - i + 1) / 2, n), n);
        put(w, Letter::E1, 0, n);
        cat(w, reduce_sigma1_power((i - 1) / 2, n), n);
    }
    return w;
}

Word reduce_gamma_fix(int i, int n) {
    Word w = reduce_epsilon(i, n);
    put(w, Letter::S2, 0, n);
    cat(w, reduce_sigma1_power(i - 1, n), n);
    return w;
}

Word reduce_alpha_shift(int i, int k, int n) {
    if (i == k) return reduce_epsilon(i, n);
    Word w = reduce_epsilon(i, n);
    cat(w, reduce_sigma1_power(modn(k - i, n) / 2, n), n);
    return w;
}

Word reduce_gamma_reflect(int i, int k, int n) {
    int kk = wrap(n - k + 2, n);
    Word w = reduce_alpha_shift(i, kk, n);
    put(w, Letter::S2, 0, n);
    return w;
}

Word reduce_gamma_ij(int i, int j, int n) {
    if (i == j || mod2(i - j) != 0)
        throw std::invalid_argument("two-point reversal needs distinct same-parity endpoints");
    int q = n / 4;
    Word w;
    if (i % 2 == 0) {
        if (j == n) {
            if (i == 2) {
                cat(w, reduce_epsilon(2, n), n);
                cat(w, reduce_epsilon(n, n), n);
                put(w, Letter::S2, 0, n);
                return w;
            }
            if (i == n - 2) {
                cat(w, reduce_epsilon(n - 2, n), n);
                cat(w, reduce_epsilon(n, n), n);
                return w;
            }
            if (4 <= i && i <= 2 * q) {
                put(w, Letter::GN, i, n);
                return w;
            }
            cat(w, reduce_sigma1_power((n - i) / 2, n), n);
            cat(w, reduce_gamma_ij(n - i, n, n), n);
            cat(w, reduce_sigma1_power(1, n), n);
            put(w, Letter::S2, 0, n);
            return w;
        }
        if (i == n) {
            if (j == 2) {
                cat(w, reduce_epsilon(2, n), n);
                cat(w, reduce_epsilon(n, n), n);
                return w;
            }
            if (j == n - 2) {
                cat(w, reduce_epsilon(n - 2, n), n);
                cat(w, reduce_epsilon(n, n), n);
                put(w, Letter::S2, 0, n);
                cat(w, reduce_sigma1_power(n / 2 - 2, n), n);
                return w;
            }
            cat(w, reduce_sigma1_power((n - j) / 2, n), n);
            cat(w, reduce_gamma_ij(n - j, n, n), n);
            cat(w, reduce_sigma1_power(j / 2, n), n);
            return w;
        }
        if (i < j) {
            cat(w, reduce_sigma1_power((n - j) / 2, n), n);
            cat(w, reduce_gamma_ij(n + i - j, n, n), n);
            cat(w, reduce_sigma1_power(j / 2, n), n);
            return w;
        }
        cat(w, reduce_sigma1_power((n - j) / 2, n), n);
        cat(w, reduce_gamma_ij(i - j, n, n), n);
        cat(w, reduce_sigma1_power(j / 2, n), n);
        return w;
    }
    if (j == 1) {
        if (i == 3) {
            cat(w, reduce_epsilon(1, n), n);
            cat(w, reduce_epsilon(3, n), n);
            put(w, Letter::S2, 0, n);
            cat(w, reduce_sigma1_power(1, n), n);
            return w;
        }
        if (i == n - 1) {
            cat(w, reduce_epsilon(1, n), n);
            cat(w, reduce_epsilon(n - 1, n), n);
            return w;
        }
        if (5 <= i && i <= 2 * q + 1) {
            put(w, Letter::G1, i, n);
            return w;
        }
        cat(w, reduce_sigma1_power((n - i + 1) / 2, n), n);
        cat(w, reduce_gamma_ij(n - i + 2, 1, n), n);
        put(w, Letter::S2, 0, n);
        return w;
    }
    if (i == 1) {
        if (j == 3) {
            cat(w, reduce_epsilon(1, n), n);
            cat(w, reduce_epsilon(3, n), n);
            return w;
        }
        if (j == n - 1) {
            cat(w, reduce_epsilon(1, n), n);
            cat(w, reduce_epsilon(n - 1, n), n);
            put(w, Letter::S2, 0, n);
            cat(w, reduce_sigma1_power(n / 2 - 1, n), n);
            return w;
        }
        put(w, Letter::S2, 0, n);
        cat(w, reduce_gamma_ij(n - j + 2, 1, n), n);
        put(w, Letter::S2, 0, n);
        return w;
    }
    if (i < j) {
        cat(w, reduce_sigma1_power((n - j + 1) / 2, n), n);
        cat(w, reduce_gamma_ij(n - j + i + 1, 1, n), n);
        cat(w, reduce_sigma1_power((j - 1) / 2, n), n);
        return w;
    }
    cat(w, reduce_sigma1_power((n - j + 1) / 2, n), n);
    cat(w, reduce_gamma_ij(i - j + 1, 1, n), n);
    cat(w, reduce_sigma1_power((j - 1) / 2, n), n);
    return w;
}

Word reduce_gamma_ij_minus(int i, int j, int n) {
    Word w = reduce_epsilon(i, n);
    cat(w, reduce_gamma_ij(wrap(i - 1, n), j, n), n);
    return w;
}

Word reduce_gamma_ij_plus(int i, int j, int n) {
    Word w = reduce_epsilon(j, n);
    cat(w, reduce_gamma_ij(i, wrap(j + 1, n), n), n);
    return w;
}

Word reduce_alpha_minus(int i, int j, int n) {
    std::set<int> undef{i, wrap(i + 1, n), wrap(i + 2, n), j};
    Word w;
    if (undef.size() == 3) {
        for (int u : undef) cat(w, reduce_epsilon(u, n), n);
        cat(w, reduce_sigma1_power(n / 2 - 1, n), n);
        return w;
    }
    if (j < i) {
        w = reduce_alpha_plus(j, i, n);
        cat(w, reduce_sigma1_power(n / 2 - 1, n), n);
        return w;
    }
    if (mod2(i - j) == 1) {
        w = reduce_gamma_ij(i + 1, j, n);
        cat(w, reduce_gamma_ij(i, j - 1, n), n);
        return w;
    }
    w = reduce_epsilon(i + 1, n);
    cat(w, reduce_gamma_ij(i, j, n), n);
    cat(w, reduce_gamma_ij(i, j - 2, n), n);
    return w;
}

Word reduce_alpha_plus(int i, int j, int n) {
    std::set<int> undef{i, j, wrap(j + 1, n), wrap(j + 2, n)};
    Word w;
    if (undef.size() == 3) {
        for (int u : undef) cat(w, reduce_epsilon(u, n), n);
        cat(w, reduce_sigma1_power(1, n), n);
        return w;
    }
    if (j < i) {
        w = reduce_alpha_minus(j, i, n);
        cat(w, reduce_sigma1_power(1, n), n);
        return w;
    }
    if (mod2(i - j) == 1) {
        w = reduce_gamma_ij(i, wrap(j + 1, n), n);
        cat(w, reduce_gamma_ij(wrap(i + 1, n), wrap(j + 2, n), n), n);
        return w;
    }
    w = reduce_epsilon(wrap(j + 1, n), n);
    cat(w, reduce_gamma_ij(i, j, n), n);
    cat(w, reduce_gamma_ij(i, wrap(j + 2, n), n), n);
    return w;
}

Word reduce_delta_o(int k, int n) {
    Word w;
    if (k <= n / 4) {
        put(w, Letter::DO, k, n);
        return w;
    }
    w = reduce_gamma_ij(3, 1, n);
    put(w, Letter::DO, n / 2 - k, n);
    cat(w, reduce_gamma_ij(2, n, n), n);
    return w;
}

Word reduce_delta_e(int k, int n) {
    Word w;
    if (k <= n / 4) {
        put(w, Letter::DE, k, n);
        return w;
    }
    w = reduce_gamma_ij(2, n, n);
    put(w, Letter::DE, n / 2 - k, n);
    cat(w, reduce_gamma_ij(3, 1, n), n);
    return w;
}

namespace {

// ---- interval alignment loop ----

enum class Fam { Gij, Gm, Gp, Am, Ap, Ash, Gref };

struct Multiplier {
    Fam fam;
    int i;
    int j;
};

PartialInjection family_element(const Multiplier& m, int n) {
    switch (m.fam) {
        case Fam::Gij: return gamma_ij(m.i, m.j, n);
        case Fam::Gm: return gamma_ij_minus(m.i, m.j, n);
        case Fam::Gp: return gamma_ij_plus(m.i, m.j, n);
        case Fam::Am: return alpha_ij_minus(m.i, m.j, n);
        case Fam::Ap: return alpha_ij_plus(m.i, m.j, n);
        case Fam::Ash: return alpha_shift(m.i, m.j, n);
        case Fam::Gref: return gamma_reflect(m.i, m.j, n);
    }
    throw std::logic_error("bad family");
}

Word family_word(const Multiplier& m, int n) {
    switch (m.fam) {
        case Fam::Gij: return reduce_gamma_ij(m.i, m.j, n);
        case Fam::Gm: return reduce_gamma_ij_minus(m.i, m.j, n);
        case Fam::Gp: return reduce_gamma_ij_plus(m.i, m.j, n);
        case Fam::Am: return reduce_alpha_minus(m.i, m.j, n);
        case Fam::Ap: return reduce_alpha_plus(m.i, m.j, n);
        case Fam::Ash: return reduce_alpha_shift(m.i, m.j, n);
        case Fam::Gref: return reduce_gamma_reflect(m.i, m.j, n);
    }
    throw std::logic_error("bad family");
}

const char* family_rule(Fam f) {
    switch (f) {
        case Fam::Gij: return "gamma";
        case Fam::Gm: return "gamma-minus";
        case Fam::Gp: return "gamma-plus";
        case Fam::Am: return "alpha-minus";
        case Fam::Ap: return "alpha-plus";
        case Fam::Ash: return "alpha-shift";
        case Fam::Gref: return "gamma-reflect";
    }
    return "?";
}

std::vector<int> restriction(const PartialInjection& a, const Interval& iv) {
    std::vector<int> out;
    out.reserve(static_cast<size_t>(iv.size()));
    for (int x = iv.lo; x <= iv.hi; ++x) out.push_back(a.at(x));
    return out;
}

// Decides the next multiplier(s) moving beta one alignment step closer to
// alpha. Both maps share their domain, {1,n} is in neither domain nor image,
// and beta differs from alpha. Returned multipliers keep rank and domain and
// strictly reduce the mismatch measure (leading aligned blocks, then image
// shift, then restriction mismatches).
std::vector<Multiplier> alignment_step(const PartialInjection& al, const PartialInjection& be, int n) {
    const IntervalDecomposition da = maximal_intervals(al, true);
    const IntervalDecomposition db = maximal_intervals(be, true);
    if (da.intervals != db.intervals) throw FactorizeError("alignment: domains diverged");
    const int k = static_cast<int>(da.intervals.size());

    std::vector<char> imb(static_cast<size_t>(n) + 1, 0);
    for (int x = 1; x <= n; ++x)
        if (be.at(x)) imb[static_cast<size_t>(be.at(x))] = 1;
    auto free = [&](int x) { return !imb[static_cast<size_t>(wrap(x, n))]; };

    int s = -1;
    for (int r = 0; r < k; ++r) {
        if (da.sigma[r] != db.sigma[r]) {
            s = r;
            break;
        }
        int idx = da.sigma[r];
        if (restriction(al, da.intervals[idx]) != restriction(be, da.intervals[idx])) {
            s = r;
            break;
        }
    }
    if (s < 0) throw FactorizeError("alignment: no mismatch but maps differ");

    const int u = da.sigma[s];
    const int v = db.sigma[s];
    const int tua = da.images[u].lo, qua = da.images[u].hi;
    const int tu = db.images[u].lo, qu = db.images[u].hi;

    if (s == 0 && (u != v || db.images[u] != da.images[u])) {
        // Seed move: bring the bottom block's image onto its target in one
        // global shift or reflection. For singleton blocks both land on
        // target, so simulate and prefer the one already matching pointwise.
        if (!free(qu + 1)) throw FactorizeError("seed: slot above interval occupied");
        const int t0 = da.intervals[u].lo, q0 = da.intervals[u].hi;
        const bool same_orient = (al.at(t0) == tua) == (be.at(t0) == tu);
        std::vector<Multiplier> cands;
        if (same_orient || t0 == q0) {
            if (wrap(qu + 1, n) != wrap(qua + 1, n))
                cands.push_back({Fam::Ash, wrap(qu + 1, n), wrap(qua + 1, n)});
        }
        if (!same_orient || t0 == q0)
            cands.push_back({Fam::Gref, wrap(qu + 1, n), wrap(tua - 1, n)});
        std::optional<Multiplier> best;
        for (const auto& cand : cands) {
            PartialInjection nb = compose(be, family_element(cand, n));
            if (nb.rank() != be.rank()) continue;
            auto nim = nb.image();
            if (!nim.empty() && nim.front() == 1 && nim.back() == n) continue;
            IntervalDecomposition dc = maximal_intervals(nb, true);
            if (dc.sigma[0] != u || dc.images[u] != da.images[u]) continue;
            if (restriction(al, da.intervals[u]) == restriction(nb, da.intervals[u])) {
                best = cand;
                break;
            }
            if (!best) best = cand;
        }
        if (!best) throw FactorizeError("seed: no candidate aligns the bottom interval");
        return {*best};
    }

    if (u != v) {
        // The block at position s has the wrong image block below it: swap
        // the two image blocks with a reversal, or shave a point when the
        // required endpoints disagree in parity.
        const int tv = db.images[v].lo, qv = db.images[v].hi;
        if (mod2(tv - qu) == 0) return {{Fam::Gij, wrap(tv - 1, n), wrap(qu + 1, n)}};
        if (free(qu + 2)) return {{Fam::Gp, wrap(tv - 1, n), wrap(qu + 1, n)}};
        if (free(tv - 2)) return {{Fam::Gm, wrap(tv - 1, n), wrap(qu + 1, n)}};
        const int qprev = db.images[db.sigma[s - 1]].hi;
        bool gapfree = true;
        for (int x = qprev + 1; x <= n - 1; ++x) {
            if (!imb[static_cast<size_t>(x)] && !imb[static_cast<size_t>(x) + 1]) {
                gapfree = false;
                break;
            }
        }
        if (gapfree) {
            if (mod2(qv - tu) == 1) return {{Fam::Gij, wrap(qv + 1, n), wrap(qu + 1, n)}};
            const int tva = da.images[v].lo;
            int rr = -1;
            for (int p = s + 1; p < k; ++p) {
                int r = da.sigma[p];
                if (r == v) continue;
                if (mod2(da.images[r].lo - qua) == 0 && mod2(da.images[r].hi - tva) == 0) {
                    rr = r;
                    break;
                }
            }
            if (rr < 0) throw FactorizeError("swap: no parity-compatible block");
            const int trb = db.images[rr].lo, qrb = db.images[rr].hi;
            if (qrb < tu) {
                if (mod2(trb - qu) == 0) return {{Fam::Gij, wrap(trb - 1, n), wrap(qu + 1, n)}};
                for (int p = s + 1; p < k; ++p) {
                    const Interval& jp = db.images[da.sigma[p]];
                    if (qrb < jp.lo && jp.hi < tu && mod2(jp.lo - qu) == 0)
                        return {{Fam::Gij, wrap(jp.lo - 1, n), wrap(qu + 1, n)}};
                }
                throw FactorizeError("swap: no interjacent block (low)");
            }
            if (mod2(qrb - tu) == 0) return {{Fam::Gij, wrap(tu - 1, n), wrap(qrb + 1, n)}};
            for (int p = s + 1; p < k; ++p) {
                const Interval& jp = db.images[da.sigma[p]];
                if (qu < jp.lo && jp.hi < trb && mod2(jp.hi - tu) == 0)
                    return {{Fam::Gij, wrap(tu - 1, n), wrap(jp.hi + 1, n)}};
            }
            throw FactorizeError("swap: no interjacent block (high)");
        }
        // Double gap available above the target image block.
        int x = -1;
        for (int c = qv + 1; c <= n - 1; ++c) {
            if (!imb[static_cast<size_t>(c)] && !imb[static_cast<size_t>(c) + 1]) {
                x = c;
                break;
            }
        }
        if (x < 0) throw FactorizeError("swap: no double gap");
        if (free(x + 2)) {
            if (x < qu)
                return {{Fam::Ap, wrap(tv - 1, n), x}, {Fam::Gm, wrap(tv + 1, n), wrap(qu + 1, n)}};
            return {{Fam::Ap, wrap(tv - 1, n), x}, {Fam::Gm, wrap(tv + 1, n), wrap(qu + 3, n)}};
        }
        bool all_odd_blocks = true;
        for (int p = s; p < k; ++p) {
            const Interval& jp = db.images[db.sigma[p]];
            if (mod2(jp.hi - jp.lo) != 0) {
                all_odd_blocks = false;
                break;
            }
        }
        if (all_odd_blocks) {
            for (int x2 = qu + 1; x2 <= n - 1; ++x2) {
                if (!imb[static_cast<size_t>(x2)] && !imb[static_cast<size_t>(x2) + 1] &&
                    mod2(x2 + 1 - (tv - 1)) == 0)
                    return {{Fam::Gij, wrap(tv - 1, n), wrap(x2 + 1, n)}};
            }
            throw FactorizeError("swap: no parity-matched double gap");
        }
        const bool lu_even = mod2(qu - tu + 1) == 0;
        if (lu_even && x < tu) {
            int xp = (mod2(x - (qu + 1)) == 0) ? x : x + 1;
            return {{Fam::Gij, xp, wrap(qu + 1, n)}};
        }
        if (lu_even && x > qu) {
            int xp = (mod2(x - (tu - 1)) == 0) ? x : x + 1;
            return {{Fam::Gij, wrap(tu - 1, n), xp}};
        }
        int rr = -1;
        for (int p = s; p < k; ++p) {
            int idx = db.sigma[p];
            if (mod2(db.images[idx].hi - db.images[idx].lo) == 1) {
                rr = idx;
                break;
            }
        }
        if (rr < 0) throw FactorizeError("swap: no even-length block");
        const int trb = db.images[rr].lo, qrb = db.images[rr].hi;
        if (mod2(tv - qrb) == 1) {
            if (x < trb) {
                int xp = (mod2(x - (qrb + 1)) == 0) ? x : x + 1;
                return {{Fam::Gij, xp, wrap(qrb + 1, n)}};
            }
            int xp = (mod2(x - (trb - 1)) == 0) ? x : x + 1;
            return {{Fam::Gij, wrap(trb - 1, n), xp}};
        }
        if (mod2(tv - 1 - (x + 1)) == 1) {
            for (int aa = qv + 1; aa < x; ++aa) {
                if (imb[static_cast<size_t>(aa)]) continue;
                for (int bb = x + 2; bb <= n; ++bb) {
                    if (!imb[static_cast<size_t>(bb)] && mod2(aa - bb) == 0)
                        return {{Fam::Gij, aa, bb}};
                }
            }
            throw FactorizeError("swap: no matched free pair around the gap");
        }
        return {{Fam::Gij, wrap(tv - 1, n), wrap(x + 1, n)}};
    }

    if (db.images[u] != da.images[u]) {
        // Right block, wrong offset: shift the image interval up or down.
        const int a = da.images[u].lo, b = da.images[u].hi;
        int m = tu - a;
        if (m < 0) {
            m = -m;
            if (m >= 2) {
                if (!free(a - m - 1)) throw FactorizeError("shift-up: slot below interval occupied");
                for (int i = qu + 1; i <= n; ++i) {
                    if (free(i) && free(i + 1) && free(i + 2))
                        return {{Fam::Ap, wrap(a - m - 1, n), i}};
                }
                std::vector<int> dg;
                for (int i = qu + 1; i <= n; ++i)
                    if (free(i) && free(i + 1)) dg.push_back(i);
                for (size_t xi = 0; xi < dg.size(); ++xi) {
                    for (size_t xj = xi + 1; xj < dg.size(); ++xj) {
                        if (mod2(dg[xi] - dg[xj]) == 0)
                            return {{Fam::Gij, wrap(dg[xi] + 1, n), wrap(dg[xj] + 1, n)},
                                    {Fam::Ap, wrap(a - m - 1, n), dg[xi]}};
                    }
                }
                if (dg.size() < 2) throw FactorizeError("shift-up: fewer than two double gaps");
                const int i = dg[0], j = dg[1];
                int rr = -1;
                for (int p = s; p < k; ++p) {
                    int idx = db.sigma[p];
                    if (mod2(db.images[idx].hi - db.images[idx].lo) == 1) {
                        rr = idx;
                        break;
                    }
                }
                if (rr < 0) throw FactorizeError("shift-up: no even-length block");
                const int trb = db.images[rr].lo, qrb = db.images[rr].hi;
                if (trb > j) {
                    int xp = (mod2(j - (qrb + 1)) == 0) ? j : i;
                    return {{Fam::Gij, xp, wrap(qrb + 1, n)}};
                }
                if (qrb < i) {
                    int xp = (mod2(i + 1 - (trb - 1)) == 0) ? i + 1 : j + 1;
                    return {{Fam::Gij, wrap(trb - 1, n), wrap(xp, n)}};
                }
                int aa = (mod2(trb - 1 - (j + 1)) == 0) ? wrap(trb - 1, n) : wrap(qrb + 1, n);
                return {{Fam::Gij, aa, wrap(j + 1, n)}};
            }
            if (!free(a - 2)) throw FactorizeError("shift-up-1: reflection anchor occupied");
            if (free(b + 1)) return {{Fam::Gij, wrap(a - 2, n), wrap(b + 1, n)}};
            for (int j = b + 1; j <= n; ++j) {
                if (free(j) && free(j + 1) && mod2(b - j) == 1)
                    return {{Fam::Gij, b, wrap(j + 1, n)}, {Fam::Gij, wrap(a - 2, n), wrap(b + 1, n)}};
            }
            int jj = -1;
            for (int j = b + 1; j <= n; ++j) {
                if (free(j) && free(j + 1)) {
                    jj = j;
                    break;
                }
            }
            if (jj < 0) throw FactorizeError("shift-up-1: no double gap above");
            for (int p = s + 1; p < k; ++p) {
                const Interval& jp = db.images[db.sigma[p]];
                if (mod2(jp.hi - jp.lo) == 1 && jp.hi < jj) {
                    int aa = (mod2(jp.lo - 1 - (jj + 1)) == 0) ? wrap(jp.lo - 1, n) : wrap(jp.hi + 1, n);
                    return {{Fam::Gij, aa, wrap(jj + 1, n)}};
                }
            }
            throw FactorizeError("shift-up-1: no even-length block below gap");
        }
        if (m >= 2) {
            for (int z : {a + m - 1, a + m - 2, a + m - 3}) {
                if (!free(z)) throw FactorizeError("shift-down: slots below interval occupied");
            }
            int jj = -1;
            for (int j = qu + 1; j < qu + n; ++j) {
                if (free(j)) {
                    jj = wrap(j, n);
                    break;
                }
            }
            if (jj < 0 || jj == wrap(a + m - 3, n))
                throw FactorizeError("shift-down: no free slot above interval");
            return {{Fam::Am, wrap(a + m - 3, n), jj}};
        }
        if (!(free(a) && free(a - 1))) throw FactorizeError("shift-down-1: slots below target occupied");
        if (!free(b + 2)) throw FactorizeError("shift-down-1: reflection anchor occupied");
        return {{Fam::Gij, wrap(a - 1, n), wrap(b + 2, n)}};
    }

    // Same block, same image interval, mismatching restriction: reverse the
    // interval in place.
    const int a = da.images[u].lo, b = da.images[u].hi;
    if (mod2(a - b) != 0) throw FactorizeError("reverse: endpoint parity mismatch");
    if (!(free(a - 1) && free(b + 1))) throw FactorizeError("reverse: anchors occupied");
    return {{Fam::Gij, wrap(a - 1, n), wrap(b + 1, n)}};
}

// Runs the alignment loop for one rotation choice, recording trace steps.
// alpha = sigma1^t * a * sigma1^r has {1,n} outside both domain and image.
FactorizationTrace alignment_run(const PartialInjection& a, int t, int r,
                                 const PartialInjection& alpha, int n) {
    FactorizationTrace tr{a, {}, {}, std::nullopt};
    const std::vector<int> D = alpha.domain();
    PartialInjection beta = PartialInjection::identity_on(D, n);
    const PartialInjection unrot = s1pow_map(-t, n);

    Word seed = reduce_sigma1_power(-t, n);
    for (int x = 1; x <= n; ++x)
        if (alpha.at(x) == 0) cat(seed, reduce_epsilon(x, n), n);
    Word w = seed;
    tr.steps.push_back({"seed", compose(unrot, beta), seed});

    int guard = 0;
    while (beta != alpha) {
        if (++guard > 300 + 30 * n) throw FactorizeError("alignment loop did not converge");
        const std::vector<Multiplier> tags = alignment_step(alpha, beta, n);
        Word stepw;
        std::string rule;
        for (const auto& m : tags) {
            PartialInjection nb = compose(beta, family_element(m, n));
            if (nb.rank() != beta.rank() || nb.domain() != D)
                throw FactorizeError("alignment: multiplier dropped rank or domain");
            if (nb == beta) throw FactorizeError("alignment: multiplier made no progress");
            auto nim = nb.image();
            if (!nim.empty() && nim.front() == 1 && nim.back() == n)
                throw FactorizeError("alignment: multiplier wrapped the image");
            beta = nb;
            cat(stepw, family_word(m, n), n);
            if (!rule.empty()) rule += '+';
            rule += family_rule(m.fam);
        }
        cat(w, stepw, n);
        tr.steps.push_back({rule, compose(unrot, beta), stepw});
    }

    Word un = reduce_sigma1_power(-r, n);
    if (!un.empty()) {
        cat(w, un, n);
        tr.steps.push_back({"unrotate", compose(compose(unrot, beta), s1pow_map(-r, n)), un});
    }
    tr.word = w;
    return tr;
}

// Words over the n = 2 base set {id, (1->2), (2->1)}.
Word n2_word(const PartialInjection& a) {
    const GeneratorSymbol up{Letter::UP2, 0, 1};
    const GeneratorSymbol dn{Letter::DN2, 0, 1};
    if (a == PartialInjection::identity(2)) return {};
    if (a == PartialInjection::from_pairs(2, {{1, 2}})) return {up};
    if (a == PartialInjection::from_pairs(2, {{2, 1}})) return {dn};
    if (a == PartialInjection::from_pairs(2, {{1, 1}})) return {up, dn};
    if (a == PartialInjection::from_pairs(2, {{2, 2}})) return {dn, up};
    if (a == PartialInjection(2)) return {up, up};
    throw std::invalid_argument("not a member of the n = 2 semigroup");
}

FactorizationTrace base2_trace(const PartialInjection& a) {
    FactorizationTrace tr{a, n2_word(a), {}, std::nullopt};
    tr.steps.push_back({"base2", a, tr.word});
    return tr;
}

}  // namespace

Word factorize_rank_n(const PartialInjection& a) {
    const int n = a.n();
    if (a.rank() != n) throw std::invalid_argument("factorize_rank_n: rank must be n");
    if (n == 2) return n2_word(a);
    const int x1 = a.at(1);
    if (a.at(2) == wrap(x1 + 1, n)) return reduce_sigma1_power(modn(x1 - 1, n) / 2, n);
    Word w = reduce_sigma1_power(modn(1 - x1, n) / 2, n);
    put(w, Letter::S2, 0, n);
    return w;
}

Word factorize_rank_n1(const PartialInjection& a) {
    const int n = a.n();
    if (a.rank() != n - 1) throw std::invalid_argument("factorize_rank_n1: rank must be n-1");
    if (n == 2) return n2_word(a);
    int i = 0;
    for (int x = 1; x <= n; ++x) {
        if (a.at(x) == 0) {
            i = x;
            break;
        }
    }
    std::vector<char> in_im(static_cast<size_t>(n) + 1, 0);
    for (int x = 1; x <= n; ++x)
        if (a.at(x)) in_im[static_cast<size_t>(a.at(x))] = 1;
    int kk = 0;
    for (int x = 1; x <= n; ++x) {
        if (!in_im[static_cast<size_t>(x)]) {
            kk = x;
            break;
        }
    }
    if (i == kk) {
        if (a == epsilon(i, n)) return reduce_epsilon(i, n);
        if (a == gamma_fix(i, n)) return reduce_gamma_fix(i, n);
        throw FactorizeError("rank n-1 with matching gap, unrecognized shape");
    }
    if (mod2(i - kk) != 0)
        throw std::invalid_argument("factorize_rank_n1: parity-mixing input");
    if (a == alpha_shift(i, kk, n)) return reduce_alpha_shift(i, kk, n);
    if (a == gamma_reflect(i, kk, n)) return reduce_gamma_reflect(i, kk, n);
    throw FactorizeError("rank n-1, unrecognized shape");
}

FactorizationTrace factorize_p(const PartialInjection& a) {
    const int n = a.n();
    if (!is_member_prop1(a).member || !chi(a).empty())
        throw std::invalid_argument("factorize_p: not a parity-preserving member");
    if (n == 2) return base2_trace(a);

    FactorizationTrace tr{a, {}, {}, std::nullopt};
    const int r = a.rank();
    if (r == n) {
        tr.word = factorize_rank_n(a);
        tr.steps.push_back({"rank-n", a, tr.word});
        return tr;
    }
    if (r == n - 1) {
        tr.word = factorize_rank_n1(a);
        tr.steps.push_back({"rank-n1", a, tr.word});
        return tr;
    }

    // Rotate so that {1,n} avoids both domain and image; the canonical choice
    // unwinds the wrapped blocks, and all other rotation pairs serve as
    // fallbacks for the rare alignment dead ends.
    const std::vector<int> D = a.domain();
    const std::vector<int> E = a.image();
    const bool dom_wraps = !D.empty() && D.front() == 1 && D.back() == n;
    const bool im_wraps = !E.empty() && E.front() == 1 && E.back() == n;
    int p1 = 0;
    if (dom_wraps) {
        int x = n;
        while (a.at(wrap(x - 1, n)) != 0 && x > 1) --x;
        p1 = (x % 2 == 0) ? (x - 2) / 2 : (x - 1) / 2;
    }
    int p2 = 0;
    if (im_wraps) {
        std::vector<char> in_im(static_cast<size_t>(n) + 1, 0);
        for (int y : E) in_im[static_cast<size_t>(y)] = 1;
        int b = n;
        while (b > 1 && in_im[static_cast<size_t>(b) - 1]) --b;
        p2 = (b % 2 == 0) ? (n - b + 2) / 2 : (n - b + 1) / 2;
    }

    const int half = n / 2;
    std::vector<std::pair<int, int>> cands{{p1, p2}};
    for (int t = 0; t < half; ++t)
        for (int rr = 0; rr < half; ++rr)
            if (t != p1 || rr != p2) cands.push_back({t, rr});

    std::string last = "(none tried)";
    for (const auto& [t, rr] : cands) {
        PartialInjection alpha = compose(compose(s1pow_map(t, n), a), s1pow_map(rr, n));
        auto da = alpha.domain();
        auto ia = alpha.image();
        if (!da.empty() && da.front() == 1 && da.back() == n) continue;
        if (!ia.empty() && ia.front() == 1 && ia.back() == n) continue;
        try {
            tr = alignment_run(a, t, rr, alpha, n);
        } catch (const FactorizeError& e) {
            last = e.what();
            continue;
        }
        if (eval_word(tr.word, n) != a) throw FactorizeError("factorize_p: product check failed");
        return tr;
    }
    throw FactorizeError(std::string("factorize_p: all rotations failed; last: ") + last);
}

FactorizationTrace factorize_pbar(const PartialInjection& a) {
    const int n = a.n();
    if (!is_member_prop1(a).member || chi(a).empty())
        throw std::invalid_argument("factorize_pbar: not a parity-mixing member");
    if (n == 2) return base2_trace(a);

    FactorizationTrace tr{a, {}, {}, std::nullopt};
    PartialInjection beta = a;
    Word w;
    int guard = 0;
    while (true) {
        const std::vector<int> ch = chi(beta);
        if (ch.empty()) break;
        if (++guard > 2 * n + 4) throw FactorizeError("parity repair did not converge");

        std::vector<char> in_dom(static_cast<size_t>(n) + 1, 0);
        for (int x : beta.domain()) in_dom[static_cast<size_t>(x)] = 1;
        int odd_i = 0, even_i = 0;
        for (int x : ch) {
            if (x % 2 == 1 && !odd_i) odd_i = x;
            if (x % 2 == 0 && !even_i) even_i = x;
        }
        int odd_j = 0, even_j = 0;
        for (int x = 1; x <= n && !odd_j; x += 2)
            if (!in_dom[static_cast<size_t>(x)]) odd_j = x;
        for (int x = 2; x <= n && !even_j; x += 2)
            if (!in_dom[static_cast<size_t>(x)]) even_j = x;

        PartialInjection rho(n);
        Word inv;
        std::string rule;
        if (odd_i && odd_j) {
            const int i = odd_i, j = odd_j;
            const int kk = wrap(j - i, n) / 2;
            const int p = (i - 1) / 2;
            rho = compose(delta_o(kk, n), s1pow_map(p, n));
            inv = reduce_sigma1_power(-p, n);
            cat(inv, reduce_delta_e(kk, n), n);
            rule = "delta-odd";
        } else if (even_i && even_j) {
            const int i = even_i, j = even_j;
            const int kk = wrap(j - i, n) / 2;
            const int p = (i - 2) / 2;
            rho = compose(delta_e(n / 2 - kk, n), s1pow_map(p, n));
            inv = reduce_sigma1_power(-p, n);
            cat(inv, reduce_delta_o(n / 2 - kk, n), n);
            rule = "delta-even";
        } else {
            // chi covers a full parity class: peel one eta letter; the
            // residual permutes the other class. The eta only reads the
            // residual on that class, so pad the residual with fixed points
            // wherever that still yields a member; this keeps the emitted
            // word minimal (eta2 itself factors to exactly "H2").
            bool dom_odds = true, dom_evens = true;
            for (int x = 1; x <= n; ++x) {
                bool in = in_dom[static_cast<size_t>(x)];
                if (x % 2 == 1 && !in) dom_odds = false;
                if (x % 2 == 0 && in) dom_odds = false;
                if (x % 2 == 0 && !in) dom_evens = false;
                if (x % 2 == 1 && in) dom_evens = false;
            }
            Word etaw;
            if (dom_odds) {
                put(etaw, Letter::H1, 0, n);
                beta = compose(eta2(n), beta);
            } else if (dom_evens) {
                put(etaw, Letter::H2, 0, n);
                beta = compose(eta1(n), beta);
            } else {
                throw FactorizeError("parity repair: mixed domain with no partner point");
            }
            std::vector<char> used(static_cast<size_t>(n) + 1, 0);
            for (int y : beta.image()) used[static_cast<size_t>(y)] = 1;
            PartialInjection ext = beta;
            for (int x = dom_odds ? 1 : 2; x <= n; x += 2)
                if (ext.at(x) == 0 && !used[static_cast<size_t>(x)]) ext = ext.with(x, x);
            if (is_member_prop1(ext).member) beta = ext;
            cat(w, etaw, n);
            tr.steps.push_back({"eta", beta, etaw});
            continue;
        }
        PartialInjection nb = compose(rho, beta);
        if (nb.rank() != beta.rank() || chi(nb).size() != ch.size() - 1)
            throw FactorizeError("parity repair step had the wrong effect");
        beta = nb;
        cat(w, inv, n);
        tr.steps.push_back({rule, beta, inv});
    }

    FactorizationTrace pt = factorize_p(beta);
    cat(w, pt.word, n);
    for (auto& st : pt.steps) tr.steps.push_back(std::move(st));
    tr.word = w;
    if (eval_word(tr.word, n) != a) throw FactorizeError("factorize_pbar: product check failed");
    return tr;
}

FactorizationTrace factorize(const PartialInjection& a) {
    const int n = a.n();
    const MembershipReport rep = is_member_prop1(a);
    if (!rep.member) throw std::invalid_argument("factorize: not a member: " + rep.to_json_string());
    if (n == 2) return base2_trace(a);
    FactorizationTrace tr = chi(a).empty() ? factorize_p(a) : factorize_pbar(a);
    if (eval_word(tr.word, n) != a) throw FactorizeError("factorize: product check failed");
    return tr;
}

Word factorize_bfs(const PartialInjection& a, const Catalog& gens) {
    const int n = a.n();
    const auto items = gens.all();
    if (items.empty()) throw std::invalid_argument("factorize_bfs: empty generating set");
    for (const auto& [sym, el] : items) {
        if (el.n() != n) throw std::invalid_argument("factorize_bfs: generator size mismatch");
    }

    std::vector<PartialInjection> elems;
    std::vector<std::pair<int, int>> parent;  // (element index or -1, generator index)
    std::unordered_map<std::string, int> seen;

    auto emit = [&](int found) {
        std::vector<int> letters;
        for (int cur = found; cur >= 0; cur = parent[static_cast<size_t>(cur)].first)
            letters.push_back(parent[static_cast<size_t>(cur)].second);
        std::reverse(letters.begin(), letters.end());
        Word w;
        for (int g : letters) append_letter(w, items[static_cast<size_t>(g)].first, n);
        return w;
    };

    for (size_t g = 0; g < items.size(); ++g) {
        const auto& el = items[g].second;
        auto [it, fresh] = seen.emplace(el.encode(), static_cast<int>(elems.size()));
        if (!fresh) continue;
        elems.push_back(el);
        parent.push_back({-1, static_cast<int>(g)});
        if (el == a) return emit(it->second);
    }
    for (size_t i = 0; i < elems.size(); ++i) {
        for (size_t g = 0; g < items.size(); ++g) {
            PartialInjection next = compose(elems[i], items[g].second);
            auto [it, fresh] = seen.emplace(next.encode(), static_cast<int>(elems.size()));
            if (!fresh) continue;
            elems.push_back(next);
            parent.push_back({static_cast<int>(i), static_cast<int>(g)});
            if (next == a) return emit(it->second);
        }
    }
    throw std::invalid_argument("factorize_bfs: element is not generated by the given set");
}

std::string FactorizationTrace::to_json_string() const {
    nlohmann::json j;
    j["input"] = nlohmann::json::parse(input.to_json_string());
    j["word"] = nlohmann::json::parse(word_json(word));
    j["steps"] = nlohmann::json::array();
    for (const auto& st : steps) {
        j["steps"].push_back({{"rule", st.rule},
                              {"intermediate", nlohmann::json::parse(st.intermediate.to_json_string())},
                              {"appended", nlohmann::json::parse(word_json(st.appended))}});
    }
    if (oracle_word)
        j["oracle_word"] = nlohmann::json::parse(word_json(*oracle_word));
    else
        j["oracle_word"] = nullptr;
    return j.dump();
}

}  // namespace crownic
