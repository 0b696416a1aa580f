#include "crownic/closure.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "crownic/crown.hpp"
#include "json.hpp"

namespace crownic {

namespace {

int thread_count(const ClosureOptions& opts) {
    if (opts.threads > 0) return opts.threads;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

}  // namespace

std::vector<PartialInjection> ClosureResult::sorted_elements() const {
    std::vector<PartialInjection> out = elements;
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> ClosureResult::parent_word(std::size_t i) const {
    std::vector<int> letters;
    for (int cur = static_cast<int>(i); cur >= 0; cur = parents[static_cast<size_t>(cur)].first)
        letters.push_back(parents[static_cast<size_t>(cur)].second);
    std::reverse(letters.begin(), letters.end());
    return letters;
}

ClosureResult close(const std::vector<PartialInjection>& gens, const ClosureOptions& opts) {
    ClosureResult res;
    if (gens.empty()) return res;
    const int n = gens.front().n();
    for (const auto& g : gens)
        if (g.n() != n) throw std::invalid_argument("close: generators of mixed sizes");
    if (n > kClosureCap && !opts.cap_override)
        throw std::length_error("close: n = " + std::to_string(n) + " exceeds the closure cap " +
                                std::to_string(kClosureCap) +
                                "; closures can hold millions of elements, override to proceed");

    const auto t0 = std::chrono::steady_clock::now();
    const int workers = thread_count(opts);
    const auto G = gens.size();

    std::unordered_map<std::string, int> seen;
    std::vector<int> frontier;
    for (size_t g = 0; g < G; ++g) {
        auto [it, fresh] = seen.emplace(gens[g].encode(), static_cast<int>(res.elements.size()));
        if (!fresh) continue;
        res.elements.push_back(gens[g]);
        res.parents.push_back({-1, static_cast<int>(g)});
        frontier.push_back(it->second);
    }
    res.stats.frontier_sizes.push_back(frontier.size());

    while (!frontier.empty()) {
        const size_t tasks = frontier.size() * G;
        std::vector<PartialInjection> products(tasks, PartialInjection(n));
        auto fill = [&](size_t lo, size_t hi) {
            for (size_t k = lo; k < hi; ++k)
                products[k] = compose(res.elements[static_cast<size_t>(frontier[k / G])], gens[k % G]);
        };
        const size_t per = 4096;
        if (workers > 1 && tasks > per) {
            const size_t nw = std::min<size_t>(static_cast<size_t>(workers), (tasks + per - 1) / per);
            std::vector<std::thread> pool;
            pool.reserve(nw);
            const size_t chunk = (tasks + nw - 1) / nw;
            for (size_t w = 0; w < nw; ++w)
                pool.emplace_back(fill, w * chunk, std::min(tasks, (w + 1) * chunk));
            for (auto& th : pool) th.join();
        } else {
            fill(0, tasks);
        }
        res.stats.products += tasks;

        // Sequential merge in task order: the discovered sequence is a pure
        // function of the generator list, independent of the fill schedule.
        std::vector<int> next;
        for (size_t k = 0; k < tasks; ++k) {
            auto [it, fresh] = seen.emplace(products[k].encode(), static_cast<int>(res.elements.size()));
            if (!fresh) continue;
            res.elements.push_back(products[k]);
            res.parents.push_back({frontier[k / G], static_cast<int>(k % G)});
            next.push_back(it->second);
        }
        frontier = std::move(next);
        if (!frontier.empty()) res.stats.frontier_sizes.push_back(frontier.size());
    }

    for (const auto& e : res.elements) ++res.census[e.rank()];
    res.stats.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

std::vector<PartialInjection> brute_force_icn(int n, bool cap_override) {
    check_even_n(n);
    if (n > kBruteForceCap && !cap_override)
        throw std::length_error("brute_force_icn: n = " + std::to_string(n) +
                                " exceeds the oracle cap " + std::to_string(kBruteForceCap));
    std::vector<PartialInjection> out;
    for_each_partial_injection(
        n,
        [&](const PartialInjection& a) {
            if (is_member_prop1(a).member) out.push_back(a);
        },
        /*cap_override=*/true);
    return out;  // enumeration order is slot-lexicographic = encoding order
}

GenerationReport verify_generating(int n, const ClosureOptions& opts) {
    GenerationReport rep;
    const std::vector<PartialInjection> oracle = brute_force_icn(n, opts.cap_override);
    const ClosureResult cl = close(generator_catalog(n).elements(), opts);
    const std::vector<PartialInjection> closed = cl.sorted_elements();
    rep.oracle_size = oracle.size();
    rep.closure_size = closed.size();
    constexpr size_t kKeep = 8;
    std::vector<PartialInjection> diff;
    std::set_difference(oracle.begin(), oracle.end(), closed.begin(), closed.end(),
                        std::back_inserter(diff));
    for (size_t i = 0; i < diff.size() && i < kKeep; ++i) rep.missing.push_back(diff[i]);
    const size_t missing_total = diff.size();
    diff.clear();
    std::set_difference(closed.begin(), closed.end(), oracle.begin(), oracle.end(),
                        std::back_inserter(diff));
    for (size_t i = 0; i < diff.size() && i < kKeep; ++i) rep.extra.push_back(diff[i]);
    rep.equal = missing_total == 0 && diff.empty();
    return rep;
}

std::vector<IrredundancyEntry> irredundancy(int n, const ClosureOptions& opts) {
    const std::vector<PartialInjection> icn = brute_force_icn(n, opts.cap_override);
    const Catalog cat = generator_catalog(n);
    const auto items = cat.all();
    std::vector<IrredundancyEntry> out;
    out.reserve(items.size());
    for (size_t skip = 0; skip < items.size(); ++skip) {
        std::vector<PartialInjection> gens;
        gens.reserve(items.size() - 1);
        for (size_t g = 0; g < items.size(); ++g)
            if (g != skip) gens.push_back(items[g].second);
        const ClosureResult cl = close(gens, opts);
        std::unordered_set<std::string> enc;
        enc.reserve(cl.elements.size() * 2);
        for (const auto& e : cl.elements) enc.insert(e.encode());
        IrredundancyEntry entry{items[skip].first, cl.elements.size(), false, std::nullopt};
        for (const auto& m : icn) {
            if (!enc.count(m.encode())) {
                entry.proper = true;
                entry.witness = m;
                break;
            }
        }
        out.push_back(std::move(entry));
    }
    return out;
}

RankSearchResult rank_search_small(int n) {
    if (n != 2)
        throw std::invalid_argument("rank_search_small: exhaustive subset search is n = 2 only");
    const std::vector<PartialInjection> icn = brute_force_icn(2);
    const size_t m = icn.size();
    RankSearchResult res;
    auto generates = [&](const std::vector<PartialInjection>& gens) {
        return close(gens).elements.size() == m;
    };
    for (size_t i = 0; i < m; ++i) {
        ++res.closures_tried;
        if (generates({icn[i]}))
            throw std::logic_error("rank_search_small: a single element generated everything");
    }
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = i + 1; j < m; ++j) {
            ++res.closures_tried;
            if (generates({icn[i], icn[j]}))
                throw std::logic_error("rank_search_small: a pair generated everything");
        }
    }
    for (size_t i = 0; i < m && res.generating_triple.empty(); ++i)
        for (size_t j = i + 1; j < m && res.generating_triple.empty(); ++j)
            for (size_t k = j + 1; k < m; ++k)
                if (generates({icn[i], icn[j], icn[k]})) {
                    res.generating_triple = {icn[i], icn[j], icn[k]};
                    break;
                }
    if (res.generating_triple.empty())
        throw std::logic_error("rank_search_small: no triple generates");
    res.rank = 3;
    return res;
}

LowerBoundReport prg3_conditions(const std::vector<PartialInjection>& gens, int n) {
    check_even_n(n);
    const int q = n / 4;
    LowerBoundReport rep;
    std::map<int, std::vector<const PartialInjection*>> by_rank;
    for (const auto& g : gens) by_rank[g.rank()].push_back(&g);
    for (const auto& [r, v] : by_rank) rep.rank_counts[r] = v.size();

    // (a) at least two permutations, both orientations represented
    bool has_p = false, has_r = false;
    for (const auto* g : by_rank[n]) {
        if (is_orientation_preserving(*g)) has_p = true;
        if (is_orientation_reversing(*g) && !is_orientation_preserving(*g)) has_r = true;
    }
    rep.a = by_rank[n].size() >= 2 && has_p && has_r;

    // (b) at least two rank n-1 elements, their missing points of both parities
    std::set<int> miss_parity;
    for (const auto* g : by_rank[n - 1]) {
        for (int x = 1; x <= n; ++x) {
            if (g->at(x) == 0) {
                miss_parity.insert(x % 2);
                break;
            }
        }
    }
    rep.b = by_rank[n - 1].size() >= 2 && miss_parity.size() == 2;

    // (c) rank n-2 elements cover every odd interval size in {3..n/2-1} with
    // both endpoint parities; each element contributes at most one such pair
    std::set<std::pair<int, int>> have_c;
    for (const auto* g : by_rank[n - 2]) {
        for (const auto& [s, pl, ph] : interval_profile(*g))
            if (pl == ph) have_c.insert({s, pl});
    }
    bool cover_c = true;
    for (int s = 3; s < n / 2 && cover_c; s += 2)
        for (int p = 0; p <= 1; ++p)
            if (!have_c.count({s, p})) {
                cover_c = false;
                break;
            }
    rep.c = static_cast<int>(by_rank[n - 2].size()) >= 2 * q - 2 && cover_c;

    // (d) rank n-3 census with parity-mixing interval-size coverage
    for (int s = std::max(2, n - 2 * q - 2); s <= n - 4; s += 2) rep.sizes_d.push_back(s);
    bool any_eo = false, any_oe = false;
    std::set<std::pair<int, int>> have_d;  // (size, class) with class 0 = eo, 1 = oe
    for (const auto* g : by_rank[n - 3]) {
        bool eo = false, oe = false;
        for (int x = 1; x <= n; ++x) {
            int y = g->at(x);
            if (!y) continue;
            if (x % 2 == 0 && y % 2 == 1) eo = true;
            if (x % 2 == 1 && y % 2 == 0) oe = true;
        }
        any_eo |= eo;
        any_oe |= oe;
        for (const auto& [s, pl, ph] : interval_profile(*g)) {
            (void)pl;
            (void)ph;
            if (eo) have_d.insert({s, 0});
            if (oe) have_d.insert({s, 1});
        }
    }
    bool cover_d = true;
    for (int s : rep.sizes_d)
        for (int c = 0; c <= 1 && cover_d; ++c)
            if (!have_d.count({s, c})) cover_d = false;
    rep.d = static_cast<int>(by_rank[n - 3].size()) >= 2 * q && any_eo && any_oe && cover_d;

    // (e) both half-rank parity swapper shapes
    std::vector<int> odds, evens;
    for (int x = 1; x <= n; x += 2) odds.push_back(x);
    for (int x = 2; x <= n; x += 2) evens.push_back(x);
    bool has_u = false, has_ud = false;
    for (const auto& g : gens) {
        if (g.domain() == evens && g.image() == odds) has_u = true;
        if (g.domain() == odds && g.image() == evens) has_ud = true;
    }
    rep.e = has_u && has_ud;
    return rep;
}

std::string LowerBoundReport::to_json_string() const {
    nlohmann::json j;
    j["a"] = a;
    j["b"] = b;
    j["c"] = c;
    j["d"] = d;
    j["e"] = e;
    j["all"] = all();
    nlohmann::json counts = nlohmann::json::object();
    for (const auto& [r, c] : rank_counts) counts[std::to_string(r)] = c;
    j["rank_counts"] = counts;
    j["sizes_d"] = sizes_d;
    return j.dump();
}

}  // namespace crownic
