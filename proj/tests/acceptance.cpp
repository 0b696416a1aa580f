// Acceptance gate: nine independent checks over the whole library, one
// [PASS]/[FAIL] line each, nonzero exit when anything fails. The run also
// writes paper-deviations.json (machine-readable record of every place the
// implementation's certified behavior departs from the nominal catalog
// claims, with verified replacement words).
//
// The checks recompute everything from scratch through the public API; none
// of them trusts a number another check produced.

#include "identity_suite.hpp"

#include <crownic/closure.hpp>
#include <crownic/crown.hpp>
#include <crownic/factorize.hpp>
#include <crownic/generators.hpp>

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace crownic;
using nlohmann::json;

namespace {

int failures = 0;

void line(int k, bool ok, const std::string& text) {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << k << ". " << text << "\n" << std::flush;
    if (!ok) ++failures;
}

std::set<int> to_set(const std::vector<int>& v) { return {v.begin(), v.end()}; }

PartialInjection random_pinj(int n, std::mt19937& rng) {
    std::vector<int> img(n);
    for (int x = 0; x < n; ++x) img[x] = x + 1;
    std::shuffle(img.begin(), img.end(), rng);
    PartialInjection a(n);
    int k = 0;
    for (int x = 1; x <= n; ++x)
        if (rng() & 1) a = a.with(x, img[k++]);
    return a;
}

// ---- trace audit (same invariants the unit suite enforces) ----

PartialInjection eval_prefix(const FactorizationTrace& tr, size_t upto, int n) {
    Word w;
    for (size_t k = 0; k <= upto && k < tr.steps.size(); ++k)
        for (const auto& s : tr.steps[k].appended) append_letter(w, s, n);
    return eval_word(w, n);
}

bool is_parity_phase_rule(const std::string& rule) {
    return rule == "delta-odd" || rule == "delta-even" || rule == "eta";
}

bool audit_trace(const PartialInjection& a) {
    int n = a.n();
    auto tr = factorize(a);
    if (tr.input != a) return false;
    try {
        for (const auto& s : tr.word) s.validate(n);
    } catch (const std::exception&) {
        return false;
    }
    if (eval_word(tr.word, n) != a) return false;
    Word joined;
    for (const auto& st : tr.steps)
        for (const auto& s : st.appended) append_letter(joined, s, n);
    if (eval_word(joined, n) != a) return false;
    if (n == 2) return true;

    if (chi(a).empty()) {
        for (size_t k = 0; k < tr.steps.size(); ++k) {
            const auto& st = tr.steps[k];
            if (st.intermediate.domain() != a.domain()) return false;
            if (st.intermediate.rank() != a.rank()) return false;
            if (eval_prefix(tr, k, n) != st.intermediate) return false;
        }
        return true;
    }
    PartialInjection prev = a;
    size_t parity_end = 0;
    for (size_t k = 0; k < tr.steps.size(); ++k) {
        const auto& st = tr.steps[k];
        if (!is_parity_phase_rule(st.rule)) break;
        parity_end = k + 1;
        if (compose(eval_prefix(tr, k, n), st.intermediate) != a) return false;
        if (st.rule != "eta") {
            if (chi(st.intermediate).size() != chi(prev).size() - 1) return false;
            if (st.intermediate.rank() != prev.rank()) return false;
        }
        prev = st.intermediate;
    }
    if (parity_end == 0) return false;
    if (!chi(prev).empty()) return false;
    for (size_t k = parity_end; k < tr.steps.size(); ++k)
        if (is_parity_phase_rule(tr.steps[k].rule)) return false;
    Word suffix;
    for (size_t k = parity_end; k < tr.steps.size(); ++k)
        for (const auto& s : tr.steps[k].appended) append_letter(suffix, s, n);
    return eval_word(suffix, n) == prev;
}

// ---- member structural invariants ----

bool neighbor_exclusion_ok(const PartialInjection& a) {
    int n = a.n();
    auto dom = to_set(a.domain());
    auto im = to_set(a.image());
    for (int x : chi(a)) {
        if (dom.count(wrap(x - 1, n)) || dom.count(wrap(x + 1, n))) return false;
        int y = a.at(x);
        if (im.count(wrap(y - 1, n)) || im.count(wrap(y + 1, n))) return false;
    }
    return true;
}

// applies only when the switch points form a nonempty proper subset of the
// domain; a map whose whole domain switches parity can be a pure odd shift
bool same_parity_gap_ok(const PartialInjection& a) {
    int n = a.n();
    auto ch = chi(a);
    if (ch.empty() || static_cast<int>(ch.size()) == a.rank()) return true;
    auto dom = to_set(a.domain());
    for (int i : ch)
        for (int j = 1; j <= n; ++j)
            if (!dom.count(j) && (i - j) % 2 == 0) return true;
    return false;
}

bool gap_transfer_ok(const PartialInjection& a) {
    int n = a.n();
    if (!chi(a).empty()) return true;
    auto dom = to_set(a.domain());
    auto im = to_set(a.image());
    if (dom.count(1) && dom.count(n)) return true;
    if (im.count(1) && im.count(n)) return true;
    for (int x = 1; x <= n; ++x)
        if (!dom.count(x) && !dom.count(wrap(x + 1, n))) return true;
    for (int y = 1; y <= n; ++y)
        if (!im.count(y) && !im.count(wrap(y + 1, n))) return false;
    return true;
}

// every ordered member triple, outer index fanned over hardware threads
long long bad_triples(const std::vector<PartialInjection>& pool) {
    std::atomic<long long> bad{0};
    std::atomic<size_t> next{0};
    unsigned t = std::thread::hardware_concurrency();
    if (t == 0) t = 4;
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < t; ++w)
        workers.emplace_back([&] {
            for (size_t i; (i = next.fetch_add(1)) < pool.size();) {
                long long local = 0;
                for (const auto& b1 : pool)
                    for (const auto& b2 : pool)
                        if (!check_remark1(pool[i], b1, b2)) ++local;
                if (local) bad += local;
            }
        });
    for (auto& w : workers) w.join();
    return bad.load();
}

}  // namespace

int main() {
    // 1. the catalog generates exactly the member set
    {
        bool ok = true;
        std::ostringstream sizes;
        for (int n : {4, 6, 8}) {
            auto rep = verify_generating(n);
            ok = ok && rep.equal;
            sizes << (n > 4 ? ", " : "") << rep.closure_size;
        }
        line(1, ok,
             "catalog closure equals brute-force enumeration for n = 4, 6, 8 (" + sizes.str() +
                 " elements)");
    }

    // 2. catalog size formula
    {
        bool ok = true;
        for (int n = 4; n <= 20; n += 2)
            ok = ok && static_cast<int>(generator_catalog(n).all().size()) == 4 * (n / 4 + 1);
        ok = ok && generator_catalog(4).all().size() == 8;
        ok = ok && generator_catalog(8).all().size() == 12;
        line(2, ok,
             "catalog has 4*(floor(n/4)+1) generators for even n in 4..20 "
             "(8 at n = 4, 12 at n = 8)");
    }

    // 3. the n = 2 base case with its minimality certificate
    {
        auto icn2 = brute_force_icn(2);
        auto rep = verify_generating(2);
        auto rk = rank_search_small(2);
        bool ok = icn2.size() == 6 && rep.equal && rk.rank == 3 && rk.closures_tried == 21 &&
                  close(rk.generating_triple).elements.size() == 6;
        line(3, ok,
             "n = 2 base case: 6 elements, generated by the 3-element base set, and no "
             "2-element subset generates (21 closures searched)");
    }

    // 4. dropping any one generator loses elements, with the n = 4 exception
    std::vector<std::pair<GeneratorSymbol, Word>> catalog_deviations;
    {
        bool ok = true;
        for (int n : {6, 8})
            for (const auto& e : irredundancy(n)) ok = ok && e.proper && e.witness.has_value();

        auto full = verify_generating(4).oracle_size;
        int redundant = 0;
        for (const auto& e : irredundancy(4)) {
            bool is_reducer = (e.dropped.letter == Letter::DO || e.dropped.letter == Letter::DE) &&
                              e.dropped.index == 1;
            if (!is_reducer) {
                ok = ok && e.proper && e.witness.has_value();
                continue;
            }
            // the two reducers are products of the remaining six generators at
            // n = 4; certify that with an explicit word over the reduced set
            ++redundant;
            ok = ok && !e.proper && e.closure_size == full;
            Catalog reduced = generator_catalog(4);
            std::erase_if(reduced.b, [&](const auto& g) { return g.first == e.dropped; });
            auto target = eval_symbol(e.dropped, 4);
            Word repl = factorize_bfs(target, reduced);
            bool word_ok = eval_word(repl, 4) == target;
            for (const auto& s : repl)
                word_ok = word_ok && !(s.letter == e.dropped.letter && s.index == e.dropped.index);
            ok = ok && word_ok;
            if (word_ok) catalog_deviations.emplace_back(e.dropped, repl);
        }
        ok = ok && redundant == 2;
        line(4, ok,
             "every generator drop is proper at n = 6, 8 with witnesses; at n = 4 exactly "
             "DO(1), DE(1) are redundant, certified by replacement words recorded in "
             "paper-deviations.json");
    }

    // 5. the two membership tests agree
    {
        bool ok = true;
        long long checked = 0;
        std::ostringstream counts;
        for (int n : {2, 4, 6}) {
            auto maps = all_partial_injections(n);
            ok = ok && static_cast<long long>(maps.size()) == count_partial_injections(n);
            for (const auto& a : maps) {
                ok = ok && is_member_prop1(a).member == is_member_definition(a);
                ++checked;
            }
            counts << (n > 2 ? " + " : "") << maps.size();
        }
        std::mt19937 rng(97);
        for (int t = 0; t < 100000; ++t) {
            auto a = random_pinj(8, rng);
            ok = ok && is_member_prop1(a).member == is_member_definition(a);
        }
        line(5, ok,
             "fast membership agrees with the definitional test on " + counts.str() +
                 " exhaustive maps (n = 2, 4, 6) and 100000 random maps (n = 8)");
    }

    // 6. factorization round trip plus the stepwise trace invariants
    {
        bool ok = true;
        for (int n : {4, 6})
            for (const auto& a : brute_force_icn(n)) ok = ok && audit_trace(a);
        auto icn8 = brute_force_icn(8);
        std::mt19937 rng(20260815);
        std::uniform_int_distribution<size_t> pick(0, icn8.size() - 1);
        for (int t = 0; t < 10000; ++t) ok = ok && audit_trace(icn8[pick(rng)]);
        line(6, ok,
             "factorization round-trips with catalog letters on all of IC_4, IC_6 and 10000 "
             "random IC_8 elements, with every trace audited stepwise");
    }

    // 7. the word identity suite, with the deviations file
    {
        std::vector<std::string> identity_deviations;
        for (int n = 4; n <= 16; n += 2)
            for (const auto& f : crownic_tests::run_identity_suite(n))
                identity_deviations.push_back(f);

        json dev;
        dev["identities"] = identity_deviations;
        dev["catalog"] = json::array();
        for (const auto& [sym, repl] : catalog_deviations) {
            json d;
            d["n"] = 4;
            d["generator"] = sym.text();
            d["observed"] =
                "dropping it from the generating set still closes to all 61 elements";
            d["replacement_word"] = json::parse(word_json(repl));
            d["replacement_verified"] = true;
            dev["catalog"].push_back(d);
        }
        std::ofstream f("paper-deviations.json");
        f << dev.dump(2) << "\n";
        bool ok = identity_deviations.empty() && f.good();
        line(7, ok,
             "word identity families hold exactly for even n in 4..16 (" +
                 std::to_string(identity_deviations.size()) +
                 " deviations); paper-deviations.json written");
    }

    // 8. structural invariants of members and member triples
    {
        bool ok = true;
        for (int n : {2, 4, 6}) {
            std::vector<PartialInjection> members;
            for (const auto& a : all_partial_injections(n))
                if (is_member_definition(a)) {
                    ok = ok && neighbor_exclusion_ok(a) && same_parity_gap_ok(a) &&
                         gap_transfer_ok(a);
                    members.push_back(a);
                }
            ok = ok && bad_triples(members) == 0;
        }
        auto icn8 = brute_force_icn(8);
        auto icn10 = close(generator_catalog(10).elements()).elements;
        ok = ok && icn10.size() == 101041;  // sample pool must be the full member set
        std::mt19937 rng(4242);
        for (const auto* pool : {&icn8, &icn10}) {
            std::uniform_int_distribution<size_t> pick(0, pool->size() - 1);
            for (int t = 0; t < 10000; ++t) {
                const auto& a = (*pool)[pick(rng)];
                ok = ok && neighbor_exclusion_ok(a) && same_parity_gap_ok(a) &&
                     gap_transfer_ok(a);
            }
            for (int t = 0; t < 10000; ++t)
                ok = ok && check_remark1((*pool)[pick(rng)], (*pool)[pick(rng)],
                                         (*pool)[pick(rng)]);
        }
        line(8, ok,
             "structural invariants hold on every member and member triple for n <= 6 "
             "(exhaustive) and on 10000 random cases each at n = 8, 10");
    }

    // 9. closure is thread-count independent
    {
        bool ok = true;
        for (int n : {6, 8}) {
            auto gens = generator_catalog(n).elements();
            auto r1 = close(gens, {.threads = 1});
            auto r2 = close(gens, {.threads = 2});
            auto rh = close(gens, {.threads = 0});
            ok = ok && r1.elements == r2.elements && r1.elements == rh.elements &&
                 r1.parents == r2.parents && r1.parents == rh.parents;
        }
        line(9, ok,
             "closure elements and parent trees are identical across 1, 2, and hardware "
             "threads for n = 6, 8");
    }

    return failures;
}
