// Constructive factorization of crown partial automorphisms into catalog
// words, plus an independent breadth-first oracle.
//
// The constructive path mirrors the structure of the semigroup: full-rank
// elements are rotation/reflection words, rank n-1 elements match one of four
// named families, parity-preserving elements go through an interval alignment
// loop, and parity-mixing elements are first repaired with delta/eta factors.
// Every step of the alignment machinery multiplies by a member of one of the
// gamma/alpha families below; the reduce_* functions expand those families
// into catalog letters, so the emitted word always stays inside G(n).

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "crownic/generators.hpp"

namespace crownic {

// Internal non-progress or an unhandled case in the constructive procedure.
// Distinct from std::invalid_argument (violated preconditions): seeing this
// escape means a genuine bug, never bad input.
struct FactorizeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---- catalog words for the named families ----
// Each returns a word over G(n) evaluating to the corresponding constructor
// from generators.hpp. Indices are validated like the constructors validate
// theirs.

Word reduce_sigma1_power(int p, int n);  // S1^(p mod n/2); empty word when that is 0
Word reduce_epsilon(int i, int n);
Word reduce_gamma_fix(int i, int n);
Word reduce_alpha_shift(int i, int k, int n);
Word reduce_gamma_reflect(int i, int k, int n);
Word reduce_gamma_ij(int i, int j, int n);
Word reduce_gamma_ij_minus(int i, int j, int n);
Word reduce_gamma_ij_plus(int i, int j, int n);
Word reduce_alpha_minus(int i, int j, int n);
Word reduce_alpha_plus(int i, int j, int n);
Word reduce_delta_o(int k, int n);
Word reduce_delta_e(int k, int n);

struct FactorStep {
    std::string rule;              // which case of the procedure fired
    PartialInjection intermediate; // state after the step
    Word appended;                 // subword this step contributed
};

struct FactorizationTrace {
    PartialInjection input;
    Word word;  // concatenation of all appended subwords; evaluates to input
    std::vector<FactorStep> steps;
    std::optional<Word> oracle_word;  // filled by callers that cross-check

    std::string to_json_string() const;
};

// Full-rank elements: a power of the rotation, optionally followed by the
// reflection. Throws std::invalid_argument unless rank a = n.
Word factorize_rank_n(const PartialInjection& a);

// Rank n-1 parity-preserving elements: one of epsilon_i, the reflection
// fixing i, a shift moving the gap, or a reflection moving the gap.
Word factorize_rank_n1(const PartialInjection& a);

// Parity-preserving elements. The trace's steps satisfy: evaluating the word
// prefix up to step k reproduces the step's intermediate, and all
// intermediates share the input's domain and rank.
FactorizationTrace factorize_p(const PartialInjection& a);

// Parity-mixing elements. Delta steps shrink the mismatch set chi by exactly
// one point each; the eta step clears it at once. For those steps,
// eval(prefix) * intermediate = input; the remaining steps are the
// parity-preserving phase of the residual.
FactorizationTrace factorize_pbar(const PartialInjection& a);

// Membership-checked dispatch over all of the above (n = 2 uses the explicit
// three-letter base case). eval(trace.word) = a with every letter in G(n).
FactorizationTrace factorize(const PartialInjection& a);

// Shortest word over the catalog, found by breadth-first closure with parent
// pointers. Independent of the constructive machinery; used to cross-check
// it. Throws std::invalid_argument when a is not generated by gens.
Word factorize_bfs(const PartialInjection& a, const Catalog& gens);

}  // namespace crownic
