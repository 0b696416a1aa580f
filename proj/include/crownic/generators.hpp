// Named transformation families on the crown, the generating catalog, and
// symbolic words over it.
//
// The catalog G = A u B is the minimal generating set of the crown's partial
// automorphisms:
//   A: the rotation s1 (x -> x+2), the reflection s2 (x -> 2-x), the two point
//      deletions e1, e_n, and the two-point reversal families gamma_{i,n}
//      (i even) and gamma_{i,1} (i odd) within their index windows;
//   B: the parity-mixing reducers delta_i^o / delta_i^e (i <= floor(n/4)) and
//      the half-rank parity swappers eta1, eta2.
// |G| = 4(floor(n/4)+1). For n = 2 the catalog is the 3-element base set
// {id, (1->2), (2->1)}.
//
// Words are sequences of catalog letters with positive exponents, evaluated
// left to right. Families outside the catalog windows (general gamma_{i,j},
// the gamma/alpha three- and four-point variants, high delta indices) are
// library constructors only; producing a catalog word for them is the job of
// the reduction functions in factorize.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "crownic/partial_injection.hpp"

namespace crownic {

// ---- constructors (maps only, no words) ----

PartialInjection sigma1(int n);  // x -> x+2 cyclically, full rank
PartialInjection sigma2(int n);  // x -> 2-x cyclically (fixes 1), full rank

PartialInjection epsilon(int i, int n);                 // identity off i, rank n-1
PartialInjection gamma_fix(int i, int n);               // x -> 2i-x off i, rank n-1
PartialInjection alpha_shift(int i, int k, int n);      // x -> x+(k-i) off i; i,k same parity
PartialInjection gamma_reflect(int i, int k, int n);    // x -> (k+i)-x off i; i,k same parity

// Points of the cyclic open interval (i, j): i+1, i+2, ... up to j-1.
std::vector<int> cyclic_open(int i, int j, int n);

// Reverses the cyclic open interval (i,j) via x -> i+j-x, undefined exactly on
// {i,j}, fixes the rest; i,j of equal parity. Rank n-2.
PartialInjection gamma_ij(int i, int j, int n);

// Different-parity variants, undefined on three points each. Rank n-3.
PartialInjection gamma_ij_minus(int i, int j, int n);  // also drops i-1, reverses via i+j-1-x
PartialInjection gamma_ij_plus(int i, int j, int n);   // also drops j+1, reverses via i+j+1-x

// Shift the cyclic open interval by -2 / +2, undefined on four points. Rank n-4.
PartialInjection alpha_ij_minus(int i, int j, int n);  // drops {i, i+1, i+2, j}
PartialInjection alpha_ij_plus(int i, int j, int n);   // drops {i, j, j+1, j+2}

PartialInjection delta_o(int i, int n);  // 2->1 plus an even shift; Dom misses {1, 3, n-2i+2}
PartialInjection delta_e(int i, int n);  // 1->2 plus an even shift; Dom misses {2, 2i+1, n}
PartialInjection eta1(int n);            // odd x -> x+1
PartialInjection eta2(int n);            // even x -> x-1

// ---- symbolic words ----

enum class Letter {
    S1, S2, E1, EN,   // sigma1, sigma2, epsilon(1), epsilon(n)
    GN, G1,           // gamma_{i,n}, gamma_{i,1} (carry the index i)
    DO, DE,           // delta_i^o, delta_i^e (carry i)
    H1, H2,           // eta1, eta2
    ID2, UP2, DN2,    // n = 2 base set: id, (1->2), (2->1)
};

struct GeneratorSymbol {
    Letter letter;
    int index = 0;  // only GN/G1/DO/DE carry one
    int power = 1;

    // Throws unless the symbol names a catalog element of G(n).
    void validate(int n) const;
    std::string text() const;  // token form, e.g. "GN(4)^2"
    bool operator==(const GeneratorSymbol&) const = default;
};

using Word = std::vector<GeneratorSymbol>;

struct Catalog {
    std::vector<std::pair<GeneratorSymbol, PartialInjection>> a;  // empty at n = 2
    std::vector<std::pair<GeneratorSymbol, PartialInjection>> b;  // the whole base set at n = 2
    std::vector<std::pair<GeneratorSymbol, PartialInjection>> all() const;
    std::vector<PartialInjection> elements() const;
};

// The generating set G(n) with its letters; n = 2 yields the base set.
Catalog generator_catalog(int n);

PartialInjection eval_symbol(const GeneratorSymbol& s, int n);
PartialInjection eval_word(const Word& w, int n);  // empty word -> identity

// Reversed word of letter inverses; needs n to invert S1 powers (s1 has order n/2).
Word word_inverse(const Word& w, int n);

// Appends a letter, merging with the tail when it is the same symbol and
// dropping letters whose power is a multiple of the symbol's order where that
// collapse is sound (only S1 powers and power-0 letters).
void append_letter(Word& w, GeneratorSymbol s, int n);
Word concat(const Word& x, const Word& y, int n);

std::string word_text(const Word& w);           // whitespace-separated tokens
std::string word_json(const Word& w);           // JSON array of token strings
Word parse_word(const std::string& text, int n);
Word parse_word_json(const std::string& json_text, int n);

}  // namespace crownic
