// The crown order on [n] (n even) and the membership machinery for its
// partial automorphisms.
//
// The crown is the cyclic zig-zag: 1 < 2 > 3 < 4 > ... < n > 1, odd points
// minimal and even points maximal. Its partial automorphisms are the partial
// injections that preserve the order in both directions; they form an inverse
// semigroup, called IC_n throughout this code base.

#pragma once

#include <array>
#include <string>
#include <vector>

#include "crownic/partial_injection.hpp"

namespace crownic {

// Thrown when image-side interval data is requested for a map whose domain or
// image contains both 1 and n; that data is only well defined without the
// wraparound block.
struct HypothesisError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void check_even_n(int n);

// True iff {x,y} is a cover pair of the crown: an odd point together with one
// of its two cyclic neighbours (both even). Includes the pair {n,1}.
bool crown_comparable(int x, int y, int n);

// Every cover pair inside Dom a maps to a cover pair with the same
// orientation (minimal point to minimal point).
bool is_order_preserving(const PartialInjection& a);

// Both a and its inverse are order preserving.
bool is_member_definition(const PartialInjection& a);

struct MembershipReport {
    bool member = false;
    int violated = 0;  // 1..3, or 0 when member
    int witness = 0;   // the point at which the violated condition fails, 0 when member
    std::string to_json_string() const;
};

// Three-condition membership test, equivalent to is_member_definition:
//   (1) consecutive domain points (cyclically) have images at distance 1 or {1,n};
//   (2) the same for the inverse, scanned over image points;
//   (3) a parity-switching point has no cyclic successor in the domain.
// Conditions are checked in that order, each scanning points 1..n, and the
// first failure is reported.
MembershipReport is_member_prop1(const PartialInjection& a);

// Domain points whose image has the opposite parity.
std::vector<int> chi(const PartialInjection& a);

enum class ParityClass { P, Pbar };  // P = parity preserving (chi empty)

// Requires membership; the parity-mixing elements are exactly those with
// nonempty chi.
ParityClass classify(const PartialInjection& a);

// A run of consecutive points lo..hi. For the single wrapped block that the
// cyclic merge can produce, hi exceeds n and the real points are lo..n,1..hi-n.
struct Interval {
    int lo = 0;
    int hi = 0;
    int size() const { return hi - lo + 1; }
    bool operator==(const Interval&) const = default;
};

// Maximal runs of consecutive elements of the sorted set d. With merge_cyclic,
// a run ending at n and a run starting at 1 fuse into one wrapped block.
std::vector<Interval> maximal_runs(const std::vector<int>& d, int n, bool merge_cyclic);

struct IntervalDecomposition {
    std::vector<Interval> intervals;  // I_1 < I_2 < ... (wrapped block, if any, listed by its lo)
    bool has_image_data = false;
    // Only when has_image_data: images[r] is the interval the r-th block maps
    // onto; sigma[p] gives the block index with the p-th smallest image.
    std::vector<Interval> images;
    std::vector<int> sigma;
};

// Decomposition of Dom a into maximal intervals, cyclic merge applied.
// with_image_data additionally computes the image intervals and their sorting
// permutation; that part requires {1,n} not both in Dom a and not both in
// Im a, and throws HypothesisError otherwise.
IntervalDecomposition maximal_intervals(const PartialInjection& a, bool with_image_data = false);

// Multiset of (size, parity of low endpoint, parity of high endpoint) over the
// merged maximal intervals of Dom a, sorted. Wrapped blocks report the parity
// of their true endpoints.
std::vector<std::array<int, 3>> interval_profile(const PartialInjection& a);

// Orientation of the image sequence read along increasing domain points: at
// most one cyclic descent. Maps of rank <= 2 count as both preserving and
// reversing.
bool is_orientation_preserving(const PartialInjection& a);
bool is_orientation_reversing(const PartialInjection& a);

// Either products drop rank, or they keep the interval structure of Dom a:
// rank(b1*a*b2) < rank(a), or the multiset of maximal-interval sizes is
// unchanged and, when a, b1, b2 all preserve parity, so is the multiset of
// endpoint-parity pairs (compared unordered within each interval, since
// reflections traverse a block in the opposite direction). Verified
// exhaustively for n = 4 and 6 and on large random samples for n = 8, 10.
bool check_remark1(const PartialInjection& a, const PartialInjection& b1,
                   const PartialInjection& b2);

}  // namespace crownic
