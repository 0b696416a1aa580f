// Partial injective transformations on {1..n} with left-to-right composition.
//
// A value holds n slots; slot x carries the image of x, or 0 when x is not in
// the domain. Composition is written left to right throughout the library:
// x(ab) = (xa)b. This matches the product convention of the transformation
// words everywhere else in the code, and is the opposite of function-call
// order, so read products like pipelines.

#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace crownic {

// Cyclic point arithmetic on {1..n}. wrap maps any integer into 1..n.
int wrap(int x, int n);
int wrap_add(int i, int j, int n);
int wrap_sub(int i, int j, int n);

class PartialInjection {
public:
    // Empty transformation on [n] (every slot undefined).
    explicit PartialInjection(int n);

    static PartialInjection identity(int n);
    static PartialInjection identity_on(const std::vector<int>& xs, int n);
    // Validates injectivity and range; slots[i] is the image of point i+1, 0 = undefined.
    static PartialInjection from_slots(std::vector<std::uint8_t> slots);
    static PartialInjection from_pairs(int n, const std::vector<std::pair<int, int>>& pairs);

    int n() const { return static_cast<int>(slots_.size()); }
    // Image of x, or 0 when undefined. x must lie in [n].
    int at(int x) const { check_point(x); return slots_[static_cast<size_t>(x) - 1]; }
    bool defined(int x) const { return at(x) != 0; }
    int rank() const;
    std::vector<int> domain() const;   // increasing
    std::vector<int> image() const;    // increasing

    // Copy with slot x set to y (y = 0 clears). Validates injectivity.
    PartialInjection with(int x, int y) const;

    // Canonical byte encoding: one byte n, then the n slot bytes (0 = undefined).
    // Total order and hashing go through this representation.
    std::string encode() const;
    static PartialInjection decode(const std::string& bytes);

    // {"n": n, "map": [int|null, ...]} with 1-based values.
    std::string to_json_string() const;
    static PartialInjection from_json_string(const std::string& text);

    bool operator==(const PartialInjection&) const = default;
    std::strong_ordering operator<=>(const PartialInjection& o) const;

    const std::vector<std::uint8_t>& slots() const { return slots_; }

private:
    void check_point(int x) const {
        if (x < 1 || x > n()) throw std::invalid_argument("point out of range");
    }
    std::vector<std::uint8_t> slots_;
};

// x(ab) = (xa)b; domain is every x with xa defined and (xa)b defined.
PartialInjection compose(const PartialInjection& a, const PartialInjection& b);
PartialInjection inverse(const PartialInjection& a);

struct PartialInjectionHash {
    size_t operator()(const PartialInjection& a) const;
};

// Number of partial injections on [n]: sum over k of C(n,k)^2 k!.
long long count_partial_injections(int n);

inline constexpr int kEnumerationCap = 8;

// Visits every partial injection on [n] exactly once, in increasing slot-vector
// order. Refuses n above the cap unless cap_override is set (the count grows
// like n!^2-ish; n = 9 is already ~2e8 values).
void for_each_partial_injection(int n, const std::function<void(const PartialInjection&)>& visit,
                                bool cap_override = false);
std::vector<PartialInjection> all_partial_injections(int n, bool cap_override = false);

}  // namespace crownic
