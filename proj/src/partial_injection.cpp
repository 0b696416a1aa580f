#include "crownic/partial_injection.hpp"

#include <algorithm>

#include "json.hpp"

namespace crownic {

int wrap(int x, int n) {
    int r = x % n;
    return r <= 0 ? r + n : r;
}

int wrap_add(int i, int j, int n) { return wrap(i + j, n); }
int wrap_sub(int i, int j, int n) { return wrap(i - j, n); }

namespace {

void check_n(int n) {
    if (n < 1 || n > 254) throw std::invalid_argument("ground set size must be in 1..254");
}

}  // namespace

PartialInjection::PartialInjection(int n) {
    check_n(n);
    slots_.assign(static_cast<size_t>(n), 0);
}

PartialInjection PartialInjection::identity(int n) {
    PartialInjection a(n);
    for (int x = 1; x <= n; ++x) a.slots_[x - 1] = static_cast<std::uint8_t>(x);
    return a;
}

PartialInjection PartialInjection::identity_on(const std::vector<int>& xs, int n) {
    PartialInjection a(n);
    for (int x : xs) {
        if (x < 1 || x > n) throw std::invalid_argument("identity_on: point outside ground set");
        a.slots_[x - 1] = static_cast<std::uint8_t>(x);
    }
    return a;
}

PartialInjection PartialInjection::from_slots(std::vector<std::uint8_t> slots) {
    check_n(static_cast<int>(slots.size()));
    int n = static_cast<int>(slots.size());
    std::vector<bool> used(static_cast<size_t>(n) + 1, false);
    for (auto v : slots) {
        if (v == 0) continue;
        if (v > n) throw std::invalid_argument("from_slots: image value outside ground set");
        if (used[v]) throw std::invalid_argument("from_slots: image value repeated (not injective)");
        used[v] = true;
    }
    PartialInjection a(n);
    a.slots_ = std::move(slots);
    return a;
}

PartialInjection PartialInjection::from_pairs(int n, const std::vector<std::pair<int, int>>& pairs) {
    PartialInjection a(n);
    for (auto [x, y] : pairs) a = a.with(x, y);
    return a;
}

int PartialInjection::rank() const {
    return static_cast<int>(std::count_if(slots_.begin(), slots_.end(),
                                          [](std::uint8_t v) { return v != 0; }));
}

std::vector<int> PartialInjection::domain() const {
    std::vector<int> d;
    for (int x = 1; x <= n(); ++x)
        if (slots_[x - 1]) d.push_back(x);
    return d;
}

std::vector<int> PartialInjection::image() const {
    std::vector<int> im;
    for (auto v : slots_)
        if (v) im.push_back(v);
    std::sort(im.begin(), im.end());
    return im;
}

PartialInjection PartialInjection::with(int x, int y) const {
    check_point(x);
    if (y < 0 || y > n()) throw std::invalid_argument("with: image value outside ground set");
    PartialInjection a = *this;
    if (y != 0) {
        for (int z = 1; z <= n(); ++z)
            if (z != x && a.slots_[z - 1] == y)
                throw std::invalid_argument("with: image value already taken");
    }
    a.slots_[x - 1] = static_cast<std::uint8_t>(y);
    return a;
}

std::string PartialInjection::encode() const {
    std::string s;
    s.reserve(slots_.size() + 1);
    s.push_back(static_cast<char>(n()));
    s.append(reinterpret_cast<const char*>(slots_.data()), slots_.size());
    return s;
}

PartialInjection PartialInjection::decode(const std::string& bytes) {
    if (bytes.empty()) throw std::invalid_argument("decode: empty encoding");
    int n = static_cast<unsigned char>(bytes[0]);
    if (static_cast<int>(bytes.size()) != n + 1)
        throw std::invalid_argument("decode: length does not match declared n");
    std::vector<std::uint8_t> slots(bytes.begin() + 1, bytes.end());
    return from_slots(std::move(slots));
}

std::string PartialInjection::to_json_string() const {
    nlohmann::json j;
    j["n"] = n();
    nlohmann::json arr = nlohmann::json::array();
    for (auto v : slots_) {
        if (v) arr.push_back(static_cast<int>(v));
        else arr.push_back(nullptr);
    }
    j["map"] = arr;
    return j.dump();
}

PartialInjection PartialInjection::from_json_string(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    int n = j.at("n").get<int>();
    check_n(n);
    const auto& arr = j.at("map");
    if (!arr.is_array() || static_cast<int>(arr.size()) != n)
        throw std::invalid_argument("map must be an array of length n");
    std::vector<std::uint8_t> slots(static_cast<size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        if (arr[i].is_null()) continue;
        int v = arr[i].get<int>();
        if (v < 1 || v > n) throw std::invalid_argument("map value outside 1..n");
        slots[i] = static_cast<std::uint8_t>(v);
    }
    return from_slots(std::move(slots));
}

std::strong_ordering PartialInjection::operator<=>(const PartialInjection& o) const {
    if (auto c = n() <=> o.n(); c != 0) return c;
    return std::lexicographical_compare_three_way(slots_.begin(), slots_.end(),
                                                  o.slots_.begin(), o.slots_.end());
}

PartialInjection compose(const PartialInjection& a, const PartialInjection& b) {
    if (a.n() != b.n()) throw std::invalid_argument("compose: mismatched ground sets");
    PartialInjection c(a.n());
    std::vector<std::uint8_t> slots(static_cast<size_t>(a.n()), 0);
    for (int x = 1; x <= a.n(); ++x) {
        int y = a.at(x);
        if (y) slots[x - 1] = static_cast<std::uint8_t>(b.at(y));
    }
    return PartialInjection::from_slots(std::move(slots));
}

PartialInjection inverse(const PartialInjection& a) {
    std::vector<std::uint8_t> slots(static_cast<size_t>(a.n()), 0);
    for (int x = 1; x <= a.n(); ++x) {
        int y = a.at(x);
        if (y) slots[y - 1] = static_cast<std::uint8_t>(x);
    }
    return PartialInjection::from_slots(std::move(slots));
}

size_t PartialInjectionHash::operator()(const PartialInjection& a) const {
    // FNV-1a over the slot bytes plus n; cheap and stable across runs.
    size_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint8_t byte) {
        h ^= byte;
        h *= 1099511628211ull;
    };
    mix(static_cast<std::uint8_t>(a.n()));
    for (auto v : a.slots()) mix(v);
    return h;
}

long long count_partial_injections(int n) {
    // sum_k C(n,k)^2 k!
    long long total = 0;
    for (int k = 0; k <= n; ++k) {
        long long c = 1;
        for (int i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
        long long term = c * c;
        for (int i = 2; i <= k; ++i) term *= i;
        total += term;
    }
    return total;
}

namespace {

void enumerate_rec(std::vector<std::uint8_t>& slots, std::vector<bool>& used, int x, int n,
                   const std::function<void(const PartialInjection&)>& visit) {
    if (x > n) {
        visit(PartialInjection::from_slots(slots));
        return;
    }
    slots[x - 1] = 0;
    enumerate_rec(slots, used, x + 1, n, visit);
    for (int y = 1; y <= n; ++y) {
        if (used[y]) continue;
        used[y] = true;
        slots[x - 1] = static_cast<std::uint8_t>(y);
        enumerate_rec(slots, used, x + 1, n, visit);
        slots[x - 1] = 0;
        used[y] = false;
    }
}

}  // namespace

void for_each_partial_injection(int n, const std::function<void(const PartialInjection&)>& visit,
                                bool cap_override) {
    check_n(n);
    if (n > kEnumerationCap && !cap_override)
        throw std::length_error("enumeration refused: n exceeds the cap of " +
                                std::to_string(kEnumerationCap) +
                                " (pass the override to force; expect " +
                                std::to_string(count_partial_injections(n)) + " values)");
    std::vector<std::uint8_t> slots(static_cast<size_t>(n), 0);
    std::vector<bool> used(static_cast<size_t>(n) + 1, false);
    enumerate_rec(slots, used, 1, n, visit);
}

std::vector<PartialInjection> all_partial_injections(int n, bool cap_override) {
    std::vector<PartialInjection> out;
    out.reserve(static_cast<size_t>(count_partial_injections(n)));
    for_each_partial_injection(n, [&out](const PartialInjection& a) { out.push_back(a); },
                               cap_override);
    return out;
}

}  // namespace crownic
