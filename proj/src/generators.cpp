#include "crownic/generators.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "crownic/crown.hpp"
#include "json.hpp"

namespace crownic {

namespace {

PartialInjection build(int n, const std::function<int(int)>& f) {
    std::vector<std::uint8_t> slots(static_cast<size_t>(n), 0);
    for (int x = 1; x <= n; ++x) {
        int y = f(x);
        slots[x - 1] = static_cast<std::uint8_t>(y);
    }
    return PartialInjection::from_slots(std::move(slots));
}

void need_even(int n, int at_least = 4) {
    if (n < at_least || n % 2 != 0)
        throw std::invalid_argument("constructor requires even n >= " + std::to_string(at_least));
}

void need_same_parity(int i, int k) {
    if ((i - k) % 2 != 0) throw std::invalid_argument("indices must have equal parity");
}

}  // namespace

PartialInjection sigma1(int n) {
    need_even(n);
    return build(n, [n](int x) { return wrap(x + 2, n); });
}

PartialInjection sigma2(int n) {
    need_even(n);
    return build(n, [n](int x) { return wrap(2 - x, n); });
}

PartialInjection epsilon(int i, int n) {
    if (i < 1 || i > n) throw std::invalid_argument("epsilon: index out of range");
    return build(n, [i](int x) { return x == i ? 0 : x; });
}

PartialInjection gamma_fix(int i, int n) {
    need_even(n);
    if (i < 1 || i > n) throw std::invalid_argument("gamma_fix: index out of range");
    return build(n, [i, n](int x) { return x == i ? 0 : wrap(2 * i - x, n); });
}

PartialInjection alpha_shift(int i, int k, int n) {
    need_even(n);
    need_same_parity(i, k);
    return build(n, [i, k, n](int x) { return x == i ? 0 : wrap(x + k - i, n); });
}

PartialInjection gamma_reflect(int i, int k, int n) {
    need_even(n);
    need_same_parity(i, k);
    return build(n, [i, k, n](int x) { return x == i ? 0 : wrap(k + i - x, n); });
}

std::vector<int> cyclic_open(int i, int j, int n) {
    std::vector<int> out;
    for (int x = wrap(i + 1, n); x != j; x = wrap(x + 1, n)) out.push_back(x);
    return out;
}

PartialInjection gamma_ij(int i, int j, int n) {
    need_even(n);
    if (i == j) throw std::invalid_argument("gamma_ij: indices must differ");
    need_same_parity(i, j);
    auto open = cyclic_open(i, j, n);
    std::set<int> rev(open.begin(), open.end());
    return build(n, [&](int x) {
        if (x == i || x == j) return 0;
        return rev.count(x) ? wrap(i + j - x, n) : x;
    });
}

PartialInjection gamma_ij_minus(int i, int j, int n) {
    need_even(n);
    if ((i - j) % 2 == 0) throw std::invalid_argument("gamma_ij_minus: indices must mix parity");
    std::set<int> undef{wrap(i - 1, n), i, j};
    if (undef.size() != 3) throw std::invalid_argument("gamma_ij_minus: degenerate indices");
    auto open = cyclic_open(i, j, n);
    std::set<int> rev(open.begin(), open.end());
    return build(n, [&](int x) {
        if (undef.count(x)) return 0;
        return rev.count(x) ? wrap(i + j - 1 - x, n) : x;
    });
}

PartialInjection gamma_ij_plus(int i, int j, int n) {
    need_even(n);
    if ((i - j) % 2 == 0) throw std::invalid_argument("gamma_ij_plus: indices must mix parity");
    std::set<int> undef{i, j, wrap(j + 1, n)};
    if (undef.size() != 3) throw std::invalid_argument("gamma_ij_plus: degenerate indices");
    auto open = cyclic_open(i, j, n);
    std::set<int> rev(open.begin(), open.end());
    return build(n, [&](int x) {
        if (undef.count(x)) return 0;
        return rev.count(x) ? wrap(i + j + 1 - x, n) : x;
    });
}

PartialInjection alpha_ij_minus(int i, int j, int n) {
    need_even(n);
    std::set<int> undef{i, wrap(i + 1, n), wrap(i + 2, n), j};
    auto open = cyclic_open(wrap(i + 2, n), j, n);
    std::set<int> shift(open.begin(), open.end());
    return build(n, [&](int x) {
        if (undef.count(x)) return 0;
        return shift.count(x) ? wrap(x - 2, n) : x;
    });
}

PartialInjection alpha_ij_plus(int i, int j, int n) {
    need_even(n);
    std::set<int> undef{i, j, wrap(j + 1, n), wrap(j + 2, n)};
    auto open = cyclic_open(i, j, n);
    std::set<int> shift(open.begin(), open.end());
    return build(n, [&](int x) {
        if (undef.count(x)) return 0;
        return shift.count(x) ? wrap(x + 2, n) : x;
    });
}

PartialInjection delta_o(int i, int n) {
    need_even(n);
    if (i < 1 || i > n / 2 - 1) throw std::invalid_argument("delta_o: index out of range");
    PartialInjection a(n);
    a = a.with(2, 1);
    for (int x = 4; x <= n - 2 * i + 1; ++x) a = a.with(x, x + 2 * i - 2);
    for (int x = n - 2 * i + 3; x <= n; ++x) a = a.with(x, wrap(x + 2 * i, n));
    return a;
}

PartialInjection delta_e(int i, int n) {
    need_even(n);
    if (i < 1 || i > n / 2 - 1) throw std::invalid_argument("delta_e: index out of range");
    PartialInjection a(n);
    a = a.with(1, 2);
    for (int x = 3; x <= 2 * i; ++x) a = a.with(x, wrap(x + n - 2 * i, n));
    for (int x = 2 * i + 2; x <= n - 1; ++x) a = a.with(x, x - 2 * i + 2);
    return a;
}

PartialInjection eta1(int n) {
    need_even(n);
    return build(n, [](int x) { return x % 2 == 1 ? x + 1 : 0; });
}

PartialInjection eta2(int n) {
    need_even(n);
    return build(n, [](int x) { return x % 2 == 0 ? x - 1 : 0; });
}

// ---- words ----

namespace {

const char* letter_name(Letter l) {
    switch (l) {
        case Letter::S1: return "S1";
        case Letter::S2: return "S2";
        case Letter::E1: return "E1";
        case Letter::EN: return "EN";
        case Letter::GN: return "GN";
        case Letter::G1: return "G1";
        case Letter::DO: return "DO";
        case Letter::DE: return "DE";
        case Letter::H1: return "H1";
        case Letter::H2: return "H2";
        case Letter::ID2: return "ID";
        case Letter::UP2: return "UP";
        case Letter::DN2: return "DN";
    }
    throw std::logic_error("unknown letter");
}

bool has_index(Letter l) {
    return l == Letter::GN || l == Letter::G1 || l == Letter::DO || l == Letter::DE;
}

}  // namespace

void GeneratorSymbol::validate(int n) const {
    if (power < 1) throw std::invalid_argument("letter power must be positive");
    if (index != 0 && !has_index(letter))
        throw std::invalid_argument("letter does not take an index");
    bool base2 = letter == Letter::ID2 || letter == Letter::UP2 || letter == Letter::DN2;
    if (n == 2) {
        if (!base2) throw std::invalid_argument("only the base-set letters exist at n = 2");
        return;
    }
    check_even_n(n);
    if (base2) throw std::invalid_argument("base-set letters only exist at n = 2");
    int q = n / 4;
    switch (letter) {
        case Letter::GN:
            if (index % 2 != 0 || index < 4 || index > 2 * q)
                throw std::invalid_argument("GN index must be even in 4..2*floor(n/4)");
            break;
        case Letter::G1:
            if (index % 2 != 1 || index < 5 || index > 2 * q + 1)
                throw std::invalid_argument("G1 index must be odd in 5..2*floor(n/4)+1");
            break;
        case Letter::DO:
        case Letter::DE:
            if (index < 1 || index > q)
                throw std::invalid_argument("delta letter index must lie in 1..floor(n/4)");
            break;
        default:
            break;
    }
}

std::string GeneratorSymbol::text() const {
    std::string s = letter_name(letter);
    if (has_index(letter)) s += "(" + std::to_string(index) + ")";
    if (power != 1) s += "^" + std::to_string(power);
    return s;
}

std::vector<std::pair<GeneratorSymbol, PartialInjection>> Catalog::all() const {
    auto out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

std::vector<PartialInjection> Catalog::elements() const {
    std::vector<PartialInjection> out;
    for (const auto& [s, m] : all()) out.push_back(m);
    return out;
}

Catalog generator_catalog(int n) {
    Catalog cat;
    if (n == 2) {
        cat.b.emplace_back(GeneratorSymbol{Letter::ID2}, PartialInjection::identity(2));
        cat.b.emplace_back(GeneratorSymbol{Letter::UP2}, PartialInjection::from_pairs(2, {{1, 2}}));
        cat.b.emplace_back(GeneratorSymbol{Letter::DN2}, PartialInjection::from_pairs(2, {{2, 1}}));
        return cat;
    }
    check_even_n(n);
    if (n < 4) throw std::invalid_argument("catalog requires n = 2 or even n >= 4");
    int q = n / 4;
    cat.a.emplace_back(GeneratorSymbol{Letter::S1}, sigma1(n));
    cat.a.emplace_back(GeneratorSymbol{Letter::S2}, sigma2(n));
    cat.a.emplace_back(GeneratorSymbol{Letter::E1}, epsilon(1, n));
    cat.a.emplace_back(GeneratorSymbol{Letter::EN}, epsilon(n, n));
    for (int i = 4; i <= 2 * q; i += 2)
        cat.a.emplace_back(GeneratorSymbol{Letter::GN, i}, gamma_ij(i, n, n));
    for (int i = 5; i <= 2 * q + 1; i += 2)
        cat.a.emplace_back(GeneratorSymbol{Letter::G1, i}, gamma_ij(i, 1, n));
    cat.b.emplace_back(GeneratorSymbol{Letter::DO, 1}, delta_o(1, n));
    cat.b.emplace_back(GeneratorSymbol{Letter::DE, 1}, delta_e(1, n));
    cat.b.emplace_back(GeneratorSymbol{Letter::H1}, eta1(n));
    cat.b.emplace_back(GeneratorSymbol{Letter::H2}, eta2(n));
    for (int i = 2; i <= q; ++i) {
        cat.b.emplace_back(GeneratorSymbol{Letter::DO, i}, delta_o(i, n));
        cat.b.emplace_back(GeneratorSymbol{Letter::DE, i}, delta_e(i, n));
    }
    return cat;
}

PartialInjection eval_symbol(const GeneratorSymbol& s, int n) {
    s.validate(n);
    PartialInjection base = [&]() {
        switch (s.letter) {
            case Letter::S1: return sigma1(n);
            case Letter::S2: return sigma2(n);
            case Letter::E1: return epsilon(1, n);
            case Letter::EN: return epsilon(n, n);
            case Letter::GN: return gamma_ij(s.index, n, n);
            case Letter::G1: return gamma_ij(s.index, 1, n);
            case Letter::DO: return delta_o(s.index, n);
            case Letter::DE: return delta_e(s.index, n);
            case Letter::H1: return eta1(n);
            case Letter::H2: return eta2(n);
            case Letter::ID2: return PartialInjection::identity(2);
            case Letter::UP2: return PartialInjection::from_pairs(2, {{1, 2}});
            case Letter::DN2: return PartialInjection::from_pairs(2, {{2, 1}});
        }
        throw std::logic_error("unknown letter");
    }();
    PartialInjection out = base;
    for (int p = 1; p < s.power; ++p) out = compose(out, base);
    return out;
}

PartialInjection eval_word(const Word& w, int n) {
    PartialInjection out = PartialInjection::identity(n);
    for (const auto& s : w) out = compose(out, eval_symbol(s, n));
    return out;
}

Word word_inverse(const Word& w, int n) {
    Word out;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        GeneratorSymbol s = *it;
        switch (s.letter) {
            case Letter::S1: {
                int half = n / 2;
                int p = (half - s.power % half) % half;
                if (p == 0) continue;
                s.power = p;
                break;
            }
            case Letter::S2: {
                int p = s.power % 2;
                if (p == 0) continue;
                s.power = p;
                break;
            }
            case Letter::DO: s.letter = Letter::DE; break;
            case Letter::DE: s.letter = Letter::DO; break;
            case Letter::H1: s.letter = Letter::H2; break;
            case Letter::H2: s.letter = Letter::H1; break;
            case Letter::UP2: s.letter = Letter::DN2; break;
            case Letter::DN2: s.letter = Letter::UP2; break;
            default: break;  // E1, EN, GN, G1, ID2 are self-inverse
        }
        append_letter(out, s, n);
    }
    return out;
}

void append_letter(Word& w, GeneratorSymbol s, int n) {
    s.validate(n);
    if (s.letter == Letter::ID2) return;  // neutral letter
    if (!w.empty() && w.back().letter == s.letter && w.back().index == s.index) {
        w.back().power += s.power;
    } else {
        w.push_back(s);
    }
    // collapse the powers with a known full-identity order
    auto& tail = w.back();
    if (tail.letter == Letter::S1) tail.power %= n / 2;
    if (tail.letter == Letter::S2) tail.power %= 2;
    if (tail.power == 0) w.pop_back();
}

Word concat(const Word& x, const Word& y, int n) {
    Word out = x;
    for (const auto& s : y) append_letter(out, s, n);
    return out;
}

std::string word_text(const Word& w) {
    std::string out;
    for (const auto& s : w) {
        if (!out.empty()) out += ' ';
        out += s.text();
    }
    return out;
}

std::string word_json(const Word& w) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& s : w) arr.push_back(s.text());
    return arr.dump();
}

namespace {

GeneratorSymbol parse_token(const std::string& tok) {
    size_t pos = 0;
    while (pos < tok.size() && (std::isalnum(static_cast<unsigned char>(tok[pos])))) ++pos;
    std::string name = tok.substr(0, pos);
    static const std::vector<std::pair<std::string, Letter>> names = {
        {"S1", Letter::S1}, {"S2", Letter::S2}, {"E1", Letter::E1}, {"EN", Letter::EN},
        {"GN", Letter::GN}, {"G1", Letter::G1}, {"DO", Letter::DO}, {"DE", Letter::DE},
        {"H1", Letter::H1}, {"H2", Letter::H2}, {"ID", Letter::ID2}, {"UP", Letter::UP2},
        {"DN", Letter::DN2}};
    GeneratorSymbol s{};
    bool found = false;
    for (const auto& [nm, l] : names) {
        if (nm == name) {
            s.letter = l;
            found = true;
            break;
        }
    }
    if (!found) throw std::invalid_argument("unknown word letter: " + name);
    if (pos < tok.size() && tok[pos] == '(') {
        size_t close = tok.find(')', pos);
        if (close == std::string::npos) throw std::invalid_argument("unclosed index in " + tok);
        s.index = std::stoi(tok.substr(pos + 1, close - pos - 1));
        pos = close + 1;
    }
    if (pos < tok.size() && tok[pos] == '^') {
        s.power = std::stoi(tok.substr(pos + 1));
        pos = tok.size();
    } else if (pos != tok.size()) {
        throw std::invalid_argument("trailing characters in token: " + tok);
    }
    return s;
}

}  // namespace

Word parse_word(const std::string& text, int n) {
    Word w;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        GeneratorSymbol s = parse_token(tok);
        s.validate(n);
        w.push_back(s);
    }
    return w;
}

Word parse_word_json(const std::string& json_text, int n) {
    nlohmann::json arr = nlohmann::json::parse(json_text);
    if (!arr.is_array()) throw std::invalid_argument("word JSON must be an array of tokens");
    Word w;
    for (const auto& item : arr) {
        GeneratorSymbol s = parse_token(item.get<std::string>());
        s.validate(n);
        w.push_back(s);
    }
    return w;
}

}  // namespace crownic
