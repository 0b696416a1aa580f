// Shared sweep of the closed-form product identities between the named
// transformation families. Used by the unit test and the acceptance gate;
// returns one line per failed equality, empty when everything holds.

#pragma once

#include <crownic/generators.hpp>

#include <sstream>
#include <string>
#include <vector>

namespace crownic_tests {

using namespace crownic;

struct IdentitySuite {
    int n;
    std::vector<std::string> bad;

    PartialInjection s1p(int p) const {
        auto r = PartialInjection::identity(n);
        auto s1 = sigma1(n);
        int k = ((p % (n / 2)) + n / 2) % (n / 2);
        for (int i = 0; i < k; ++i) r = compose(r, s1);
        return r;
    }

    template <typename... Ts>
    PartialInjection prod(const Ts&... ms) const {
        PartialInjection r = PartialInjection::identity(n);
        ((r = compose(r, ms)), ...);
        return r;
    }

    void expect(bool ok, const std::string& tag, int i = 0, int j = 0) {
        if (ok) return;
        std::ostringstream os;
        os << "n=" << n << " " << tag;
        if (i || j) os << " (" << i << "," << j << ")";
        bad.push_back(os.str());
    }

    void run() {
        auto s2 = sigma2(n);
        int q = n / 4;

        // point deletions from the two catalog deletions and rotations
        for (int i = 2; i <= n - 2; i += 2)
            expect(epsilon(i, n) == prod(s1p((n - i) / 2), epsilon(n, n), s1p(i / 2)),
                   "deletion-even", i);
        for (int i = 3; i <= n - 1; i += 2)
            expect(epsilon(i, n) == prod(s1p((n - i + 1) / 2), epsilon(1, n), s1p((i - 1) / 2)),
                   "deletion-odd", i);

        // the point-centred reflection via deletion, reflection, rotation
        for (int i = 1; i <= n; ++i)
            expect(gamma_fix(i, n) == prod(epsilon(i, n), s2, s1p(i - 1)), "fix-reflect", i);

        // shift and reflect with one point removed
        for (int i = 1; i <= n; ++i)
            for (int k = 1; k <= n; ++k) {
                if ((i - k) % 2 || i == k) continue;
                auto want = prod(epsilon(i, n), s1p(i < k ? (k - i) / 2 : (n + k - i) / 2));
                expect(alpha_shift(i, k, n) == want, "shift", i, k);
                int kk = wrap(n - k + 2, n);
                auto aik = kk != i ? alpha_shift(i, kk, n) : epsilon(i, n);
                expect(gamma_reflect(i, k, n) == prod(aik, s2), "reflect", i, k);
            }

        // reversal base cases
        expect(gamma_ij(2, n, n) == prod(epsilon(2, n), epsilon(n, n), s2), "rev-2n");
        expect(gamma_ij(n - 2, n, n) == prod(epsilon(n - 2, n), epsilon(n, n)), "rev-n2n");
        expect(gamma_ij(1, 3, n) == prod(epsilon(1, n), epsilon(3, n)), "rev-13");
        expect(gamma_ij(1, n - 1, n) ==
                   prod(epsilon(1, n), epsilon(n - 1, n), s2, s1p(n / 2 - 1)),
               "rev-1n1");
        expect(gamma_ij(n, 2, n) == prod(epsilon(2, n), epsilon(n, n)), "rev-n2");
        expect(gamma_ij(n, n - 2, n) ==
                   prod(epsilon(n - 2, n), epsilon(n, n), s2, s1p(n / 2 - 2)),
               "rev-nn2");
        expect(gamma_ij(3, 1, n) == prod(epsilon(1, n), epsilon(3, n), s2, s1p(1)), "rev-31");
        expect(gamma_ij(n - 1, 1, n) == prod(epsilon(1, n), epsilon(n - 1, n)), "rev-n11");

        // reversal recursions down to the catalog windows
        for (int i = 2 * q + 2; i <= n - 4; i += 2)
            expect(gamma_ij(i, n, n) ==
                       prod(s1p((n - i) / 2), gamma_ij(n - i, n, n), s1p(1), s2),
                   "rev-in", i);
        for (int j = 4; j <= n - 2; j += 2)
            for (int i = 2; i <= j - 2; i += 2)
                expect(gamma_ij(i, j, n) ==
                           prod(s1p((n - j) / 2), gamma_ij(n + i - j, n, n), s1p(j / 2)),
                       "rev-even", i, j);
        for (int j = 5; j <= n - 3; j += 2)
            expect(gamma_ij(1, j, n) == prod(s2, gamma_ij(n - j + 2, 1, n), s2), "rev-1j", j);
        for (int j = 5; j <= n - 1; j += 2)
            for (int i = 3; i <= j - 2; i += 2)
                expect(gamma_ij(i, j, n) ==
                           prod(s1p((n - j + 1) / 2), gamma_ij(n - j + i + 1, 1, n),
                                s1p((j - 1) / 2)),
                       "rev-odd", i, j);
        for (int j = 4; j <= n - 4; j += 2)
            expect(gamma_ij(n, j, n) ==
                       prod(s1p((n - j) / 2), gamma_ij(n - j, n, n), s1p(j / 2)),
                   "rev-nj", j);
        for (int j = 2; j <= n - 2; j += 2)
            for (int i = j + 2; i <= n - 2; i += 2)
                expect(gamma_ij(i, j, n) ==
                           prod(s1p((n - j) / 2), gamma_ij(i - j, n, n), s1p(j / 2)),
                       "rev-even-swap", i, j);
        for (int i = 2 * q + 3; i <= n - 3; i += 2)
            expect(gamma_ij(i, 1, n) ==
                       prod(s1p((n - i + 1) / 2), gamma_ij(n - i + 2, 1, n), s2),
                   "rev-i1", i);
        for (int j = 3; j <= n - 1; j += 2)
            for (int i = j + 2; i <= n - 1; i += 2)
                expect(gamma_ij(i, j, n) ==
                           prod(s1p((n - j + 1) / 2), gamma_ij(i - j + 1, 1, n),
                                s1p((j - 1) / 2)),
                       "rev-odd-swap", i, j);

        // three-point reversals from a deletion and a two-point reversal
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) {
                if ((i - j) % 2 == 0) continue;
                int im1 = wrap(i - 1, n);
                if (im1 != j && i != j)
                    expect(gamma_ij_minus(i, j, n) ==
                               prod(epsilon(i, n), gamma_ij(im1, j, n)),
                           "rev3-minus", i, j);
                int jp1 = wrap(j + 1, n);
                if (jp1 != i && i != j)
                    expect(gamma_ij_plus(i, j, n) ==
                               prod(epsilon(j, n), gamma_ij(i, jp1, n)),
                           "rev3-plus", i, j);
            }

        // interval shifts as products of reversals (linear index windows)
        for (int i = 1; i <= n; ++i)
            for (int j = i + 3; j <= n; ++j) {
                if ((i - j) % 2) {
                    expect(alpha_ij_minus(i, j, n) ==
                               prod(gamma_ij(i + 1, j, n), gamma_ij(i, j - 1, n)),
                           "shift4-minus-mixed", i, j);
                } else if (j - i >= 4) {
                    expect(alpha_ij_minus(i, j, n) ==
                               prod(epsilon(i + 1, n), gamma_ij(i, j, n), gamma_ij(i, j - 2, n)),
                           "shift4-minus-same", i, j);
                }
            }
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) {
                int jp1 = wrap(j + 1, n), jp2 = wrap(j + 2, n);
                if (jp1 == i || jp2 == i) continue;
                if ((i - j) % 2) {
                    int ip1 = i + 1;
                    if (ip1 != jp2)
                        expect(alpha_ij_plus(i, j, n) ==
                                   prod(gamma_ij(i, jp1, n), gamma_ij(ip1, jp2, n)),
                               "shift4-plus-mixed", i, j);
                } else if (jp2 != i && j + 2 <= n + 1 && i != jp2) {
                    expect(alpha_ij_plus(i, j, n) ==
                               prod(epsilon(jp1, n), gamma_ij(i, j, n), gamma_ij(i, jp2, n)),
                           "shift4-plus-same", i, j);
                }
            }

        // the two shift families exchange under rotation
        for (int j = 1; j <= n; ++j)
            for (int i = j + 1; i <= n; ++i) {
                auto distinct4 = [&](int a, int b, int c, int d) {
                    return a != b && a != c && a != d && b != c && b != d && c != d;
                };
                if (distinct4(j, i, wrap(i + 1, n), wrap(i + 2, n)))
                    expect(alpha_ij_minus(i, j, n) ==
                               prod(alpha_ij_plus(j, i, n), s1p(n / 2 - 1)),
                           "shift4-swap-minus", i, j);
                if (distinct4(i, j, wrap(j + 1, n), wrap(j + 2, n)))
                    expect(alpha_ij_plus(i, j, n) ==
                               prod(alpha_ij_minus(j, i, n), s1p(1)),
                           "shift4-swap-plus", i, j);
            }

        // parity-mixing reducers: inverse pairing and index folding
        for (int i = 1; i < n / 2; ++i)
            expect(inverse(delta_o(i, n)) == delta_e(i, n), "reducer-inverse", i);
        for (int i = q + 1; i < n / 2; ++i) {
            expect(delta_o(i, n) ==
                       prod(gamma_ij(3, 1, n), delta_o(n / 2 - i, n), gamma_ij(2, n, n)),
                   "reducer-fold-odd", i);
            expect(delta_e(i, n) ==
                       prod(gamma_ij(2, n, n), delta_e(n / 2 - i, n), gamma_ij(3, 1, n)),
                   "reducer-fold-even", i);
        }
    }
};

inline std::vector<std::string> run_identity_suite(int n) {
    IdentitySuite suite{n, {}};
    suite.run();
    return suite.bad;
}

}  // namespace crownic_tests
