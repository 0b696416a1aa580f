#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "identity_suite.hpp"

TEST_CASE("product identities between the named families hold for n = 4..16") {
    for (int n = 4; n <= 16; n += 2) {
        CAPTURE(n);
        auto bad = crownic_tests::run_identity_suite(n);
        for (const auto& line : bad) MESSAGE(line);
        CHECK(bad.empty());
    }
}
