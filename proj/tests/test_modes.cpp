#include <catch2/catch_amalgamated.hpp>

#include "steklov/modes.hpp"

using namespace steklov;

namespace {

// Independent combinatorial oracle: (n+2k-2) (n+k-3)! / (k! (n-2)!) in exact
// 128-bit integer arithmetic (largest in-range value ~ 29! fits comfortably).
unsigned __int128 factorial128(int m) {
    unsigned __int128 r = 1;
    for (int i = 2; i <= m; ++i) r *= static_cast<unsigned>(i);
    return r;
}

long long multiplicity_oracle(int n, int k) {
    if (k == 0) return 1;
    const unsigned __int128 num = factorial128(n + k - 3) * static_cast<unsigned>(n + 2 * k - 2);
    const unsigned __int128 den = factorial128(k) * factorial128(n - 2);
    return static_cast<long long>(num / den);
}

} // namespace

TEST_CASE("laplace eigenvalues k(n+k-2)") {
    CHECK(laplace_eigenvalue(Dim(3), 0) == 0.0);
    CHECK(laplace_eigenvalue(Dim(3), 1) == 2.0);
    CHECK(laplace_eigenvalue(Dim(4), 2) == 8.0);

    SECTION("strictly increasing in k, and in n for k >= 1") {
        for (int n = 3; n <= 12; ++n) {
            for (int k = 0; k < 20; ++k) {
                CHECK(laplace_eigenvalue(Dim(n), k) < laplace_eigenvalue(Dim(n), k + 1));
            }
        }
        for (int k = 1; k <= 20; ++k) {
            for (int n = 3; n < 12; ++n) {
                CHECK(laplace_eigenvalue(Dim(n), k) < laplace_eigenvalue(Dim(n + 1), k));
            }
        }
    }
}

TEST_CASE("multiplicities match the exact combinatorial formula") {
    CHECK(multiplicity(Dim(3), 0) == 1);
    CHECK(multiplicity(Dim(4), 1) == 4);
    CHECK(multiplicity(Dim(4), 2) == 9);

    for (int n = 3; n <= 12; ++n) {
        CHECK(multiplicity(Dim(n), 1) == n);   // dimension of degree-1 harmonics
        for (int k = 0; k <= 20; ++k) {
            INFO("n=" << n << " k=" << k);
            CHECK(multiplicity(Dim(n), k) == multiplicity_oracle(n, k));
        }
    }
}

TEST_CASE("mode tables") {
    const auto t0 = mode_table(Dim(3), 0);
    REQUIRE(t0.size() == 1);
    CHECK(t0[0].lambda == 0.0);
    CHECK(t0[0].mult == 1);

    const auto t = mode_table(Dim(3), 2);
    REQUIRE(t.size() == 3);
    CHECK(t[1].lambda == 2.0);
    CHECK(t[1].mult == 3);
    CHECK(t[2].lambda == 6.0);
    CHECK(t[2].mult == 5);

    const auto t5 = mode_table(Dim(5), 1);
    CHECK(t5[1].lambda == 4.0);
    CHECK(t5[1].mult == 5);
}

TEST_CASE("domain and overflow errors") {
    CHECK_THROWS_AS(Dim(2), domain_error);
    CHECK_THROWS_AS(laplace_eigenvalue(Dim(3), -1), domain_error);
    CHECK_THROWS_AS(multiplicity(Dim(3), -1), domain_error);
    CHECK_THROWS_AS(mode_table(Dim(3), -1), domain_error);
    // the falling product for n=500, k=128 exceeds 128 bits; must throw, not wrap
    CHECK_THROWS_AS(multiplicity(Dim(500), 128), arithmetic_error);
}
