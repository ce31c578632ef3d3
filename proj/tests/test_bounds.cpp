#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "steklov/bounds.hpp"

using namespace steklov;
using Catch::Approx;

TEST_CASE("bound for sigma_1") {
    const auto b32 = bound_sigma1(Dim(3), 2.0);
    CHECK(b32.value == Approx(1.4).epsilon(1e-15));
    CHECK(b32.branch.kind == BranchKind::NeumannMode);
    CHECK(b32.branch.k == 1);
    CHECK(b32.R == Approx(2.0));

    const auto b42 = bound_sigma1(Dim(4), 2.0);
    CHECK(b42.value == Approx(45.0 / 19.0).epsilon(1e-15));
    CHECK(b42.branch.kind == BranchKind::NeumannMode);

    const auto blarge = bound_sigma1(Dim(3), 1e9);
    CHECK(blarge.value == Approx(1.0).margin(1e-8));   // -> n-2
    CHECK(blarge.branch.kind == BranchKind::DirichletMode);

    CHECK_THROWS_AS(bound_sigma1(Dim(3), 0.0), domain_error);
}

TEST_CASE("critical length L_1 and B_n") {
    const auto [cl, b] = critical_length_L1(Dim(3));
    CHECK(cl.L == Approx(3.017688989946145).epsilon(1e-12));
    CHECK(b.value == Approx(1.6627588219539128).epsilon(1e-12));
    CHECK(cl.residual <= 1e-12);
    CHECK(cl.lo < cl.L);
    CHECK(cl.L < cl.hi);
    CHECK(cl.equation == "cor13_polynomial");

    SECTION("two independent routes agree to 1e-10") {
        for (int n = 3; n <= 12; ++n) {
            const double L_poly = critical_length_L1(Dim(n)).first.L;
            // direct intersection of the two annulus curves
            auto diff = [n](double L) {
                return sd_eigenvalue(Dim(n), 1.0 + L / 2.0, 0) -
                       sn_eigenvalue(Dim(n), 1.0 + L / 2.0, 1);
            };
            const double L_direct = brent(diff, 1e-6, l1_upper_bound(Dim(n))).root;
            INFO("n=" << n);
            CHECK(std::fabs(L_poly - L_direct) <= 1e-10 * L_poly);
        }
    }

    SECTION("n-2 < B_n < n-1 and the branch switch sits exactly at L_1") {
        for (int n = 3; n <= 12; ++n) {
            const auto [c, bb] = critical_length_L1(Dim(n));
            CHECK(bb.value > n - 2.0);
            CHECK(bb.value < n - 1.0);
            CHECK(bound_sigma1(Dim(n), c.L * (1.0 - 1e-6)).branch.kind == BranchKind::NeumannMode);
            CHECK(bound_sigma1(Dim(n), c.L * (1.0 + 1e-6)).branch.kind == BranchKind::DirichletMode);
        }
    }

    SECTION("L_1(n) decreasing below its closed-form bound") {
        double prev = 1e300;
        for (int n = 3; n <= 50; ++n) {
            const double L1 = critical_length_L1(Dim(n)).first.L;
            CHECK(L1 < l1_upper_bound(Dim(n)));
            CHECK(L1 < prev);
            prev = L1;
        }
        CHECK(prev < 0.34);   // already small at n = 50
    }
}

TEST_CASE("l1 upper bound closed form") {
    CHECK(l1_upper_bound(Dim(3)) == Approx(14.0).epsilon(1e-14));   // 2(e^{3 ln 2} - 1)
    CHECK(l1_upper_bound(Dim(300)) < 0.12);
}

TEST_CASE("bound for sigma_2 .. sigma_{m_1}") {
    CHECK(bound_sigma2_to_m1(Dim(3), 2.0).value == Approx(1.4).epsilon(1e-15));
    CHECK(bound_sigma2_to_m1_sup(Dim(5)) == 4.0);
    for (int n : {3, 5, 9}) {
        for (double L : {0.3, 1.0, 2.5, 9.0}) {
            CHECK(bound_sigma2_to_m1(Dim(n), L).value >= bound_sigma1(Dim(n), L).value);
        }
    }
}

TEST_CASE("critical length L_2") {
    const auto c = critical_length_L2(Dim(3));
    CHECK(c.L == Approx(1.3456439217434435).epsilon(1e-12));
    CHECK(c.residual <= 1e-12);
    for (int n = 3; n <= 12; ++n) {
        INFO("n=" << n);
        CHECK(critical_length_L2(Dim(n)).L < critical_length_L1(Dim(n)).first.L);
    }
    SECTION("cross-route: the cleared-denominator polynomial matches the raw intersection") {
        for (int n : {3, 5, 9}) {
            auto diff = [n](double L) {
                return sd_eigenvalue(Dim(n), 1.0 + L / 2.0, 0) -
                       sn_eigenvalue(Dim(n), 1.0 + L / 2.0, 2);
            };
            const double L_direct = brent(diff, 1e-6, l1_upper_bound(Dim(n))).root;
            CHECK(std::fabs(critical_length_L2(Dim(n)).L - L_direct) <= 1e-10 * L_direct);
        }
    }
}

TEST_CASE("piecewise bound for sigma_{m_1+1}") {
    const double L2 = critical_length_L2(Dim(5)).L;
    const double L1 = critical_length_L1(Dim(5)).first.L;

    CHECK(bound_m1_plus_1(Dim(5), L2 * 0.9).branch.k == 2);
    CHECK(bound_m1_plus_1(Dim(5), L2 * 1.05).branch.kind == BranchKind::DirichletMode);
    CHECK(bound_m1_plus_1(Dim(5), L1 * 1.5).branch.k == 1);
    CHECK(bound_m1_plus_1(Dim(5), 80.0).value == Approx(4.0).margin(1e-6));   // -> n-1

    SECTION("continuity at both breakpoints") {
        for (int n : {3, 5, 8}) {
            const double l2 = critical_length_L2(Dim(n)).L;
            const double l1 = critical_length_L1(Dim(n)).first.L;
            for (double Lc : {l2, l1}) {
                const double below = bound_m1_plus_1(Dim(n), Lc - 1e-9).value;
                const double above = bound_m1_plus_1(Dim(n), Lc + 1e-9).value;
                CHECK(std::fabs(below - above) <= 1e-6);
            }
        }
    }

    SECTION("global bound and the Appendix branch switch") {
        const auto g3 = bound_m1_plus_1_global(Dim(3));
        CHECK(g3.branch.kind == BranchKind::DirichletMode);
        CHECK(g3.value == Approx(2.4862772890236516).epsilon(1e-11));
        const auto g6 = bound_m1_plus_1_global(Dim(6));
        CHECK(g6.branch.kind == BranchKind::DirichletMode);
        const auto g7 = bound_m1_plus_1_global(Dim(7));
        CHECK(g7.branch.kind == BranchKind::ConstantNminus1);
        CHECK(g7.value == 6.0);

        // sup of the piecewise bound over a log-spaced grid augmented with the
        // breakpoints matches the global value
        for (int n : {3, 7}) {
            const auto g = bound_m1_plus_1_global(Dim(n));
            double sup = 0.0;
            const double l2 = critical_length_L2(Dim(n)).L;
            const double l1 = critical_length_L1(Dim(n)).first.L;
            for (int i = 0; i <= 400; ++i) {
                const double L = 0.02 * std::pow(4000.0, i / 400.0);
                sup = std::fmax(sup, bound_m1_plus_1(Dim(n), L).value);
            }
            sup = std::fmax(sup, bound_m1_plus_1(Dim(n), l2).value);
            sup = std::fmax(sup, bound_m1_plus_1(Dim(n), l1).value);
            INFO("n=" << n);
            CHECK(sup == Approx(g.value).epsilon(1e-6));
        }
    }
}

TEST_CASE("appendix comparator") {
    const auto [d3, n3, b3] = appendix_comparator(Dim(3));
    CHECK(d3.L == Approx(2.0).epsilon(1e-14));
    CHECK(n3.L == Approx(0.8619381622105110).epsilon(1e-12));
    CHECK(b3.kind == BranchKind::DirichletMode);
    CHECK(d3.residual <= 1e-12);
    CHECK(n3.residual <= 1e-12);

    const auto [d7, n7, b7] = appendix_comparator(Dim(7));
    CHECK(d7.L == Approx(0.8619381622105110).epsilon(1e-12));
    CHECK(n7.L == Approx(0.8961785485707453).epsilon(1e-12));
    CHECK(b7.kind == BranchKind::ConstantNminus1);

    const auto [d9, n9, b9] = appendix_comparator(Dim(9));
    CHECK(d9.L < n9.L);
}

TEST_CASE("Psi_i critical lengths") {
    const auto c1 = critical_length_Li_star(Dim(3), 1);
    CHECK(c1.L == Approx(1.5896792397933725).epsilon(1e-11));
    CHECK(c1.residual <= 1e-12);

    SECTION("strictly decreasing below the closed-form bound") {
        for (int n : {3, 4, 5, 8}) {
            double prev = 1e300;
            for (int i = 1; i <= 20; ++i) {
                const auto c = critical_length_Li_star(Dim(n), i);
                INFO("n=" << n << " i=" << i);
                CHECK(c.L > 0.0);
                CHECK(c.L < li_star_upper_bound(Dim(n), i));
                CHECK(c.L < prev);
                prev = c.L;
            }
        }
    }

    SECTION("cross-route against the raw sigma_(i)^D = sigma_(i+1)^N intersection") {
        for (int n : {3, 5}) {
            for (int i : {1, 3, 7}) {
                auto diff = [n, i](double L) {
                    return sd_eigenvalue(Dim(n), 1.0 + L / 2.0, i) -
                           sn_eigenvalue(Dim(n), 1.0 + L / 2.0, i + 1);
                };
                const double L_direct =
                    brent(diff, 1e-6, li_star_upper_bound(Dim(n), i) * 1.000001).root;
                INFO("n=" << n << " i=" << i);
                CHECK(std::fabs(critical_length_Li_star(Dim(n), i).L - L_direct) <=
                      1e-10 * L_direct);
            }
        }
    }

    CHECK(li_star_upper_bound(Dim(3), 1) == Approx(2.0 * (std::pow(5.0, 2.0 / 3.0) - 1.0)).epsilon(1e-14));
    CHECK(li_star_upper_bound(Dim(3), 4000) < 0.01);
}

TEST_CASE("k sequence") {
    const auto k3 = k_sequence(Dim(3), 2);
    REQUIRE(k3.size() == 2);
    CHECK(k3[0] == 1);
    CHECK(k3[1] == 17);   // 1 + 2*3 + 2*5
    const auto k4 = k_sequence(Dim(4), 2);
    CHECK(k4[1] == 27);   // 1 + 2*4 + 2*9

    SECTION("window property and strict growth") {
        for (int n : {3, 4, 7}) {
            const auto ks = k_sequence(Dim(n), 8);
            std::int64_t partial = 1;   // m_0
            for (int i = 1; i <= 8; ++i) {
                const std::int64_t mi = multiplicity(Dim(n), i);
                if (i >= 2) {
                    const std::int64_t ki = ks[static_cast<std::size_t>(i - 1)];
                    CHECK(partial + mi < ki);
                    CHECK(ki == partial + 2 * mi);
                    CHECK(ki > ks[static_cast<std::size_t>(i - 2)]);
                }
                partial += 2 * mi;
            }
        }
    }
}

TEST_CASE("stability constants and gaps") {
    const auto c = stability_constants(Dim(3));
    CHECK(c.C1 == Approx(4.553223420021093).epsilon(1e-11));
    CHECK(c.C2 == Approx(1.2520789661160613).epsilon(1e-11));
    CHECK(c.C == Approx(9.106446840042185).epsilon(1e-11));
    for (int n = 3; n <= 12; ++n) {
        const auto cc = stability_constants(Dim(n));
        CHECK(cc.C1 > 0.0);
        CHECK(cc.C2 > 0.0);
        CHECK(cc.C == 2.0 * std::fmax(cc.C1, cc.C2));
    }

    SECTION("C(n, L) = B_n - B_n(L)") {
        CHECK(stability_gap_CnL(Dim(3), 2.0) == Approx(1.6627588219539128 - 1.4).epsilon(1e-11));
        CHECK(stability_gap_CnL(Dim(3), 10.0) == Approx(1.6627588219539128 - 1.2).epsilon(1e-11));
        const double L1 = critical_length_L1(Dim(3)).first.L;
        CHECK_THROWS_AS(stability_gap_CnL(Dim(3), L1), domain_error);
        CHECK(stability_gap_CnL(Dim(3), L1 * (1.0 + 1e-7)) > 0.0);
    }

    SECTION("insufficient resolution is reported, never returned as a constant") {
        CHECK_THROWS_AS(stability_gap_CnLm(Dim(3), 2.0, 1.99, 0.005, 128), numerical_error);
    }

    SECTION("C(n, L, m) against the cylinder value, decreasing in m") {
        const double g1 = stability_gap_CnLm(Dim(3), 2.0, 1.0, 0.1, 1024);
        CHECK(g1 == Approx(0.4).margin(2e-5));   // B_3(2) - sigma_1(cylinder) = 1.4 - 1
        const double g12 = stability_gap_CnLm(Dim(3), 2.0, 1.2, 0.1, 1024);
        const double g14 = stability_gap_CnLm(Dim(3), 2.0, 1.4, 0.1, 1024);
        CHECK(g12 < g1);
        CHECK(g14 < g12);
        CHECK(g14 > 0.0);
    }
}
