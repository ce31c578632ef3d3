#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "steklov/bounds.hpp"
#include "steklov/experiments.hpp"

using namespace steklov;
using Catch::Approx;

TEST_CASE("sharpness experiment") {
    const auto rep = sharpness_experiment(Dim(3), 2.0, {0.4, 0.2, 0.1, 0.05}, 4096);
    CHECK(rep.all_pass());
    REQUIRE(rep.rows.size() == 4);
    for (const auto& row : rep.rows) {
        CHECK(row[3] > 0.0);   // gap column: B - sigma1 strictly positive
    }
    // largest delta sits furthest from the bound
    CHECK(rep.rows.front()[3] > rep.rows.back()[3]);

    SECTION("reports are byte-for-byte reproducible") {
        const auto rep2 = sharpness_experiment(Dim(3), 2.0, {0.4, 0.2, 0.1, 0.05}, 4096);
        std::ostringstream a, b;
        rep.write_json(a);
        rep2.write_json(b);
        CHECK(a.str() == b.str());
        std::ostringstream ca, cb;
        rep.write_csv(ca);
        rep2.write_csv(cb);
        CHECK(ca.str() == cb.str());
    }

    SECTION("deltas must decrease") {
        CHECK_THROWS_AS(sharpness_experiment(Dim(3), 2.0, {0.1, 0.2, 0.4}, 512), domain_error);
    }
}

TEST_CASE("monotonicity experiment") {
    const auto rep = monotonicity_experiment(Dim(3), 2.0, 5, 3, 1024);
    CHECK(rep.all_pass());
    // 3 steps x 5 eigenvalues of strict increase
    bool found = false;
    for (const auto& a : rep.assertions) {
        if (a.name == "strict_increase") {
            found = true;
            CHECK(a.pass);
            CHECK(a.detail.find("15 strict inequalities") != std::string::npos);
        }
    }
    CHECK(found);
}

TEST_CASE("stability experiment") {
    const auto rep = stability_experiment(Dim(3), 1024);
    CHECK(rep.all_pass());
    // the plateau rows carry strictly positive slack over the computed gap
    for (const auto& row : rep.rows) {
        if (row[0] == 2.0) {
            CHECK(row[4] > row[5]);
        }
    }
}

TEST_CASE("experiment files") {
    const auto rep = monotonicity_experiment(Dim(3), 2.0, 2, 1, 256);
    const auto dir = std::filesystem::temp_directory_path() / "steklov_report_test";
    std::filesystem::create_directories(dir);
    rep.save(dir.string());
    const auto csv_path = dir / (rep.basename() + ".csv");
    const auto json_path = dir / (rep.basename() + ".json");
    REQUIRE(std::filesystem::exists(csv_path));
    REQUIRE(std::filesystem::exists(json_path));

    SECTION("JSON mirror is valid and mirrors the CSV table") {
        std::ifstream in(json_path);
        nlohmann::json j;
        in >> j;
        CHECK(j.at("id") == "monotonicity");
        CHECK(j.at("columns").size() == 5);
        CHECK(j.at("rows").size() == rep.rows.size());
        CHECK(j.at("all_pass").get<bool>());
    }

    SECTION("CSV has a header row and full-precision numbers") {
        std::ifstream in(csv_path);
        std::string header;
        std::getline(in, header);
        CHECK(header == "step,k,sigma,err_est,gap_prev");
    }
    std::filesystem::remove_all(dir);
}

TEST_CASE("figure data") {
    SECTION("Bn_of_L (n = 5): one branch switch, at L_1") {
        std::vector<double> grid;
        for (int i = 0; i <= 100; ++i) grid.push_back(0.2 + 7.8 * i / 100.0);
        const auto f = figure_data(FigureKind::BnOfL, Dim(5), grid);
        REQUIRE(f.columns.size() == 5);
        int switches = 0;
        for (std::size_t i = 1; i < f.rows.size(); ++i) {
            if (f.rows[i][4] != f.rows[i - 1][4]) ++switches;
            CHECK(f.rows[i][3] == Approx(std::fmin(f.rows[i][1], f.rows[i][2])));
        }
        CHECK(switches == 1);
        REQUIRE(f.crossings.size() == 1);
        CHECK(f.crossings[0].first == "L1");
        CHECK(f.crossings[0].second == Approx(critical_length_L1(Dim(5)).first.L));
    }

    SECTION("Bn_m1plus1_of_L (n = 5): three branches with breakpoints L_2, L_1") {
        std::vector<double> grid;
        for (int i = 0; i <= 200; ++i) grid.push_back(0.1 + 7.9 * i / 200.0);
        const auto f = figure_data(FigureKind::BnM1Plus1OfL, Dim(5), grid);
        int switches = 0;
        for (std::size_t i = 1; i < f.rows.size(); ++i) {
            if (f.rows[i][5] != f.rows[i - 1][5]) ++switches;
        }
        CHECK(switches == 2);
        REQUIRE(f.crossings.size() == 2);
        CHECK(f.crossings[0].second < f.crossings[1].second);   // L_2 < L_1
    }

    SECTION("appendix curves (n = 5): L_N < L_D as in the case analysis") {
        std::vector<double> grid{0.5, 1.0, 2.0};
        const auto f = figure_data(FigureKind::AppendixCurves, Dim(5), grid);
        REQUIRE(f.crossings.size() == 2);
        double LD = 0.0, LN = 0.0;
        for (const auto& [name, v] : f.crossings) {
            if (name == "L_D") LD = v;
            if (name == "L_N") LN = v;
        }
        CHECK(LN < LD);
    }

    CHECK_THROWS_AS(figure_data(FigureKind::BnOfL, Dim(5), {}), domain_error);
    CHECK_THROWS_AS(figure_data(FigureKind::BnOfL, Dim(5), {2.0, 1.0}), domain_error);
}
