#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "bvl/materials.hpp"

using namespace bvl;

TEST_CASE("default table anchors") {
    const auto table = HardnessTable::defaults();
    const auto m50 = table.modulus_for_hardness(50.0);
    CHECK(m50.youngs_modulus_MPa == 1.65);
    CHECK(m50.source == MaterialModel::Source::table);
    CHECK(m50.shore_hardness == 50.0);

    // the printable grid is present and strictly increasing
    REQUIRE(table.entries().size() == 5);
    for (std::size_t i = 1; i < table.entries().size(); ++i) {
        CHECK(table.entries()[i].first > table.entries()[i - 1].first);
        CHECK(table.entries()[i].second > table.entries()[i - 1].second);
    }
}

TEST_CASE("calibrated fallback") {
    // calibration anchor is exact by construction
    CHECK(calibrated_gent_modulus(50.0) == doctest::Approx(1.65).epsilon(1e-15));
    const auto empty = HardnessTable::empty();
    CHECK(empty.modulus_for_hardness(50.0).youngs_modulus_MPa ==
          doctest::Approx(1.65).epsilon(1e-12));
    CHECK(empty.modulus_for_hardness(50.0).source ==
          MaterialModel::Source::fallback_formula);

    // regression baselines for the printable grid
    CHECK(calibrated_gent_modulus(30.0) ==
          doctest::Approx(0.7675315406695561).epsilon(1e-12));
    CHECK(calibrated_gent_modulus(70.0) ==
          doctest::Approx(3.7090930717710355).epsilon(1e-12));

    // off-grid hardness goes through the fallback
    const auto table = HardnessTable::defaults();
    const auto m55 = table.modulus_for_hardness(55.0);
    CHECK(m55.source == MaterialModel::Source::fallback_formula);
    CHECK(m55.youngs_modulus_MPa == calibrated_gent_modulus(55.0));
}

TEST_CASE("monotonicity over the working range") {
    const auto table = HardnessTable::defaults();
    double prev = 0.0;
    for (double s = 30.0; s <= 70.0; s += 1.0) {
        const double E = table.modulus_for_hardness(s).youngs_modulus_MPa;
        CHECK(E > prev);
        prev = E;
    }
}

TEST_CASE("range and table validation") {
    const auto table = HardnessTable::defaults();
    CHECK_THROWS_AS(table.modulus_for_hardness(19.0), std::invalid_argument);
    CHECK_THROWS_AS(table.modulus_for_hardness(96.0), std::invalid_argument);
    CHECK_THROWS_AS(HardnessTable({{40.0, 1.0}, {50.0, 0.5}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(HardnessTable({{50.0, 1.0}, {40.0, 2.0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(HardnessTable({{120.0, 1.0}}), std::invalid_argument);
}

TEST_CASE("table file loading") {
    const char* path = "materials_test_table.txt";
    {
        std::ofstream out(path);
        out << "# custom moduli\n";
        out << "40 = 1.2\n";
        out << "50=1.65\n";
        out << "60 = 2.5\n";
    }
    const auto table = HardnessTable::load(path);
    CHECK(table.entries().size() == 3);
    CHECK(table.modulus_for_hardness(60.0).youngs_modulus_MPa == 2.5);
    std::remove(path);

    CHECK_THROWS(HardnessTable::load("no_such_file.txt"));
}
