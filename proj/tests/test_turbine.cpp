#include <cmath>
#include <limits>

#include "doctest.h"
#include "windspc/error.hpp"
#include "windspc/turbine.hpp"

using namespace windspc;

TEST_CASE("classify_generator band boundaries") {
    CHECK(classify_generator(26.0) == GeneratorUse::Primary);
    CHECK(classify_generator(20.0) == GeneratorUse::Secondary);
    CHECK(classify_generator(23.0) == GeneratorUse::NoneInUse);
    CHECK(classify_generator(0.0) == GeneratorUse::NoneInUse);

    // primary is strictly above 25.8; secondary band is closed
    CHECK(classify_generator(25.8) == GeneratorUse::NoneInUse);
    CHECK(classify_generator(25.800001) == GeneratorUse::Primary);
    CHECK(classify_generator(19.0) == GeneratorUse::Secondary);
    CHECK(classify_generator(21.0) == GeneratorUse::Secondary);
    CHECK(classify_generator(18.9) == GeneratorUse::NoneInUse);
    CHECK(classify_generator(21.1) == GeneratorUse::NoneInUse);
}

TEST_CASE("classify_generator rejects invalid speeds") {
    for (double bad : {-0.1, -26.0, std::numeric_limits<double>::quiet_NaN()}) {
        try {
            classify_generator(bad);
            FAIL("expected NegativeSpeed for ", bad);
        } catch (const Error& e) {
            CHECK(e.code() == Errc::NegativeSpeed);
        }
    }
}

TEST_CASE("classify_generator partitions the speed axis") {
    GeneratorBands bands;
    for (double rpm = 0.0; rpm <= 40.0; rpm += 0.05) {
        GeneratorUse use = classify_generator(rpm, bands);
        int primary = rpm > bands.primary_min;
        int secondary = rpm >= bands.secondary_low && rpm <= bands.secondary_high;
        int none = !primary && !secondary;
        CHECK(primary + secondary + none == 1);
        if (primary) CHECK(use == GeneratorUse::Primary);
        if (secondary) CHECK(use == GeneratorUse::Secondary);
        if (none) CHECK(use == GeneratorUse::NoneInUse);
    }
}

TEST_CASE("generator band validation") {
    GeneratorBands bands;
    bands.secondary_low = 22.0;  // low above high
    bands.secondary_high = 21.0;
    CHECK_THROWS_AS(bands.validate(), Error);

    GeneratorBands overlap;
    overlap.primary_min = 20.0;  // primary threshold inside the secondary band
    CHECK_THROWS_AS(overlap.validate(), Error);
}

TEST_CASE("theoretical_power") {
    PowerCurveParams p;  // defaults: cut_in 4, rated 15, cut_out 25, 600 kW

    SUBCASE("zero outside the operating band") {
        CHECK(theoretical_power(3.0, p) == 0.0);
        CHECK(theoretical_power(30.0, p) == 0.0);
        CHECK(theoretical_power(0.0, p) == 0.0);
        CHECK(theoretical_power(25.000001, p) == 0.0);
    }

    SUBCASE("cubic law at 10 m/s") {
        // 0.5 * 1.225 * 1735 * 0.4 * 10^3 = 425075
        CHECK(theoretical_power(10.0, p) == doctest::Approx(425075.0).epsilon(1e-12));
    }

    SUBCASE("rated-power cap") {
        CHECK(theoretical_power(15.0, p) == 600000.0);
        CHECK(theoretical_power(16.0, p) == theoretical_power(15.0, p));
        CHECK(theoretical_power(24.9, p) == 600000.0);
    }

    SUBCASE("non-decreasing on the operating band, exactly cubic when uncapped") {
        double prev = 0.0;
        for (double u = p.cut_in; u <= p.cut_out; u += 0.01) {
            double w = theoretical_power(u, p);
            CHECK(w >= prev);
            prev = w;
        }
        // uncapped sub-interval: doubling the speed multiplies power by 8
        double p4 = theoretical_power(4.0, p);
        double p8 = theoretical_power(8.0, p);
        CHECK(p8 / p4 == doctest::Approx(8.0).epsilon(1e-12));
    }

    SUBCASE("parameter validation") {
        PowerCurveParams bad = p;
        bad.cut_in = 26.0;  // violates cut_in < rated < cut_out
        CHECK_THROWS_AS(bad.validate(), Error);

        bad = p;
        bad.power_coefficient = 1.5;
        CHECK_THROWS_AS(bad.validate(), Error);

        bad = p;
        bad.rotor_area = -1.0;
        CHECK_THROWS_AS(bad.validate(), Error);

        try {
            bad.validate();
            FAIL("expected InvalidParams");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::InvalidParams);
        }
    }
}
