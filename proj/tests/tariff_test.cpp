#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "evsched/tariff.hpp"

using namespace evsched;

TEST_CASE("2018 Austin schedule prices by slot") {
    const TouSchedule tou = default_austin_2018();
    CHECK(tou.price_at(12) == 0.01188);  // 03:00 Off-Peak
    CHECK(tou.price_at(28) == 0.06218);  // 07:00 Mid-Peak
    CHECK(tou.price_at(60) == 0.11003);  // 15:00 On-Peak
    CHECK(tou.price_at(87) == 0.06218);  // 21:45 Mid-Peak
    CHECK(tou.price_at(95) == 0.01188);  // 23:45 Off-Peak
    CHECK(tou.period_at(60) == TouPeriod::OnPeak);
    CHECK(tou.period_at(0) == TouPeriod::OffPeak);
    CHECK(tou.max_price() == 0.11003);
}

TEST_CASE("every slot is covered by exactly one band") {
    const TouSchedule tou = default_austin_2018();
    int covered = 0;
    for (const TouBand& band : tou.bands()) {
        for (int t = band.start_slot; t < band.end_slot; ++t) {
            CHECK(tou.price_at(t) == band.price);
            CHECK(tou.period_at(t) == band.period);
            ++covered;
        }
    }
    CHECK(covered == kSlotsPerDay);
    CHECK_THROWS(tou.price_at(96));
    CHECK_THROWS(tou.price_at(-1));
}

TEST_CASE("schedules with gaps, overlaps, or bad prices are rejected") {
    CHECK_THROWS_AS(TouSchedule({{0, 48, TouPeriod::OffPeak, 0.1}}), std::invalid_argument);
    CHECK_THROWS_AS(TouSchedule({{0, 50, TouPeriod::OffPeak, 0.1},
                                 {48, 96, TouPeriod::OnPeak, 0.2}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(TouSchedule({{0, 96, TouPeriod::OffPeak, 0.0}}), std::invalid_argument);
}

TEST_CASE("config-style band specs build a schedule") {
    const TouSchedule tou = make_schedule({
        {"00:00", "08:00", 0.02, ""},
        {"08:00", "20:00", 0.10, ""},
        {"20:00", "24:00", 0.05, ""},
    });
    CHECK(tou.price_at(0) == 0.02);
    CHECK(tou.price_at(40) == 0.10);
    CHECK(tou.price_at(90) == 0.05);
    // Periods assigned by price rank when unspecified.
    CHECK(tou.period_at(0) == TouPeriod::OffPeak);
    CHECK(tou.period_at(40) == TouPeriod::OnPeak);
    CHECK(tou.period_at(90) == TouPeriod::MidPeak);

    const TouSchedule named = make_schedule({
        {"00:00", "12:00", 0.02, "on_peak"},
        {"12:00", "24:00", 0.10, "off_peak"},
    });
    CHECK(named.period_at(0) == TouPeriod::OnPeak);
    CHECK(named.period_at(60) == TouPeriod::OffPeak);

    CHECK_THROWS_AS(make_schedule({{"00:00", "24:01", 0.1, ""}}), std::invalid_argument);
    CHECK_THROWS_AS(make_schedule({{"00:10", "24:00", 0.1, ""}}), std::invalid_argument);
}
