#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <gtest/gtest.h>

#include "gridcast/data/calendar.h"
#include "gridcast/data/profile_csv.h"
#include "gridcast/data/random.h"
#include "gridcast/data/synth.h"
#include "gridcast/data/time_series.h"

using namespace gridcast::data;

namespace {

// Sakamoto's weekday algorithm, 0 = Sunday.
int weekday_oracle(int y, int m, int d) {
    static const int t[] = {0, 3, 2, 5, 0, 3, 5, 1, 4, 6, 2, 4};
    if (m < 3) {
        y -= 1;
    }
    return (y + y / 4 - y / 100 + y / 400 + t[m - 1] + d) % 7;
}

double autocorrelation(std::span<const double> x, std::size_t lag) {
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        den += (x[i] - mean) * (x[i] - mean);
        if (i + lag < x.size()) {
            num += (x[i] - mean) * (x[i + lag] - mean);
        }
    }
    return num / den;
}

std::size_t parse_error_row(const std::string& text) {
    std::istringstream in(text);
    try {
        parse_profile_csv(in);
    } catch (const ParseError& e) {
        return e.row();
    }
    return 0;
}

} // namespace

TEST(TimeSeries, TimestampRoundTrip) {
    const Timestamp t = parse_timestamp("2019-03-31T02:00:00Z");
    EXPECT_EQ(format_timestamp(t), "2019-03-31T02:00:00Z");
    EXPECT_EQ(t, make_timestamp(2019, 3, 31, 2));
    EXPECT_THROW(parse_timestamp("2019-03-31 02:00:00"), std::invalid_argument);
    EXPECT_THROW(parse_timestamp("2019-02-30T00:00:00Z"), std::invalid_argument);
}

TEST(TimeSeries, RejectsEmptyAndMisalignedStart) {
    EXPECT_THROW(HourlyTimeSeries(make_timestamp(2019, 1, 1), {}), std::invalid_argument);
    EXPECT_THROW(HourlyTimeSeries(make_timestamp(2019, 1, 1) + std::chrono::minutes(30), {1.0}), std::invalid_argument);
}

TEST(TimeSeries, IndexIsStartPlusHours) {
    const HourlyTimeSeries s(make_timestamp(2020, 2, 28, 22), {1, 2, 3, 4});
    EXPECT_EQ(s.time_at(3), make_timestamp(2020, 2, 29, 1));
    EXPECT_EQ(s.end(), make_timestamp(2020, 2, 29, 2));
    const HourlyTimeSeries sub = s.slice(1, 2);
    EXPECT_EQ(sub.start(), make_timestamp(2020, 2, 28, 23));
    EXPECT_EQ(sub[1], 3.0);
}

TEST(ProfileCsv, TwoRowsOneSeries) {
    std::istringstream in("household_id,timestamp,value_kw\n"
                          "h1,2019-01-01T00:00:00Z,0.5\n"
                          "h1,2019-01-01T01:00:00Z,0.75\n");
    const auto out = parse_profile_csv(in);
    ASSERT_EQ(out.size(), 1u);
    EXPECT_EQ(out[0].id, "h1");
    ASSERT_EQ(out[0].series.size(), 2u);
    EXPECT_EQ(out[0].series.start(), make_timestamp(2019, 1, 1));
    EXPECT_EQ(out[0].series[1], 0.75);
}

TEST(ProfileCsv, GapNamesRow) {
    EXPECT_EQ(parse_error_row("household_id,timestamp,value_kw\n"
                              "h1,2019-01-01T00:00:00Z,1\n"
                              "h1,2019-01-01T02:00:00Z,1\n"),
              3u);
}

TEST(ProfileCsv, ErrorsCarryRowNumbers) {
    const std::string header = "household_id,timestamp,value_kw\n";
    EXPECT_EQ(parse_error_row(header + "h1,2019-01-01T00:00:00Z,1\nh1,2019-01-01T01:00:00Z,-0.1\n"), 3u);
    EXPECT_EQ(parse_error_row(header + "h1,2019-01-01T01:00:00Z,1\nh1,2019-01-01T00:00:00Z,1\n"), 3u);
    EXPECT_EQ(parse_error_row(header + "h1,2019-01-01T00:00:00Z\n"), 2u);
    EXPECT_EQ(parse_error_row(header + "h1,2019-01-01T00:00:00Z,abc\n"), 2u);
    EXPECT_EQ(parse_error_row(header + "h1,2019-01-01T00:30:00Z,1\n"), 2u);
    EXPECT_EQ(parse_error_row("id,time,value\n"), 1u);
}

TEST(ProfileCsv, SignedValuesAllowedWhenRequested) {
    std::istringstream in("household_id,timestamp,value_kw\nx,2019-01-01T00:00:00Z,-2.5\n");
    const auto out = parse_profile_csv(in, ValueSign::Signed);
    EXPECT_EQ(out[0].series[0], -2.5);
}

TEST(ProfileCsv, InterleavedHouseholdsMatchFixture) {
    const Timestamp t0 = make_timestamp(2019, 6, 1);
    const std::vector<std::string> ids{"a", "b", "c"};
    std::vector<HourlyTimeSeries> expected;
    for (std::size_t k = 0; k < ids.size(); ++k) {
        std::vector<double> v(24);
        for (std::size_t h = 0; h < 24; ++h) {
            v[h] = static_cast<double>(100 * k + h) / 8.0;
        }
        expected.emplace_back(t0, v);
    }
    auto row = [&](std::size_t k, std::size_t h) {
        return ids[k] + "," + format_timestamp(t0 + std::chrono::hours(h)) + "," +
               format_double(expected[k][h]) + "\n";
    };
    // round-robin interleave and a blocked layout with a different household order
    std::string round_robin = "household_id,timestamp,value_kw\n";
    for (std::size_t h = 0; h < 24; ++h) {
        for (std::size_t k = 0; k < 3; ++k) {
            round_robin += row(k, h);
        }
    }
    std::string blocked = "household_id,timestamp,value_kw\n";
    for (std::size_t k : {2u, 0u, 1u}) {
        for (std::size_t h = 0; h < 24; ++h) {
            blocked += row(k, h);
        }
    }
    std::istringstream a(round_robin);
    std::istringstream b(blocked);
    const auto ra = parse_profile_csv(a);
    const auto rb = parse_profile_csv(b);
    ASSERT_EQ(ra.size(), 3u);
    ASSERT_EQ(rb.size(), 3u);
    for (std::size_t k = 0; k < 3; ++k) {
        EXPECT_EQ(ra[k].id, ids[k]);
        EXPECT_EQ(ra[k].series, expected[k]);
        const auto it = std::find_if(rb.begin(), rb.end(), [&](const NamedSeries& s) { return s.id == ids[k]; });
        ASSERT_NE(it, rb.end());
        EXPECT_EQ(it->series, expected[k]);
    }
}

TEST(ProfileCsv, RoundTripIsBitExact) {
    Rng rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> v(1 + rng.below(200));
        for (double& x : v) {
            // wide exponent range, including subnormal-adjacent and integral values
            x = std::ldexp(rng.uniform(), static_cast<int>(rng.below(80)) - 60);
            if (rng.below(10) == 0) {
                x = std::floor(x * 1000.0);
            }
        }
        const HourlyTimeSeries s(make_timestamp(2019, 1, 1) + std::chrono::hours(rng.below(10000)), v);
        std::ostringstream out;
        write_profile_csv_header(out);
        write_profile_csv_rows(out, "hh", s);
        std::istringstream in(out.str());
        const auto back = parse_profile_csv(in);
        ASSERT_EQ(back.size(), 1u);
        ASSERT_EQ(back[0].series.size(), s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            ASSERT_EQ(std::bit_cast<std::uint64_t>(back[0].series[i]), std::bit_cast<std::uint64_t>(s[i]));
        }
        EXPECT_EQ(back[0].series.start(), s.start());
    }
}

TEST(Calendar, SundayInJanuary) {
    const auto f = calendar_features(make_timestamp(2019, 1, 6, 9));
    EXPECT_EQ(f.day_type, DayType::Sunday);
    EXPECT_EQ(f.hour_of_day, 9u);
}

TEST(Calendar, NewYearNoonIsWinter) {
    const auto f = calendar_features(parse_timestamp("2019-01-01T12:00:00Z"));
    EXPECT_EQ(f.season, Season::Winter);
    EXPECT_EQ(f.hour_of_day, 12u);
    EXPECT_EQ(f.day_type, DayType::Weekday);
}

TEST(Calendar, JulyMondayIsSummerWeekday) {
    const auto f = calendar_features(make_timestamp(2019, 7, 1));
    EXPECT_EQ(f.day_type, DayType::Weekday);
    EXPECT_EQ(f.season, Season::Summer);
}

TEST(Calendar, DayTypeMatchesWeekdayOracleOverThreeYears) {
    for (Timestamp t = make_timestamp(2019, 1, 1); t < make_timestamp(2022, 1, 1); t += std::chrono::hours(24)) {
        const std::chrono::year_month_day ymd{std::chrono::floor<std::chrono::days>(t)};
        const int wd = weekday_oracle(static_cast<int>(ymd.year()), static_cast<int>(unsigned(ymd.month())),
                                      static_cast<int>(unsigned(ymd.day())));
        const DayType expected = wd == 0 ? DayType::Sunday : wd == 6 ? DayType::Saturday : DayType::Weekday;
        ASSERT_EQ(calendar_features(t).day_type, expected) << format_timestamp(t);
    }
}

TEST(Calendar, SeasonBoundariesAreInclusive) {
    const SeasonCalendar s;
    EXPECT_EQ(season_of({11, 1}, s), Season::Winter);
    EXPECT_EQ(season_of({10, 31}, s), Season::Transition);
    EXPECT_EQ(season_of({3, 20}, s), Season::Winter);
    EXPECT_EQ(season_of({3, 21}, s), Season::Transition);
    EXPECT_EQ(season_of({5, 15}, s), Season::Summer);
    EXPECT_EQ(season_of({9, 14}, s), Season::Summer);
    EXPECT_EQ(season_of({9, 15}, s), Season::Transition);
    EXPECT_EQ(season_of({12, 31}, s), Season::Winter);
}

TEST(Calendar, OffsetShiftsLocalDate) {
    CalendarConfig c;
    c.utc_offset_hours = 2;
    // 23:00 UTC on Saturday is 01:00 Sunday local
    const auto f = calendar_features(make_timestamp(2019, 1, 5, 23), c);
    EXPECT_EQ(f.day_type, DayType::Sunday);
    EXPECT_EQ(f.hour_of_day, 1u);
}

TEST(SynthDemand, SameSeedSameSeries) {
    SynthDemandParams p;
    p.seed = 42;
    EXPECT_EQ(synth_demand_profile(p, 30), synth_demand_profile(p, 30));
    SynthDemandParams q = p;
    q.seed = 43;
    EXPECT_NE(synth_demand_profile(p, 30), synth_demand_profile(q, 30));
}

TEST(SynthDemand, DegenerateParamsGiveConstant) {
    SynthDemandParams p;
    p.mean_daily_energy = 12.0;
    p.noise_sigma = 0.0;
    p.weekday_amplitude = 0.0;
    p.seasonal_amplitude = 0.0;
    const auto s = synth_demand_profile(p, 10);
    for (double v : s.values()) {
        ASSERT_NEAR(v, 0.5, 1e-12);
    }
}

TEST(SynthDemand, AnnualEnergyWithinFivePercent) {
    SynthDemandParams p;
    p.mean_daily_energy = 8.0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        p.seed = seed;
        const auto s = synth_demand_profile(p, 365);
        const double total = std::accumulate(s.values().begin(), s.values().end(), 0.0);
        EXPECT_GE(total, 2774.0);
        EXPECT_LE(total, 3066.0);
    }
}

TEST(SynthDemand, NonnegativeWithDailyPeriodicity) {
    SynthDemandParams p;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        p.seed = seed;
        p.noise_sigma = 0.03 * static_cast<double>(seed);
        const auto s = synth_demand_profile(p, 120);
        EXPECT_GE(*std::min_element(s.values().begin(), s.values().end()), 0.0);
        EXPECT_GT(autocorrelation(s.values(), 24), autocorrelation(s.values(), 13)) << "seed " << seed;
    }
}

TEST(SynthDemand, MorningAndEveningPeaks) {
    for (std::size_t type = 0; type < kDayTypeCount; ++type) {
        double mean = 0.0;
        for (std::size_t h = 0; h < 24; ++h) {
            mean += base_daily_shape(type, h) / 24.0;
        }
        EXPECT_NEAR(mean, 1.0, 1e-12);
        const double night = base_daily_shape(type, 3);
        double morning = 0.0;
        double evening = 0.0;
        for (std::size_t h = 6; h <= 10; ++h) {
            morning = std::max(morning, base_daily_shape(type, h));
        }
        for (std::size_t h = 17; h <= 21; ++h) {
            evening = std::max(evening, base_daily_shape(type, h));
        }
        EXPECT_GT(morning, night);
        EXPECT_GT(evening, morning);
    }
}

TEST(SynthDemand, WinterAboveSummer) {
    SynthDemandParams p;
    p.seed = 3;
    const auto s = synth_demand_profile(p, 365);
    const double january = std::accumulate(s.values().begin(), s.values().begin() + 31 * 24, 0.0);
    const double july = std::accumulate(s.values().begin() + 181 * 24, s.values().begin() + 212 * 24, 0.0);
    EXPECT_GT(january, july);
}

TEST(SynthDemand, RejectsInvalidParams) {
    SynthDemandParams p;
    p.mean_daily_energy = 0.0;
    EXPECT_THROW(validate(p), std::invalid_argument);
    p = {};
    p.noise_sigma = -1.0;
    EXPECT_THROW(validate(p), std::invalid_argument);
}

TEST(SynthPv, ZeroAtLocalMidnight) {
    for (int offset : {0, 1, 2}) {
        SynthPvParams p;
        p.utc_offset_hours = offset;
        p.seed = 5;
        const auto s = synth_pv_unit_profile(p, 365);
        for (std::size_t i = 0; i < s.size(); ++i) {
            const auto local_hour = (i + static_cast<std::size_t>(offset)) % 24;
            if (local_hour == 0) {
                ASSERT_EQ(s[i], 0.0);
            }
        }
    }
}

TEST(SynthPv, UnitBoundAndNightZero) {
    for (double lat : {-45.0, 0.0, 35.0, 50.0, 60.0}) {
        SynthPvParams p;
        p.latitude = lat;
        p.cloud_sigma = 0.3;
        const auto s = synth_pv_unit_profile(p, 366);
        for (std::size_t i = 0; i < s.size(); ++i) {
            ASSERT_GE(s[i], 0.0);
            ASSERT_LE(s[i], 1.0);
            const std::size_t h = i % 24;
            if (lat <= 50.0 && (h >= 22 || h < 4)) {
                ASSERT_EQ(s[i], 0.0) << "lat " << lat << " hour " << h;
            }
        }
    }
}

TEST(SynthPv, JuneAboveDecemberAt50N) {
    SynthPvParams p;
    p.cloud_sigma = 0.0;
    const auto s = synth_pv_unit_profile(p, 365);
    auto month_mean = [&](int first_day, int days) {
        return std::accumulate(s.values().begin() + first_day * 24, s.values().begin() + (first_day + days) * 24, 0.0) /
               days;
    };
    EXPECT_GT(month_mean(151, 30), 2.0 * month_mean(334, 31));

    // independent check of the clear-sky model: June solstice noon is higher than December solstice noon
    EXPECT_GT(clear_sky_unit_output(50.0, make_timestamp(2019, 6, 21, 12)),
              clear_sky_unit_output(50.0, make_timestamp(2019, 12, 21, 12)));
}

TEST(SynthPv, CloudsOnlyAttenuate) {
    SynthPvParams clear;
    clear.cloud_sigma = 0.0;
    SynthPvParams cloudy = clear;
    cloudy.cloud_sigma = 1.0;
    const auto a = synth_pv_unit_profile(clear, 60);
    const auto b = synth_pv_unit_profile(cloudy, 60);
    for (std::size_t i = 0; i < a.size(); ++i) {
        ASSERT_LE(b[i], a[i]);
    }
    EXPECT_EQ(synth_pv_unit_profile(cloudy, 60), b);
}

TEST(SynthPv, RejectsPolarLatitude) {
    SynthPvParams p;
    p.latitude = 70.0;
    EXPECT_THROW(synth_pv_unit_profile(p, 1), std::invalid_argument);
}

TEST(Random, DrawsAreReproducible) {
    Rng a(7);
    Rng b(7);
    for (int i = 0; i < 100; ++i) {
        ASSERT_EQ(a.next_u64(), b.next_u64());
    }
    Rng c(11);
    double sum = 0.0;
    double sq = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double z = c.normal();
        sum += z;
        sq += z * z;
    }
    EXPECT_NEAR(sum / n, 0.0, 0.01);
    EXPECT_NEAR(sq / n, 1.0, 0.01);
}
