#pragma once

#include <string>
#include <vector>

#include "evsched/calendar.hpp"

namespace evsched {

enum class TouPeriod { OffPeak, MidPeak, OnPeak };

const char* tou_period_name(TouPeriod p);

struct TouBand {
    int start_slot = 0;  // inclusive
    int end_slot = 0;    // exclusive
    TouPeriod period = TouPeriod::OffPeak;
    double price = 0.0;  // $/kWh
};

// Time-of-use price schedule over one day. Bands must cover slots 0..96
// exactly once with strictly positive prices; the constructor enforces this.
class TouSchedule {
public:
    explicit TouSchedule(std::vector<TouBand> bands);

    double price_at(int slot) const;
    TouPeriod period_at(int slot) const;

    const std::vector<TouBand>& bands() const { return bands_; }
    double max_price() const;

private:
    const TouBand& band_at(int slot) const;

    std::vector<TouBand> bands_;
};

// The 2018 Austin residential ToU schedule:
//   Off-Peak 00:00-06:00 and 22:00-24:00 at 0.01188 $/kWh
//   Mid-Peak 06:00-14:00 and 20:00-22:00 at 0.06218 $/kWh
//   On-Peak  14:00-20:00 at 0.11003 $/kWh
// Applied to weekends as well; no separate weekend rates are modeled.
TouSchedule default_austin_2018();

struct TariffBandSpec {
    std::string start;   // "HH:MM"
    std::string end;     // "HH:MM", "24:00" allowed
    double price = 0.0;  // $/kWh
    // Optional; when empty the period is assigned by price rank across the
    // schedule (cheapest distinct price = Off-Peak, dearest = On-Peak).
    std::string period;
};

// Builds a schedule from clock-time band specs (config-file override path).
TouSchedule make_schedule(const std::vector<TariffBandSpec>& specs);

}  // namespace evsched
