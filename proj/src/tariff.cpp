#include "evsched/tariff.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace evsched {

const char* tou_period_name(TouPeriod p) {
    switch (p) {
        case TouPeriod::OffPeak: return "off_peak";
        case TouPeriod::MidPeak: return "mid_peak";
        case TouPeriod::OnPeak: return "on_peak";
    }
    return "?";
}

TouSchedule::TouSchedule(std::vector<TouBand> bands) : bands_(std::move(bands)) {
    std::sort(bands_.begin(), bands_.end(),
              [](const TouBand& a, const TouBand& b) { return a.start_slot < b.start_slot; });
    int cursor = 0;
    for (const TouBand& b : bands_) {
        if (b.start_slot != cursor || b.end_slot <= b.start_slot) {
            throw std::invalid_argument("tariff bands must cover slots 0..96 without gaps or overlap");
        }
        if (!(b.price > 0.0)) throw std::invalid_argument("tariff prices must be positive");
        cursor = b.end_slot;
    }
    if (cursor != kSlotsPerDay) {
        throw std::invalid_argument("tariff bands must end at slot 96");
    }
}

const TouBand& TouSchedule::band_at(int slot) const {
    if (slot < 0 || slot >= kSlotsPerDay) throw std::out_of_range("slot outside 0..95");
    for (const TouBand& b : bands_) {
        if (slot < b.end_slot) return b;
    }
    throw std::logic_error("unreachable: bands cover all slots");
}

double TouSchedule::price_at(int slot) const { return band_at(slot).price; }

TouPeriod TouSchedule::period_at(int slot) const { return band_at(slot).period; }

double TouSchedule::max_price() const {
    double m = 0.0;
    for (const TouBand& b : bands_) m = std::max(m, b.price);
    return m;
}

TouSchedule default_austin_2018() {
    const double off = 0.01188, mid = 0.06218, on = 0.11003;
    return TouSchedule({
        {0, 24, TouPeriod::OffPeak, off},    // 00:00-06:00
        {24, 56, TouPeriod::MidPeak, mid},   // 06:00-14:00
        {56, 80, TouPeriod::OnPeak, on},     // 14:00-20:00
        {80, 88, TouPeriod::MidPeak, mid},   // 20:00-22:00
        {88, 96, TouPeriod::OffPeak, off},   // 22:00-24:00
    });
}

namespace {

TouPeriod parse_period(const std::string& name) {
    if (name == "off_peak") return TouPeriod::OffPeak;
    if (name == "mid_peak") return TouPeriod::MidPeak;
    if (name == "on_peak") return TouPeriod::OnPeak;
    throw std::invalid_argument("unknown tariff period '" + name + "'");
}

// Cheapest distinct price maps to Off-Peak, dearest to On-Peak, anything in
// between to Mid-Peak.
TouPeriod period_by_price_rank(double price, const std::set<double>& prices) {
    if (price == *prices.begin()) return TouPeriod::OffPeak;
    if (price == *prices.rbegin()) return TouPeriod::OnPeak;
    return TouPeriod::MidPeak;
}

}  // namespace

TouSchedule make_schedule(const std::vector<TariffBandSpec>& specs) {
    std::set<double> prices;
    for (const TariffBandSpec& s : specs) prices.insert(s.price);

    std::vector<TouBand> bands;
    bands.reserve(specs.size());
    for (const TariffBandSpec& s : specs) {
        const int start_min = parse_minutes_of_day(s.start);
        const int end_min = parse_minutes_of_day(s.end);
        if (start_min % 15 != 0 || end_min % 15 != 0) {
            throw std::invalid_argument("tariff band times must align to 15 minutes");
        }
        TouBand b;
        b.start_slot = start_min / 15;
        b.end_slot = end_min / 15;
        b.price = s.price;
        b.period = s.period.empty() ? period_by_price_rank(s.price, prices) : parse_period(s.period);
        bands.push_back(b);
    }
    return TouSchedule(std::move(bands));
}

}  // namespace evsched
