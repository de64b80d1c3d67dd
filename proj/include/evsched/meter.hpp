#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "evsched/calendar.hpp"

namespace evsched {

// One 15-minute smart-meter record. Powers are interval-average kW and must
// be finite and non-negative.
struct MeterRecord {
    SlotTimestamp timestamp;
    double ev_kw = 0.0;
    double non_ev_kw = 0.0;
    double pv_kw = 0.0;
};

// One metered day: exactly 96 slot records in ascending time order plus the
// day's EV consumption total (kW-sum over slots; divide by 4 for kWh).
struct Episode {
    Date date;
    std::vector<MeterRecord> slots;
    double p_day_ev = 0.0;
};

// Builds an Episode from 96 in-order records, recomputing p_day_ev.
// Throws std::invalid_argument if the slot set is not exactly 0..95.
Episode make_episode(Date date, std::vector<MeterRecord> slots);

// Recomputes the daily EV kW-sum the same way make_episode does.
double episode_ev_sum(const Episode& ep);

enum class GapPolicy {
    Reject,    // drop days with missing slots (counted in IngestResult)
    ZeroFill,  // complete days by inserting all-zero records
};

struct IngestResult {
    std::vector<Episode> episodes;  // chronologically sorted complete days
    int dropped_days = 0;           // incomplete days dropped under Reject
    int filled_slots = 0;           // zero records inserted under ZeroFill
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& message);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Parses a meter CSV (header `timestamp,ev_kw,non_ev_kw,pv_kw`, timestamps
// `YYYY-MM-DDTHH:MM`). Malformed rows, misaligned or duplicate timestamps
// throw ParseError with the offending line number.
IngestResult parse_meter_csv(const std::string& path, GapPolicy gap_policy);

// Writes episodes in the same CSV schema; values round-trip exactly.
void write_meter_csv(const std::string& path, const std::vector<Episode>& episodes);

struct CorpusSplit {
    std::vector<Episode> train;
    std::vector<Episode> test;
};

// Keeps episodes with p_day_ev > min_ev_kw (a day with no metered charging
// has no charging cycle to re-schedule), then splits chronologically with
// train size = floor(split_fraction * N). Throws std::invalid_argument when
// fewer than 2 episodes qualify or split_fraction is outside (0, 1).
CorpusSplit build_training_corpus(const std::vector<Episode>& episodes, double min_ev_kw,
                                  double split_fraction);

}  // namespace evsched
