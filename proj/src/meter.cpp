#include "evsched/meter.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace evsched {

namespace {

constexpr const char* kHeader = "timestamp,ev_kw,non_ev_kw,pv_kw";

double parse_power(const std::string& field, std::size_t line, const char* name) {
    double value = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) {
        throw ParseError(line, std::string("bad number in column ") + name + ": '" + field + "'");
    }
    if (!std::isfinite(value) || value < 0.0) {
        throw ParseError(line, std::string(name) + " must be finite and non-negative");
    }
    return value;
}

std::vector<std::string> split_fields(const std::string& row) {
    std::vector<std::string> fields;
    std::stringstream ss(row);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!row.empty() && row.back() == ',') fields.emplace_back();
    return fields;
}

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

Episode make_episode(Date date, std::vector<MeterRecord> slots) {
    if (slots.size() != static_cast<std::size_t>(kSlotsPerDay)) {
        throw std::invalid_argument("episode needs exactly 96 slot records");
    }
    std::sort(slots.begin(), slots.end(), [](const MeterRecord& a, const MeterRecord& b) {
        return a.timestamp.slot < b.timestamp.slot;
    });
    for (int t = 0; t < kSlotsPerDay; ++t) {
        if (slots[t].timestamp.slot != t || !(slots[t].timestamp.date == date)) {
            throw std::invalid_argument("episode slots must cover " + format_date_iso(date) +
                                        " slots 0..95 exactly once");
        }
    }
    Episode ep;
    ep.date = date;
    ep.slots = std::move(slots);
    ep.p_day_ev = episode_ev_sum(ep);
    return ep;
}

double episode_ev_sum(const Episode& ep) {
    double sum = 0.0;
    for (const MeterRecord& r : ep.slots) sum += r.ev_kw;
    return sum;
}

IngestResult parse_meter_csv(const std::string& path, GapPolicy gap_policy) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open meter CSV: " + path);

    std::string row;
    std::size_t line = 0;
    if (!std::getline(in, row)) throw ParseError(1, "empty file");
    ++line;
    if (!row.empty() && row.back() == '\r') row.pop_back();
    if (row != kHeader) {
        throw ParseError(1, std::string("header must be exactly '") + kHeader + "'");
    }

    // date -> slot -> record
    std::map<Date, std::map<int, MeterRecord>> days;
    while (std::getline(in, row)) {
        ++line;
        if (!row.empty() && row.back() == '\r') row.pop_back();
        if (row.empty()) continue;
        auto fields = split_fields(row);
        if (fields.size() != 4) {
            throw ParseError(line, "expected 4 columns, got " + std::to_string(fields.size()));
        }
        MeterRecord rec;
        try {
            rec.timestamp = parse_slot_timestamp(fields[0]);
        } catch (const std::invalid_argument& e) {
            throw ParseError(line, e.what());
        }
        rec.ev_kw = parse_power(fields[1], line, "ev_kw");
        rec.non_ev_kw = parse_power(fields[2], line, "non_ev_kw");
        rec.pv_kw = parse_power(fields[3], line, "pv_kw");

        auto& day = days[rec.timestamp.date];
        if (!day.emplace(rec.timestamp.slot, rec).second) {
            throw ParseError(line, "duplicate timestamp " + fields[0]);
        }
    }

    IngestResult result;
    for (auto& [date, slots] : days) {
        if (slots.size() < static_cast<std::size_t>(kSlotsPerDay)) {
            if (gap_policy == GapPolicy::Reject) {
                ++result.dropped_days;
                continue;
            }
            for (int t = 0; t < kSlotsPerDay; ++t) {
                if (slots.count(t)) continue;
                MeterRecord zero;
                zero.timestamp = {date, t};
                slots.emplace(t, zero);
                ++result.filled_slots;
            }
        }
        std::vector<MeterRecord> ordered;
        ordered.reserve(kSlotsPerDay);
        for (auto& [slot, rec] : slots) ordered.push_back(rec);
        result.episodes.push_back(make_episode(date, std::move(ordered)));
    }
    return result;
}

void write_meter_csv(const std::string& path, const std::vector<Episode>& episodes) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write meter CSV: " + path);
    out << kHeader << "\n";
    for (const Episode& ep : episodes) {
        for (const MeterRecord& r : ep.slots) {
            out << format_slot_timestamp(r.timestamp) << ',' << format_double(r.ev_kw) << ','
                << format_double(r.non_ev_kw) << ',' << format_double(r.pv_kw) << "\n";
        }
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

CorpusSplit build_training_corpus(const std::vector<Episode>& episodes, double min_ev_kw,
                                  double split_fraction) {
    if (!(split_fraction > 0.0 && split_fraction < 1.0)) {
        throw std::invalid_argument("split_fraction must lie in (0, 1)");
    }
    std::vector<Episode> qualifying;
    for (const Episode& ep : episodes) {
        if (ep.p_day_ev > min_ev_kw) qualifying.push_back(ep);
    }
    std::sort(qualifying.begin(), qualifying.end(),
              [](const Episode& a, const Episode& b) { return a.date < b.date; });
    if (qualifying.size() < 2) {
        throw std::invalid_argument("need at least 2 episodes with EV charging, got " +
                                    std::to_string(qualifying.size()));
    }
    const auto n_train = static_cast<std::size_t>(
        std::floor(split_fraction * static_cast<double>(qualifying.size())));
    CorpusSplit split;
    split.train.assign(qualifying.begin(), qualifying.begin() + n_train);
    split.test.assign(qualifying.begin() + n_train, qualifying.end());
    return split;
}

}  // namespace evsched
