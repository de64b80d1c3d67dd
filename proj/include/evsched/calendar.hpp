#pragma once

#include <compare>
#include <string>

namespace evsched {

inline constexpr int kSlotsPerDay = 96;
inline constexpr double kHoursPerSlot = 0.25;

// Calendar date without timezone semantics. Input data is assumed to be
// pre-localized to the tariff's local time.
struct Date {
    int year = 1970;
    int month = 1;
    int day = 1;

    auto operator<=>(const Date&) const = default;
};

bool is_valid_date(const Date& d);

// Next calendar day (Gregorian).
Date next_day(const Date& d);

// "YYYY-MM-DD"
std::string format_date_iso(const Date& d);

// "DD/MM/YYYY", the layout used in savings tables.
std::string format_date_table(const Date& d);

// Parses "YYYY-MM-DD". Throws std::invalid_argument on malformed input.
Date parse_date_iso(const std::string& text);

// 15-minute slot index for a wall-clock time, slot = hour*4 + minute/15.
int slot_of(int hour, int minute);

// Inverse of slot_of, as "HH:MM".
std::string format_slot(int slot);

// Parses "HH:MM" into minutes since midnight; accepts "24:00" as 1440 so
// tariff band ends can name end-of-day. Throws std::invalid_argument.
int parse_minutes_of_day(const std::string& text);

struct SlotTimestamp {
    Date date;
    int slot = 0;  // 0..95
};

// Parses "YYYY-MM-DDTHH:MM" with a 15-minute-aligned time component.
// Throws std::invalid_argument on malformed or misaligned input.
SlotTimestamp parse_slot_timestamp(const std::string& text);

std::string format_slot_timestamp(const SlotTimestamp& ts);

}  // namespace evsched
