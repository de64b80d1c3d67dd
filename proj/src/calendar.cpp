#include "evsched/calendar.hpp"

#include <cstdio>
#include <stdexcept>

namespace evsched {

namespace {

bool is_leap(int year) {
    return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int days_in_month(int year, int month) {
    static const int table[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (month == 2 && is_leap(year)) return 29;
    return table[month - 1];
}

[[noreturn]] void bad(const std::string& what, const std::string& text) {
    throw std::invalid_argument(what + ": '" + text + "'");
}

}  // namespace

bool is_valid_date(const Date& d) {
    return d.month >= 1 && d.month <= 12 && d.day >= 1 &&
           d.day <= days_in_month(d.year, d.month);
}

Date next_day(const Date& d) {
    Date n = d;
    if (++n.day > days_in_month(n.year, n.month)) {
        n.day = 1;
        if (++n.month > 12) {
            n.month = 1;
            ++n.year;
        }
    }
    return n;
}

std::string format_date_iso(const Date& d) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d.year, d.month, d.day);
    return buf;
}

std::string format_date_table(const Date& d) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%02d/%02d/%04d", d.day, d.month, d.year);
    return buf;
}

Date parse_date_iso(const std::string& text) {
    Date d;
    char tail = 0;
    if (std::sscanf(text.c_str(), "%4d-%2d-%2d%c", &d.year, &d.month, &d.day, &tail) != 3 ||
        text.size() != 10 || !is_valid_date(d)) {
        bad("invalid date", text);
    }
    return d;
}

int slot_of(int hour, int minute) {
    if (hour < 0 || hour > 23 || minute < 0 || minute > 59) {
        throw std::invalid_argument("time of day out of range");
    }
    return hour * 4 + minute / 15;
}

std::string format_slot(int slot) {
    if (slot < 0 || slot >= kSlotsPerDay) throw std::invalid_argument("slot out of range");
    char buf[8];
    std::snprintf(buf, sizeof(buf), "%02d:%02d", slot / 4, (slot % 4) * 15);
    return buf;
}

int parse_minutes_of_day(const std::string& text) {
    int hour = 0, minute = 0;
    char tail = 0;
    if (std::sscanf(text.c_str(), "%2d:%2d%c", &hour, &minute, &tail) != 2 || text.size() != 5) {
        bad("invalid time of day", text);
    }
    if (hour == 24 && minute == 0) return 24 * 60;
    if (hour < 0 || hour > 23 || minute < 0 || minute > 59) bad("invalid time of day", text);
    return hour * 60 + minute;
}

SlotTimestamp parse_slot_timestamp(const std::string& text) {
    // YYYY-MM-DDTHH:MM
    if (text.size() != 16 || text[10] != 'T') bad("invalid timestamp", text);
    SlotTimestamp ts;
    ts.date = parse_date_iso(text.substr(0, 10));
    int minutes = parse_minutes_of_day(text.substr(11, 5));
    if (minutes >= 24 * 60) bad("invalid timestamp", text);
    if (minutes % 15 != 0) bad("timestamp not aligned to 15 minutes", text);
    ts.slot = minutes / 15;
    return ts;
}

std::string format_slot_timestamp(const SlotTimestamp& ts) {
    return format_date_iso(ts.date) + "T" + format_slot(ts.slot);
}

}  // namespace evsched
