#include "evsched/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "evsched/rng.hpp"

namespace evsched {

namespace {

double gauss_bump(double t, double center, double width) {
    const double z = (t - center) / width;
    return std::exp(-0.5 * z * z);
}

// Daylight bell: zero outside roughly 06:30-20:30, peak 1.0 near 13:30.
double pv_shape(int slot) {
    const double rise = 26.0, set = 82.0;
    if (slot <= rise || slot >= set) return 0.0;
    const double phase = (static_cast<double>(slot) - rise) / (set - rise);
    return std::pow(std::sin(std::numbers::pi * phase), 1.5);
}

int weighted_slot(const std::array<double, kSlotsPerDay>& weights, double total, Rng& rng) {
    double target = rng.uniform01() * total;
    for (int t = 0; t < kSlotsPerDay; ++t) {
        target -= weights[t];
        if (target < 0.0) return t;
    }
    return kSlotsPerDay - 1;
}

}  // namespace

std::array<double, kSlotsPerDay> SynthConfig::evening_bias() {
    std::array<double, kSlotsPerDay> w{};
    for (int t = 0; t < kSlotsPerDay; ++t) {
        w[t] = 0.02 + gauss_bump(static_cast<double>(t), 72.0, 9.0);
    }
    return w;
}

std::vector<Episode> synth_generate(const SynthConfig& cfg) {
    if (cfg.n_days <= 0) throw std::invalid_argument("n_days must be positive");
    if (cfg.ev_daily_min_kw > cfg.ev_daily_max_kw) {
        throw std::invalid_argument("ev_daily_min_kw exceeds ev_daily_max_kw");
    }
    if (!(cfg.ev_block_kw > 0.0)) throw std::invalid_argument("ev_block_kw must be positive");
    if (cfg.pv_peak_kw < 0.0) throw std::invalid_argument("pv_peak_kw must be non-negative");
    double bias_total = 0.0;
    for (double w : cfg.charge_window_bias) {
        if (w < 0.0) throw std::invalid_argument("charge_window_bias weights must be non-negative");
        bias_total += w;
    }
    if (!(bias_total > 0.0)) throw std::invalid_argument("charge_window_bias must not be all zero");

    Rng rng(cfg.seed);
    std::vector<Episode> episodes;
    episodes.reserve(cfg.n_days);
    Date date = cfg.start_date;

    for (int d = 0; d < cfg.n_days; ++d, date = next_day(date)) {
        std::vector<MeterRecord> slots(kSlotsPerDay);
        const double cloud = rng.uniform(0.7, 1.0);
        for (int t = 0; t < kSlotsPerDay; ++t) {
            MeterRecord& r = slots[t];
            r.timestamp = {date, t};
            r.pv_kw = cfg.pv_peak_kw * cloud * pv_shape(t);
            const double ft = static_cast<double>(t);
            r.non_ev_kw = 0.35 + 1.0 * gauss_bump(ft, 30.0, 6.0) + 1.5 * gauss_bump(ft, 78.0, 8.0) +
                          rng.uniform(0.0, 0.15);
        }

        // Charging lands in 1-2 contiguous blocks anchored by the bias
        // weights; the final slot of the last block tapers so the daily
        // kW-sum hits the drawn target exactly.
        const double target = rng.uniform(cfg.ev_daily_min_kw, cfg.ev_daily_max_kw);
        int full_slots = static_cast<int>(target / cfg.ev_block_kw);
        double taper = target - cfg.ev_block_kw * static_cast<double>(full_slots);
        if (taper < 1e-12) taper = 0.0;
        const int needed = full_slots + (taper > 0.0 ? 1 : 0);

        const int n_blocks = (needed > 2 && rng.chance(0.35)) ? 2 : 1;
        int first_len = needed;
        if (n_blocks == 2) first_len = 1 + static_cast<int>(rng.index(static_cast<std::size_t>(needed - 1)));

        std::vector<double> ev(kSlotsPerDay, 0.0);
        int remaining = needed;
        int block_len = first_len;
        for (int b = 0; b < n_blocks && remaining > 0; ++b) {
            if (b == n_blocks - 1) block_len = remaining;
            int start = 0;
            bool placed = false;
            for (int attempt = 0; attempt < 64 && !placed; ++attempt) {
                start = weighted_slot(cfg.charge_window_bias, bias_total, rng);
                if (start + block_len > kSlotsPerDay) continue;
                placed = true;
                for (int t = start; t < start + block_len; ++t) {
                    if (ev[t] > 0.0) placed = false;
                }
            }
            if (!placed) {
                // Deterministic fallback: first free window.
                for (start = 0; start + block_len <= kSlotsPerDay; ++start) {
                    placed = true;
                    for (int t = start; t < start + block_len; ++t) {
                        if (ev[t] > 0.0) placed = false;
                    }
                    if (placed) break;
                }
                if (!placed) throw std::logic_error("cannot place charging block");
            }
            for (int t = start; t < start + block_len; ++t) ev[t] = cfg.ev_block_kw;
            remaining -= block_len;
        }
        if (taper > 0.0) {
            // Last occupied slot becomes the taper slot.
            for (int t = kSlotsPerDay - 1; t >= 0; --t) {
                if (ev[t] > 0.0) {
                    ev[t] = taper;
                    break;
                }
            }
        }
        for (int t = 0; t < kSlotsPerDay; ++t) slots[t].ev_kw = ev[t];

        episodes.push_back(make_episode(date, std::move(slots)));
    }
    return episodes;
}

}  // namespace evsched
