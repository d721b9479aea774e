// Reduction of event streams to the experiment's observables: two-fold delay
// histograms, four-fold extraction under the complementary-port constraint,
// pair-delay histograms, mode-capacity counting, and path classification.
#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "qmux/common.hpp"
#include "qmux/simulate.hpp"
#include "qmux/witness.hpp"

namespace qmux {

struct Histogram {
    int64_t bin_width_ps = 1;
    int64_t origin_ps = 0;
    std::vector<uint64_t> counts;
    std::string label;

    uint64_t total() const {
        uint64_t t = 0;
        for (auto c : counts) t += c;
        return t;
    }
    int64_t bin_start(size_t i) const {
        return origin_ps + static_cast<int64_t>(i) * bin_width_ps;
    }
    // adds a value if it falls inside the axis; returns whether it did
    bool add(int64_t v) {
        if (v < origin_ps) return false;
        const size_t i = static_cast<size_t>((v - origin_ps) / bin_width_ps);
        if (i >= counts.size()) return false;
        ++counts[i];
        return true;
    }
};

enum class PairClass : uint8_t {
    stored_stored = 0,
    stored_transmitted = 1,
    transmitted_stored = 2,
    transmitted_transmitted = 3
};

inline const char* to_string(PairClass c) {
    switch (c) {
        case PairClass::stored_stored: return "stored-stored";
        case PairClass::stored_transmitted: return "stored-transmitted";
        case PairClass::transmitted_stored: return "transmitted-stored";
        case PairClass::transmitted_transmitted: return "transmitted-transmitted";
    }
    return "?";
}

// one four-fold coincidence: two complementary detected pairs in one pulse
struct FourFold {
    uint64_t pulse_index = 0;
    uint8_t x = 0, y = 0;
    int a = +1, b = +1;        // first (earlier) pair's ports; second pair is (-a, -b)
    int64_t delta_t_ps = 0;    // delay between the two pairs (> 0)
    PairClass path_class = PairClass::stored_stored;
};

struct CoincidenceOptions {
    double window_ns = 5.0;      // per-leg pairing window around 0 / storage offsets
    double min_delay_ns = 5.0;   // certification cut on the pair delay
    double max_delay_ns = 50.0;
    double storage_time_ns = 50.0;
};

struct CoincidenceDiagnostics {
    uint64_t dropped_ambiguous = 0;   // both pairings consistent
    uint64_t unclassifiable = 0;      // no pairing fits the path windows
    uint64_t excluded_by_delay = 0;   // outside [min_delay, max_delay]
};

namespace coin_detail {

// leg classification: transmitted near 0 offset, stored near the storage time
inline std::optional<PathTag> classify_leg(int64_t signal_ps, int64_t idler_ps,
                                           const CoincidenceOptions& opt) {
    const int64_t d = signal_ps - idler_ps;
    const int64_t w = std::llround(opt.window_ns * 1e3);
    const int64_t stored = std::llround(opt.storage_time_ns * 1e3);
    const bool trans = std::llabs(d) <= w;
    const bool stor = std::llabs(d - stored) <= w;
    if (trans && !stor) return PathTag::transmitted;
    if (stor && !trans) return PathTag::stored;
    if (trans && stor) return std::nullopt;  // windows overlap: caller treats as ambiguous
    return std::nullopt;
}

struct PulseClicks {
    int64_t t[4];
    bool seen[4] = {false, false, false, false};
    uint64_t pulse = 0;
    uint8_t x = 0, y = 0;
    int count = 0;
};

}  // namespace coin_detail

// Histogram of (t_signal - t_idler) over all click pairs of the two channels
// whose delay falls on the axis.
inline Histogram twofold_histogram(const std::vector<DetectionEvent>& events, Channel signal,
                                   Channel idler, int64_t bin_width_ps, int64_t origin_ps,
                                   size_t bins) {
    if (bin_width_ps <= 0) throw ConfigError("twofold_histogram: bin width must be positive");
    Histogram h;
    h.bin_width_ps = bin_width_ps;
    h.origin_ps = origin_ps;
    h.counts.assign(bins, 0);
    h.label = std::string(to_string(signal)) + " vs " + to_string(idler) + " delay";
    std::vector<int64_t> st, it;
    for (const auto& e : events) {
        if (e.channel == signal) st.push_back(e.time_ps);
        if (e.channel == idler) it.push_back(e.time_ps);
    }
    const int64_t lo = origin_ps;
    const int64_t hi = origin_ps + static_cast<int64_t>(bins) * bin_width_ps;
    size_t j0 = 0;
    for (const int64_t ts : st) {
        // idlers with ts - ti in [lo, hi)  <=>  ti in (ts - hi, ts - lo]
        while (j0 < it.size() && it[j0] <= ts - hi) ++j0;
        for (size_t j = j0; j < it.size() && it[j] <= ts - lo; ++j) h.add(ts - it[j]);
    }
    return h;
}

// Total rate of stored two-fold coincidences (all four channel combinations),
// counted in a +-window/2 gate around the storage offset.
inline double stored_twofold_rate(const std::vector<DetectionEvent>& events,
                                  const ExperimentConfig& cfg, double window_ns = 4.0) {
    if (cfg.duration_s <= 0) return 0.0;
    const int64_t half = std::llround(window_ns * 500.0);  // window/2 in ps
    const int64_t offset = cfg.storage_ps();
    uint64_t n = 0;
    std::vector<int64_t> st, it;
    for (const auto& e : events) {
        if (e.channel == Channel::s_plus || e.channel == Channel::s_minus)
            st.push_back(e.time_ps);
        else
            it.push_back(e.time_ps);
    }
    size_t j0 = 0;
    for (const int64_t ts : st) {
        while (j0 < it.size() && it[j0] < ts - offset - half) ++j0;
        for (size_t j = j0; j < it.size() && it[j] <= ts - offset + half; ++j) ++n;
    }
    return static_cast<double>(n) / cfg.duration_s;
}

// path classification of a candidate pairing; exposed for tests
inline std::optional<PairClass> classify_fourfold(int64_t s_first, int64_t i_first,
                                                  int64_t s_second, int64_t i_second,
                                                  const CoincidenceOptions& opt) {
    const auto leg1 = coin_detail::classify_leg(s_first, i_first, opt);
    const auto leg2 = coin_detail::classify_leg(s_second, i_second, opt);
    if (!leg1 || !leg2) return std::nullopt;
    if (*leg1 == PathTag::stored)
        return *leg2 == PathTag::stored ? PairClass::stored_stored
                                        : PairClass::stored_transmitted;
    return *leg2 == PathTag::stored ? PairClass::transmitted_stored
                                    : PairClass::transmitted_transmitted;
}

// first pair's class with the pair order swapped
inline PairClass swap_pair_class(PairClass c) {
    switch (c) {
        case PairClass::stored_transmitted: return PairClass::transmitted_stored;
        case PairClass::transmitted_stored: return PairClass::stored_transmitted;
        default: return c;
    }
}

// Extract four-fold coincidences: exactly one click on each of the four
// detectors within a pulse, signal-idler pairing resolved by path-class
// consistency, complementary ports structural. Events must be time-ordered.
inline std::vector<FourFold> extract_fourfolds(const std::vector<DetectionEvent>& events,
                                               const CoincidenceOptions& opt,
                                               CoincidenceDiagnostics* diag = nullptr) {
    std::vector<FourFold> out;
    CoincidenceDiagnostics local;
    const int64_t min_d = std::llround(opt.min_delay_ns * 1e3);
    const int64_t max_d = std::llround(opt.max_delay_ns * 1e3);

    auto flush = [&](const coin_detail::PulseClicks& pc) {
        if (pc.count != 4) return;  // dead time guarantees at most one click per channel
        const int64_t sp = pc.t[0], sm = pc.t[1], ip = pc.t[2], im = pc.t[3];
        // pairing A: (s+, i+) & (s-, i-); pairing B: (s+, i-) & (s-, i+)
        const auto clsA = classify_fourfold(sp, ip, sm, im, opt);
        const auto clsB = classify_fourfolds_helper(sp, im, sm, ip, opt);
        if (clsA && clsB) {
            ++local.dropped_ambiguous;
            return;
        }
        if (!clsA && !clsB) {
            ++local.unclassifiable;
            return;
        }
        FourFold f;
        f.pulse_index = pc.pulse;
        f.x = pc.x;
        f.y = pc.y;
        int64_t t1, t2;  // pair times (idler side, direct path)
        int a_first, b_first;
        PairClass cls;
        if (clsA) {
            // pairs: (s+, i+) -> pattern (+, +); (s-, i-) -> (-, -)
            if (ip <= im) {
                t1 = ip; t2 = im; a_first = +1; b_first = +1; cls = *clsA;
            } else {
                t1 = im; t2 = ip; a_first = -1; b_first = -1;
                cls = swap_pair_class(*clsA);
            }
        } else {
            // pairs: (s+, i-) -> (+, -); (s-, i+) -> (-, +)
            if (im <= ip) {
                t1 = im; t2 = ip; a_first = +1; b_first = -1; cls = *clsB;
            } else {
                t1 = ip; t2 = im; a_first = -1; b_first = +1;
                cls = swap_pair_class(*clsB);
            }
        }
        const int64_t dt = t2 - t1;
        if (dt < min_d || dt > max_d) {
            ++local.excluded_by_delay;
            return;
        }
        f.a = a_first;
        f.b = b_first;
        f.delta_t_ps = dt;
        f.path_class = cls;
        out.push_back(f);
    };

    coin_detail::PulseClicks cur;
    bool have = false;
    for (const auto& e : events) {
        if (!have || e.pulse_index != cur.pulse) {
            if (have) flush(cur);
            cur = {};
            cur.pulse = e.pulse_index;
            cur.x = e.setting_x;
            cur.y = e.setting_y;
            have = true;
        }
        const int ch = static_cast<int>(e.channel);
        if (cur.seen[ch]) throw DataError("extract_fourfolds: two clicks on one channel in a pulse");
        cur.seen[ch] = true;
        cur.t[ch] = e.time_ps;
        ++cur.count;
    }
    if (have) flush(cur);
    if (diag) *diag = local;
    return out;
}

// first pair's class with the pair order swapped
inline PairClass swap_pair_class(PairClass c) {
    switch (c) {
        case PairClass::stored_transmitted: return PairClass::transmitted_stored;
        case PairClass::transmitted_stored: return PairClass::stored_transmitted;
        default: return c;
    }
}

inline std::optional<PairClass> classify_fourfolds_helper(int64_t s1, int64_t i1, int64_t s2,
                                                          int64_t i2,
                                                          const CoincidenceOptions& opt) {
    return classify_fourfold(s1, i1, s2, i2, opt);
}

// histogram of pair delays
inline Histogram fourfold_delay_histogram(const std::vector<FourFold>& ffs,
                                          double bin_ns = 5.0, double origin_ns = 5.0,
                                          size_t bins = 9) {
    Histogram h;
    h.bin_width_ps = std::llround(bin_ns * 1e3);
    h.origin_ps = std::llround(origin_ns * 1e3);
    h.counts.assign(bins, 0);
    h.label = "pair delay";
    for (const auto& f : ffs) {
        int64_t v = f.delta_t_ps;
        // right edge closes the last bin (delay == origin + bins*width)
        if (v == h.origin_ps + static_cast<int64_t>(bins) * h.bin_width_ps) --v;
        h.add(v);
    }
    return h;
}

// Temporal mode capacity from the pair-delay histogram with the fixed 5 ns
// division grid: occupied divisions + 1 (divisions separate modes), 0 when
// empty.
inline int mode_capacity(const Histogram& h) {
    int occupied = 0;
    for (auto c : h.counts)
        if (c > 0) ++occupied;
    return occupied == 0 ? 0 : occupied + 1;
}

// 16-cell count table for one path class
inline CountTable count_table(const std::vector<FourFold>& ffs, PairClass cls) {
    CountTable t;
    for (const auto& f : ffs)
        if (f.path_class == cls) t.at(f.x, f.y, f.a, f.b) += 1.0;
    return t;
}

}  // namespace qmux
