// Monte Carlo generator of time-tagged detection events: pulsed two-pair
// SPDC, fixed-delay memory storage of the signal mode, polarization
// measurement and imperfect detectors (efficiency, Gaussian jitter,
// non-paralyzable dead time).
//
// All times are integer picoseconds. Randomness is drawn from one
// counter-based stream per pump pulse (rng.hpp), so pulse blocks can be
// generated on worker threads and the merged stream is identical for any
// thread count.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>
#include <future>

#include "qmux/common.hpp"
#include "qmux/density.hpp"
#include "qmux/rng.hpp"
#include "qmux/witness.hpp"

namespace qmux {

struct DetectorSpec {
    double efficiency = 1.0;
    double dead_time_ns = 0.0;
    double jitter_sigma_ps = 0.0;
};

enum class Channel : uint8_t { s_plus = 0, s_minus = 1, i_plus = 2, i_minus = 3 };

enum class PathTag : uint8_t { stored = 0, transmitted = 1, none = 2 };

inline const char* to_string(Channel c) {
    switch (c) {
        case Channel::s_plus: return "s+";
        case Channel::s_minus: return "s-";
        case Channel::i_plus: return "i+";
        case Channel::i_minus: return "i-";
    }
    return "?";
}

inline const char* to_string(PathTag p) {
    switch (p) {
        case PathTag::stored: return "stored";
        case PathTag::transmitted: return "transmitted";
        case PathTag::none: return "";
    }
    return "";
}

struct ExperimentConfig {
    double pump_rep_rate_hz = 1e7;
    double pulse_width_ns = 50.0;
    // default calibrated for a 200 Hz stored two-fold rate at the default
    // efficiencies (see calibrate_mean_pairs)
    double mean_pairs_per_pulse = 9.5238e-4;
    double visibility = 0.912;
    double coherence_time_ns = 1.9;  // analysis-scale constant; photons are point-like here
    double memory_efficiency = 0.07;
    double transmission_prob = 0.20;
    double storage_time_ns = 50.0;
    DetectorSpec signal_detector{0.40, 1000.0, 400.0};
    DetectorSpec idler_detector{0.75, 100.0, 300.0};
    SettingsPair settings = SettingsPair::standard();
    double duration_s = 1.0;
    uint64_t rng_seed = 1;
    int threads = 0;  // 0 = hardware concurrency

    int64_t period_ps() const { return std::llround(1e12 / pump_rep_rate_hz); }
    int64_t pulse_width_ps() const { return std::llround(pulse_width_ns * 1e3); }
    int64_t storage_ps() const { return std::llround(storage_time_ns * 1e3); }
    uint64_t pulse_count() const {
        return static_cast<uint64_t>(duration_s * pump_rep_rate_hz);
    }

    void validate() const {
        auto in01 = [](double p) { return p >= 0.0 && p <= 1.0; };
        if (pump_rep_rate_hz <= 0) throw ConfigError("config: pump_rep_rate_hz must be positive");
        if (pulse_width_ns <= 0) throw ConfigError("config: pulse_width_ns must be positive");
        if (mean_pairs_per_pulse < 0) throw ConfigError("config: mean_pairs_per_pulse negative");
        if (!in01(visibility)) throw ConfigError("config: visibility outside [0, 1]");
        if (!in01(memory_efficiency)) throw ConfigError("config: memory_efficiency outside [0, 1]");
        if (!in01(transmission_prob)) throw ConfigError("config: transmission_prob outside [0, 1]");
        if (memory_efficiency + transmission_prob > 1.0 + 1e-12)
            throw ConfigError("config: memory_efficiency + transmission_prob exceeds 1");
        if (!in01(signal_detector.efficiency) || !in01(idler_detector.efficiency))
            throw ConfigError("config: detector efficiency outside [0, 1]");
        if (signal_detector.dead_time_ns < 0 || idler_detector.dead_time_ns < 0)
            throw ConfigError("config: negative dead time");
        if (signal_detector.jitter_sigma_ps < 0 || idler_detector.jitter_sigma_ps < 0)
            throw ConfigError("config: negative jitter");
        if (storage_time_ns <= 0) throw ConfigError("config: storage_time_ns must be positive");
        if (duration_s < 0) throw ConfigError("config: duration_s negative");
        if (period_ps() < pulse_width_ps())
            throw ConfigError("config: repetition period shorter than pulse width");
        settings.validate();
    }

    std::vector<std::string> warnings() const {
        std::vector<std::string> w;
        if (pulse_width_ns > storage_time_ns)
            w.push_back("pulse width exceeds storage time: pairs can outlive the memory window");
        return w;
    }
};

struct DetectionEvent {
    int64_t time_ps = 0;
    Channel channel = Channel::s_plus;
    PathTag path = PathTag::none;  // simulation truth for signal clicks
    uint8_t setting_x = 0, setting_y = 0;
    uint64_t pulse_index = 0;
};

struct SettingSegment {
    uint64_t first_pulse = 0, pulse_count = 0;
    uint8_t x = 0, y = 0;
};

struct EventStream {
    ExperimentConfig config;
    std::vector<SettingSegment> segments;
    std::vector<DetectionEvent> events;
};

// pair creation times within one pulse; count ~ Poisson(mu), uniform over the
// square pump window
inline std::vector<int64_t> generate_pairs(const ExperimentConfig& cfg, uint64_t pulse_index,
                                           Rng& rng) {
    const int n = rng.poisson(cfg.mean_pairs_per_pulse);
    std::vector<int64_t> times(n);
    const int64_t start = static_cast<int64_t>(pulse_index) * cfg.period_ps();
    const uint64_t width = static_cast<uint64_t>(cfg.pulse_width_ps());
    for (auto& t : times) t = start + static_cast<int64_t>(rng.uniform_below(width));
    return times;
}

// polarization state carried by every generated pair
inline DensityMatrix pair_state(const ExperimentConfig& cfg) {
    return werner_state(cfg.visibility);
}

// sample the joint outcome (a, b) of one pair under setting (x, y)
inline std::pair<int, int> measure_pair(const ComplexMatrix& rho, int x, int y,
                                        const SettingsPair& s, Rng& rng) {
    double p[4];
    int idx = 0;
    double sum = 0;
    for (int a : {1, -1})
        for (int b : {1, -1}) {
            p[idx] = pair_probability(rho, s, x, y, a, b);
            if (p[idx] < -kAlgebraTol) throw ConfigError("measure_pair: invalid state");
            sum += p[idx];
            ++idx;
        }
    if (std::abs(sum - 1.0) > 1e-12) throw ConfigError("measure_pair: probabilities do not sum to 1");
    const double u = rng.uniform() * sum;
    double acc = 0;
    idx = 0;
    for (int a : {1, -1})
        for (int b : {1, -1}) {
            acc += p[idx++];
            if (u < acc) return {a, b};
        }
    return {-1, -1};
}

// memory routing of a signal photon: stored (fixed delay), transmitted, or lost
inline std::optional<std::pair<PathTag, int64_t>> route_signal(int64_t creation_ps,
                                                               const ExperimentConfig& cfg,
                                                               Rng& rng) {
    if (cfg.memory_efficiency + cfg.transmission_prob > 1.0 + 1e-12)
        throw ConfigError("route_signal: routing probabilities exceed 1");
    const double u = rng.uniform();
    if (u < cfg.memory_efficiency)
        return std::make_pair(PathTag::stored, creation_ps + cfg.storage_ps());
    if (u < cfg.memory_efficiency + cfg.transmission_prob)
        return std::make_pair(PathTag::transmitted, creation_ps);
    return std::nullopt;
}

// Detector response: efficiency thinning, Gaussian jitter (clamped at five
// sigma so event order across pulses is exact), non-paralyzable dead time on
// recorded times. last_click_ps is the channel state; it advances only on
// accepted clicks.
inline std::optional<int64_t> detect(int64_t arrival_ps, const DetectorSpec& spec,
                                     int64_t& last_click_ps, Rng& rng) {
    if (rng.uniform() >= spec.efficiency) return std::nullopt;
    double jit = 0.0;
    if (spec.jitter_sigma_ps > 0.0) {
        jit = rng.gaussian();
        jit = std::clamp(jit, -5.0, 5.0) * spec.jitter_sigma_ps;
    }
    const int64_t recorded = arrival_ps + std::llround(jit);
    const int64_t dead_ps = std::llround(spec.dead_time_ns * 1e3);
    if (last_click_ps > std::numeric_limits<int64_t>::min() &&
        recorded - last_click_ps < dead_ps)
        return std::nullopt;
    last_click_ps = recorded;
    return recorded;
}

namespace sim_detail {

struct Candidate {
    int64_t time_ps;
    Channel channel;
    PathTag path;
    uint64_t pulse_index;
    uint8_t x, y;
};

// every detector candidate of one pulse, efficiency and jitter applied but
// dead time not yet
struct PulseScratch {
    std::vector<Candidate> out;
};

struct SettingSchedule {
    uint64_t pulses_total;
    uint64_t quarter;

    std::pair<uint8_t, uint8_t> setting_for(uint64_t pulse) const {
        const uint64_t seg = quarter == 0 ? 3 : std::min<uint64_t>(pulse / quarter, 3);
        return {static_cast<uint8_t>(seg >> 1), static_cast<uint8_t>(seg & 1)};
    }
};

// generate all candidates of one pulse; rng consumption order is fixed:
// poisson, then per pair (time, outcome, route), then per photon the
// detector draws
inline void simulate_pulse(const ExperimentConfig& cfg, uint64_t pulse_index, uint8_t x,
                           uint8_t y, const double prob_table[4][4], double exp_neg_mu,
                           PulseScratch& scratch) {
    Rng rng = Rng::stream_for(cfg.rng_seed, pulse_index);
    // inline Poisson with precomputed exp(-mu): identical draw sequence to
    // Rng::poisson
    int npairs = 0;
    {
        double prod = rng.uniform();
        while (prod > exp_neg_mu) {
            prod *= rng.uniform();
            ++npairs;
        }
    }
    if (npairs == 0) return;

    const int64_t start = static_cast<int64_t>(pulse_index) * cfg.period_ps();
    const uint64_t width = static_cast<uint64_t>(cfg.pulse_width_ps());
    const double* probs = prob_table[2 * x + y];
    for (int i = 0; i < npairs; ++i) {
        const int64_t t = start + static_cast<int64_t>(rng.uniform_below(width));
        // outcome
        const double u = rng.uniform();
        int cell = 0;
        double acc = 0;
        for (; cell < 3; ++cell) {
            acc += probs[cell];
            if (u < acc) break;
        }
        const int a = (cell < 2) ? +1 : -1;
        const int b = (cell % 2 == 0) ? +1 : -1;
        // signal routing
        const double ur = rng.uniform();
        bool routed = false;
        PathTag path = PathTag::none;
        int64_t t_signal = 0;
        if (ur < cfg.memory_efficiency) {
            routed = true;
            path = PathTag::stored;
            t_signal = t + cfg.storage_ps();
        } else if (ur < cfg.memory_efficiency + cfg.transmission_prob) {
            routed = true;
            path = PathTag::transmitted;
            t_signal = t;
        }
        // detector thinning + jitter (dead time applied later, in time order)
        if (routed) {
            if (rng.uniform() < cfg.signal_detector.efficiency) {
                double jit = rng.gaussian();
                jit = std::clamp(jit, -5.0, 5.0) * cfg.signal_detector.jitter_sigma_ps;
                scratch.out.push_back({t_signal + std::llround(jit),
                                       a > 0 ? Channel::s_plus : Channel::s_minus, path,
                                       pulse_index, x, y});
            }
        }
        if (rng.uniform() < cfg.idler_detector.efficiency) {
            double jit = rng.gaussian();
            jit = std::clamp(jit, -5.0, 5.0) * cfg.idler_detector.jitter_sigma_ps;
            scratch.out.push_back({t + std::llround(jit),
                                   b > 0 ? Channel::i_plus : Channel::i_minus, PathTag::none,
                                   pulse_index, x, y});
        }
    }
    std::sort(scratch.out.begin(), scratch.out.end(),
              [](const Candidate& l, const Candidate& r) { return l.time_ps < r.time_ps; });
}

}  // namespace sim_detail

// Streams detection events in time order into `sink`. Pulse blocks are
// generated independently (optionally on worker threads); the per-channel
// dead-time filter is one sequential pass over the merged stream.
inline void run_events(const ExperimentConfig& cfg,
                       const std::function<void(const DetectionEvent&)>& sink,
                       std::vector<SettingSegment>* segments_out = nullptr) {
    cfg.validate();
    const uint64_t pulses = cfg.pulse_count();
    sim_detail::SettingSchedule sched{pulses, pulses / 4};
    if (segments_out) {
        segments_out->clear();
        if (pulses > 0) {
            for (int s = 0; s < 4; ++s) {
                const uint64_t first = sched.quarter * s;
                const uint64_t count =
                    (s == 3) ? pulses - sched.quarter * 3 : sched.quarter;
                if (count == 0 && s < 3) continue;
                segments_out->push_back({first, count, static_cast<uint8_t>(s >> 1),
                                         static_cast<uint8_t>(s & 1)});
            }
        }
    }
    if (pulses == 0) return;

    // per-setting outcome probabilities, order (+,+), (+,-), (-,+), (-,-)
    double prob_table[4][4];
    const DensityMatrix rho = pair_state(cfg);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            int idx = 0;
            for (int a : {1, -1})
                for (int b : {1, -1})
                    prob_table[2 * x + y][idx++] =
                        pair_probability(rho.mat, cfg.settings, x, y, a, b);
        }
    const double exp_neg_mu = std::exp(-cfg.mean_pairs_per_pulse);

    int64_t last_click[4] = {std::numeric_limits<int64_t>::min(),
                             std::numeric_limits<int64_t>::min(),
                             std::numeric_limits<int64_t>::min(),
                             std::numeric_limits<int64_t>::min()};
    const int64_t dead_ps[4] = {std::llround(cfg.signal_detector.dead_time_ns * 1e3),
                                std::llround(cfg.signal_detector.dead_time_ns * 1e3),
                                std::llround(cfg.idler_detector.dead_time_ns * 1e3),
                                std::llround(cfg.idler_detector.dead_time_ns * 1e3)};

    auto emit_block = [&](const std::vector<sim_detail::Candidate>& cands) {
        for (const auto& c : cands) {
            const int ch = static_cast<int>(c.channel);
            if (last_click[ch] > std::numeric_limits<int64_t>::min() &&
                c.time_ps - last_click[ch] < dead_ps[ch])
                continue;  // non-paralyzable: suppressed, no state update
            last_click[ch] = c.time_ps;
            sink({c.time_ps, c.channel, c.path, c.x, c.y, c.pulse_index});
        }
    };

    const uint64_t block = 1 << 16;
    int nthreads = cfg.threads > 0 ? cfg.threads
                                   : static_cast<int>(std::thread::hardware_concurrency());
    nthreads = std::max(1, std::min(nthreads, 8));

    auto gen_block = [&](uint64_t first, uint64_t count) {
        std::vector<sim_detail::Candidate> out;
        sim_detail::PulseScratch scratch;
        for (uint64_t p = first; p < first + count; ++p) {
            const auto [x, y] = sched.setting_for(p);
            scratch.out.clear();
            sim_detail::simulate_pulse(cfg, p, x, y, prob_table, exp_neg_mu, scratch);
            out.insert(out.end(), scratch.out.begin(), scratch.out.end());
        }
        return out;
    };

    if (nthreads <= 1) {
        for (uint64_t first = 0; first < pulses; first += block)
            emit_block(gen_block(first, std::min(block, pulses - first)));
    } else {
        // bounded pipeline: a few blocks in flight, merged strictly in order
        std::vector<std::future<std::vector<sim_detail::Candidate>>> inflight;
        uint64_t next_launch = 0, next_merge = 0;
        const int depth = nthreads;
        while (next_merge < pulses) {
            while (next_launch < pulses && inflight.size() < static_cast<size_t>(depth)) {
                const uint64_t count = std::min(block, pulses - next_launch);
                inflight.push_back(
                    std::async(std::launch::async, gen_block, next_launch, count));
                next_launch += count;
            }
            auto cands = inflight.front().get();
            inflight.erase(inflight.begin());
            emit_block(cands);
            next_merge += std::min(block, pulses - next_merge);
        }
    }
}

inline EventStream run(const ExperimentConfig& cfg) {
    EventStream stream;
    stream.config = cfg;
    run_events(cfg, [&](const DetectionEvent& e) { stream.events.push_back(e); },
               &stream.segments);
    return stream;
}

// closed-form pair rate calibration: stored two-fold coincidence rate =
// rep_rate * mu * memory_efficiency * signal_eff * idler_eff
inline double calibrate_mean_pairs(const ExperimentConfig& cfg, double target_stored_rate_hz) {
    const double denom = cfg.pump_rep_rate_hz * cfg.memory_efficiency *
                         cfg.signal_detector.efficiency * cfg.idler_detector.efficiency;
    if (denom <= 0) throw ConfigError("calibrate_mean_pairs: zero detection chain");
    return target_stored_rate_hz / denom;
}

}  // namespace qmux
