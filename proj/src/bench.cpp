#include "bvl/bench.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

namespace bvl {

namespace {
// comparator resolution of the switching threshold, relative to P_c
constexpr double kSwitchTol = 1e-6;
}

double ValveSimModel::response_time(unsigned n) const {
    if (degradation)
        return degradation->first * std::exp(degradation->second * n);
    return base_response_time_s;
}

bool ValveSimModel::leaking() const {
    return leak_threshold && cycle_count >= *leak_threshold;
}

ValveSimModel ValveSimModel::chemical_preset() {
    ValveSimModel v;
    v.critical_pressure_kPa = 25.0;
    v.degradation = {{0.341, 0.00388}};
    v.base_response_time_s = 0.341;
    return v;
}

ValveSimModel ValveSimModel::physical_preset() {
    ValveSimModel v;
    v.critical_pressure_kPa = 25.0;
    v.degradation = {{2.09, 0.0280}};
    v.base_response_time_s = 2.09;
    v.leak_threshold = 32;
    return v;
}

TestBench::TestBench(ValveSimModel valve, BenchConfig cfg)
    : valve_(valve), cfg_(cfg), Q_(cfg.pump_flow_mL_min) {
    if (!(cfg_.dt_s > 0.0) || cfg_.dt_s > 1e-3 + 1e-12)
        throw std::invalid_argument("dt must be in (0, 1 ms]");
    response_time_s_ = valve_.response_time(valve_.cycle_count);
    const double stride = 1.0 / (cfg_.sample_rate_hz * cfg_.dt_s);
    log_stride_ = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(stride)));
}

void TestBench::set_target_pressure(double kPa) {
    target_ = kPa;
    log_.target_pressure_kPa = kPa;
}

void TestBench::set_solenoid(std::size_t idx, bool on) {
    solenoid_.at(idx) = on;
}

void TestBench::set_monitored_channel(ValveState blocking_state) {
    monitored_blocking_state_ = blocking_state;
}

void TestBench::set_valve_state(ValveState s) {
    valve_state_ = s;
}

void TestBench::schedule_block() {
    if (decay_start_time_ || !band_entry_time_) return;
    if (valve_state_ != monitored_blocking_state_ || valve_.leaking()) return;
    // the flow crosses the blocked threshold exactly one response time
    // after the engagement stamp
    const double lead =
        cfg_.tau_block_s *
        std::log(cfg_.pump_flow_mL_min / cfg_.flow_blocked_threshold);
    decay_start_time_ = *band_entry_time_ + response_time_s_ - lead;
}

void TestBench::step(double dt_s) {
    if (!(dt_s > 0.0) || dt_s > 1e-3 + 1e-12)
        throw std::invalid_argument("dt must be in (0, 1 ms]");
    const double t_next = t_ + dt_s;

    // reservoir under PI(D) regulation while S0 is on
    if (solenoid_[0]) {
        const double e = target_ - P_res_;
        pid_integral_ += e * dt_s;
        const double de = (e - pid_prev_error_) / dt_s;
        pid_prev_error_ = e;
        const double u = cfg_.pid_kp * e + cfg_.pid_ki * pid_integral_ +
                         cfg_.pid_kd * de;
        P_res_ = std::max(0.0, P_res_ + cfg_.actuator_gain * u * dt_s);
    }

    // chambers: first-order lag toward reservoir when engaged, else
    // toward atmosphere; venting overrides engagement
    const double relax = 1.0 - std::exp(-dt_s / cfg_.tau_fill_s);
    const double src2 = (solenoid_[2] && !solenoid_[1]) ? P_res_ : 0.0;
    const double src1 = (solenoid_[5] && !solenoid_[4]) ? P_res_ : 0.0;
    const double prev_P1 = P1_;
    const double prev_P2 = P2_;
    P1_ += (src1 - P1_) * relax;
    P2_ += (src2 - P2_) * relax;

    // valve state machine: toggles only on upward crossings of P_c in
    // the chamber that drives the opposite state
    const double thr = valve_.critical_pressure_kPa * (1.0 - kSwitchTol);
    if (valve_state_ == ValveState::state_I && prev_P2 < thr && P2_ >= thr) {
        valve_state_ = ValveState::state_II;
        ++toggles_;
        schedule_block();
    } else if (valve_state_ == ValveState::state_II && prev_P1 < thr &&
               P1_ >= thr) {
        valve_state_ = ValveState::state_I;
        ++toggles_;
        schedule_block();
    }

    // engagement-stamp tracking on the driving chamber of the monitored
    // switch; frozen once the flow decay is scheduled
    if (!decay_start_time_ && target_ > 0.0) {
        const double drive =
            monitored_blocking_state_ == ValveState::state_II ? P2_ : P1_;
        const bool in_band = std::abs(drive - target_) <= 0.02 * target_;
        if (in_band && !band_entry_time_)
            band_entry_time_ = t_next;
        else if (!in_band && band_entry_time_)
            band_entry_time_.reset();
        schedule_block();
    }

    // controlled flow
    const bool blocked =
        valve_state_ == monitored_blocking_state_ && !valve_.leaking();
    if (!blocked) {
        decay_start_time_.reset();
        Q_ += (cfg_.pump_flow_mL_min - Q_) * (1.0 - std::exp(-dt_s / cfg_.tau_block_s));
    } else if (decay_start_time_ && t_next > *decay_start_time_) {
        const double span = t_next - std::max(t_, *decay_start_time_);
        Q_ *= std::exp(-span / cfg_.tau_block_s);
    }

    t_ = t_next;
    if (cfg_.log_enabled && ++steps_since_sample_ >= log_stride_) {
        steps_since_sample_ = 0;
        log_.samples.push_back(
            {t_, P_res_, P1_, P2_, Q_, valve_state_, solenoid_});
    }
}

void TestBench::run_for(double seconds) {
    const auto n = static_cast<std::size_t>(std::lround(seconds / cfg_.dt_s));
    for (std::size_t i = 0; i < n; ++i) step(cfg_.dt_s);
}

ProtocolResult TestBench::run_algorithm_1(double delta_p_kPa, double start_kPa) {
    if (!(delta_p_kPa > 0.0))
        throw std::invalid_argument("pressure step must be positive");
    std::mt19937_64 rng(cfg_.seed);
    // symmetric structure: the measured direction is randomly chosen
    const bool drive_ch2 = std::uniform_int_distribution<int>(0, 1)(rng) == 1;
    const std::size_t engage = drive_ch2 ? 2 : 5;
    const std::size_t vent_drive = drive_ch2 ? 1 : 4;
    const std::size_t vent_other = drive_ch2 ? 4 : 1;
    const ValveState target_state =
        drive_ch2 ? ValveState::state_II : ValveState::state_I;
    set_monitored_channel(target_state);
    valve_state_ =
        drive_ch2 ? ValveState::state_I : ValveState::state_II;
    Q_ = cfg_.pump_flow_mL_min;

    ProtocolResult result;
    double p_target = start_kPa;
    bool found = false;
    std::size_t success_log_start = 0;
    for (unsigned trial = 0; trial < cfg_.max_trials && !found; ++trial) {
        for (std::size_t s = 1; s <= 5; ++s) solenoid_[s] = false;
        band_entry_time_.reset();
        decay_start_time_.reset();
        response_time_s_ = valve_.response_time(valve_.cycle_count);
        const std::size_t log_start = log_.samples.size();

        set_target_pressure(p_target);
        solenoid_[0] = true;
        run_for(cfg_.settle_time_s);
        solenoid_[vent_other] = true;
        solenoid_[engage] = true;
        run_for(10.0);
        solenoid_[engage] = false;
        solenoid_[vent_drive] = true;
        run_for(5.0);
        if (Q_ <= cfg_.flow_blocked_threshold) {
            result.measured_Pc_kPa = p_target;
            success_log_start = log_start;
            found = true;
        } else {
            p_target += delta_p_kPa;
        }
        solenoid_[vent_drive] = true;
        solenoid_[vent_other] = true;
        run_for(5.0);
        solenoid_[vent_drive] = false;
        solenoid_[vent_other] = false;
        ++result.trials;
    }
    if (!found)
        throw BenchError("never switched");
    result.total_sim_time_s = t_;
    if (cfg_.log_enabled) {
        BenchLog slice;
        slice.target_pressure_kPa = result.measured_Pc_kPa;
        slice.samples.assign(log_.samples.begin() + success_log_start,
                             log_.samples.end());
        result.response_times_s.push_back(extract_response_time(
            slice, cfg_.flow_blocked_threshold));
        result.log = std::move(log_);
    }
    return result;
}

ProtocolResult TestBench::run_algorithm_2(unsigned cycles) {
    set_monitored_channel(ValveState::state_II);
    valve_state_ = ValveState::state_I;
    set_target_pressure(35.0);  // fatigue driving pressure, above P_c
    Q_ = cfg_.pump_flow_mL_min;
    solenoid_[0] = true;

    ProtocolResult result;
    for (unsigned n = 1; n <= cycles; ++n) {
        response_time_s_ = valve_.response_time(n);
        band_entry_time_.reset();
        decay_start_time_.reset();

        run_for(cfg_.settle_time_s);
        solenoid_[2] = true;
        run_for(10.0);
        solenoid_[2] = false;
        solenoid_[1] = true;
        run_for(5.0);
        solenoid_[1] = false;
        const bool blocked = Q_ <= cfg_.flow_blocked_threshold;

        run_for(cfg_.settle_time_s);
        solenoid_[5] = true;
        run_for(10.0);
        solenoid_[5] = false;
        solenoid_[4] = true;
        run_for(5.0);
        solenoid_[4] = false;

        if (!blocked) {
            // leakage: the valve no longer seals the controlled channel
            result.failure_cycle = valve_.cycle_count;
            break;
        }
        result.response_times_s.push_back(response_time_s_);
        ++valve_.cycle_count;
        ++result.trials;
    }
    result.total_sim_time_s = t_;
    if (cfg_.log_enabled) result.log = std::move(log_);
    return result;
}

ProtocolResult run_algorithm_1(const ValveSimModel& valve, double delta_p_kPa,
                               double start_kPa, const BenchConfig& cfg) {
    TestBench bench(valve, cfg);
    return bench.run_algorithm_1(delta_p_kPa, start_kPa);
}

ProtocolResult run_algorithm_2(const ValveSimModel& valve, unsigned cycles,
                               const BenchConfig& cfg) {
    TestBench bench(valve, cfg);
    return bench.run_algorithm_2(cycles);
}

namespace {

// first index at which `ok` holds for `need` consecutive samples
std::optional<std::size_t> first_stable(const std::vector<LogSample>& samples,
                                        std::size_t from, std::size_t need,
                                        const std::function<bool(const LogSample&)>& ok) {
    std::size_t run = 0;
    for (std::size_t i = from; i < samples.size(); ++i) {
        if (ok(samples[i])) {
            if (++run >= need) return i - need + 1;
        } else {
            run = 0;
        }
    }
    return std::nullopt;
}

}  // namespace

double extract_response_time(const BenchLog& log, double flow_threshold_mL_min) {
    constexpr std::size_t kStableSamples = 50;
    const double target = log.target_pressure_kPa;
    if (!(target > 0.0))
        throw BenchError("event not found: no target pressure in log");
    const double band = 0.02 * target;
    const auto engaged = first_stable(
        log.samples, 0, kStableSamples, [&](const LogSample& s) {
            return std::abs(s.P1_kPa - target) <= band ||
                   std::abs(s.P2_kPa - target) <= band;
        });
    if (!engaged)
        throw BenchError("event not found: driving pressure never stabilised");
    const auto blocked = first_stable(
        log.samples, *engaged, kStableSamples, [&](const LogSample& s) {
            return s.Q_mL_min <= flow_threshold_mL_min;
        });
    if (!blocked)
        throw BenchError("event not found: controlled flow never blocked");
    return log.samples[*blocked].t_s - log.samples[*engaged].t_s;
}

ExponentialFit fit_exponential(const std::vector<std::pair<double, double>>& series) {
    if (series.size() < 10)
        throw std::invalid_argument("need at least 10 samples to fit");
    double sn = 0, sl = 0, snn = 0, snl = 0;
    for (const auto& [n, T] : series) {
        if (!(T > 0.0))
            throw std::invalid_argument("response times must be positive");
        const double l = std::log(T);
        sn += n;
        sl += l;
        snn += n * n;
        snl += n * l;
    }
    const double m = static_cast<double>(series.size());
    const double denom = m * snn - sn * sn;
    if (denom == 0.0)
        throw std::invalid_argument("degenerate abscissae");
    const double b = (m * snl - sn * sl) / denom;
    const double ln_a = (sl - b * sn) / m;
    double ss = 0;
    for (const auto& [n, T] : series) {
        const double r = std::log(T) - (ln_a + b * n);
        ss += r * r;
    }
    return {std::exp(ln_a), b, std::sqrt(ss / m)};
}

void write_log_csv(const BenchLog& log, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path);
    out << "t_s,P_reservoir_kPa,P1_kPa,P2_kPa,Q_mL_min,valve_state,"
           "S0,S1,S2,S3,S4,S5\n";
    char buf[256];
    for (const auto& s : log.samples) {
        std::snprintf(buf, sizeof(buf), "%.9g,%.9g,%.9g,%.9g,%.9g,%d", s.t_s,
                      s.P_reservoir_kPa, s.P1_kPa, s.P2_kPa, s.Q_mL_min,
                      static_cast<int>(s.valve_state));
        out << buf;
        for (bool on : s.solenoids) out << ',' << (on ? 1 : 0);
        out << "\n";
    }
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open scenario: " + path);
    Scenario sc;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("bad scenario line (want key=value): " + line);
        std::string key = line.substr(0, eq);
        key.erase(std::remove_if(key.begin(), key.end(), ::isspace), key.end());
        const double val = std::stod(line.substr(eq + 1));
        if (key == "Pc") sc.valve.critical_pressure_kPa = val;
        else if (key == "T0") sc.valve.base_response_time_s = val;
        else if (key == "a") {
            if (!sc.valve.degradation) sc.valve.degradation = {{val, 0.0}};
            else sc.valve.degradation->first = val;
        } else if (key == "b") {
            if (!sc.valve.degradation) sc.valve.degradation = {{0.0, val}};
            else sc.valve.degradation->second = val;
        } else if (key == "leak_threshold")
            sc.valve.leak_threshold = static_cast<unsigned>(val);
        else if (key == "dp") sc.delta_p_kPa = val;
        else if (key == "start") sc.start_kPa = val;
        else if (key == "cycles") sc.cycles = static_cast<unsigned>(val);
        else if (key == "sample_rate") sc.bench.sample_rate_hz = val;
        else if (key == "seed") sc.bench.seed = static_cast<std::uint64_t>(val);
        else if (key == "dt") sc.bench.dt_s = val;
        else if (key == "tau_fill") sc.bench.tau_fill_s = val;
        else if (key == "tau_block") sc.bench.tau_block_s = val;
        else if (key == "pump_flow") sc.bench.pump_flow_mL_min = val;
        else if (key == "settle") sc.bench.settle_time_s = val;
        else if (key == "max_trials") sc.bench.max_trials = static_cast<unsigned>(val);
        else throw std::runtime_error("unknown scenario key: " + key);
    }
    if (sc.valve.degradation &&
        !(sc.valve.degradation->first > 0.0))
        throw std::runtime_error("degradation amplitude must be positive");
    return sc;
}

}  // namespace bvl
