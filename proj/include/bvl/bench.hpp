#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

// Discrete-time simulator of the pneumatic characterization rig and the
// valve's two-state machine, plus the measurement protocols that run on
// it: the incremental critical-pressure search, the fatigue cycling
// protocol, and response-time extraction from logged time series.

namespace bvl {

class BenchError : public std::runtime_error {
  public:
    explicit BenchError(const std::string& what) : std::runtime_error(what) {}
};

enum class ValveState { state_I = 1, state_II = 2 };

struct ValveSimModel {
    double critical_pressure_kPa = 25.0;
    double base_response_time_s = 0.5;
    // response time grows as a*exp(b*n) with the cycle count when set
    std::optional<std::pair<double, double>> degradation;  // (a_s, b_per_cycle)
    std::optional<unsigned> leak_threshold;  // complete cycles before leakage
    unsigned cycle_count = 0;

    double response_time(unsigned n) const;
    bool leaking() const;

    // Fatigue presets fitted to the two support-removal routes.
    static ValveSimModel chemical_preset();
    static ValveSimModel physical_preset();
};

struct BenchConfig {
    double dt_s = 1e-3;            // integration step, <= 1 ms
    double sample_rate_hz = 1000;  // log rate (10 kHz available via config)
    double tau_fill_s = 0.5;       // chamber fill/vent time constant
    double tau_block_s = 0.01;     // flow decay after blocking
    double pump_flow_mL_min = 100.0;
    double flow_blocked_threshold = 5.0;  // mL/min
    double pid_kp = 2.0;
    double pid_ki = 1.0;
    double pid_kd = 0.0;
    double actuator_gain = 10.0;  // reservoir kPa/s per unit of PID output
    double settle_time_s = 3.0;   // reservoir settling phase per trial
    unsigned max_trials = 200;
    std::uint64_t seed = 0;
    bool log_enabled = true;
};

struct LogSample {
    double t_s;
    double P_reservoir_kPa;
    double P1_kPa;
    double P2_kPa;
    double Q_mL_min;
    ValveState valve_state;
    std::array<bool, 6> solenoids;  // S0..S5
};

struct BenchLog {
    double target_pressure_kPa = 0.0;
    std::vector<LogSample> samples;
};

struct ProtocolResult {
    double measured_Pc_kPa = 0.0;
    std::vector<double> response_times_s;
    unsigned trials = 0;
    std::optional<unsigned> failure_cycle;  // complete cycles before leakage
    double total_sim_time_s = 0.0;
    BenchLog log;
};

// Solenoid roles: S0 reservoir regulation enable, S1 vents chamber 2,
// S2 engages chamber 2, S3 spare, S4 vents chamber 1, S5 engages
// chamber 1. Chamber 2 drives the switch to state II, chamber 1 back to
// state I.
class TestBench {
  public:
    TestBench(ValveSimModel valve, BenchConfig cfg);

    void set_target_pressure(double kPa);
    void set_solenoid(std::size_t idx, bool on);
    // Channel monitored by the flow sensor: blocked when the valve sits
    // in `blocking_state`.
    void set_monitored_channel(ValveState blocking_state);
    void set_valve_state(ValveState s);

    void step(double dt_s);
    void run_for(double seconds);

    double reservoir_pressure() const { return P_res_; }
    double chamber1_pressure() const { return P1_; }
    double chamber2_pressure() const { return P2_; }
    double flow() const { return Q_; }
    ValveState valve_state() const { return valve_state_; }
    double sim_time() const { return t_; }
    unsigned toggle_count() const { return toggles_; }
    const ValveSimModel& valve() const { return valve_; }
    BenchLog& log() { return log_; }

    ProtocolResult run_algorithm_1(double delta_p_kPa, double start_kPa);
    ProtocolResult run_algorithm_2(unsigned cycles);

  private:
    void schedule_block();
    void update_flow();

    ValveSimModel valve_;
    BenchConfig cfg_;
    double t_ = 0.0;
    double P_res_ = 0.0;
    double P1_ = 0.0;
    double P2_ = 0.0;
    double Q_;
    double target_ = 0.0;
    double pid_integral_ = 0.0;
    double pid_prev_error_ = 0.0;
    std::array<bool, 6> solenoid_{};
    ValveState valve_state_ = ValveState::state_I;
    ValveState monitored_blocking_state_ = ValveState::state_II;
    unsigned toggles_ = 0;
    double response_time_s_;
    // engagement-stamp tracking for the flow schedule
    std::optional<double> band_entry_time_;
    std::optional<double> decay_start_time_;
    std::size_t steps_since_sample_ = 0;
    std::size_t log_stride_;
    BenchLog log_;
};

// Convenience wrappers over a freshly constructed bench.
ProtocolResult run_algorithm_1(const ValveSimModel& valve, double delta_p_kPa,
                               double start_kPa, const BenchConfig& cfg = {});
ProtocolResult run_algorithm_2(const ValveSimModel& valve, unsigned cycles,
                               const BenchConfig& cfg = {});

// Response time per the time-series definition: the interval from the
// driving pressure stabilising in a +/-2% band of the target to the flow
// stabilising at or below the blocked threshold. Stabilisation means 50
// consecutive samples inside the band; the stamp is the first of them.
double extract_response_time(const BenchLog& log,
                             double flow_threshold_mL_min = 5.0);

struct ExponentialFit {
    double a;             // amplitude, seconds
    double b;             // rate, 1/cycle
    double rms_residual;  // in log space
};

// Least-squares fit of ln T = ln a + b*n. Needs >= 10 positive samples.
ExponentialFit fit_exponential(const std::vector<std::pair<double, double>>& series);

void write_log_csv(const BenchLog& log, const std::string& path);

// Plain key=value scenario file: Pc, T0, a, b, leak_threshold, dp,
// start, cycles, sample_rate, seed. Unknown keys are errors.
struct Scenario {
    ValveSimModel valve;
    BenchConfig bench;
    double delta_p_kPa = 1.0;
    double start_kPa = 1.0;
    unsigned cycles = 500;
};

Scenario load_scenario(const std::string& path);

}  // namespace bvl
