#pragma once

#include <string>
#include <vector>

#include "quantization.hpp"

namespace bohrwave {

struct CheckResult {
    std::string name;
    std::string identity;  ///< the relation being verified
    double measured = 0.0;
    double threshold = 0.0;
    bool passed = false;
    std::string detail;
};

struct CheckConfig {
    PhysicalParams params;               ///< orbit parameters for the orbit-level identities
    std::vector<double> n_values{1, 2, 3};
    bool strict_selection = true;        ///< non-integer m_pm fail the selection check
    int asymptotic_l_max = 4;
    int threads = 1;
};

/// Runs the invariant suite. Individual check failures are reported, never thrown.
std::vector<CheckResult> run_checks(const CheckConfig& config);

bool all_passed(const std::vector<CheckResult>& results);

// Individual checks, shared with the acceptance harness.
CheckResult check_table_ii();
CheckResult check_selection(const PhysicalParams& params, const std::vector<double>& n_values, bool strict);
CheckResult check_round_trip(const PhysicalParams& params, const std::vector<double>& n_values);
CheckResult check_dispersion(const PhysicalParams& params, const std::vector<double>& n_values);
CheckResult check_velocity_triple(const PhysicalParams& params, const std::vector<double>& n_values);
CheckResult check_phase_harmony(const std::vector<double>& alphas, int n_max);
CheckResult check_group_velocity(const PhysicalParams& params, const std::vector<double>& n_values);
CheckResult check_quantum_potential(const PhysicalParams& params, double n);
CheckResult check_bessel_kummer(int l_max, double wr_max);
CheckResult check_asymptotics(int l_max, double beta);
CheckResult check_bohmian(const PhysicalParams& params, const std::vector<double>& n_values);
CheckResult check_mode_equivalence(const PhysicalParams& params, double n, int samples);
CheckResult check_nonrelativistic(const PhysicalParams& params);

}  // namespace bohrwave
