#ifndef FTMI_EXPERIMENT_HPP
#define FTMI_EXPERIMENT_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ftmi/kernels.hpp"

namespace ftmi {

enum class Units { Nats, Bits };
enum class SpectrumRequest { Analytic, Nystrom };

/// Parsed experiment description. INI-style sections [signal], [noise],
/// [window], [compute]; unknown keys are a hard parse error.
struct ExperimentConfig {
    KernelSpec signal;
    NoiseSpec noise;

    std::vector<double> T_list;          // from T= or T_list=

    std::optional<int> n;                // grid / quadrature points
    std::vector<int> n_list;
    std::optional<int> K;                // series truncation
    std::vector<double> P_list;          // exceed-average power sweep
    double tol = 1e-9;
    Units units = Units::Nats;
    SpectrumRequest spectrum = SpectrumRequest::Analytic;
    bool expect_verified = false;

    static ExperimentConfig parse(std::istream& in);
    static ExperimentConfig parse_file(const std::string& path);
};

// Each runner writes one RFC-4180 CSV table (header row, '.' decimals,
// 17 significant digits) to `out`. Returns false when a preset-level
// expectation (expect_verified) fails.
void run_discrete_mi(const ExperimentConfig& cfg, std::ostream& out);
void run_mercer(const ExperimentConfig& cfg, std::ostream& out);
void run_finite_mi(const ExperimentConfig& cfg, std::ostream& out);
void run_avg_capacity(const ExperimentConfig& cfg, std::ostream& out);
bool run_exceed_average(const ExperimentConfig& cfg, std::ostream& out);

/// Desk-scale invariant sweep over all modules; prints one line per check.
bool run_selftest(std::ostream& out);

/// 17-significant-digit decimal formatting used for all CSV values.
std::string csv_number(double v);

} // namespace ftmi

#endif
