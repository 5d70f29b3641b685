#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ellsym/samplers.hpp"
#include "ellsym/statdist.hpp"
#include "ellsym/tests.hpp"

namespace ellsym {

struct TestSpec {
    std::string name; // e.g. "specified", "semiparam-t4", "cassart-pg"
    EstimatorChoice estimators;
};

struct SimulationConfig {
    int d = 0;
    int n = 0;
    int replications = 1000;
    double alpha = 0.05;
    std::uint64_t seed = 1;
    Eigen::VectorXd theta0; // for specified-location tests (defaults to 0)
    std::vector<AlternativeSpec> alternatives;
    std::vector<TestSpec> tests;
    std::string out_path;

    static SimulationConfig from_json_file(const std::string& path);
    static SimulationConfig from_json_text(const std::string& text);
};

struct ResultRow {
    std::string alternative;
    std::string test;
    double rejection_frequency = 0.0;
    int failures = 0;
    int replications = 0;
    std::string error; // non-empty when the cell could not be computed
};

struct ResultTable {
    std::vector<ResultRow> rows;
    std::uint64_t seed = 0;

    std::string to_csv() const;
    void save_csv(const std::string& path) const;
};

ResultTable run_simulation(const SimulationConfig& cfg);

struct PitfallReport {
    double specified_a = 0.0;  // phi_0 under scenario (a)
    double semiparam_a = 0.0;  // phi^dd_{t4} under scenario (a)
    double specified_b = 0.0;
    double semiparam_b = 0.0;
    int replications = 0;
    std::string to_string() const;
};

PitfallReport run_pitfall(int replications = 500, std::uint64_t seed = 1,
                          int n = 100);

// CSV data loader: optional header row; optional leading non-numeric
// column (dates), returned separately and ignored for the math.
struct CsvData {
    Eigen::MatrixXd values;
    std::vector<std::string> row_labels; // empty when no label column
};

CsvData load_csv_matrix(const std::string& path);

// Dispatch a test by its config name. Baringhaus uses an internal
// per-(d, n) simulated null table (built on first use and cached).
TestResult run_named_test(const std::string& name, const Eigen::MatrixXd& data,
                          const std::optional<Eigen::VectorXd>& theta0,
                          const EstimatorChoice& choice);

// Simulated Baringhaus null table under a spherical Gaussian.
NullTable simulate_baringhaus_table(int d, int n, int replications,
                                    std::uint64_t seed);

// Process-wide cached table (write-once per (d, n) key).
const NullTable& baringhaus_table(int d, int n);

struct RollingRow {
    int window_start = 0; // first row index (0-based)
    int window_end = 0;   // one past the last row
    std::string label;    // row label of the window start, if any
    std::string test;
    double p_value = 1.0;
};

std::vector<RollingRow> run_rolling(const CsvData& data, int window, int step,
                                    const std::vector<TestSpec>& tests,
                                    const std::optional<Eigen::VectorXd>& theta0);

} // namespace ellsym
