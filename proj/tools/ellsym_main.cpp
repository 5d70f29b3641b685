#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ellsym/are.hpp"
#include "ellsym/errors.hpp"
#include "ellsym/harness.hpp"

namespace {

using namespace ellsym;

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(tok);
    }
    return out;
}

Eigen::VectorXd parse_vector(const std::string& s) {
    const std::vector<std::string> toks = split_list(s);
    if (toks.empty()) throw ConfigError("empty vector argument");
    Eigen::VectorXd v(toks.size());
    for (std::size_t i = 0; i < toks.size(); ++i) {
        try {
            v(i) = std::stod(toks[i]);
        } catch (const std::exception&) {
            throw ConfigError("cannot parse number '" + toks[i] + "'");
        }
    }
    return v;
}

void print_result(const TestResult& r) {
    std::cout << r.test_name << ": statistic=" << r.statistic;
    if (r.df > 0) std::cout << " df=" << r.df;
    std::cout << " p=" << r.p_value << '\n';
}

int run(int argc, char** argv) {
    CLI::App app{"Tests for elliptical symmetry"};
    app.require_subcommand(1);

    // simulate
    auto* sim = app.add_subcommand("simulate", "Run a Monte Carlo study from a JSON config");
    std::string cfg_path, sim_out;
    std::optional<std::uint64_t> sim_seed;
    sim->add_option("--config", cfg_path, "JSON config file")->required();
    sim->add_option("--seed", sim_seed, "Override config seed");
    sim->add_option("--out", sim_out, "Output CSV path (default from config)");

    // test
    auto* tst = app.add_subcommand("test", "Run tests on a CSV dataset");
    std::string data_path, tests_list, theta0_str;
    std::string loc_est = "mean", scat_est = "tyler";
    tst->add_option("--data", data_path, "CSV data file")->required();
    tst->add_option("--tests", tests_list, "Comma-separated test names")->required();
    tst->add_option("--theta0", theta0_str, "Specified location, v1,v2,...");
    tst->add_option("--location-estimator", loc_est, "mean|spatial-median|hr");
    tst->add_option("--scatter-estimator", scat_est, "tyler|cov");

    // rolling
    auto* rol = app.add_subcommand("rolling", "Rolling-window p-values on a CSV dataset");
    std::string rol_data, rol_tests, rol_theta0;
    int window = 0, step = 1;
    rol->add_option("--data", rol_data, "CSV data file")->required();
    rol->add_option("--window", window, "Window length in rows")->required();
    rol->add_option("--step", step, "Step in rows");
    rol->add_option("--tests", rol_tests, "Comma-separated test names")->required();
    rol->add_option("--theta0", rol_theta0, "Specified location for specified tests");

    // are
    auto* are = app.add_subcommand("are", "ARE grid of semiparametric tests vs pseudo-Gaussian");
    std::string dims_str = "2,3,5,10";
    std::string refs_str = "t4,t5,t7,t10,t20";
    std::string unders_str = "t4.1,t5,t7,t10,t20";
    are->add_option("--d", dims_str, "Dimensions, comma-separated");
    are->add_option("--ref", refs_str, "Reference densities");
    are->add_option("--under", unders_str, "Underlying densities");

    // pitfall
    auto* pit = app.add_subcommand("pitfall", "Specified- vs unspecified-location pitfall study");
    int pit_reps = 500;
    std::uint64_t pit_seed = 1;
    pit->add_option("--reps", pit_reps, "Replications");
    pit->add_option("--seed", pit_seed, "RNG seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (sim->parsed()) {
        SimulationConfig cfg = SimulationConfig::from_json_file(cfg_path);
        if (sim_seed) cfg.seed = *sim_seed;
        if (!sim_out.empty()) cfg.out_path = sim_out;
        const ResultTable table = run_simulation(cfg);
        if (cfg.out_path.empty())
            std::cout << table.to_csv();
        else
            table.save_csv(cfg.out_path);
        return 0;
    }

    if (tst->parsed()) {
        const CsvData data = load_csv_matrix(data_path);
        std::optional<Eigen::VectorXd> theta0;
        if (!theta0_str.empty()) theta0 = parse_vector(theta0_str);
        EstimatorChoice choice;
        choice.location = parse_location(loc_est);
        choice.scatter = parse_scatter(scat_est);
        for (const std::string& name : split_list(tests_list))
            print_result(run_named_test(name, data.values, theta0, choice));
        return 0;
    }

    if (rol->parsed()) {
        const CsvData data = load_csv_matrix(rol_data);
        std::optional<Eigen::VectorXd> theta0;
        if (!rol_theta0.empty()) theta0 = parse_vector(rol_theta0);
        std::vector<TestSpec> specs;
        for (const std::string& name : split_list(rol_tests))
            specs.push_back({name, {}});
        std::cout << "window_start,window_end,label,test,p_value\n";
        for (const RollingRow& row : run_rolling(data, window, step, specs, theta0))
            std::cout << row.window_start << ',' << row.window_end << ','
                      << row.label << ',' << row.test << ',' << row.p_value
                      << '\n';
        return 0;
    }

    if (are->parsed()) {
        std::vector<int> dims;
        for (const std::string& t : split_list(dims_str)) {
            try {
                dims.push_back(std::stoi(t));
            } catch (const std::exception&) {
                throw ConfigError("cannot parse dimension '" + t + "'");
            }
        }
        std::cout << "d,reference,under,are,error\n";
        for (const AreRow& row :
             are_grid(dims, split_list(refs_str), split_list(unders_str))) {
            std::cout << row.d << ',' << row.reference << ',' << row.under << ',';
            if (row.error.empty()) std::cout << row.are;
            std::cout << ',' << row.error << '\n';
        }
        return 0;
    }

    if (pit->parsed()) {
        std::cout << run_pitfall(pit_reps, pit_seed).to_string();
        return 0;
    }

    return 1;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ellsym::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const ellsym::DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 2;
    } catch (const ellsym::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
