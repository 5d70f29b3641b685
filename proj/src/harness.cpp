#include "ellsym/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "ellsym/errors.hpp"

namespace ellsym {

namespace {

using nlohmann::json;

Eigen::VectorXd json_vector(const json& j) {
    if (!j.is_array()) throw ConfigError("config: expected a numeric array");
    Eigen::VectorXd v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) v(i) = j[i].get<double>();
    return v;
}

Eigen::MatrixXd json_matrix(const json& j) {
    if (!j.is_array() || j.empty())
        throw ConfigError("config: expected an array of rows");
    const std::size_t cols = j[0].size();
    Eigen::MatrixXd m(j.size(), cols);
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (j[i].size() != cols)
            throw ConfigError("config: ragged matrix rows");
        for (std::size_t k = 0; k < cols; ++k) m(i, k) = j[i][k].get<double>();
    }
    return m;
}

AlternativeSpec parse_alternative(const json& j, int d) {
    AlternativeSpec a;
    a.family = j.at("family").get<std::string>();
    a.label = j.value("label", a.family);
    if (a.family == "gauss-mixture") {
        a.weight1 = j.at("weight1").get<double>();
        a.mu1 = json_vector(j.at("mu1"));
        a.mu2 = json_vector(j.at("mu2"));
        a.sigma1 = j.contains("sigma1") ? json_matrix(j.at("sigma1"))
                                        : Eigen::MatrixXd::Identity(d, d);
        a.sigma2 = j.contains("sigma2") ? json_matrix(j.at("sigma2"))
                                        : Eigen::MatrixXd::Identity(d, d);
        return a;
    }
    if (a.family == "msgh" || a.family == "lsgm")
        throw ConfigError("config: family '" + a.family + "' is not supported");
    a.density = j.at("density").get<std::string>();
    a.theta = j.contains("theta") ? json_vector(j.at("theta"))
                                  : Eigen::VectorXd::Zero(d);
    a.sigma = j.contains("sigma") ? json_matrix(j.at("sigma"))
                                  : Eigen::MatrixXd::Identity(d, d);
    if (a.family == "gse")
        a.lambda = j.contains("lambda") ? json_vector(j.at("lambda"))
                                        : Eigen::VectorXd::Zero(d);
    if (a.family == "sas")
        a.eps = j.contains("eps") ? json_vector(j.at("eps"))
                                  : Eigen::VectorXd::Zero(d);
    return a;
}

TestSpec parse_test(const json& j) {
    TestSpec t;
    if (j.is_string()) {
        t.name = j.get<std::string>();
        return t;
    }
    t.name = j.at("name").get<std::string>();
    if (j.contains("location"))
        t.estimators.location = parse_location(j.at("location").get<std::string>());
    if (j.contains("scatter"))
        t.estimators.scatter = parse_scatter(j.at("scatter").get<std::string>());
    return t;
}

} // namespace

SimulationConfig SimulationConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: JSON parse error: ") + e.what());
    }
    try {
        SimulationConfig cfg;
        cfg.d = j.at("d").get<int>();
        cfg.n = j.at("n").get<int>();
        cfg.replications = j.value("replications", 1000);
        cfg.alpha = j.value("alpha", 0.05);
        cfg.seed = j.value("seed", 1ULL);
        cfg.theta0 = j.contains("theta0") ? json_vector(j.at("theta0"))
                                          : Eigen::VectorXd::Zero(cfg.d);
        cfg.out_path = j.value("out", std::string());
        for (const auto& ja : j.at("alternatives"))
            cfg.alternatives.push_back(parse_alternative(ja, cfg.d));
        for (const auto& jt : j.at("tests")) cfg.tests.push_back(parse_test(jt));
        if (cfg.replications < 1)
            throw ConfigError("config: replications must be >= 1");
        if (cfg.d < 2 || cfg.n < 2) throw ConfigError("config: need d >= 2, n >= 2");
        return cfg;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

SimulationConfig SimulationConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

namespace {

std::mutex g_bar_mutex;
std::map<std::pair<int, int>, NullTable> g_bar_tables;
constexpr int kBarTableReps = 10000;
constexpr std::uint64_t kBarTableSeed = 20210713ULL;

} // namespace

NullTable simulate_baringhaus_table(int d, int n, int replications,
                                    std::uint64_t seed) {
    NullTable t;
    t.statistic = "baringhaus";
    t.d = d;
    t.n = n;
    t.replications = replications;
    t.seed = seed;
    t.values.resize(replications);

    const RadialDensity g = RadialDensity::make_gaussian(d);
    const SpdMatrix eye = SpdMatrix::identity(d);
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(d);

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned nthreads = std::min<unsigned>(hw, 16);
    std::atomic<int> next{0};
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < nthreads; ++w) {
        workers.emplace_back([&]() {
            for (int r = next.fetch_add(1); r < replications;
                 r = next.fetch_add(1)) {
                RngStream rng(seed, static_cast<std::uint64_t>(r));
                const Eigen::MatrixXd data = sample_elliptical(g, zero, eye, n, rng);
                t.values[r] = baringhaus_statistic(data, zero);
            }
        });
    }
    for (auto& w : workers) w.join();
    std::sort(t.values.begin(), t.values.end());
    return t;
}

const NullTable& baringhaus_table(int d, int n) {
    std::lock_guard<std::mutex> lock(g_bar_mutex);
    auto it = g_bar_tables.find({d, n});
    if (it == g_bar_tables.end()) {
        it = g_bar_tables
                 .emplace(std::make_pair(d, n),
                          simulate_baringhaus_table(d, n, kBarTableReps,
                                                    kBarTableSeed))
                 .first;
    }
    return it->second;
}

TestResult run_named_test(const std::string& name, const Eigen::MatrixXd& data,
                          const std::optional<Eigen::VectorXd>& theta0,
                          const EstimatorChoice& choice) {
    const int d = static_cast<int>(data.cols());
    const Eigen::VectorXd t0 = theta0.value_or(Eigen::VectorXd::Zero(d));

    if (name == "specified") return test_specified(data, t0, choice);
    if (name == "cassart-pg") return test_cassart_pg(data, choice);
    if (name == "cassart-pg-specified")
        return test_cassart_pg_specified(data, t0, choice);
    if (name == "baringhaus")
        return test_baringhaus(data, t0,
                               baringhaus_table(d, static_cast<int>(data.rows())));
    const std::string param_prefix = "parametric-";
    const std::string semi_prefix = "semiparam-";
    if (name.rfind(param_prefix, 0) == 0)
        return test_parametric(data, RadialDensity::parse(name.substr(param_prefix.size()), d),
                               choice);
    if (name.rfind(semi_prefix, 0) == 0)
        return test_semiparam(data, RadialDensity::parse(name.substr(semi_prefix.size()), d),
                              choice);
    throw ConfigError("unknown test '" + name + "'");
}

ResultTable run_simulation(const SimulationConfig& cfg) {
    const int num_tests = static_cast<int>(cfg.tests.size());
    if (num_tests == 0) throw ConfigError("config: no tests requested");
    if (cfg.alternatives.empty()) throw ConfigError("config: no alternatives");

    // Build shared null tables up front so workers only read them.
    for (const TestSpec& t : cfg.tests)
        if (t.name == "baringhaus") baringhaus_table(cfg.d, cfg.n);

    ResultTable table;
    table.seed = cfg.seed;

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned nthreads = std::min<unsigned>(hw, 16);

    for (const AlternativeSpec& alt : cfg.alternatives) {
        std::vector<std::atomic<int>> rejects(num_tests), failures(num_tests);
        for (int t = 0; t < num_tests; ++t) {
            rejects[t] = 0;
            failures[t] = 0;
        }
        std::atomic<int> next{0};
        std::vector<std::thread> workers;
        for (unsigned w = 0; w < nthreads; ++w) {
            workers.emplace_back([&]() {
                for (int rep = next.fetch_add(1); rep < cfg.replications;
                     rep = next.fetch_add(1)) {
                    RngStream rng(cfg.seed, static_cast<std::uint64_t>(rep));
                    Eigen::MatrixXd data;
                    try {
                        data = sample_alternative(alt, cfg.n, rng);
                    } catch (const std::exception&) {
                        for (int t = 0; t < num_tests; ++t) ++failures[t];
                        continue;
                    }
                    for (int t = 0; t < num_tests; ++t) {
                        try {
                            const TestResult r = run_named_test(
                                cfg.tests[t].name, data, cfg.theta0,
                                cfg.tests[t].estimators);
                            if (r.p_value < cfg.alpha) ++rejects[t];
                        } catch (const std::exception&) {
                            ++failures[t];
                        }
                    }
                }
            });
        }
        for (auto& w : workers) w.join();

        for (int t = 0; t < num_tests; ++t) {
            ResultRow row;
            row.alternative = alt.label;
            row.test = cfg.tests[t].name;
            row.failures = failures[t];
            row.replications = cfg.replications;
            const int denom = cfg.replications - row.failures;
            if (row.failures > 0.01 * cfg.replications || denom == 0) {
                row.error = "failure rate above 1% (" +
                            std::to_string(row.failures) + "/" +
                            std::to_string(cfg.replications) + ")";
            } else {
                row.rejection_frequency =
                    static_cast<double>(rejects[t]) / denom;
            }
            table.rows.push_back(row);
        }
    }
    return table;
}

std::string ResultTable::to_csv() const {
    std::ostringstream out;
    out << "alternative,test,rejection_frequency,failures,replications,error\n";
    out.precision(6);
    for (const ResultRow& r : rows) {
        out << r.alternative << ',' << r.test << ',';
        if (r.error.empty()) out << r.rejection_frequency;
        out << ',' << r.failures << ',' << r.replications << ','
            << r.error << '\n';
    }
    return out.str();
}

void ResultTable::save_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open " + path + " for writing");
    out << to_csv();
}

std::string PitfallReport::to_string() const {
    std::ostringstream out;
    out.precision(3);
    out << std::fixed;
    out << "scenario,specified,semiparam-t4\n";
    out << "a," << specified_a << ',' << semiparam_a << '\n';
    out << "b," << specified_b << ',' << semiparam_b << '\n';
    return out.str();
}

PitfallReport run_pitfall(int replications, std::uint64_t seed, int n) {
    const int d = 10;
    SimulationConfig cfg;
    cfg.d = d;
    cfg.n = n;
    cfg.replications = replications;
    cfg.alpha = 0.05;
    cfg.seed = seed;
    cfg.theta0 = Eigen::VectorXd::Zero(d);
    cfg.tests = {{"specified", {}}, {"semiparam-t4", {}}};

    // 0.8 N(10 e1, I) + 0.2 N(-10 e1, I) shifted along e1. Scenario (a)
    // is the centered mixture (the asymmetry and the location offset cancel
    // inside the specified-location statistic); scenario (b) keeps the
    // mixture mean at 12 e1, which the specified test detects outright.
    auto mixture = [d](double shift, const std::string& label) {
        AlternativeSpec a;
        a.family = "gauss-mixture";
        a.label = label;
        a.weight1 = 0.8;
        a.mu1 = Eigen::VectorXd::Zero(d);
        a.mu2 = Eigen::VectorXd::Zero(d);
        a.mu1(0) = 10.0 - shift;
        a.mu2(0) = -10.0 - shift;
        a.sigma1 = Eigen::MatrixXd::Identity(d, d);
        a.sigma2 = Eigen::MatrixXd::Identity(d, d);
        return a;
    };
    cfg.alternatives = {mixture(6.0, "a"), mixture(-6.0, "b")};

    const ResultTable table = run_simulation(cfg);
    PitfallReport rep;
    rep.replications = replications;
    for (const ResultRow& row : table.rows) {
        if (!row.error.empty())
            throw NumericalError("run_pitfall: cell failed: " + row.error);
        double& slot = row.alternative == "a"
                           ? (row.test == "specified" ? rep.specified_a
                                                      : rep.semiparam_a)
                           : (row.test == "specified" ? rep.specified_b
                                                      : rep.semiparam_b);
        slot = row.rejection_frequency;
    }
    return rep;
}

CsvData load_csv_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open data file " + path);

    CsvData out;
    std::vector<std::vector<double>> rows;
    std::string line;
    int lineno = 0;
    bool labeled = false;
    int width = -1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> tokens;
        std::istringstream ls(line);
        std::string tok;
        while (std::getline(ls, tok, ',')) tokens.push_back(tok);
        if (tokens.empty()) continue;

        auto parse_num = [](const std::string& s, double& v) {
            try {
                std::size_t pos = 0;
                v = std::stod(s, &pos);
                while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
                    ++pos;
                return pos == s.size();
            } catch (const std::exception&) {
                return false;
            }
        };

        std::vector<double> vals;
        std::string label;
        std::size_t start = 0;
        double v;
        if (!parse_num(tokens[0], v)) {
            label = tokens[0];
            start = 1;
        }
        bool ok = start < tokens.size();
        for (std::size_t k = start; k < tokens.size(); ++k) {
            if (!parse_num(tokens[k], v)) {
                ok = false;
                break;
            }
            vals.push_back(v);
        }
        if (!ok) {
            if (rows.empty() && width < 0) continue; // header row
            throw DataError("malformed CSV at line " + std::to_string(lineno) +
                            " of " + path);
        }
        if (width < 0) {
            width = static_cast<int>(vals.size());
            labeled = !label.empty();
        } else if (static_cast<int>(vals.size()) != width ||
                   label.empty() == labeled) {
            throw DataError("inconsistent CSV row at line " +
                            std::to_string(lineno) + " of " + path);
        }
        rows.push_back(std::move(vals));
        if (labeled) out.row_labels.push_back(label);
    }
    if (rows.empty() || width <= 0)
        throw DataError("no numeric data found in " + path);
    out.values.resize(rows.size(), width);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < width; ++j) out.values(i, j) = rows[i][j];
    return out;
}

std::vector<RollingRow> run_rolling(const CsvData& data, int window, int step,
                                    const std::vector<TestSpec>& tests,
                                    const std::optional<Eigen::VectorXd>& theta0) {
    const int n = static_cast<int>(data.values.rows());
    if (window < 2 || window > n)
        throw ConfigError("rolling: window must be in [2, n]");
    if (step < 1) throw ConfigError("rolling: step must be >= 1");

    std::vector<RollingRow> out;
    for (int s = 0; s + window <= n; s += step) {
        const Eigen::MatrixXd block = data.values.middleRows(s, window);
        for (const TestSpec& t : tests) {
            RollingRow row;
            row.window_start = s;
            row.window_end = s + window;
            if (!data.row_labels.empty()) row.label = data.row_labels[s];
            row.test = t.name;
            row.p_value =
                run_named_test(t.name, block, theta0, t.estimators).p_value;
            out.push_back(row);
        }
    }
    return out;
}

} // namespace ellsym
