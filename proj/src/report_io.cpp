#include "permtree/report_io.hpp"

#include <fstream>
#include <sstream>

#include "permtree/errors.hpp"

namespace permtree {

using nlohmann::json;

json to_json(const TreeCode& code) { return {{"n", code.n()}, {"code", code.to_hex()}}; }

TreeCode code_from_json(const json& j) {
    try {
        return TreeCode::from_hex(j.at("n").get<int>(), j.at("code").get<std::string>());
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("bad code document: ") + e.what());
    }
}

json to_json(const Tolerances& t) {
    return {{"moment_z", t.moment_z},
            {"chi_square_quantile", t.chi_square_quantile},
            {"cdf_abs", t.cdf_abs},
            {"cov_abs", t.cov_abs},
            {"normality_max_dev", t.normality_max_dev},
            {"ratio_mean_abs", t.ratio_mean_abs},
            {"ratio_var_abs", t.ratio_var_abs}};
}

namespace {

template <class T>
void read_opt(const json& j, const char* key, T& out) {
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw InvalidConfig(std::string("bad value for '") + key + "': " + e.what());
    }
}

}  // namespace

Tolerances tolerances_from_json(const json& j) {
    if (!j.is_object()) throw InvalidConfig("tolerances must be a JSON object");
    Tolerances t;
    read_opt(j, "moment_z", t.moment_z);
    read_opt(j, "chi_square_quantile", t.chi_square_quantile);
    read_opt(j, "cdf_abs", t.cdf_abs);
    read_opt(j, "cov_abs", t.cov_abs);
    read_opt(j, "normality_max_dev", t.normality_max_dev);
    read_opt(j, "ratio_mean_abs", t.ratio_mean_abs);
    read_opt(j, "ratio_var_abs", t.ratio_var_abs);
    return t;
}

Tolerances load_tolerances(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidConfig("cannot open " + path);
    try {
        return tolerances_from_json(json::parse(in));
    } catch (const json::parse_error& e) {
        throw InvalidConfig(path + ": " + e.what());
    }
}

json to_json(const ExperimentConfig& c) {
    // Worker count is left out: it never changes the result.
    json j = {{"n", c.n}, {"samples", c.samples}, {"seed", c.seed}, {"statistic", to_string(c.statistic)}, {"tolerances", to_json(c.tolerances)}};
    if (c.statistic == Statistic::runs_geometric) j["q"] = c.q;
    if (c.statistic == Statistic::degree_census || c.statistic == Statistic::dcov) j["m"] = c.m;
    if (c.statistic == Statistic::maxdeg) {
        j["k_min"] = c.k_min;
        j["k_max"] = c.k_max;
    }
    return j;
}

ExperimentConfig config_from_json(const json& j) {
    if (!j.is_object()) throw InvalidConfig("config must be a JSON object");
    ExperimentConfig c;
    read_opt(j, "n", c.n);
    read_opt(j, "samples", c.samples);
    read_opt(j, "seed", c.seed);
    std::string stat = to_string(c.statistic);
    read_opt(j, "statistic", stat);
    c.statistic = parse_statistic(stat);
    read_opt(j, "q", c.q);
    read_opt(j, "m", c.m);
    read_opt(j, "k_min", c.k_min);
    read_opt(j, "k_max", c.k_max);
    read_opt(j, "workers", c.workers);
    if (j.contains("tolerances")) c.tolerances = tolerances_from_json(j.at("tolerances"));
    return c;
}

namespace {

json matrix_json(const Matrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows; ++i) {
        json row = json::array();
        for (int k = 0; k < m.rows; ++k) row.push_back(m(i, k));
        rows.push_back(row);
    }
    return rows;
}

json summary_json(const Summary& s) {
    json j = json::object();
    if (s.mean) j["mean"] = *s.mean;
    if (s.variance) j["variance"] = *s.variance;
    for (const auto& [k, v] : s.values) j[k] = v;
    if (s.covariance) j["covariance"] = matrix_json(*s.covariance);
    return j;
}

}  // namespace

json to_json(const StatReport& r) {
    json j;
    j["schema"] = kSchema;
    j["config"] = to_json(r.config);
    j["empirical"] = summary_json(r.empirical);
    if (!r.histogram.empty()) {
        json h = json::array();
        for (const auto& row : r.histogram) h.push_back({{"value", row.value}, {"count", row.count}, {"expected", row.expected}});
        j["empirical"]["histogram"] = h;
    }
    j["theory"] = summary_json(r.theory);
    json tests = json::array();
    for (const auto& t : r.tests) {
        tests.push_back({{"name", t.name},
                         {"observed", t.observed},
                         {"expected", t.expected},
                         {"statistic", t.statistic},
                         {"threshold", t.threshold},
                         {"verdict", t.passed ? "pass" : "fail"}});
    }
    j["tests"] = tests;
    j["verdict"] = r.passed() ? "pass" : "fail";
    return j;
}

std::string histogram_csv(const StatReport& r) {
    std::ostringstream out;
    out.precision(17);
    out << "value,count,expected\n";
    for (const auto& row : r.histogram) out << row.value << ',' << row.count << ',' << row.expected << '\n';
    return out.str();
}

json to_json(const CensusTable& t) {
    json forests = json::object();
    for (const auto& [m, c] : t.forests) forests[std::to_string(m)] = to_string(c);
    return {{"schema", kSchema},
            {"n", t.n},
            {"total", to_string(t.total)},
            {"connected", to_string(t.connected)},
            {"trees", to_string(t.trees)},
            {"forests", forests}};
}

std::string census_csv(const CensusTable& t) {
    std::ostringstream out;
    out << "n,class,m,count\n";
    out << t.n << ",total,," << to_string(t.total) << '\n';
    out << t.n << ",connected,," << to_string(t.connected) << '\n';
    out << t.n << ",trees,," << to_string(t.trees) << '\n';
    for (const auto& [m, c] : t.forests) out << t.n << ",forests," << m << ',' << to_string(c) << '\n';
    return out.str();
}

}  // namespace permtree
