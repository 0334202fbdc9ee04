#pragma once

// Seeded simulation harness. Each experiment measures one statistic on random
// permutation trees (or geometric samples) and tests it against the closed
// forms in stats/cover.
//
// Sample i always uses Substream(seed, tag, i), and per-sample results are
// reduced in index order, so a report depends only on its config and not on
// the worker count.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "permtree/stats.hpp"

namespace permtree {

enum class Statistic { leaves, diameter, maxdeg, degree_census, gamma, dcov, runs_geometric };

std::string to_string(Statistic s);
/// Accepts canonical names and the CLI short forms (diam, dcensus, runs).
Statistic parse_statistic(const std::string& name);

struct Tolerances {
    /// Bound on |z| for moment comparisons.
    double moment_z = 3.0;
    /// Chi-square statistic must stay below this quantile of its law.
    double chi_square_quantile = 0.999;
    /// Max-degree CDF, absolute.
    double cdf_abs = 0.02;
    /// Covariance entries, absolute.
    double cov_abs = 0.02;
    /// Max CDF deviation of standardized values from N(0,1).
    double normality_max_dev = 0.01;
    /// |mean/n - theory mean/n| for gamma.
    double ratio_mean_abs = 0.005;
    /// |var/n - theory var/n| for gamma.
    double ratio_var_abs = 0.01;
};

struct ExperimentConfig {
    int n = 0;
    std::int64_t samples = 0;
    std::uint64_t seed = 0;
    Statistic statistic = Statistic::leaves;
    /// Geometric parameter for runs_geometric: P(value = j) = q^(j-1) (1-q).
    double q = 0.5;
    /// Number of degree classes for degree_census and dcov.
    int m = 6;
    /// Range of k checked for maxdeg.
    int k_min = -2;
    int k_max = 6;
    int workers = 1;
    Tolerances tolerances;

    /// Throws InvalidConfig.
    void validate() const;
};

struct TestResult {
    std::string name;
    double observed = 0;
    double expected = 0;
    /// Test statistic (z, chi-square, deviation) and the bound it is held to.
    double statistic = 0;
    double threshold = 0;
    bool passed = false;
};

struct HistogramRow {
    std::int64_t value = 0;
    std::int64_t count = 0;
    double expected = 0;
};

struct Summary {
    std::optional<double> mean;
    std::optional<double> variance;
    std::vector<std::pair<std::string, double>> values;
    std::optional<Matrix> covariance;
};

struct StatReport {
    ExperimentConfig config;
    Summary empirical;
    Summary theory;
    std::vector<HistogramRow> histogram;
    std::vector<TestResult> tests;

    bool passed() const;
    const TestResult* find(const std::string& name) const;
};

StatReport run_experiment(const ExperimentConfig& config);

struct ChiSquare {
    double statistic = 0;
    int dof = 0;
    int bins = 0;
};

/// Pearson statistic. Bins run over the union of both supports in increasing
/// value order; consecutive bins are merged until each expected count reaches
/// 5, a short tail joins the last bin. Any observation where the pmf is zero
/// makes the statistic infinite. Throws EmptyHistogram.
ChiSquare chi_square(const std::map<std::int64_t, std::int64_t>& observed,
                     const std::map<std::int64_t, double>& expected_pmf);

/// Upper quantile of the chi-square law with `dof` degrees of freedom.
double chi_square_quantile(int dof, double probability);

struct NormalityScore {
    double mean = 0;
    double sd = 0;
    double max_cdf_deviation = 0;
    double skewness = 0;
    double excess_kurtosis = 0;
};

/// Standardizes by the sample mean and deviation and measures the largest gap
/// between the empirical CDF and Phi. For values on a lattice of spacing
/// `lattice_step` > 0, the CDF at x is compared with Phi at x + step/2 (and
/// just below x with Phi at x - step/2). Needs >= 1000 values
/// (TooFewSamples) and a positive deviation (DegenerateVariance).
NormalityScore normality_check(const std::vector<double>& values, double lattice_step = 0.0);

/// Sample covariance of (D_1..D_m)/sqrt(n) over random trees. m <= 8.
Matrix empirical_dcov(int n, std::int64_t samples, int m, std::uint64_t seed, int workers = 1);

/// Standard normal CDF.
double normal_cdf(double x);

}  // namespace permtree
