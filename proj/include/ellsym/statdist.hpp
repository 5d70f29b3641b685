#pragma once

#include <string>
#include <vector>

namespace ellsym {

// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);

double chi2_cdf(double x, double df);
double chi2_sf(double x, double df);

// Inverse of chi2_cdf in x for fixed df.
double chi2_quantile(double p, double df);

// Survival function of the noncentral chi-square with `df` degrees of
// freedom and noncentrality lambda, evaluated via the Poisson mixture.
double noncentral_chi2_sf(double x, double df, double lambda);

// Marcum Q function Q_m(a, b) = P(chi2_nc(2m, a^2) > b^2).
double marcum_q(double m, double a, double b);

// Normal CDF.
double norm_cdf(double x);

/// Simulated null distribution of a test statistic, used for tests without
/// a convenient closed-form null (e.g. the Baringhaus statistic).
struct NullTable {
    std::string statistic;
    int d = 0;
    int n = 0;
    int replications = 0;
    unsigned long long seed = 0;
    std::vector<double> values; // sorted ascending

    // Add-one p-value: (1 + #{values >= observed}) / (replications + 1).
    double pvalue(double observed) const;

    void save_csv(const std::string& path) const;
    static NullTable load_csv(const std::string& path);
};

} // namespace ellsym
