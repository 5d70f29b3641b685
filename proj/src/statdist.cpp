#include "ellsym/statdist.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ellsym/errors.hpp"

namespace ellsym {

namespace {

// Series expansion of P(a,x), good for x < a + 1.
double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    for (int k = 1; k < 1000; ++k) {
        term *= x / (a + k);
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-16)
            return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    throw NumericalError("gamma_p: series failed to converge");
}

// Continued fraction for Q(a,x) (Lentz), good for x >= a + 1.
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 1000; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16)
            return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    throw NumericalError("gamma_p: continued fraction failed to converge");
}

} // namespace

double gamma_p(double a, double x) {
    if (!(a > 0.0)) throw ConfigError("gamma_p: a must be positive");
    if (x < 0.0) throw ConfigError("gamma_p: x must be non-negative");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_cf(a, x);
}

double chi2_cdf(double x, double df) {
    if (!(df > 0.0)) throw ConfigError("chi2_cdf: df must be positive");
    if (x <= 0.0) return 0.0;
    return gamma_p(0.5 * df, 0.5 * x);
}

double chi2_sf(double x, double df) {
    if (!(df > 0.0)) throw ConfigError("chi2_sf: df must be positive");
    if (x <= 0.0) return 1.0;
    if (0.5 * x < 0.5 * df + 1.0) return 1.0 - gamma_p_series(0.5 * df, 0.5 * x);
    return gamma_q_cf(0.5 * df, 0.5 * x);
}

double chi2_quantile(double p, double df) {
    if (!(df > 0.0)) throw ConfigError("chi2_quantile: df must be positive");
    if (!(p >= 0.0 && p < 1.0))
        throw ConfigError("chi2_quantile: p must be in [0, 1)");
    if (p == 0.0) return 0.0;

    // Bracket, then bisect with a Newton polish via the density.
    double lo = 0.0, hi = df;
    while (chi2_cdf(hi, df) < p) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (chi2_cdf(mid, df) < p)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-12 * (1.0 + hi)) break;
    }
    return 0.5 * (lo + hi);
}

double noncentral_chi2_sf(double x, double df, double lambda) {
    if (!(df > 0.0)) throw ConfigError("noncentral_chi2_sf: df must be positive");
    if (lambda < 0.0)
        throw ConfigError("noncentral_chi2_sf: lambda must be non-negative");
    if (x <= 0.0) return 1.0;
    if (lambda == 0.0) return chi2_sf(x, df);

    // Poisson mixture: sum_k pois(k; lambda/2) * SF_{df+2k}(x).
    // Start at the Poisson mode and expand both ways.
    const double hl = 0.5 * lambda;
    const long mode = std::max<long>(0, static_cast<long>(hl));
    const long cap = 10000;
    auto log_pois = [hl](long k) {
        return -hl + k * std::log(hl) - std::lgamma(k + 1.0);
    };

    double sum = 0.0;
    double wsum = 0.0;
    auto add_term = [&](long k) {
        const double w = std::exp(log_pois(k));
        sum += w * chi2_sf(x, df + 2.0 * k);
        wsum += w;
    };
    add_term(mode);
    for (long off = 1; off <= cap; ++off) {
        if (1.0 - wsum < 1e-12) return sum;
        add_term(mode + off);
        if (mode - off >= 0) add_term(mode - off);
    }
    if (1.0 - wsum < 1e-12) return sum;
    throw NumericalError("noncentral_chi2_sf: Poisson mixture did not converge");
}

double marcum_q(double m, double a, double b) {
    if (!(m > 0.0)) throw ConfigError("marcum_q: m must be positive");
    return noncentral_chi2_sf(b * b, 2.0 * m, a * a);
}

double norm_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double NullTable::pvalue(double observed) const {
    if (values.empty()) throw ConfigError("NullTable: empty table");
    // values are sorted ascending; count entries >= observed.
    const auto it = std::lower_bound(values.begin(), values.end(), observed);
    const long ge = static_cast<long>(values.end() - it);
    return (1.0 + ge) / (static_cast<double>(values.size()) + 1.0);
}

void NullTable::save_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw DataError("NullTable: cannot open " + path + " for writing");
    out << "statistic,d,n,replications,seed\n";
    out << statistic << ',' << d << ',' << n << ',' << replications << ','
        << seed << '\n';
    out.precision(17);
    for (double v : values) out << v << '\n';
}

NullTable NullTable::load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("NullTable: cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("statistic,", 0) != 0)
        throw DataError("NullTable: malformed header in " + path);
    if (!std::getline(in, line))
        throw DataError("NullTable: missing metadata row in " + path);
    NullTable t;
    std::istringstream meta(line);
    std::string field;
    std::getline(meta, t.statistic, ',');
    std::getline(meta, field, ',');
    t.d = std::stoi(field);
    std::getline(meta, field, ',');
    t.n = std::stoi(field);
    std::getline(meta, field, ',');
    t.replications = std::stoi(field);
    std::getline(meta, field, ',');
    t.seed = std::stoull(field);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        t.values.push_back(std::stod(line));
    }
    if (static_cast<int>(t.values.size()) != t.replications)
        throw DataError("NullTable: value count does not match metadata in " + path);
    std::sort(t.values.begin(), t.values.end());
    return t;
}

} // namespace ellsym
