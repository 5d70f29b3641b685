#include "ellsym/are.hpp"

#include <cmath>

#include "ellsym/errors.hpp"
#include "ellsym/statdist.hpp"

namespace ellsym {

double noncentrality_specified(double pi_dot, double tau_sq) {
    return 4.0 * pi_dot * pi_dot * tau_sq;
}

double noncentrality_parametric(const RadialDensity& f, double pi_dot,
                                double tau_sq) {
    const double info = fisher_location(f);
    const double d = f.dim();
    return 4.0 * pi_dot * pi_dot * (info - d) / info * tau_sq;
}

double noncentrality_semiparam(const RadialDensity& f, const RadialDensity& g,
                               double pi_dot, double tau_sq) {
    const double k = cross_info(f, g);
    const double a = alpha_const(f, g);
    const double gam = gamma_const(f, g);
    const double d = f.dim();
    const double factor = 1.0 - a / k;
    return 4.0 * pi_dot * pi_dot * d / gam * factor * factor * tau_sq;
}

double noncentrality_pg(const RadialDensity& g, double pi_dot, double tau_sq) {
    const double d = g.dim();
    if (!g.moment_finite(4.0))
        throw NumericalError("noncentrality_pg: fourth moment diverges under " +
                             g.name());
    const double m1 = g.moment(1.0);
    const double m2 = g.moment(2.0);
    const double m3 = g.moment(3.0);
    const double bracket = (d + 1.0) * m1 * m2 - d * m3;
    const double gd = std::tgamma(0.5 * d);
    const double gd1 = std::tgamma(0.5 * (d - 1.0));
    const double denom = M_PI * std::pow((d * d - 1.0) * gd1, 2) * d * d *
                         gamma_pg(g);
    return 64.0 * pi_dot * pi_dot * std::pow(gd * bracket, 2) / denom * tau_sq;
}

double are_semiparam_vs_pg(const RadialDensity& f, const RadialDensity& g) {
    if (f.dim() != g.dim()) throw ConfigError("are: dimension mismatch");
    const double d = f.dim();
    const double k = cross_info(f, g);
    const double a = alpha_const(f, g);
    const double gam = gamma_const(f, g);
    const double m1 = g.moment(1.0);
    const double m2 = g.moment(2.0);
    const double m3 = g.moment(3.0);
    const double bracket = (d + 1.0) * m1 * m2 - d * m3;
    const double gd = std::tgamma(0.5 * d);
    const double gd1 = std::tgamma(0.5 * (d - 1.0));
    const double factor = 1.0 - a / k;
    return d * d * d * M_PI * factor * factor *
           std::pow((d * d - 1.0) * gd1, 2) * gamma_pg(g) /
           (16.0 * std::pow(gd * bracket, 2) * gam);
}

double local_power(double noncentrality, int d, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw ConfigError("local_power: level must be in (0,1)");
    const double crit = chi2_quantile(1.0 - alpha, d);
    return noncentral_chi2_sf(crit, d, noncentrality);
}

std::vector<AreRow> are_grid(const std::vector<int>& dims,
                             const std::vector<std::string>& refs,
                             const std::vector<std::string>& unders) {
    std::vector<AreRow> rows;
    for (int d : dims) {
        for (const std::string& ref : refs) {
            for (const std::string& und : unders) {
                AreRow row{d, ref, und, 0.0, ""};
                try {
                    const RadialDensity f = RadialDensity::parse(ref, d);
                    const RadialDensity g = RadialDensity::parse(und, d);
                    row.are = are_semiparam_vs_pg(f, g);
                } catch (const std::exception& e) {
                    row.error = e.what();
                }
                rows.push_back(row);
            }
        }
    }
    return rows;
}

} // namespace ellsym
