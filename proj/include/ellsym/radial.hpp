#pragma once

#include <functional>
#include <string>

namespace ellsym {

enum class RadialFamily { gaussian, student };

/// A radial density f from the standardized family F1, i.e. rescaled so
/// that E[rho^2] = d under the induced radius density f~_d.  Immutable.
class RadialDensity {
public:
    static RadialDensity make_gaussian(int d);
    static RadialDensity make_student(double nu, int d);

    // Config-string form: "gaussian", or "t<nu>" as in "t4", "t2.1".
    static RadialDensity parse(const std::string& name, int d);

    RadialFamily family() const { return family_; }
    int dim() const { return d_; }
    double nu() const { return nu_; }
    // Radius standardization factor relative to the raw family.
    double scale() const { return scale_; }
    std::string name() const;
    bool is_gaussian() const { return family_ == RadialFamily::gaussian; }

    // Standardized kernel f(r) (not normalized to integrate to 1).
    double f(double r) const;

    // mu_{k;f} = int_0^inf r^k f(r) dr, in closed form.
    double mu(double k) const;
    bool mu_finite(double k) const;

    // E[rho^j] = mu_{d-1+j} / mu_{d-1}; throws on divergent moments.
    double moment(double j) const;
    bool moment_finite(double j) const;

    // Density of rho: mu_{d-1}^{-1} r^{d-1} f(r), r > 0.
    double pdf_tilde(double r) const;

private:
    RadialDensity(RadialFamily fam, double nu, int d, double scale);

    RadialFamily family_;
    double nu_;
    int d_;
    double scale_;
};

/// Location score phi_f = -f'/f together with its derivative and the
/// scatter score psi_f (equal to phi_f for the smooth families here).
struct ScoreBundle {
    std::function<double(double)> phi;
    std::function<double(double)> phi_prime;
    std::function<double(double)> psi;
};

ScoreBundle scores(const RadialDensity& f);

// Fisher information for location, I_{d,f} = E_f[phi_f(rho)^2].
double fisher_location(const RadialDensity& f);

// Fisher information for scatter, J_{d,f} = E_f[rho^2 psi_f(rho)^2].
double fisher_scatter(const RadialDensity& f);

// K_{d,f,g} = E_g[phi_f'(rho) + (d-1) phi_f(rho)/rho].
// Requires g in F_{1;f}; checked numerically.
double cross_info(const RadialDensity& f, const RadialDensity& g);

// alpha_{d,f,g} = E_g[rho * phi_f(rho)].
double alpha_const(const RadialDensity& f, const RadialDensity& g);

// gamma_{d,f,g} = E_g[(rho - (d / K_{d,f,g}) phi_f(rho))^2].
double gamma_const(const RadialDensity& f, const RadialDensity& g);

// c_d = 4 Gamma(d/2) / ((d^2-1) sqrt(pi) Gamma((d-1)/2)).
double cassart_cd(int d);

// gamma_G of the pseudo-Gaussian test under g; needs E[rho^4] < inf.
double gamma_pg(const RadialDensity& g);

} // namespace ellsym
