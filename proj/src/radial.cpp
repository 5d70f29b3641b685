#include "ellsym/radial.hpp"

#include <cmath>
#include <sstream>

#include "ellsym/errors.hpp"
#include "ellsym/quadrature.hpp"

namespace ellsym {

namespace {

double lbeta(double a, double b) {
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

} // namespace

RadialDensity::RadialDensity(RadialFamily fam, double nu, int d, double scale)
    : family_(fam), nu_(nu), d_(d), scale_(scale) {}

RadialDensity RadialDensity::make_gaussian(int d) {
    if (d < 1) throw ConfigError("RadialDensity: dimension must be positive");
    return RadialDensity(RadialFamily::gaussian, 0.0, d, 1.0);
}

RadialDensity RadialDensity::make_student(double nu, int d) {
    if (d < 1) throw ConfigError("RadialDensity: dimension must be positive");
    if (!(nu > 2.0))
        throw ConfigError("RadialDensity: student requires nu > 2");
    // Raw Student radius has E[rho^2] = d*nu/(nu-2); shrinking the radius
    // by sqrt((nu-2)/nu) restores the E[rho^2] = d constraint.
    return RadialDensity(RadialFamily::student, nu, d,
                         std::sqrt((nu - 2.0) / nu));
}

RadialDensity RadialDensity::parse(const std::string& name, int d) {
    if (name == "gaussian") return make_gaussian(d);
    if (name.size() > 1 && name[0] == 't') {
        std::size_t pos = 0;
        double nu = 0.0;
        try {
            nu = std::stod(name.substr(1), &pos);
        } catch (const std::exception&) {
            throw ConfigError("RadialDensity: cannot parse density '" + name + "'");
        }
        if (pos != name.size() - 1)
            throw ConfigError("RadialDensity: cannot parse density '" + name + "'");
        return make_student(nu, d);
    }
    throw ConfigError("RadialDensity: unknown density '" + name + "'");
}

std::string RadialDensity::name() const {
    if (family_ == RadialFamily::gaussian) return "gaussian";
    std::ostringstream out;
    out << 't' << nu_;
    return out.str();
}

double RadialDensity::f(double r) const {
    if (family_ == RadialFamily::gaussian) return std::exp(-0.5 * r * r);
    const double b = nu_ - 2.0;
    return std::pow(1.0 + r * r / b, -0.5 * (d_ + nu_));
}

bool RadialDensity::mu_finite(double k) const {
    if (k <= -1.0) return false;
    if (family_ == RadialFamily::gaussian) return true;
    return k < d_ + nu_ - 1.0;
}

double RadialDensity::mu(double k) const {
    if (!mu_finite(k))
        throw NumericalError("RadialDensity: divergent moment mu_" +
                             std::to_string(k) + " for " + name());
    if (family_ == RadialFamily::gaussian)
        return std::exp(0.5 * (k - 1.0) * std::log(2.0) +
                        std::lgamma(0.5 * (k + 1.0)));
    const double b = nu_ - 2.0;
    return 0.5 * std::pow(b, 0.5 * (k + 1.0)) *
           std::exp(lbeta(0.5 * (k + 1.0), 0.5 * (d_ + nu_ - k - 1.0)));
}

bool RadialDensity::moment_finite(double j) const {
    return mu_finite(d_ - 1.0 + j);
}

double RadialDensity::moment(double j) const {
    return mu(d_ - 1.0 + j) / mu(d_ - 1.0);
}

double RadialDensity::pdf_tilde(double r) const {
    if (!(r > 0.0)) throw ConfigError("pdf_tilde: r must be positive");
    return std::pow(r, d_ - 1.0) * f(r) / mu(d_ - 1.0);
}

ScoreBundle scores(const RadialDensity& f) {
    ScoreBundle s;
    if (f.is_gaussian()) {
        s.phi = [](double r) { return r; };
        s.phi_prime = [](double) { return 1.0; };
    } else {
        const double b = f.nu() - 2.0;
        const double c = f.dim() + f.nu();
        s.phi = [b, c](double r) { return c * r / (b + r * r); };
        s.phi_prime = [b, c](double r) {
            const double q = b + r * r;
            return c * (b - r * r) / (q * q);
        };
    }
    s.psi = s.phi;
    return s;
}

namespace {

double expect_tilde(const RadialDensity& g,
                    const std::function<double(double)>& h) {
    return integrate_0_inf([&](double r) { return h(r) * g.pdf_tilde(r); });
}

} // namespace

double fisher_location(const RadialDensity& f) {
    const ScoreBundle s = scores(f);
    return expect_tilde(f, [&s](double r) {
        const double p = s.phi(r);
        return p * p;
    });
}

double fisher_scatter(const RadialDensity& f) {
    const ScoreBundle s = scores(f);
    return expect_tilde(f, [&s](double r) {
        const double p = s.psi(r);
        return r * r * p * p;
    });
}

double cross_info(const RadialDensity& f, const RadialDensity& g) {
    if (f.dim() != g.dim())
        throw ConfigError("cross_info: dimension mismatch");
    // Membership check for F_{1;f}: finiteness of the (2+eps)-moment of g,
    // with eps = 0.1.
    if (!g.moment_finite(2.1))
        throw NumericalError("cross_info: g outside F_{1;f} (2.1-moment diverges)");
    const int d = f.dim();
    if (f.is_gaussian()) return static_cast<double>(d); // integrand is constant d
    const ScoreBundle s = scores(f);
    const double k = expect_tilde(g, [&s, d](double r) {
        return s.phi_prime(r) + (d - 1) * s.phi(r) / r;
    });
    if (std::abs(k) < 1e-10)
        throw NumericalError("cross_info: K_{d,f,g} degenerate (g outside F_{1;f})");
    return k;
}

double alpha_const(const RadialDensity& f, const RadialDensity& g) {
    if (f.dim() != g.dim())
        throw ConfigError("alpha_const: dimension mismatch");
    const ScoreBundle s = scores(f);
    return expect_tilde(g, [&s](double r) { return r * s.phi(r); });
}

double gamma_const(const RadialDensity& f, const RadialDensity& g) {
    const double k = cross_info(f, g);
    const double d = f.dim();
    const ScoreBundle s = scores(f);
    return expect_tilde(g, [&s, d, k](double r) {
        const double w = r - (d / k) * s.phi(r);
        return w * w;
    });
}

double cassart_cd(int d) {
    if (d < 2) throw ConfigError("cassart_cd: requires d >= 2");
    return 4.0 * std::tgamma(0.5 * d) /
           ((static_cast<double>(d) * d - 1.0) * std::sqrt(M_PI) *
            std::tgamma(0.5 * (d - 1.0)));
}

double gamma_pg(const RadialDensity& g) {
    if (!g.moment_finite(4.0))
        throw NumericalError("gamma_pg: E[rho^4] diverges under " + g.name());
    const double d = g.dim();
    const double c = cassart_cd(g.dim());
    const double m1 = g.moment(1.0);
    const double m2 = g.moment(2.0);
    const double m3 = g.moment(3.0);
    const double m4 = g.moment(4.0);
    return 3.0 / (d * (d + 2.0)) * m4 - 2.0 * c * c * (d + 1.0) * m1 * m3 +
           c * c * (d + 1.0) * (d + 1.0) / d * m1 * m1 * m2;
}

} // namespace ellsym
