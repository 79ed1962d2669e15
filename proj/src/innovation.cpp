#include "firasym/innovation.hpp"

#include <cmath>

#include "firasym/errors.hpp"

namespace firasym {

std::string to_string(InnovationFamily f) {
    switch (f) {
        case InnovationFamily::gaussian: return "gaussian";
        case InnovationFamily::uniform: return "uniform";
        case InnovationFamily::mixture: return "mixture";
    }
    return "?";
}

InnovationFamily innovation_family_from_string(const std::string& s) {
    if (s == "gaussian") return InnovationFamily::gaussian;
    if (s == "uniform") return InnovationFamily::uniform;
    if (s == "mixture") return InnovationFamily::mixture;
    throw ConfigError("unsupported innovation family: " + s);
}

void InnovationSpec::validate() const {
    if (!(variance > 0.0)) throw ConfigError("innovation variance must be positive");
    if (moment4 < variance * variance)
        throw ConfigError("innovation moment4 violates E[x^4] >= var^2");
    const double v = variance;
    double want4 = 0.0;
    switch (family) {
        case InnovationFamily::gaussian: want4 = 3.0 * v * v; break;
        case InnovationFamily::uniform: want4 = 1.8 * v * v; break;
        case InnovationFamily::mixture: {
            // (variance, moment4) pair must reproduce itself from the mixture
            // parameters; amplitudes were solved at construction.
            const double a2 = mix_point_amp * mix_point_amp;
            const double g = mix_gauss_var;
            const double var_back = 0.5 * (a2 + g);
            const double m4_back = 0.5 * (a2 * a2 + 3.0 * g * g);
            if (std::abs(var_back - v) > 1e-12 * v ||
                std::abs(m4_back - moment4) > 1e-12 * moment4)
                throw ConfigError("mixture innovation: stored moments do not match parameters");
            return;
        }
    }
    if (std::abs(moment4 - want4) > 1e-12 * want4)
        throw ConfigError("innovation moment4 does not match family closed form");
}

InnovationSpec InnovationSpec::gaussian(double variance) {
    if (!(variance > 0.0)) throw ConfigError("gaussian innovation variance must be positive");
    InnovationSpec s;
    s.family = InnovationFamily::gaussian;
    s.variance = variance;
    const double v = variance;
    s.moment4 = 3.0 * v * v;
    s.moment8 = 105.0 * v * v * v * v;          // 7!!
    s.moment16 = 2027025.0 * std::pow(v, 8.0);  // 15!!
    return s;
}

InnovationSpec InnovationSpec::uniform(double variance) {
    if (!(variance > 0.0)) throw ConfigError("uniform innovation variance must be positive");
    InnovationSpec s;
    s.family = InnovationFamily::uniform;
    s.variance = variance;
    const double b2 = 3.0 * variance;  // support [-b, b]
    s.moment4 = b2 * b2 / 5.0;
    s.moment8 = std::pow(b2, 4.0) / 9.0;
    s.moment16 = std::pow(b2, 8.0) / 17.0;
    return s;
}

InnovationSpec InnovationSpec::mixture(double variance, double moment4) {
    if (!(variance > 0.0)) throw ConfigError("mixture innovation variance must be positive");
    const double v2 = variance * variance;
    // Equal-weight mix of +-amp and N(0, g):
    //   0.5 (amp^2 + g)       = variance
    //   0.5 (amp^4 + 3 g^2)   = moment4
    // Solving for x = amp^2 gives x = (3 var - sqrt(2 m4 - 3 var^2)) / 2,
    // valid (x >= 0, g >= 0) exactly when m4 in [2 var^2, 6 var^2].
    if (moment4 < 2.0 * v2 || moment4 > 6.0 * v2)
        throw ConfigError("mixture innovation requires moment4 in [2,6]*variance^2");
    const double x = 0.5 * (3.0 * variance - std::sqrt(2.0 * moment4 - 3.0 * v2));
    const double g = 2.0 * variance - x;
    InnovationSpec s;
    s.family = InnovationFamily::mixture;
    s.variance = variance;
    s.moment4 = moment4;
    s.mix_point_amp = std::sqrt(x);
    s.mix_gauss_var = g;
    s.moment8 = 0.5 * (std::pow(x, 4.0) + 105.0 * std::pow(g, 4.0));
    s.moment16 = 0.5 * (std::pow(x, 8.0) + 2027025.0 * std::pow(g, 8.0));
    return s;
}

}  // namespace firasym
