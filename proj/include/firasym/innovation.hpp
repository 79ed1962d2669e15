#pragma once

#include <string>

namespace firasym {

enum class InnovationFamily { gaussian, uniform, mixture };

std::string to_string(InnovationFamily f);
InnovationFamily innovation_family_from_string(const std::string& s);

// Distribution of one i.i.d. innovation stream: zero mean, given variance,
// with exact higher-order moments stored alongside. The moments are always
// the closed forms implied by the family, never free inputs:
//   gaussian: E[x^{2k}] = (2k-1)!! var^k
//   uniform on [-b, b], b = sqrt(3 var): E[x^{2k}] = b^{2k}/(2k+1)
//   mixture: equal-weight two-point (+-amp) / gaussian mix with the
//            amplitudes solved from (variance, moment4); reaches kurtosis
//            ratios E[x^4]/var^2 in [2, 6].
struct InnovationSpec {
    InnovationFamily family = InnovationFamily::gaussian;
    double variance = 1.0;
    double moment4 = 3.0;
    double moment8 = 105.0;
    double moment16 = 2027025.0;

    // mixture internals (unused for the closed-form families)
    double mix_point_amp = 0.0;   // two-point component amplitude
    double mix_gauss_var = 0.0;   // gaussian component variance

    double kurtosis_ratio() const { return moment4 / (variance * variance); }

    void validate() const;

    static InnovationSpec gaussian(double variance);
    static InnovationSpec uniform(double variance);
    static InnovationSpec mixture(double variance, double moment4);
};

}  // namespace firasym
