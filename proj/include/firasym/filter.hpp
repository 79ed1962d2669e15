#pragma once

#include <vector>

namespace firasym {

// Impulse response h(0..K) of a stable input filter H(q). For filters with
// an infinite response (AR(1) presets) the stored coefficients are a
// truncation; declared_tail_bound bounds the discarded mass sum_{k>K}|h(k)|.
struct FilterSpec {
    std::vector<double> coeffs;
    double declared_tail_bound = 0.0;

    int order() const { return static_cast<int>(coeffs.size()) - 1; }

    void validate() const;

    // White noise input: h = [1].
    static FilterSpec white();
    // Two-tap FIR: h = [h0, h1].
    static FilterSpec fir2(double h0, double h1);
    // Geometric response h(k) = a^k, |a| < 1, truncated so that the tail
    // a^{K+1}/(1-|a|) is at most tail_tol.
    static FilterSpec ar1(double a, double tail_tol = 1e-10);
};

}  // namespace firasym
