// params.cpp - ModelParams presets and validation

#include "qbat/params.hpp"

#include "qbat/matrix.hpp"

#include <cmath>
#include <cstdio>

namespace qbat {

ModelParams ModelParams::paper_defaults(int n) {
    ModelParams p;
    p.n = n;
    p.g = 1e-3;
    p.omega_a = 10.0;
    p.omega = -2.3 * p.omega_a;
    p.delta = 10.0 * p.g * n;
    return p;
}

double ModelParams::epsilon2() const {
    return std::abs(omega_a + 2.0 * omega) + delta;
}

void ModelParams::validate() const {
    auto fail = [this](const char* what) {
        throw InvalidArgument(std::string("ModelParams: ") + what + " (" + describe(*this) + ")");
    };
    if (n < 3 || n % 2 == 0) fail("n must be odd and >= 3");
    if (!std::isfinite(omega_a) || !std::isfinite(omega) || !std::isfinite(g) || !std::isfinite(delta)) {
        fail("non-finite parameter");
    }
    if (omega_a <= 0.0) fail("omega_a must be positive");
    if (omega >= 0.0) fail("omega must be negative");
    if (std::abs(omega) <= omega_a) fail("strong coupling |omega| > omega_a required");
    if (g <= 0.0) fail("g must be positive");
    if (delta <= 0.0) fail("delta must be positive");
    if (epsilon1() <= 0.0 || epsilon2() <= 0.0) fail("battery splittings must be positive");
    if (epsilon2() <= epsilon1()) fail("epsilon2 must exceed epsilon1");
}

std::string describe(const ModelParams& p) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "n=%d omega_a=%.12g omega=%.12g g=%.12g delta=%.12g", p.n, p.omega_a,
                  p.omega, p.g, p.delta);
    return buf;
}

} // namespace qbat
