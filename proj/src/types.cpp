#include "pipestab/types.hpp"

#include <cmath>

namespace pipestab {

ModeCase classify(double alpha, int n) {
    if (n != 0) return ModeCase::General;
    return alpha != 0 ? ModeCase::AxisymmetricFinite : ModeCase::AxisymmetricZero;
}

const char* to_string(ModeCase c) {
    switch (c) {
        case ModeCase::General: return "general";
        case ModeCase::AxisymmetricFinite: return "axisymmetric";
        case ModeCase::AxisymmetricZero: return "axisymmetric-zero";
    }
    return "unknown";
}

void FlowParams::validate() const {
    if (!(re > 0)) throw InputError("Reynolds number must be positive");
    if (alpha < 0) throw InputError("alpha must be non-negative");
    if (!std::isfinite(alpha) || !std::isfinite(re)) throw InputError("parameters must be finite");
    if (stretch.kind == StretchKind::Stretched && !(stretch.a > 0))
        throw InputError("stretch parameter a must be positive");
    if (N < 8) throw InputError("grid order N must be at least 8");
}

StretchChoice parse_stretch(const std::string& s) {
    if (s == "auto") return StretchChoice::automatic();
    if (s == "linear") return StretchChoice::linear();
    std::size_t pos = 0;
    double a = 0;
    try {
        a = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw InputError("--stretch expects auto, linear or a positive number, got '" + s + "'");
    }
    if (pos != s.size() || !(a > 0)) throw InputError("--stretch expects auto, linear or a positive number, got '" + s + "'");
    return StretchChoice::stretched(a);
}

}  // namespace pipestab
