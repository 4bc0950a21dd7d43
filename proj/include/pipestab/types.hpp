#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace pipestab {

// Assembly and refinement run in x87 extended precision; QZ runs in double.
using ext = long double;
using cext = std::complex<long double>;
using cplx = std::complex<double>;

using ExtMatrix = Eigen::Matrix<ext, Eigen::Dynamic, Eigen::Dynamic>;
using ExtVector = Eigen::Matrix<ext, Eigen::Dynamic, 1>;
using CExtMatrix = Eigen::Matrix<cext, Eigen::Dynamic, Eigen::Dynamic>;
using CExtVector = Eigen::Matrix<cext, Eigen::Dynamic, 1>;
using CExtRow = Eigen::Matrix<cext, 1, Eigen::Dynamic>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

enum class ModeCase { General, AxisymmetricFinite, AxisymmetricZero };

ModeCase classify(double alpha, int n);
const char* to_string(ModeCase c);

enum class StretchKind { Auto, Linear, Stretched };

struct StretchChoice {
    StretchKind kind = StretchKind::Auto;
    double a = 0.0;

    static StretchChoice automatic() { return {}; }
    static StretchChoice linear() { return {StretchKind::Linear, 0.0}; }
    static StretchChoice stretched(double a) { return {StretchKind::Stretched, a}; }
};

// "auto", "linear" or a positive stretch parameter.
StretchChoice parse_stretch(const std::string& s);

struct FlowParams {
    double alpha = 1.0;
    int n = 1;
    double re = 3000.0;
    int N = 47;
    StretchChoice stretch;

    ModeCase mode_case() const { return classify(alpha, n); }
    void validate() const;
};

// Thrown for invalid input (bad N, mismatched case, out-of-range index).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Thrown when a numerical kernel fails (QZ breakdown, no convergence).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace pipestab
