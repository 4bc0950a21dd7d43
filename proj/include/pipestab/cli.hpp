#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pipestab/eig.hpp"

namespace pipestab::cli {

enum ExitCode { Ok = 0, ValidationFailure = 1, UsageError = 2, NumericalFailure = 3 };

// %.17g, '.' decimal separator regardless of locale.
std::string fmt(double x);

void write_spectrum_csv(std::ostream& os, const Spectrum& s, int modes);

struct SweepConfig {
    std::vector<double> alpha;
    std::vector<int> n;
    std::vector<double> re;
    int N = 47;
    StretchChoice stretch;
    int workers = 0;  // 0: hardware concurrency
    int refine = 1;
};

// key = value lines; lists are comma separated; '#' starts a comment.
SweepConfig parse_sweep_config(std::istream& is);
SweepConfig load_sweep_config(const std::string& path);

struct SweepSummary {
    int total = 0;
    int skipped = 0;
    int computed = 0;
};

// Appends one JSON line per (alpha, n, re) tuple not already present in out_path.
SweepSummary run_sweep(const SweepConfig& cfg, const std::string& out_path, int limit = -1);

std::string describe_grid(const GridSpec& g);

int run(int argc, char** argv);

}  // namespace pipestab::cli
