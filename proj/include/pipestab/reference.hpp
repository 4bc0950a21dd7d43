#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pipestab/types.hpp"

namespace pipestab {

struct ReferenceRecord {
    double alpha = 0;
    int n = 0;
    double re = 0;
    int N = 0;
    StretchChoice stretch;
    double omega_real = 0;
    double omega_imag = 0;
    int digits = 0;     // decimal places printed in the source
    double tol = 0;     // absolute tolerance per component
    std::string source;  // "table1:<block>:<row>"
};

enum class Table2Column { Collocation, Series };

struct Table2Record {
    int kind = 1;  // 1: psi1, 2: psi2
    int row = 1;   // mode depth, 1..7
    Table2Column column = Table2Column::Collocation;
    double omega_imag = 0;
    int digits = 0;  // decimal places printed (series values are truncated)
    std::string source;
};

const std::vector<ReferenceRecord>& table1_records();
const std::vector<Table2Record>& table2_records();

struct ValidationRow {
    std::string source;
    double expected_re = 0, expected_im = 0;
    double computed_re = 0, computed_im = 0;
    double error = 0;
    double tol = 0;
    double digits = 0;  // -log10 of the error
    bool pass = false;
};

std::vector<ValidationRow> validate_table1(const std::vector<ReferenceRecord>& records);
std::vector<ValidationRow> validate_table2(const std::vector<Table2Record>& records, int N = 47, double re = 3000,
                                           int kmax = 90);

// One line per row; returns true if every row passed.
bool print_validation(std::ostream& os, const std::vector<ValidationRow>& rows);

}  // namespace pipestab
