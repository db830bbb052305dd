#pragma once

#include <string>

namespace nct {

/// Outcome of a numerical verification run.
struct Report {
    bool pass = true;
    bool vacuous = false;  // empty test set, reported rather than passed silently
    double max_err = 0.0;
    int checks = 0;
    std::string detail;

    void record(double err) {
        if (err > max_err) max_err = err;
        ++checks;
    }
    void finalize(double tol) { pass = !vacuous ? (max_err <= tol) : true; }
};

}  // namespace nct
