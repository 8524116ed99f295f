#pragma once

#include <string>
#include <vector>

namespace qsys {

// One named residual check. `law` identifies the identity being tested
// (e.g. "pentagon", "unitarity", "Q4-separability").
struct Check {
    std::string id;
    std::string law;
    double residual = 0.0;
    double tol = 0.0;
    bool pass = false;
};

struct Report {
    std::vector<Check> checks;
    double timing_seconds = 0.0;

    void add(const std::string& id, const std::string& law, double residual, double tol) {
        checks.push_back({id, law, residual, tol, residual <= tol});
    }
    void merge(const Report& other, const std::string& prefix = "") {
        for (const Check& c : other.checks)
            checks.push_back({prefix + c.id, c.law, c.residual, c.tol, c.pass});
    }
    bool pass() const {
        for (const Check& c : checks)
            if (!c.pass) return false;
        return true;
    }
    double max_residual() const {
        double v = 0.0;
        for (const Check& c : checks) v = std::max(v, c.residual);
        return v;
    }
};

}  // namespace qsys
