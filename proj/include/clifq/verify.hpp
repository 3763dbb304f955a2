#pragma once

#include "clifq/io.hpp"

#include <string>
#include <vector>

namespace clifq {

struct CaseFailure {
    size_t index = 0;
    std::string witness;
};

struct VerificationReport {
    std::string suite;
    unsigned long seed = 0;
    size_t cases = 0;
    std::vector<CaseFailure> failures;
    double wall_seconds = 0;

    bool passed() const { return failures.empty(); }
};

struct SuiteInfo {
    std::string name;
    std::string description;
    size_t cases;
};

/// Registered suites in acceptance order, then auxiliary suites.
const std::vector<SuiteInfo>& suites();

/// Cases run independently with per-case seeds derived from (seed, index),
/// on up to `parallelism` threads; results are merged in index order.
/// UsageError for an unknown name; BoundExceeded from any case propagates.
VerificationReport run_suite(const std::string& name, unsigned long seed = 0, size_t parallelism = 1);

/// Wall time is left out unless `timing` is set, so that reports are
/// reproducible byte for byte.
io::json to_json(const VerificationReport& r, bool timing = false);

} // namespace clifq
