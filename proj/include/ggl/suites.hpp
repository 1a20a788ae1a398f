#ifndef GGL_SUITES_HPP
#define GGL_SUITES_HPP

// Named verification suites driving the library's identities over seeded
// samples.  Every record is a pure function of (seed, suite, index), so
// reports are byte-identical across runs and worker counts.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "ggl/special.hpp"

namespace ggl {

inline constexpr const char* kVersion = "0.1.0";

struct SuiteConfig {
    std::uint64_t seed = 7;
    int samples = 50;
    double tol = 0.0;  // 0 = suite default
    int workers = 1;
    EvalConfig eval{};
};

struct SuiteResult {
    nlohmann::ordered_json report;
    bool passed = false;
};

// Registered suite names, in execution order for `verify all`.
const std::vector<std::string>& suite_names();

// Runs one suite; throws std::invalid_argument for unknown names.
SuiteResult run_suite(const std::string& name, const SuiteConfig& cfg);

} // namespace ggl

#endif
