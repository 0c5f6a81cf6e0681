#pragma once

// Property suites behind `lensrr verify`.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace lensrr::verify {

struct PropertyResult {
    std::string suite;
    std::string name;
    bool pass;
    std::string detail;
    double seconds;
};

/// geometry, spaces, martingales, witnesses or all.
[[nodiscard]] std::vector<std::string> suite_names();

/// Runs the properties of a suite in parallel (LENSRR_THREADS caps the worker
/// count); results come back in a fixed order.  Throws for unknown suites.
[[nodiscard]] std::vector<PropertyResult> run_suite(const std::string& suite, std::uint64_t seed);

void print_table(std::ostream& os, const std::vector<PropertyResult>& results);

}  // namespace lensrr::verify
