#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace lstar {

struct VerifyCheck {
    std::string suite;
    std::string name;
    bool passed = false;
    std::string detail;
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;

    std::size_t passed() const;
    std::size_t failed() const;
    bool ok() const { return failed() == 0; }
};

/// Suite names accepted by run_verify, "all" excluded.
const std::vector<std::string_view>& verify_suites();

/// Runs one suite (or "all") with random instances drawn from `seed`.
/// The report is a pure function of (suite, seed).
VerifyReport run_verify(std::string_view suite, std::uint64_t seed);

} // namespace lstar
