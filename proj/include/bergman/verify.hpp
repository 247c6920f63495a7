#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bergman/quadrature.hpp"
#include "bergman/space.hpp"

namespace bergman {

enum class CheckStatus { Pass, Fail, Skip };

const char* to_string(CheckStatus s);

struct CheckRow {
    std::string name;
    CheckStatus status = CheckStatus::Skip;
    double measured = 0.0;
    double threshold = 0.0;
    std::string note;
};

struct VerifyOptions {
    std::uint64_t seed = 0x5eed;
    int curvature_trials = 50;
    int sample_count = 64;
    double radial_bound = 10.0;
    long long mc_samples = 200000;
};

// Runs the invariant suite for one domain spec and returns one row per named
// check.  Checks that require the kernel window 2/(n-1) < a <= 3/(n-1) are
// reported as Skip outside it.  Deterministic for fixed options.
std::vector<CheckRow> run_verification(const DomainSpec& spec, const QuadratureConfig& cfg,
                                       const VerifyOptions& opts = {});

bool all_passed(const std::vector<CheckRow>& rows);

}  // namespace bergman
