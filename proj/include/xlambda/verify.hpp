#pragma once

#include <functional>
#include <string>
#include <vector>

#include "xlambda/ff.hpp"

namespace xlam {

struct CheckFailure {
    std::string identity;
    std::string inputs;
    std::string lhs;
    std::string rhs;
};

struct SuiteResult {
    std::string suite;
    u64 prime = 0;
    u64 checks = 0;
    std::vector<CheckFailure> failures;
    std::vector<std::string> notices;  // skips and boundary notes, never silent
};

struct VerifyConfig {
    std::vector<u64> primes;
    std::string suite = "all";
    int precision = 3;
    u64 samples = 20;
    u64 seed = 1;
    int workers = 1;
    int m_max = 4;
    double moment_tol = 0.15;
    double ks_tol = 0.05;
    double clausen_tol = 0.2;
};

// Identity suites (exact / err-aware): ff, gauss, gamma, floors, curves, cp,
// decomp, gn. "all" runs every identity suite. The trend suites (moments,
// distribution, clausen) are scale-sensitive and only run when named.
std::vector<std::string> identity_suites();
bool is_known_suite(const std::string& name);

std::vector<SuiteResult> run_verify(const VerifyConfig& config);

u64 total_failures(const std::vector<SuiteResult>& results);

// Deterministic JSON report; identical config + seed => byte-identical text.
std::string verify_report_json(const VerifyConfig& config, const std::vector<SuiteResult>& results);

// "5..50" or "5,7,11" -> primes >= 5 in range / list; throws on non-primes in
// list form and on malformed input.
std::vector<u64> parse_primes(const std::string& spec);

}  // namespace xlam
