#include <doctest.h>

#include "xlambda/verify.hpp"

using namespace xlam;

TEST_CASE("parse_primes") {
    CHECK(parse_primes("5..50") ==
          std::vector<u64>{5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47});
    CHECK(parse_primes("7") == std::vector<u64>{7});
    CHECK(parse_primes("5,7,11") == std::vector<u64>{5, 7, 11});
    CHECK_THROWS_AS(parse_primes("4"), std::invalid_argument);
    CHECK_THROWS_AS(parse_primes("9"), std::invalid_argument);
    CHECK_THROWS_AS(parse_primes("2,3"), std::invalid_argument);
    CHECK(parse_primes("3..6") == std::vector<u64>{5});
}

TEST_CASE("suite names") {
    CHECK(is_known_suite("all"));
    CHECK(is_known_suite("gn"));
    CHECK(is_known_suite("moments"));
    CHECK(!is_known_suite("nope"));
    VerifyConfig cfg;
    cfg.primes = {5};
    cfg.suite = "nope";
    CHECK_THROWS_AS(run_verify(cfg), std::invalid_argument);
}

TEST_CASE("the full identity gate is green at small primes") {
    VerifyConfig cfg;
    cfg.primes = {5, 7, 11};
    cfg.suite = "all";
    cfg.samples = 5;
    auto results = run_verify(cfg);
    for (const auto& r : results) {
        for (const auto& f : r.failures) {
            MESSAGE("suite=", r.suite, " p=", r.prime, " ", f.identity, " inputs=", f.inputs, " lhs=", f.lhs,
                    " rhs=", f.rhs);
        }
    }
    CHECK(total_failures(results) == 0);
    // every identity suite ran for every prime
    CHECK(results.size() == identity_suites().size() * cfg.primes.size());
    for (const auto& r : results) CHECK(r.checks > 0);
}

TEST_CASE("reports are byte-identical for identical config and seed") {
    VerifyConfig cfg;
    cfg.primes = {5, 7};
    cfg.suite = "curves";
    cfg.seed = 42;
    auto r1 = run_verify(cfg);
    auto r2 = run_verify(cfg);
    CHECK(verify_report_json(cfg, r1) == verify_report_json(cfg, r2));
}

TEST_CASE("residue-gated suites leave a notice, never a silent pass") {
    VerifyConfig cfg;
    cfg.primes = {7};  // 7 = 1 (mod 3): the g9 half is skipped inside gn
    cfg.suite = "gn";
    auto results = run_verify(cfg);
    REQUIRE(results.size() == 1);
    CHECK(total_failures(results) == 0);
    CHECK(!results[0].notices.empty());
}

TEST_CASE("trend suites run only when named") {
    VerifyConfig cfg;
    cfg.primes = {199};
    cfg.suite = "clausen";
    cfg.clausen_tol = 0.5;
    auto results = run_verify(cfg);
    REQUIRE(results.size() == 1);
    CHECK(results[0].suite == "clausen");
    CHECK(results[0].checks == 3);
    CHECK(total_failures(results) == 0);
}
