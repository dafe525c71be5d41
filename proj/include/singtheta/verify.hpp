#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "singtheta/smallmat.hpp"

namespace singtheta {

struct SuiteResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// automorphism counts are units mod p for the listed primes (> 3),
/// over all reduced binary classes with |disc| <= max_abs_disc
SuiteResult suite_epsilon(i64 max_abs_disc, const std::vector<i64>& primes);

/// primitive-coefficient inversion is the identity on random finitely
/// supported class functions with det <= det_bound
SuiteResult suite_roundtrip(int instances, i64 det_bound, std::uint64_t seed);

/// exact rank-r identity for random rational theta combinations in
/// degrees 3 and 4 at trace bound 6, plus a corruption control
SuiteResult suite_freitag(int instances, std::uint64_t seed);

/// recovery of known theta coefficients mod 7 and 49 over the classes of
/// discriminant -7 and -23, with congruent residual
SuiteResult suite_decompose(std::uint64_t seed);

/// block-restriction congruence on theta-built expansions
SuiteResult suite_phi();

/// no prime below the bound is represented by two inequivalent primitive
/// classes, for every discriminant dmin <= D <= -3
SuiteResult suite_weber(i64 dmin, i64 prime_bound);

/// U(p)/V(p) ladder identities on the S(i,j) family
SuiteResult suite_uv(const std::vector<i64>& primes, int max_i, int max_j, i64 bound);

/// F_p-rank of truncated level-p theta coefficients equals the class count
SuiteResult suite_independence(const std::vector<i64>& primes, i64 coeff_bound);

/// numeric transformation identity at the cusp attached to d = p, plus
/// the structural local check on the partner lattice
SuiteResult suite_kitaoka(const std::vector<i64>& primes, double tol, int samples,
                          std::uint64_t seed);

/// detect_singularity returns p-rank = size(S) on theta series
SuiteResult suite_singularity(i64 trace_bound);

/// weight congruence on theta-built singular examples (2k - r = 0)
SuiteResult suite_weight();

std::vector<SuiteResult> run_all_suites(std::uint64_t seed);

} // namespace singtheta
