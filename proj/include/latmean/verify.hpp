#pragma once

#include <cstdint>
#include <iosfwd>

namespace latmean {

/// Randomized self-check of the mean/measure identities on small instances
/// with exact enumeration: negation duality, homogeneity, subadditivity,
/// monotonicity, constant bounds and shifts, complement and disjoint-union
/// chains, finite-modification bounds, heuristic containment, and a
/// uniform-limit drift check. Failures log a reproducer (seed, instance,
/// eps). Deterministic for a fixed seed.
struct VerifyOptions {
    std::uint64_t seed = 20240817;
    int instances = 200;
    int max_n = 14;
    std::size_t cap = 1'000'000;
};

struct VerifySummary {
    int checks_run = 0;
    int failures = 0;
    bool ok() const { return failures == 0; }
};

VerifySummary run_verify(const VerifyOptions& options, std::ostream& log);

}  // namespace latmean
