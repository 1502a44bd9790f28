#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mfcy/cy.hpp"

namespace mfcy {

/// Reproducible generator (splitmix64); identical streams on every platform.
class DeterministicRng {
public:
    explicit DeterministicRng(std::uint64_t seed) : state_(seed + 0x9e3779b97f4a7c15ull) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    std::uint64_t below(std::uint64_t m) { return m ? next() % m : 0; }
    long int_between(long lo, long hi) { return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1))); }

private:
    std::uint64_t state_;
};

Poly random_poly(DeterministicRng& rng, std::size_t nvars, unsigned maxdeg);
Morphism random_morphism(DeterministicRng& rng, const FactorizationPtr& source,
                         const FactorizationPtr& target, Parity parity, unsigned maxdeg);
Chain random_chain(DeterministicRng& rng, const std::vector<FactorizationPtr>& objects,
                   std::size_t length, unsigned maxdeg);

struct CorpusEntry {
    std::string name;
    SuperpotentialPtr w;
    std::vector<FactorizationPtr> objects;
};

/// The verification corpus: z^3, z^4, z1^3+z2^3 and z1^2+z2^2+z3^2 with
/// Koszul-built objects.
std::vector<CorpusEntry> standard_corpus();

struct VerifyOptions {
    std::string corpus = "standard";
    std::uint64_t seed = 7;
    unsigned threads = 1;
    std::uint64_t budget = 10'000'000;
};

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;   // deterministic for fixed options
};

/// Runs the full invariant suite; one result per named check.
std::vector<CheckResult> run_verification(const VerifyOptions& opts);

bool all_passed(const std::vector<CheckResult>& results);

} // namespace mfcy
