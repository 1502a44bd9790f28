#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mfcy/hochschild.hpp"
#include "mfcy/mfcat.hpp"

namespace mfcy {

/// Holomorphic volume form Omega = omega * dz_1 ^ ... ^ dz_n, stored through
/// its polynomial coefficient.
struct VolumeForm {
    Poly omega{0};

    static VolumeForm standard(std::size_t nvars) { return {Poly::constant(nvars, 1)}; }
};

/// Rejects omega == 0 and omega not invertible in the Milnor algebra (the
/// computable meaning of "nowhere vanishing on the critical locus").
void validate_volume_form(const Superpotential& w, const VolumeForm& omega);

enum class ThetaMode { total, at_point };

struct ThetaOptions {
    ThetaMode mode = ThetaMode::total;
    std::optional<std::vector<Rational>> point;
    std::uint64_t budget = 10'000'000;   // refuse evaluations above this many terms
    unsigned threads = 1;
};

struct ThetaResult {
    Rational value;
    std::uint64_t term_count = 0;
};

/// Enumeration helpers for the nested sums of the chain functional; cheap,
/// deterministic orders throughout.
struct CombinatorialFrame {
    std::size_t n = 0;   // variables
    std::size_t l = 0;   // chain length

    /// All (k_1,...,k_parts) >= 0 with sum == total, lexicographic.
    static std::vector<std::vector<unsigned>> compositions(unsigned total, std::size_t parts);
    /// All (r_1,...,r_n) >= 0 with sum == l and r_i >= 1 (i is 0-based).
    std::vector<std::vector<unsigned>> r_vectors(std::size_t i) const;
    /// All length-l tuples over {0..n-1} with per-value counts r.
    static std::vector<std::vector<std::size_t>> lambda_tuples(const std::vector<unsigned>& r);
    /// All orderings of {0..n-1} minus {i}, each with the sign of the
    /// permutation relative to the ascending base order.
    std::vector<std::pair<std::vector<std::size_t>, int>> permutations_excluding(std::size_t i) const;

    /// Upper bound on the number of supertrace terms of the chain functional.
    static std::uint64_t term_estimate(std::size_t n, std::size_t l);
};

/// Kapustin-Li trace of an endomorphism cocycle:
///   (1/n!) Res[ str((dD)^n Phi) * omega / (d_1 f ... d_n f) ]
/// with the wedge power expanded over signed permutations.
Rational theta_kl(const Morphism& phi, const VolumeForm& omega, const ThetaOptions& opts = {});

/// First-order correction functional on a composable pair
/// psi_out : D'' -> D', psi_in : D' -> D''.
Rational theta_tilde(const Morphism& psi_out, const Morphism& psi_in, const VolumeForm& omega,
                     const ThetaOptions& opts = {});

/// The chain-level functional: full nested residue sum over derivative
/// insertions. Throws BudgetError when the term estimate exceeds the budget.
ThetaResult theta(const Chain& c, const VolumeForm& omega, const ThetaOptions& opts = {});
ThetaResult theta(const ChainSum& s, const VolumeForm& omega, const ThetaOptions& opts = {});

/// Independent one-variable closed form
///   -Res[ str(Phi_l dD^(l) ... Phi_1 dD^(1)) * omega / (df)^l ],
/// kept free of the generic enumeration as a cross-check.
Rational theta_one_variable_reference(const Chain& c, const VolumeForm& omega,
                                      const ThetaOptions& opts = {});

/// Induced pairing Theta([a_out . a_in]); both arguments must be delta-cocycles.
Rational pairing(const Morphism& a_out, const Morphism& a_in, const VolumeForm& omega,
                 const ThetaOptions& opts = {});

/// Matrix of pairings of two cocycle families.
std::vector<std::vector<Rational>> gram_matrix(const std::vector<Morphism>& basis_out,
                                               const std::vector<Morphism>& basis_in,
                                               const VolumeForm& omega,
                                               const ThetaOptions& opts = {});

struct CoboundaryCertificate {
    bool is_coboundary = false;
    std::optional<Morphism> witness;   // delta(witness) == phi when found
};

/// Decides delta(Psi) = phi with entries of total degree <= degree_bound by
/// exact linear algebra; phi must be a cocycle.
CoboundaryCertificate is_coboundary(const Morphism& phi, unsigned degree_bound);

} // namespace mfcy
