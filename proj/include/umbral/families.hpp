#ifndef UMBRAL_FAMILIES_HPP
#define UMBRAL_FAMILIES_HPP

#include <optional>
#include <span>
#include <vector>

#include <umbral/tsh.hpp>
#include <umbral/umbra.hpp>

namespace umbral
{

/// E[(x + gamma)^v] = sum_{k <= v} binom(v, k) E[gamma^{v-k}] x^k.
SpaceTimePolynomial umbral_shift(const UmbraTuple &gamma, const MultiIndex &v);

// Exact test over the rationals via principal minors.
bool is_positive_semidefinite(const RationalMatrix &m);

/// Generalized Hermite polynomial E[(x - t.beta.(delta C^T))^v], gf exp{x z^T - t z C C^T z^T / 2}.
SpaceTimePolynomial hermite(const MultiIndex &v, const RationalMatrix &c, const Polynomial &time);
/// Same family from a covariance Sigma (symmetric positive semidefinite), through the cumulant
/// tuple 1 + z Sigma z^T / 2.
SpaceTimePolynomial hermite_sigma(const MultiIndex &v, const RationalMatrix &sigma, const Polynomial &time);
/// Compares the t.beta.(delta C^T) form with -1.beta.(delta (sqrt(t) C^T)) where sqrt(t)^2 -> t.
bool hermite_scaling_identity(const MultiIndex &v, const RationalMatrix &c);

/// B_v^{(t)}(x) = E[(x + t.iota)^v] with iota the joint tuple (iota, ..., iota).
SpaceTimePolynomial bernoulli(const MultiIndex &v, const Polynomial &time);
/// E_v^{(t)}(x) = E[(x + (1/2)[t.(eta - u)])^v] with joint tuples of eta and u.
SpaceTimePolynomial euler(const MultiIndex &v, const Polynomial &time);

/// V_k(x, t) = E[(t.mu + (x_1 + ... + x_d).beta.nu)^k]: gf g(z)^t exp{(x_1 + ... + x_d)[h(z) - 1]}.
SpaceTimePolynomial levy_sheffer(const UmbraTuple &mu, const UmbraTuple &nu, const MultiIndex &k, const Polynomial &time);
/// Coordinatewise version with one d-variate component h_i per coordinate:
/// gf g(z)^t exp{sum_i x_i [h_i(z) - 1]}. With d = 1 both forms agree.
SpaceTimePolynomial levy_sheffer(const UmbraTuple &mu, std::span<const UmbraTuple> nu, const MultiIndex &k,
                                 const Polynomial &time);

/// One-step tuple of the process the system is harmonic for: -1.(mu.beta.nu^{<-1>}),
/// i.e. gf 1 / g(D(w) - 1) with D the compositional inverse of (h_1 - 1, ..., h_d - 1).
UmbraTuple levy_sheffer_process(const UmbraTuple &mu, std::span<const UmbraTuple> nu);

struct FamilyCheck {
    bool harmonic = true;
    bool zero_mean = true; // E[P_v(process at t, t)] = 0 for v != 0, where applicable
    std::optional<MultiIndex> failure;
    HarmonicityReport certificate;
};

struct LevyShefferCheck {
    FamilyCheck derived;          // against -t.(mu.beta.nu^{<-1>})
    bool unnegated_holds = false; // against t.(mu.beta.nu^{<-1>})
};

// Every |k| <= order.
LevyShefferCheck levy_sheffer_tsh_check(const UmbraTuple &mu, std::span<const UmbraTuple> nu, int order);
FamilyCheck hermite_tsh_check(const RationalMatrix &c, int order);
FamilyCheck bernoulli_tsh_check(std::size_t d, int order);
FamilyCheck euler_tsh_check(std::size_t d, int order);

} // namespace umbral

#endif
