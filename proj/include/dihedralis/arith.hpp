#pragma once

#include "dihedralis/intmat.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace dihedralis {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

int kronecker_symbol(const Int& a, const Int& n);
int kronecker_symbol(long a, long n);

bool is_prime(const Int& n);
bool is_prime(u64 n);
std::vector<u64> primes_up_to(u64 n);
u64 next_prime(u64 n);  // smallest prime > n

// Complete factorization: trial division, then Brent-Pollard rho up to an
// iteration budget. Fails with FactorizationBudget if a composite cofactor
// survives.
std::map<Int, unsigned> factor_integer(const Int& n, u64 rho_budget = 2000000);
std::map<u64, unsigned> factor_u64(u64 n);
// Prime factors up to `bound` only; the unfactored cofactor is returned.
std::map<u64, unsigned> trial_factor(Int& n, u64 bound);

inline u64 mulmod(u64 a, u64 b, u64 m) { return (u64)((u128)a * b % m); }
u64 powmod(u64 a, u64 e, u64 m);
u64 invmod(u64 a, u64 m);  // requires gcd = 1
// Square root of a mod an odd prime p (Tonelli-Shanks, smallest non-residue).
u64 sqrt_mod_prime(u64 a, u64 p);
u64 multiplicative_order(u64 a, u64 p);  // a in (Z/p)^*, p prime
u64 primitive_root(u64 p);               // smallest

Int isqrt(const Int& n);
bool is_square(const Int& n, Int* root = nullptr);
bool is_fundamental_discriminant(const Int& d);
Int mod_floor(const Int& a, const Int& m);
i64 mod_floor(i64 a, i64 m);

} // namespace dihedralis
