#pragma once

#include "dihedralis/matmodp.hpp"
#include "dihedralis/numfield.hpp"

namespace dihedralis {

IntVec lift(const std::vector<u64>& v);
// Radical of lO as a subspace of O/lO.
SubspaceP radical_mod(const Order& o, const OrderModP& R);
// Ideal lO + (lifts of gens).
Ideal lift_subspace(const Order& o, const MatP& gens, u64 l);

} // namespace dihedralis
