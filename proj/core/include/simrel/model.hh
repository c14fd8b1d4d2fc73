#pragma once

#include <vector>

#include "simrel/lts.hh"
#include "simrel/partition.hh"
#include "simrel/relation.hh"

namespace simrel {

/// Input and output symbols of every state, plus δ_a⁻¹(S) per symbol.
struct InOutSets {
	std::vector<std::vector<SymbolId>> in_syms;  ///< in(v), ascending
	std::vector<std::vector<SymbolId>> out_syms; ///< out(v), ascending
	std::vector<std::vector<StateId>> has_out;   ///< δ_a⁻¹(S), ascending

	/// in(B) for a set of states.
	std::vector<SymbolId> block_in(std::span<const StateId> block) const;
};

InOutSets in_out_sets(const Lts& lts);

/// (u,v) ∈ Out iff out(u) ⊆ out(v).
StateRelation out_preorder(const Lts& lts);

/// Coarsest pair for I ∩ Out, given the coarsest pair for I. Splits by
/// δ_a⁻¹(S) for every symbol a and breaks rel between blocks inside and
/// blocks outside of it.
PartitionRelationPair refine_by_out(const PartitionRelationPair& initial, const Lts& lts);

/// Whether every (u,v) ∈ rho satisfies the simulation transfer condition.
bool is_simulation(const Lts& lts, const StateRelation& rho);

/// One state per block, named after the lexicographically least member name.
Lts quotient(const Lts& lts, const PartitionRelationPair& prp);

} // namespace simrel
