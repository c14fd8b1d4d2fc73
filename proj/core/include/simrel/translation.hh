#pragma once

#include <cstdint>
#include <vector>

#include "simrel/engine.hh"
#include "simrel/lts.hh"
#include "simrel/partition.hh"
#include "simrel/relation.hh"
#include "simrel/tree_automaton.hh"

namespace simrel {

/// What an LTS state of a translated automaton stands for.
struct Origin {
	enum class Kind { state, lhs, env };
	Kind kind;
	std::uint32_t index; ///< into Q, TranslationResult::lhs or TranslationResult::envs
};

/**
 * An LTS encoding of a tree-automaton simulation problem.
 *
 * LTS states 0..|Q|-1 are the automaton states in id order, followed by
 * the left-hand sides (downward) or environments (upward) in sorted
 * order. Symbols 0..|Σ|-1 are the automaton's symbols; position labels
 * 1..r_m follow as "#1".."#r_m", which cannot clash with parsed symbol names.
 */
struct TranslationResult {
	Lts lts;
	/// The initial preorder before intersecting with Out.
	StateRelation initial_relation;
	/// Coarsest pair for initial_relation ∩ Out, built with the constant-time Out rules.
	PartitionRelationPair initial;
	std::vector<Origin> origin;
	std::vector<Lhs> lhs;
	std::vector<Environment> envs;
};

/// A• with I• = Q•×Q•.
TranslationResult downward_translation(const TreeAutomaton& ta);

/// A⊙ with I⊙ built from `d`. Throws InputError unless `d` is reflexive on Q.
TranslationResult upward_translation(const TreeAutomaton& ta, const StateRelation& d);

/// Out of A• from the kind of each state: left-hand sides compare by length.
StateRelation downward_out(const TreeAutomaton& ta, const TranslationResult& tr);

/// Out of A⊙ from the kind of each state: environments compare by symbol.
StateRelation upward_out(const TreeAutomaton& ta, const TranslationResult& tr);

/// refine_by_out(coarsest_pair(initial_relation)), for comparison with `initial`.
PartitionRelationPair generic_initial(const TranslationResult& tr);

struct TaSimulation {
	StateRelation relation;
	SimMetrics metrics;
	std::size_t lts_states = 0;
};

TaSimulation downward_simulation(const TreeAutomaton& ta, EngineOptions options = EngineOptions::olrt());
TaSimulation upward_simulation(const TreeAutomaton& ta, const StateRelation& d,
                               EngineOptions options = EngineOptions::olrt());

/// Restriction of a relation on the translated LTS to the Q-states.
StateRelation project_states(const StateRelation& lts_relation, std::size_t state_count);

} // namespace simrel
