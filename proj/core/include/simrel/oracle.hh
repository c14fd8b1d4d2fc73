#pragma once

#include <cstddef>
#include <optional>

#include "simrel/lts.hh"
#include "simrel/relation.hh"
#include "simrel/tree_automaton.hh"

namespace simrel::oracle {

// Deliberately naive greatest-fixpoint computations. They share no code
// with the engine and serve as ground truth in tests.

enum class SweepOrder { row_major, reversed };

struct OracleResult {
	StateRelation relation;
	std::size_t rounds = 0; ///< sweeps until one changed nothing, that one included
};

/// Greatest simulation inside the preorder `init`. Throws InputError if
/// `init` is not a preorder.
OracleResult max_simulation_naive(const Lts& lts, const StateRelation& init,
                                  SweepOrder order = SweepOrder::row_major);

/// Maximal downward simulation inside `init` (default: Q×Q).
StateRelation downward_naive(const TreeAutomaton& ta, std::optional<StateRelation> init = std::nullopt,
                             SweepOrder order = SweepOrder::row_major);

/// Maximal upward simulation induced by `d`, inside `init` (default: Q×Q).
StateRelation upward_naive(const TreeAutomaton& ta, const StateRelation& d,
                           std::optional<StateRelation> init = std::nullopt,
                           SweepOrder order = SweepOrder::row_major);

/// Whether `rel` satisfies the downward simulation condition.
bool is_downward_simulation(const TreeAutomaton& ta, const StateRelation& rel);

} // namespace simrel::oracle
