#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "simrel/lts.hh"

namespace simrel {

struct Rule {
	std::vector<StateId> lhs;
	SymbolId symbol = 0;
	StateId target = 0;

	friend auto operator<=>(const Rule&, const Rule&) = default;
};

/// Finite bottom-up tree automaton over a ranked alphabet. Rules form a set.
class TreeAutomaton {
public:
	std::string name = "A";

	StateId add_state(std::string_view name) { return states_.intern(name); }
	/// Interns the symbol; throws InputError if it exists with another rank.
	SymbolId add_symbol(std::string_view name, std::uint32_t rank);
	/// Throws InputError on an arity mismatch or an unknown id. Duplicates are ignored.
	void add_rule(std::vector<StateId> lhs, SymbolId symbol, StateId target);
	void set_final(StateId q, bool final = true);

	std::size_t state_count() const noexcept { return states_.size(); }
	std::size_t symbol_count() const noexcept { return symbols_.size(); }
	const NameTable& states() const noexcept { return states_; }
	const NameTable& symbols() const noexcept { return symbols_; }
	const std::string& state_name(StateId q) const { return states_.name(q); }
	const std::string& symbol_name(SymbolId f) const { return symbols_.name(f); }
	std::uint32_t rank(SymbolId f) const { return ranks_.at(f); }

	/// Sorted, duplicate-free.
	const std::vector<Rule>& rules() const noexcept { return rules_; }
	bool is_final(StateId q) const { return q < finals_.size() && finals_[q] != 0; }
	std::size_t final_count() const;

	/// Largest arity occurring in a rule (0 without rules).
	std::uint32_t max_rank() const;

private:
	NameTable states_;
	NameTable symbols_;
	std::vector<std::uint32_t> ranks_;
	std::vector<Rule> rules_;
	std::vector<char> finals_;
};

using Lhs = std::vector<StateId>;

/// A rule with position `hole` of its left-hand side replaced by □.
/// `context` keeps the full left-hand side with the hole slot set to `hole_marker`.
struct Environment {
	static constexpr StateId hole_marker = ~StateId{0};

	SymbolId symbol = 0;
	std::uint32_t hole = 0; ///< 0-based position
	std::vector<StateId> context;
	StateId target = 0;

	friend auto operator<=>(const Environment&, const Environment&) = default;
};

Environment environment_of(const Rule& rule, std::uint32_t hole);

struct LhsAndEnvs {
	std::vector<Lhs> lhs;          ///< sorted, distinct
	std::vector<Environment> envs; ///< sorted, distinct
};

LhsAndEnvs lhs_and_envs(const TreeAutomaton& ta);

/// Text of the Timbuk-style format (see README).
TreeAutomaton parse_timbuk(std::string_view text);
/// Canonical text: states, symbols and rules sorted by name.
std::string serialize_timbuk(const TreeAutomaton& ta);

/// States become blocks (named after their lexicographically least member);
/// F' holds the blocks meeting F.
TreeAutomaton ta_quotient(const TreeAutomaton& ta, std::span<const std::vector<StateId>> blocks);

} // namespace simrel
