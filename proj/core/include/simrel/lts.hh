#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace simrel {

using StateId = std::uint32_t;
using SymbolId = std::uint32_t;
using BlockId = std::uint32_t;

/// Bijection between dense ids and external names.
class NameTable {
public:
	/// Returns the id of `name`, interning it if new.
	std::uint32_t intern(std::string_view name);
	std::optional<std::uint32_t> find(std::string_view name) const;
	const std::string& name(std::uint32_t id) const { return names_.at(id); }
	std::size_t size() const noexcept { return names_.size(); }
	const std::vector<std::string>& names() const noexcept { return names_; }

private:
	std::vector<std::string> names_;
	std::unordered_map<std::string, std::uint32_t> ids_;
};

/**
 * Labeled transition system over dense state and symbol ids.
 *
 * Both directions are stored per state as a list of nonempty per-symbol
 * runs, sorted by symbol, so that δ_a(v) and δ_a⁻¹(v) are found by a
 * binary search over the symbols actually used by v.
 */
class Lts {
public:
	struct Run {
		SymbolId symbol;
		std::uint32_t begin;
		std::uint32_t end;
	};

	class Builder;

	Lts() = default;

	std::size_t state_count() const noexcept { return states_.size(); }
	std::size_t symbol_count() const noexcept { return symbols_.size(); }
	std::size_t transition_count() const noexcept { return out_targets_.size(); }

	const NameTable& states() const noexcept { return states_; }
	const NameTable& symbols() const noexcept { return symbols_; }
	const std::string& state_name(StateId v) const { return states_.name(v); }
	const std::string& symbol_name(SymbolId a) const { return symbols_.name(a); }

	/// δ_a(v), sorted ascending.
	std::span<const StateId> successors(SymbolId a, StateId v) const;
	/// δ_a⁻¹(v), sorted ascending.
	std::span<const StateId> predecessors(SymbolId a, StateId v) const;

	/// Nonempty outgoing runs of v, ascending by symbol.
	std::span<const Run> out_runs(StateId v) const;
	/// Nonempty incoming runs of v, ascending by symbol.
	std::span<const Run> in_runs(StateId v) const;

	std::span<const StateId> out_targets(const Run& r) const
	{
		return {out_targets_.data() + r.begin, r.end - r.begin};
	}
	std::span<const StateId> in_sources(const Run& r) const
	{
		return {in_sources_.data() + r.begin, r.end - r.begin};
	}

	bool has_transition(StateId src, SymbolId a, StateId dst) const;

	/// All transitions as (src, symbol, dst), ascending.
	std::vector<std::tuple<StateId, SymbolId, StateId>> transitions() const;

private:
	NameTable states_;
	NameTable symbols_;

	std::vector<std::uint32_t> out_run_offsets_;
	std::vector<Run> out_runs_;
	std::vector<StateId> out_targets_;

	std::vector<std::uint32_t> in_run_offsets_;
	std::vector<Run> in_runs_;
	std::vector<StateId> in_sources_;
};

/// Accumulates names and transitions; `build()` deduplicates and freezes.
class Lts::Builder {
public:
	StateId add_state(std::string_view name) { return states_.intern(name); }
	SymbolId add_symbol(std::string_view name) { return symbols_.intern(name); }

	void add_transition(std::string_view src, std::string_view label, std::string_view dst);
	/// Ids must already have been returned by add_state / add_symbol.
	void add_transition(StateId src, SymbolId label, StateId dst);

	std::size_t state_count() const noexcept { return states_.size(); }

	Lts build() const;

private:
	NameTable states_;
	NameTable symbols_;
	std::vector<std::tuple<StateId, SymbolId, StateId>> edges_;
};

struct NamedTransition {
	std::string src;
	std::string label;
	std::string dst;
};

/// Interns names in first-appearance order (declared states first).
/// Throws InputError("empty system") when there is nothing to build.
Lts build_lts(std::span<const NamedTransition> transitions,
              std::span<const std::string> declared_states = {});

} // namespace simrel
