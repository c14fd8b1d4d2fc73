#pragma once

// Shared fixtures and brute-force helpers for the test suites. Nothing here
// calls into the engine; the helpers recompute everything from definitions.

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "simrel/io.hh"
#include "simrel/lts.hh"
#include "simrel/partition.hh"
#include "simrel/relation.hh"
#include "simrel/tree_automaton.hh"

namespace simrel::test {

inline Lts l1()
{
	return parse_lts("p a q\nq b q\nr a q\n");
}

inline Lts l3()
{
	return parse_lts("p a p\nr a s\n");
}

inline const char* t1_text()
{
	return "Ops a:0 g:1\n"
	       "Automaton T1\n"
	       "States q0 q1\n"
	       "Final States q1\n"
	       "Transitions\n"
	       "a() -> q0\n"
	       "g(q0) -> q1\n"
	       "g(q1) -> q1\n";
}

inline TreeAutomaton t1()
{
	return parse_timbuk(t1_text());
}

using NamedPairs = std::set<std::pair<std::string, std::string>>;

inline NamedPairs named(const StateRelation& r, const NameTable& names)
{
	NamedPairs out;
	for (auto [u, v] : r.pairs())
		out.emplace(names.name(u), names.name(v));
	return out;
}

inline StateRelation from_named(const NamedPairs& pairs, const NameTable& names)
{
	StateRelation r(names.size());
	for (const auto& [u, v] : pairs)
		r.insert(*names.find(u), *names.find(v));
	return r;
}

using NamedBlocks = std::set<std::set<std::string>>;

inline NamedBlocks named_blocks(const PartitionRelationPair& prp, const NameTable& names)
{
	NamedBlocks out;
	for (const auto& b : prp.blocks()) {
		std::set<std::string> s;
		for (StateId v : b)
			s.insert(names.name(v));
		out.insert(s);
	}
	return out;
}

/// Pairs of blocks in rel, each block named by its member set.
inline std::set<std::pair<std::set<std::string>, std::set<std::string>>>
named_rel(const PartitionRelationPair& prp, const NameTable& names)
{
	auto block_names = [&](BlockId b) {
		std::set<std::string> s;
		for (StateId v : prp.block(b))
			s.insert(names.name(v));
		return s;
	};
	std::set<std::pair<std::set<std::string>, std::set<std::string>>> out;
	for (auto [b, c] : prp.rel().pairs())
		out.emplace(block_names(b), block_names(c));
	return out;
}

/// Groups states with equal up- and down-sets by pairwise comparison,
/// without hashing. Used to check coarsest_pair.
inline std::vector<std::set<StateId>> brute_classes(const StateRelation& rho)
{
	const auto n = static_cast<StateId>(rho.size());
	auto same = [&](StateId u, StateId v) {
		for (StateId w = 0; w < n; ++w)
			if (rho.contains(u, w) != rho.contains(v, w) || rho.contains(w, u) != rho.contains(w, v))
				return false;
		return true;
	};
	std::vector<std::set<StateId>> classes;
	std::vector<bool> done(n, false);
	for (StateId u = 0; u < n; ++u) {
		if (done[u])
			continue;
		std::set<StateId> c;
		for (StateId v = u; v < n; ++v)
			if (!done[v] && same(u, v)) {
				c.insert(v);
				done[v] = true;
			}
		classes.push_back(c);
	}
	return classes;
}

inline std::vector<std::set<StateId>> block_sets(const PartitionRelationPair& prp)
{
	std::vector<std::set<StateId>> out;
	for (const auto& b : prp.blocks())
		out.emplace_back(b.begin(), b.end());
	return out;
}

/// Classes of ρ ∩ ρ⁻¹, ordered by least member.
inline std::vector<std::set<StateId>> equivalence_classes(const StateRelation& rho)
{
	const auto n = static_cast<StateId>(rho.size());
	std::vector<std::set<StateId>> classes;
	std::vector<bool> done(n, false);
	for (StateId u = 0; u < n; ++u) {
		if (done[u])
			continue;
		std::set<StateId> c;
		for (StateId v = u; v < n; ++v)
			if (rho.contains(u, v) && rho.contains(v, u)) {
				c.insert(v);
				done[v] = true;
			}
		classes.push_back(c);
	}
	return classes;
}

} // namespace simrel::test
