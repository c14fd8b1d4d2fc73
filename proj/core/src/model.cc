#include "simrel/model.hh"

#include <algorithm>

#include "simrel/error.hh"

namespace simrel {

std::vector<SymbolId> InOutSets::block_in(std::span<const StateId> block) const
{
	std::vector<SymbolId> out;
	for (StateId v : block)
		out.insert(out.end(), in_syms[v].begin(), in_syms[v].end());
	std::sort(out.begin(), out.end());
	out.erase(std::unique(out.begin(), out.end()), out.end());
	return out;
}

InOutSets in_out_sets(const Lts& lts)
{
	InOutSets s;
	const std::size_t n = lts.state_count();
	s.in_syms.resize(n);
	s.out_syms.resize(n);
	s.has_out.resize(lts.symbol_count());
	for (StateId v = 0; v < n; ++v) {
		for (const auto& r : lts.out_runs(v)) {
			s.out_syms[v].push_back(r.symbol);
			s.has_out[r.symbol].push_back(v);
		}
		for (const auto& r : lts.in_runs(v))
			s.in_syms[v].push_back(r.symbol);
	}
	return s;
}

StateRelation out_preorder(const Lts& lts)
{
	const std::size_t n = lts.state_count();
	const auto sets = in_out_sets(lts);
	// Row u is the intersection of δ_a⁻¹(S) over a ∈ out(u).
	StateRelation out = StateRelation::full(n);
	std::vector<char> member(n);
	for (SymbolId a = 0; a < lts.symbol_count(); ++a) {
		std::fill(member.begin(), member.end(), 0);
		for (StateId v : sets.has_out[a])
			member[v] = 1;
		for (StateId u : sets.has_out[a])
			for (StateId v = 0; v < n; ++v)
				if (!member[v])
					out.erase(u, v);
	}
	return out;
}

PartitionRelationPair refine_by_out(const PartitionRelationPair& initial, const Lts& lts)
{
	if (initial.state_count() != lts.state_count())
		throw InputError("initial pair does not cover the system's states");
	const auto sets = in_out_sets(lts);
	std::vector<Block> blocks = initial.blocks();
	StateRelation rel = initial.rel();
	std::vector<char> inside(lts.state_count());
	for (SymbolId a = 0; a < lts.symbol_count(); ++a) {
		const auto& with_a = sets.has_out[a];
		auto res = split(blocks, with_a);
		if (res.blocks.size() != blocks.size()) {
			StateRelation grown(res.blocks.size());
			for (BlockId b = 0; b < res.blocks.size(); ++b)
				for (BlockId c = 0; c < res.blocks.size(); ++c)
					if (rel.contains(res.parent[b], res.parent[c]))
						grown.insert(b, c);
			rel = std::move(grown);
		}
		blocks = std::move(res.blocks);

		std::fill(inside.begin(), inside.end(), 0);
		for (StateId v : with_a)
			inside[v] = 1;
		// After the split each block is either inside δ_a⁻¹(S) or disjoint from it.
		for (BlockId c = 0; c < blocks.size(); ++c) {
			if (!inside[blocks[c].front()])
				continue;
			for (BlockId d = 0; d < blocks.size(); ++d)
				if (!inside[blocks[d].front()])
					rel.erase(c, d);
		}
	}
	return coarsen(PartitionRelationPair(std::move(blocks), rel, lts.state_count()));
}

bool is_simulation(const Lts& lts, const StateRelation& rho)
{
	for (auto [u, v] : rho.pairs()) {
		for (const auto& r : lts.out_runs(u)) {
			auto answers = lts.successors(r.symbol, v);
			for (StateId u2 : lts.out_targets(r)) {
				bool matched = std::any_of(answers.begin(), answers.end(),
					[&](StateId v2) { return rho.contains(u2, v2); });
				if (!matched)
					return false;
			}
		}
	}
	return true;
}

Lts quotient(const Lts& lts, const PartitionRelationPair& prp)
{
	if (prp.state_count() != lts.state_count())
		throw InputError("partition does not cover the system's states");
	Lts::Builder b;
	for (const Block& block : prp.blocks()) {
		const std::string* least = &lts.state_name(block.front());
		for (StateId v : block)
			if (lts.state_name(v) < *least)
				least = &lts.state_name(v);
		b.add_state(*least);
	}
	for (SymbolId a = 0; a < lts.symbol_count(); ++a)
		b.add_symbol(lts.symbol_name(a));
	for (auto [u, a, v] : lts.transitions())
		b.add_transition(prp.block_of(u), a, prp.block_of(v));
	return b.build();
}

} // namespace simrel
