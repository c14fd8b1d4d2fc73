#include "simrel/random.hh"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "simrel/error.hh"

namespace simrel {

std::uint64_t Rng::below(std::uint64_t n)
{
	// Rejection sampling keeps the draw unbiased.
	const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
	std::uint64_t x;
	do
		x = engine_();
	while (x >= limit);
	return x % n;
}

Lts random_lts(const RandomLtsParams& p, std::uint64_t seed)
{
	if (p.states == 0)
		throw ParameterError("state count must be positive");
	if (p.symbols == 0)
		throw ParameterError("symbol count must be positive");
	if (!(p.edge_probability >= 0.0 && p.edge_probability <= 1.0))
		throw ParameterError("edge probability must lie in [0, 1]");
	if (!(p.sparsity > 0.0 && p.sparsity <= 1.0))
		throw ParameterError("sparsity must lie in (0, 1]");

	Rng rng(seed);
	Lts::Builder b;
	for (std::size_t v = 0; v < p.states; ++v)
		b.add_state("s" + std::to_string(v));
	for (std::size_t a = 0; a < p.symbols; ++a)
		b.add_symbol("a" + std::to_string(a));

	const auto subset = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(p.sparsity * static_cast<double>(p.symbols))));
	std::vector<SymbolId> alphabet(p.symbols);
	for (StateId v = 0; v < p.states; ++v) {
		std::iota(alphabet.begin(), alphabet.end(), 0);
		// Partial Fisher-Yates: the first `subset` entries form the sample.
		for (std::size_t i = 0; i < subset; ++i)
			std::swap(alphabet[i], alphabet[i + rng.below(p.symbols - i)]);
		std::vector<SymbolId> mine(alphabet.begin(), alphabet.begin() + static_cast<std::ptrdiff_t>(subset));
		std::sort(mine.begin(), mine.end());
		for (SymbolId a : mine)
			for (StateId w = 0; w < p.states; ++w)
				if (rng.chance(p.edge_probability))
					b.add_transition(v, a, w);
	}
	return b.build();
}

StateRelation random_preorder(std::size_t n, double edge_probability, Rng& rng)
{
	StateRelation r(n);
	for (std::uint32_t u = 0; u < n; ++u)
		for (std::uint32_t v = 0; v < n; ++v)
			if (u != v && rng.chance(edge_probability))
				r.insert(u, v);
	r.close_reflexive_transitive();
	return r;
}

TreeAutomaton random_ta(const RandomTaParams& p, std::uint64_t seed)
{
	if (p.states == 0)
		throw ParameterError("state count must be positive");
	if (p.symbols == 0)
		throw ParameterError("symbol count must be positive");
	if (!(p.final_probability >= 0.0 && p.final_probability <= 1.0))
		throw ParameterError("final-state probability must lie in [0, 1]");

	Rng rng(seed);
	TreeAutomaton ta;
	ta.name = "random" + std::to_string(seed);
	for (std::size_t q = 0; q < p.states; ++q)
		ta.add_state("q" + std::to_string(q));
	for (std::size_t f = 0; f < p.symbols; ++f) {
		const auto rank = f == 0 ? 0u : static_cast<std::uint32_t>(rng.below(p.max_rank + 1));
		ta.add_symbol("f" + std::to_string(f), rank);
	}
	for (StateId q = 0; q < p.states; ++q)
		ta.set_final(q, rng.chance(p.final_probability));
	for (std::size_t i = 0; i < p.rules; ++i) {
		const auto f = static_cast<SymbolId>(rng.below(p.symbols));
		std::vector<StateId> lhs(ta.rank(f));
		for (auto& q : lhs)
			q = static_cast<StateId>(rng.below(p.states));
		ta.add_rule(std::move(lhs), f, static_cast<StateId>(rng.below(p.states)));
	}
	return ta;
}

} // namespace simrel
