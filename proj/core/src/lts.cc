#include "simrel/lts.hh"

#include <algorithm>
#include <stdexcept>

#include "simrel/error.hh"

namespace simrel {

std::uint32_t NameTable::intern(std::string_view name)
{
	auto it = ids_.find(std::string(name));
	if (it != ids_.end())
		return it->second;
	auto id = static_cast<std::uint32_t>(names_.size());
	names_.emplace_back(name);
	ids_.emplace(names_.back(), id);
	return id;
}

std::optional<std::uint32_t> NameTable::find(std::string_view name) const
{
	auto it = ids_.find(std::string(name));
	if (it == ids_.end())
		return std::nullopt;
	return it->second;
}

namespace {

std::span<const StateId> lookup(std::span<const Lts::Run> runs, SymbolId a,
                                const std::vector<StateId>& pool)
{
	auto it = std::lower_bound(runs.begin(), runs.end(), a,
		[](const Lts::Run& r, SymbolId s) { return r.symbol < s; });
	if (it == runs.end() || it->symbol != a)
		return {};
	return {pool.data() + it->begin, it->end - it->begin};
}

// Edges must be sorted by (key, symbol, other) and deduplicated.
void compress(std::size_t n, const std::vector<std::tuple<StateId, SymbolId, StateId>>& edges,
              std::vector<std::uint32_t>& offsets, std::vector<Lts::Run>& runs,
              std::vector<StateId>& pool)
{
	offsets.assign(n + 1, 0);
	runs.clear();
	pool.clear();
	pool.reserve(edges.size());
	std::size_t i = 0;
	for (StateId v = 0; v < n; ++v) {
		offsets[v] = static_cast<std::uint32_t>(runs.size());
		while (i < edges.size() && std::get<0>(edges[i]) == v) {
			SymbolId a = std::get<1>(edges[i]);
			auto begin = static_cast<std::uint32_t>(pool.size());
			while (i < edges.size() && std::get<0>(edges[i]) == v && std::get<1>(edges[i]) == a) {
				pool.push_back(std::get<2>(edges[i]));
				++i;
			}
			runs.push_back({a, begin, static_cast<std::uint32_t>(pool.size())});
		}
	}
	offsets[n] = static_cast<std::uint32_t>(runs.size());
}

} // namespace

std::span<const StateId> Lts::successors(SymbolId a, StateId v) const
{
	return lookup(out_runs(v), a, out_targets_);
}

std::span<const StateId> Lts::predecessors(SymbolId a, StateId v) const
{
	return lookup(in_runs(v), a, in_sources_);
}

std::span<const Lts::Run> Lts::out_runs(StateId v) const
{
	return {out_runs_.data() + out_run_offsets_[v], out_run_offsets_[v + 1] - out_run_offsets_[v]};
}

std::span<const Lts::Run> Lts::in_runs(StateId v) const
{
	return {in_runs_.data() + in_run_offsets_[v], in_run_offsets_[v + 1] - in_run_offsets_[v]};
}

bool Lts::has_transition(StateId src, SymbolId a, StateId dst) const
{
	auto succ = successors(a, src);
	return std::binary_search(succ.begin(), succ.end(), dst);
}

std::vector<std::tuple<StateId, SymbolId, StateId>> Lts::transitions() const
{
	std::vector<std::tuple<StateId, SymbolId, StateId>> out;
	out.reserve(transition_count());
	for (StateId v = 0; v < state_count(); ++v)
		for (const Run& r : out_runs(v))
			for (StateId w : out_targets(r))
				out.emplace_back(v, r.symbol, w);
	return out;
}

void Lts::Builder::add_transition(std::string_view src, std::string_view label, std::string_view dst)
{
	StateId s = add_state(src);
	SymbolId a = add_symbol(label);
	StateId d = add_state(dst);
	edges_.emplace_back(s, a, d);
}

void Lts::Builder::add_transition(StateId src, SymbolId label, StateId dst)
{
	if (src >= states_.size() || dst >= states_.size() || label >= symbols_.size())
		throw std::out_of_range("transition refers to an undeclared id");
	edges_.emplace_back(src, label, dst);
}

Lts Lts::Builder::build() const
{
	Lts lts;
	lts.states_ = states_;
	lts.symbols_ = symbols_;
	const std::size_t n = states_.size();

	auto fwd = edges_;
	std::sort(fwd.begin(), fwd.end());
	fwd.erase(std::unique(fwd.begin(), fwd.end()), fwd.end());
	compress(n, fwd, lts.out_run_offsets_, lts.out_runs_, lts.out_targets_);

	std::vector<std::tuple<StateId, SymbolId, StateId>> bwd;
	bwd.reserve(fwd.size());
	for (auto [s, a, d] : fwd)
		bwd.emplace_back(d, a, s);
	std::sort(bwd.begin(), bwd.end());
	compress(n, bwd, lts.in_run_offsets_, lts.in_runs_, lts.in_sources_);
	return lts;
}

Lts build_lts(std::span<const NamedTransition> transitions, std::span<const std::string> declared_states)
{
	if (transitions.empty() && declared_states.empty())
		throw InputError("empty system");
	Lts::Builder b;
	for (const auto& s : declared_states)
		b.add_state(s);
	for (const auto& t : transitions)
		b.add_transition(t.src, t.label, t.dst);
	return b.build();
}

} // namespace simrel
