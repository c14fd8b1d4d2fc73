#include "simrel/translation.hh"

#include <algorithm>
#include <string>

#include "simrel/error.hh"
#include "simrel/model.hh"

namespace simrel {

namespace {

std::string position_label(std::uint32_t i)
{
	return "#" + std::to_string(i);
}

std::string lhs_name(const TreeAutomaton& ta, const Lhs& lhs)
{
	std::string s = "(";
	for (std::size_t i = 0; i < lhs.size(); ++i)
		s += (i ? "," : "") + ta.state_name(lhs[i]);
	return s + ")";
}

std::string env_name(const TreeAutomaton& ta, const Environment& e)
{
	std::string s = ta.symbol_name(e.symbol) + "(";
	for (std::size_t i = 0; i < e.context.size(); ++i) {
		s += i ? "," : "";
		s += e.context[i] == Environment::hole_marker ? std::string("□") : ta.state_name(e.context[i]);
	}
	return s + ")->" + ta.state_name(e.target);
}

void add_alphabet(Lts::Builder& b, const TreeAutomaton& ta)
{
	for (SymbolId f = 0; f < ta.symbol_count(); ++f)
		b.add_symbol(ta.symbol_name(f));
	for (std::uint32_t i = 1; i <= ta.max_rank(); ++i)
		b.add_symbol(position_label(i));
}

SymbolId position_symbol(const TreeAutomaton& ta, std::uint32_t hole)
{
	return static_cast<SymbolId>(ta.symbol_count() + hole);
}

template <typename T>
std::uint32_t index_in(const std::vector<T>& sorted, const T& x)
{
	return static_cast<std::uint32_t>(std::lower_bound(sorted.begin(), sorted.end(), x) - sorted.begin());
}

bool is_subset(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b)
{
	return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

void sort_unique(std::vector<std::uint32_t>& v)
{
	std::sort(v.begin(), v.end());
	v.erase(std::unique(v.begin(), v.end()), v.end());
}

} // namespace

TranslationResult downward_translation(const TreeAutomaton& ta)
{
	TranslationResult tr;
	auto le = lhs_and_envs(ta);
	tr.lhs = std::move(le.lhs);

	Lts::Builder b;
	for (StateId q = 0; q < ta.state_count(); ++q) {
		b.add_state(ta.state_name(q));
		tr.origin.push_back({Origin::Kind::state, q});
	}
	for (std::uint32_t i = 0; i < tr.lhs.size(); ++i) {
		b.add_state(lhs_name(ta, tr.lhs[i]));
		tr.origin.push_back({Origin::Kind::lhs, i});
	}
	add_alphabet(b, ta);
	const auto q_count = static_cast<StateId>(ta.state_count());
	for (const Rule& r : ta.rules()) {
		const StateId l = q_count + index_in(tr.lhs, r.lhs);
		b.add_transition(r.target, r.symbol, l);
		for (std::uint32_t i = 0; i < r.lhs.size(); ++i)
			b.add_transition(l, position_symbol(ta, i), r.lhs[i]);
	}
	tr.lts = b.build();
	tr.initial_relation = StateRelation::full(tr.lts.state_count());
	StateRelation start = tr.initial_relation;
	start &= downward_out(ta, tr);
	tr.initial = coarsest_pair(start);
	return tr;
}

TranslationResult upward_translation(const TreeAutomaton& ta, const StateRelation& d)
{
	if (d.size() != ta.state_count() || !d.is_reflexive())
		throw InputError("inducing downward relation must be reflexive on the automaton's states");

	TranslationResult tr;
	auto le = lhs_and_envs(ta);
	tr.envs = std::move(le.envs);

	Lts::Builder b;
	for (StateId q = 0; q < ta.state_count(); ++q) {
		b.add_state(ta.state_name(q));
		tr.origin.push_back({Origin::Kind::state, q});
	}
	for (std::uint32_t i = 0; i < tr.envs.size(); ++i) {
		b.add_state(env_name(ta, tr.envs[i]));
		tr.origin.push_back({Origin::Kind::env, i});
	}
	add_alphabet(b, ta);
	const auto q_count = static_cast<StateId>(ta.state_count());
	for (const Rule& r : ta.rules()) {
		for (std::uint32_t i = 0; i < r.lhs.size(); ++i) {
			const StateId e = q_count + index_in(tr.envs, environment_of(r, i));
			b.add_transition(r.lhs[i], position_symbol(ta, i), e);
			b.add_transition(e, r.symbol, r.target);
		}
	}
	tr.lts = b.build();

	const std::size_t n = tr.lts.state_count();
	StateRelation init(n);
	for (StateId q = 0; q < q_count; ++q)
		for (StateId r = 0; r < q_count; ++r)
			if (!ta.is_final(q) || ta.is_final(r))
				init.insert(q, r);
	for (std::uint32_t x = 0; x < tr.envs.size(); ++x) {
		for (std::uint32_t y = 0; y < tr.envs.size(); ++y) {
			const Environment& ex = tr.envs[x];
			const Environment& ey = tr.envs[y];
			if (ex.symbol != ey.symbol || ex.hole != ey.hole)
				continue;
			bool related = true;
			for (std::size_t k = 0; k < ex.context.size() && related; ++k)
				if (k != ex.hole)
					related = d.contains(ex.context[k], ey.context[k]);
			if (related)
				init.insert(q_count + x, q_count + y);
		}
	}
	tr.initial_relation = init;
	init &= upward_out(ta, tr);
	tr.initial = coarsest_pair(init);
	return tr;
}

StateRelation downward_out(const TreeAutomaton& ta, const TranslationResult& tr)
{
	const std::size_t n = tr.origin.size();
	std::vector<std::vector<std::uint32_t>> out(ta.state_count());
	for (const Rule& r : ta.rules())
		out[r.target].push_back(r.symbol);
	for (auto& o : out)
		sort_unique(o);

	StateRelation rel(n);
	for (StateId u = 0; u < n; ++u) {
		const Origin ou = tr.origin[u];
		for (StateId v = 0; v < n; ++v) {
			const Origin ov = tr.origin[v];
			bool in = false;
			if (ou.kind == Origin::Kind::state && ov.kind == Origin::Kind::state)
				in = is_subset(out[ou.index], out[ov.index]);
			else if (ou.kind == Origin::Kind::lhs && ov.kind == Origin::Kind::lhs)
				in = tr.lhs[ou.index].size() <= tr.lhs[ov.index].size();
			else if (ou.kind == Origin::Kind::lhs)
				in = tr.lhs[ou.index].empty();
			else
				in = out[ou.index].empty();
			if (in)
				rel.insert(u, v);
		}
	}
	return rel;
}

StateRelation upward_out(const TreeAutomaton& ta, const TranslationResult& tr)
{
	const std::size_t n = tr.origin.size();
	std::vector<std::vector<std::uint32_t>> out(ta.state_count());
	for (const Rule& r : ta.rules())
		for (std::uint32_t i = 0; i < r.lhs.size(); ++i)
			out[r.lhs[i]].push_back(i);
	for (auto& o : out)
		sort_unique(o);

	StateRelation rel(n);
	for (StateId u = 0; u < n; ++u) {
		const Origin ou = tr.origin[u];
		for (StateId v = 0; v < n; ++v) {
			const Origin ov = tr.origin[v];
			bool in = false;
			if (ou.kind == Origin::Kind::state && ov.kind == Origin::Kind::state)
				in = is_subset(out[ou.index], out[ov.index]);
			else if (ou.kind == Origin::Kind::env && ov.kind == Origin::Kind::env)
				in = tr.envs[ou.index].symbol == tr.envs[ov.index].symbol;
			else if (ou.kind == Origin::Kind::state)
				in = out[ou.index].empty();
			if (in)
				rel.insert(u, v);
		}
	}
	return rel;
}

PartitionRelationPair generic_initial(const TranslationResult& tr)
{
	return refine_by_out(coarsest_pair(tr.initial_relation), tr.lts);
}

StateRelation project_states(const StateRelation& lts_relation, std::size_t state_count)
{
	StateRelation out(state_count);
	for (StateId q = 0; q < state_count; ++q)
		for (StateId r = 0; r < state_count; ++r)
			if (lts_relation.contains(q, r))
				out.insert(q, r);
	return out;
}

namespace {

TaSimulation solve(const TreeAutomaton& ta, const TranslationResult& tr, EngineOptions options)
{
	const PartitionRelationPair start = options.out_init ? tr.initial : coarsest_pair(tr.initial_relation);
	auto res = run_engine(tr.lts, start, options);
	return {project_states(induced_relation(res.pair), ta.state_count()), res.metrics, tr.lts.state_count()};
}

} // namespace

TaSimulation downward_simulation(const TreeAutomaton& ta, EngineOptions options)
{
	return solve(ta, downward_translation(ta), options);
}

TaSimulation upward_simulation(const TreeAutomaton& ta, const StateRelation& d, EngineOptions options)
{
	return solve(ta, upward_translation(ta, d), options);
}

} // namespace simrel
