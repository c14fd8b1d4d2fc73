#include "simrel/oracle.hh"

#include <string>

#include "simrel/error.hh"

namespace simrel::oracle {

namespace {

// Visits every (u,v) in row-major or reversed order.
template <typename F>
void sweep(std::size_t n, SweepOrder order, F&& visit)
{
	for (std::size_t i = 0; i < n * n; ++i) {
		const std::size_t k = order == SweepOrder::row_major ? i : n * n - 1 - i;
		visit(static_cast<std::uint32_t>(k / n), static_cast<std::uint32_t>(k % n));
	}
}

bool lts_pair_ok(const Lts& lts, const StateRelation& rho, StateId u, StateId v)
{
	for (SymbolId a = 0; a < lts.symbol_count(); ++a) {
		for (StateId u2 : lts.successors(a, u)) {
			bool found = false;
			for (StateId v2 : lts.successors(a, v))
				if (rho.contains(u2, v2))
					found = true;
			if (!found)
				return false;
		}
	}
	return true;
}

bool down_pair_ok(const TreeAutomaton& ta, const StateRelation& rel, StateId q, StateId r)
{
	for (const Rule& rq : ta.rules()) {
		if (rq.target != q)
			continue;
		bool found = false;
		for (const Rule& rr : ta.rules()) {
			if (rr.target != r || rr.symbol != rq.symbol)
				continue;
			bool all = true;
			for (std::size_t i = 0; i < rq.lhs.size(); ++i)
				if (!rel.contains(rq.lhs[i], rr.lhs[i]))
					all = false;
			if (all)
				found = true;
		}
		if (!found)
			return false;
	}
	return true;
}

bool up_pair_ok(const TreeAutomaton& ta, const StateRelation& d, const StateRelation& rel, StateId q, StateId r)
{
	if (ta.is_final(q) && !ta.is_final(r))
		return false;
	for (const Rule& rq : ta.rules()) {
		for (std::size_t i = 0; i < rq.lhs.size(); ++i) {
			if (rq.lhs[i] != q)
				continue;
			bool found = false;
			for (const Rule& rr : ta.rules()) {
				if (rr.symbol != rq.symbol || rr.lhs[i] != r || !rel.contains(rq.target, rr.target))
					continue;
				bool others = true;
				for (std::size_t j = 0; j < rq.lhs.size(); ++j)
					if (j != i && !d.contains(rq.lhs[j], rr.lhs[j]))
						others = false;
				if (others)
					found = true;
			}
			if (!found)
				return false;
		}
	}
	return true;
}

} // namespace

OracleResult max_simulation_naive(const Lts& lts, const StateRelation& init, SweepOrder order)
{
	if (init.size() != lts.state_count())
		throw InputError("initial relation has the wrong dimension");
	if (auto bad = init.preorder_violation())
		throw InputError("initial relation is not a preorder: missing pair ("
		                 + std::to_string(bad->first) + ", " + std::to_string(bad->second) + ")");
	OracleResult res{init, 0};
	bool changed = true;
	while (changed) {
		changed = false;
		++res.rounds;
		sweep(lts.state_count(), order, [&](StateId u, StateId v) {
			if (res.relation.contains(u, v) && !lts_pair_ok(lts, res.relation, u, v)) {
				res.relation.erase(u, v);
				changed = true;
			}
		});
	}
	return res;
}

StateRelation downward_naive(const TreeAutomaton& ta, std::optional<StateRelation> init, SweepOrder order)
{
	StateRelation rel = init ? std::move(*init) : StateRelation::full(ta.state_count());
	bool changed = true;
	while (changed) {
		changed = false;
		sweep(ta.state_count(), order, [&](StateId q, StateId r) {
			if (rel.contains(q, r) && !down_pair_ok(ta, rel, q, r)) {
				rel.erase(q, r);
				changed = true;
			}
		});
	}
	return rel;
}

StateRelation upward_naive(const TreeAutomaton& ta, const StateRelation& d, std::optional<StateRelation> init,
                           SweepOrder order)
{
	StateRelation rel = init ? std::move(*init) : StateRelation::full(ta.state_count());
	bool changed = true;
	while (changed) {
		changed = false;
		sweep(ta.state_count(), order, [&](StateId q, StateId r) {
			if (rel.contains(q, r) && !up_pair_ok(ta, d, rel, q, r)) {
				rel.erase(q, r);
				changed = true;
			}
		});
	}
	return rel;
}

bool is_downward_simulation(const TreeAutomaton& ta, const StateRelation& rel)
{
	if (rel.size() != ta.state_count())
		return false;
	for (auto [q, r] : rel.pairs())
		if (!down_pair_ok(ta, rel, q, r))
			return false;
	return true;
}

} // namespace simrel::oracle
