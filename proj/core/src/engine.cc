#include "simrel/engine.hh"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <stdexcept>
#include <string>

#include "simrel/error.hh"

namespace simrel {

void EngineOptions::validate() const
{
	if (restrict_remove && !out_init)
		throw ParameterError("restricting Remove sets requires the Out initialization");
	if (sparse_allocation && !(out_init && restrict_remove && skip_rule))
		throw ParameterError("sparse allocation requires Out initialization, restricted Remove sets and the skip rule");
}

Engine::Engine(const Lts& lts, const PartitionRelationPair& initial, EngineOptions options) :
	lts_(lts),
	options_(options),
	sets_(in_out_sets(lts)),
	symbols_(lts.symbol_count())
{
	options_.validate();
	const std::size_t n = lts.state_count();
	if (initial.state_count() != n)
		throw InputError("initial pair covers " + std::to_string(initial.state_count())
		                 + " states, system has " + std::to_string(n));
	require_coarsest_preorder(initial);

	const PartitionRelationPair start = options_.out_init ? refine_by_out(initial, lts) : initial;

	if (options_.sparse_allocation) {
		index_.assign(n * symbols_, 0);
		for (SymbolId a = 0; a < symbols_; ++a)
			for (std::uint32_t i = 0; i < sets_.has_out[a].size(); ++i)
				index_[sets_.has_out[a][i] * symbols_ + a] = i;
	}

	const std::size_t k = start.block_count();
	elems_.reserve(n);
	pos_.resize(n);
	block_of_.resize(n);
	blocks_.resize(k);
	stamp_.assign(k, 0);
	grow_rel(k);
	for (BlockId b = 0; b < k; ++b) {
		BlockRec& rec = blocks_[b];
		rec.begin = static_cast<std::uint32_t>(elems_.size());
		for (StateId v : start.block(b)) {
			pos_[v] = static_cast<std::uint32_t>(elems_.size());
			block_of_[v] = b;
			elems_.push_back(v);
		}
		rec.end = static_cast<std::uint32_t>(elems_.size());
		rec.slots.resize(symbols_);
		recompute_in(b);
		for (BlockId c = 0; c < k; ++c)
			set_rel(b, c, start.rel().contains(b, c));
	}

	std::vector<char> above(n);
	for (BlockId b = 0; b < k; ++b) {
		for (StateId w = 0; w < n; ++w)
			above[w] = rel(b, block_of_[w]);
		std::uint32_t pending = 0;
		for (SymbolId a = 0; a < symbols_; ++a) {
			if (options_.sparse_allocation && !blocks_[b].in[a])
				continue;
			allocate_slot(b, a);
			Slot& slot = blocks_[b].slots[a];
			auto visit = [&](StateId v, std::uint32_t idx) {
				std::uint32_t c = 0;
				for (StateId w : lts.successors(a, v))
					c += above[w] ? 1 : 0;
				slot.count[idx] = c;
				if (c == 0 && (!options_.restrict_remove || !lts.successors(a, v).empty()))
					slot.remove.push_back(v);
			};
			if (options_.sparse_allocation) {
				const auto& dom = sets_.has_out[a];
				for (std::uint32_t i = 0; i < dom.size(); ++i)
					visit(dom[i], i);
			} else {
				for (StateId v = 0; v < n; ++v)
					visit(v, v);
			}
			metrics_.remove_enqueued += slot.remove.size();
			pending += slot.remove.empty() ? 0 : 1;
		}
		blocks_[b].pending = pending;
		if (pending)
			list_push_front(b);
		else
			list_push_back(b);
	}
	update_peak();
	check_audit();
}

void Engine::list_unlink(BlockId b)
{
	BlockRec& r = blocks_[b];
	(r.prev == none ? head_ : blocks_[r.prev].next) = r.next;
	(r.next == none ? tail_ : blocks_[r.next].prev) = r.prev;
	r.prev = r.next = none;
}

void Engine::list_push_front(BlockId b)
{
	BlockRec& r = blocks_[b];
	r.prev = none;
	r.next = head_;
	(head_ == none ? tail_ : blocks_[head_].prev) = b;
	head_ = b;
}

void Engine::list_push_back(BlockId b)
{
	BlockRec& r = blocks_[b];
	r.next = none;
	r.prev = tail_;
	(tail_ == none ? head_ : blocks_[tail_].next) = b;
	tail_ = b;
}

void Engine::set_pending(BlockId b, std::uint32_t pending)
{
	const std::uint32_t old = blocks_[b].pending;
	blocks_[b].pending = pending;
	if (old == 0 && pending > 0) {
		list_unlink(b);
		list_push_front(b);
	} else if (old > 0 && pending == 0) {
		list_unlink(b);
		list_push_back(b);
	}
}

void Engine::grow_rel(std::size_t blocks)
{
	if (blocks <= rel_cap_)
		return;
	std::size_t cap = std::max<std::size_t>({blocks, 2 * rel_cap_, 4});
	std::vector<char> grown(cap * cap, 0);
	for (std::size_t b = 0; b < rel_cap_; ++b)
		std::copy_n(rel_.begin() + static_cast<std::ptrdiff_t>(b * rel_cap_), rel_cap_,
		            grown.begin() + static_cast<std::ptrdiff_t>(b * cap));
	rel_ = std::move(grown);
	rel_cap_ = cap;
}

std::size_t Engine::domain_size(SymbolId a) const
{
	return options_.sparse_allocation ? sets_.has_out[a].size() : lts_.state_count();
}

std::uint32_t Engine::counter_index(StateId v, SymbolId a) const
{
	return options_.sparse_allocation ? index_[v * symbols_ + a] : v;
}

void Engine::allocate_slot(BlockId b, SymbolId a)
{
	Slot& slot = blocks_[b].slots[a];
	slot.allocated = true;
	slot.count.assign(domain_size(a), 0);
	live_counters_ += slot.count.size();
}

void Engine::recompute_in(BlockId b)
{
	BlockRec& r = blocks_[b];
	r.in.assign(symbols_, 0);
	for (std::uint32_t i = r.begin; i < r.end; ++i)
		for (SymbolId a : sets_.in_syms[elems_[i]])
			r.in[a] = 1;
}

void Engine::drop_foreign_slots(BlockId b)
{
	BlockRec& r = blocks_[b];
	std::uint32_t pending = r.pending;
	for (SymbolId a = 0; a < symbols_; ++a) {
		Slot& slot = r.slots[a];
		if (!slot.allocated || r.in[a])
			continue;
		if (!slot.remove.empty()) {
			++metrics_.skipped_iterations;
			--pending;
		}
		live_counters_ -= slot.count.size();
		slot = Slot{};
	}
	set_pending(b, pending);
}

void Engine::update_peak()
{
	metrics_.counters_allocated = std::max(metrics_.counters_allocated, live_counters_);
}

void Engine::enqueue(BlockId c, SymbolId b, StateId v)
{
	Slot& slot = blocks_[c].slots[b];
	slot.remove.push_back(v);
	++metrics_.remove_enqueued;
	if (slot.remove.size() == 1)
		set_pending(c, blocks_[c].pending + 1);
}

bool Engine::at_fixpoint() const
{
	return head_ == none || blocks_[head_].pending == 0;
}

bool Engine::step()
{
	if (at_fixpoint())
		return false;
	const BlockId chosen = head_;
	SymbolId a = 0;
	while (blocks_[chosen].slots[a].remove.empty())
		++a;
	std::vector<StateId> remove = std::move(blocks_[chosen].slots[a].remove);
	blocks_[chosen].slots[a].remove.clear();
	set_pending(chosen, blocks_[chosen].pending - 1);
	++metrics_.iterations;

	if (options_.skip_rule && !blocks_[chosen].in[a]) {
		++metrics_.skipped_iterations;
		check_audit();
		return true;
	}

	// δ_a⁻¹ of the chosen block as it is before the split.
	std::vector<StateId> pre;
	for (std::uint32_t i = blocks_[chosen].begin; i < blocks_[chosen].end; ++i)
		for (StateId u : lts_.predecessors(a, elems_[i]))
			pre.push_back(u);

	// Split: marked states gather at the tail of their block's segment.
	std::vector<BlockId> touched;
	for (StateId v : remove) {
		const BlockId b = block_of_[v];
		BlockRec& r = blocks_[b];
		if (r.marked == 0)
			touched.push_back(b);
		const std::uint32_t target = r.end - 1 - r.marked;
		const StateId other = elems_[target];
		std::swap(elems_[pos_[v]], elems_[target]);
		pos_[other] = pos_[v];
		pos_[v] = target;
		++r.marked;
	}

	std::vector<BlockId> removed_blocks;
	for (BlockId b : touched) {
		const std::uint32_t marked = blocks_[b].marked;
		blocks_[b].marked = 0;
		if (marked == blocks_[b].end - blocks_[b].begin) {
			removed_blocks.push_back(b);
			continue;
		}
		const auto fresh = static_cast<BlockId>(blocks_.size());
		blocks_.emplace_back();
		BlockRec& parent = blocks_[b];
		BlockRec& child = blocks_[fresh];
		child.end = parent.end;
		child.begin = parent.end - marked;
		parent.end = child.begin;
		for (std::uint32_t i = child.begin; i < child.end; ++i)
			block_of_[elems_[i]] = fresh;

		grow_rel(blocks_.size());
		for (BlockId c = 0; c < fresh; ++c) {
			set_rel(fresh, c, rel(b, c));
			set_rel(c, fresh, rel(c, b));
		}
		set_rel(fresh, fresh, rel(b, b));

		child.slots = parent.slots;
		for (const Slot& s : child.slots)
			live_counters_ += s.count.size();
		child.pending = parent.pending;
		if (child.pending)
			list_push_front(fresh);
		else
			list_push_back(fresh);
		stamp_.push_back(0);
		++metrics_.splits;

		recompute_in(fresh);
		recompute_in(b);
		if (options_.sparse_allocation) {
			drop_foreign_slots(fresh);
			drop_foreign_slots(b);
		}
		removed_blocks.push_back(fresh);
	}
	update_peak();

	++epoch_;
	std::vector<BlockId> sources;
	for (StateId u : pre) {
		const BlockId c = block_of_[u];
		if (stamp_[c] != epoch_) {
			stamp_[c] = epoch_;
			sources.push_back(c);
		}
	}

	for (BlockId c : sources) {
		for (BlockId d : removed_blocks) {
			if (!rel(c, d))
				continue;
			set_rel(c, d, false);
			++metrics_.pruned_pairs;
			for (std::uint32_t i = blocks_[d].begin; i < blocks_[d].end; ++i) {
				const StateId w = elems_[i];
				for (const auto& run : lts_.in_runs(w)) {
					Slot& slot = blocks_[c].slots[run.symbol];
					if (!slot.allocated)
						continue;
					for (StateId v : lts_.in_sources(run)) {
						auto& cnt = slot.count[counter_index(v, run.symbol)];
						assert(cnt > 0);
						if (--cnt == 0)
							enqueue(c, run.symbol, v);
					}
				}
			}
		}
	}
	check_audit();
	return true;
}

void Engine::run()
{
	while (step()) { }
}

PartitionRelationPair Engine::result() const
{
	std::vector<Block> blocks(blocks_.size());
	for (BlockId b = 0; b < blocks_.size(); ++b)
		blocks[b].assign(elems_.begin() + blocks_[b].begin, elems_.begin() + blocks_[b].end);
	StateRelation r(blocks_.size());
	for (BlockId b = 0; b < blocks_.size(); ++b)
		for (BlockId c = 0; c < blocks_.size(); ++c)
			if (rel(b, c))
				r.insert(b, c);
	return PartitionRelationPair(std::move(blocks), r, lts_.state_count());
}

std::size_t Engine::audit_violations() const
{
	const std::size_t n = lts_.state_count();
	std::size_t violations = 0;
	std::vector<char> above(n);
	std::vector<char> in(symbols_);
	for (BlockId b = 0; b < blocks_.size(); ++b) {
		const BlockRec& r = blocks_[b];
		for (StateId w = 0; w < n; ++w)
			above[w] = rel(b, block_of_[w]);
		std::fill(in.begin(), in.end(), 0);
		for (std::uint32_t i = r.begin; i < r.end; ++i)
			for (SymbolId a : sets_.in_syms[elems_[i]])
				in[a] = 1;
		for (SymbolId a = 0; a < symbols_; ++a) {
			if (in[a] != r.in[a])
				++violations;
			const Slot& slot = r.slots[a];
			const bool wanted = !options_.sparse_allocation || in[a];
			if (slot.allocated != wanted) {
				++violations;
				continue;
			}
			if (!slot.allocated)
				continue;
			auto expected = [&](StateId v) {
				std::uint32_t c = 0;
				for (StateId w : lts_.successors(a, v))
					c += above[w] ? 1 : 0;
				return c;
			};
			if (options_.sparse_allocation) {
				const auto& dom = sets_.has_out[a];
				for (std::uint32_t i = 0; i < dom.size(); ++i)
					violations += slot.count[i] != expected(dom[i]);
			} else {
				for (StateId v = 0; v < n; ++v)
					violations += slot.count[v] != expected(v);
			}
			for (StateId v : slot.remove) {
				violations += expected(v) != 0;
				if (options_.restrict_remove)
					violations += lts_.successors(a, v).empty();
			}
		}
	}
	return violations;
}

void Engine::check_audit() const
{
	if (!options_.audit)
		return;
	if (auto v = audit_violations())
		throw std::logic_error("engine audit failed with " + std::to_string(v) + " violations");
}

EngineResult run_engine(const Lts& lts, const PartitionRelationPair& initial, EngineOptions options)
{
	const auto start = std::chrono::steady_clock::now();
	Engine engine(lts, initial, options);
	engine.run();
	EngineResult out{engine.result(), engine.metrics()};
	out.metrics.wall_time_ms =
		std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
	return out;
}

PartitionRelationPair lrt(const Lts& lts, const PartitionRelationPair& initial)
{
	return run_engine(lts, initial, EngineOptions::lrt()).pair;
}

EngineResult lrt_with_metrics(const Lts& lts, const PartitionRelationPair& initial)
{
	return run_engine(lts, initial, EngineOptions::lrt());
}

EngineResult olrt(const Lts& lts, const PartitionRelationPair& initial)
{
	return run_engine(lts, initial, EngineOptions::olrt());
}

} // namespace simrel
