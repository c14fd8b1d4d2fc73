#pragma once

#include <cstdint>
#include <vector>

#include "simrel/lts.hh"
#include "simrel/model.hh"
#include "simrel/partition.hh"

namespace simrel {

/**
 * Switches between the baseline and the optimized refinement.
 *
 * The optimized algorithm is the conjunction of all four switches. Each
 * one can be turned off on its own to check that it does not change the
 * result. `sparse_allocation` and `restrict_remove` are only sound on top
 * of `out_init`, and `sparse_allocation` implies the other two
 * restrictions; `validate()` rejects combinations that break this.
 */
struct EngineOptions {
	/// Start from the coarsest pair for I ∩ Out instead of I.
	bool out_init = true;
	/// Keep Remove_a(B) and Count_a(·,B) only for a ∈ in(B), and counters
	/// only for states in δ_a⁻¹(S).
	bool sparse_allocation = true;
	/// Put only states of δ_a⁻¹(S) into Remove_a(B).
	bool restrict_remove = true;
	/// Discard a selected Remove_a(B) with a ∉ in(B) without processing it.
	bool skip_rule = true;
	/// Recount every counter after initialization and after each step and
	/// throw std::logic_error on a mismatch. Quadratic; for tests only.
	bool audit = false;

	static EngineOptions lrt() { return {false, false, false, false, false}; }
	static EngineOptions olrt() { return {}; }

	void validate() const;
};

struct SimMetrics {
	std::uint64_t counters_allocated = 0; ///< peak number of live counter cells
	std::uint64_t remove_enqueued = 0;    ///< states ever inserted into a Remove set
	std::uint64_t iterations = 0;         ///< while-loop passes, skipped ones included
	std::uint64_t splits = 0;             ///< blocks created by splitting
	std::uint64_t skipped_iterations = 0; ///< Remove sets dropped because a ∉ in(B)
	std::uint64_t pruned_pairs = 0;       ///< block pairs removed from rel
	double wall_time_ms = 0.0;
};

/// Live state of one refinement run. Holds a reference to the LTS, which
/// must outlive the engine.
class Engine {
public:
	Engine(const Lts& lts, const PartitionRelationPair& initial, EngineOptions options = {});

	/// Processes one nonempty Remove set. Returns false at the fixpoint.
	bool step();
	/// Steps until the fixpoint.
	void run();

	PartitionRelationPair result() const;
	StateRelation induced() const { return induced_relation(result()); }
	const SimMetrics& metrics() const noexcept { return metrics_; }
	std::size_t block_count() const noexcept { return blocks_.size(); }
	bool at_fixpoint() const;

	/// Number of counters or Remove entries disagreeing with a direct
	/// recount of |δ_a(v) ∩ ⋃Rel(B)|, plus slots allocated for a ∉ in(B)
	/// in sparse mode.
	std::size_t audit_violations() const;

private:
	struct Slot {
		bool allocated = false;
		std::vector<std::uint32_t> count;
		std::vector<StateId> remove;
	};

	struct BlockRec {
		std::uint32_t begin = 0;
		std::uint32_t end = 0;
		std::uint32_t marked = 0;
		std::uint32_t pending = 0; // slots with a nonempty Remove set
		BlockId prev = none;
		BlockId next = none;
		std::vector<char> in; // a ∈ in(B)
		std::vector<Slot> slots;
	};

	static constexpr BlockId none = ~BlockId{0};

	// Block list: blocks with pending work form a prefix.
	void list_unlink(BlockId b);
	void list_push_front(BlockId b);
	void list_push_back(BlockId b);
	void set_pending(BlockId b, std::uint32_t pending);

	bool rel(BlockId b, BlockId c) const { return rel_[b * rel_cap_ + c]; }
	void set_rel(BlockId b, BlockId c, bool value) { rel_[b * rel_cap_ + c] = value; }
	void grow_rel(std::size_t blocks);

	std::size_t domain_size(SymbolId a) const;
	std::uint32_t counter_index(StateId v, SymbolId a) const;
	void allocate_slot(BlockId b, SymbolId a);
	void recompute_in(BlockId b);
	void drop_foreign_slots(BlockId b);
	void update_peak();
	void enqueue(BlockId c, SymbolId b, StateId v);
	void check_audit() const;

	const Lts& lts_;
	EngineOptions options_;
	InOutSets sets_;
	std::size_t symbols_;

	std::vector<StateId> elems_;
	std::vector<std::uint32_t> pos_;
	std::vector<BlockId> block_of_;
	std::vector<BlockRec> blocks_;
	BlockId head_ = none;
	BlockId tail_ = none;

	std::vector<char> rel_;
	std::size_t rel_cap_ = 0;

	std::vector<std::uint32_t> index_; // v_a at [v * symbols_ + a]
	std::uint64_t live_counters_ = 0;
	SimMetrics metrics_;

	// Scratch.
	std::vector<std::uint32_t> stamp_;
	std::uint32_t epoch_ = 0;
};

struct EngineResult {
	PartitionRelationPair pair;
	SimMetrics metrics;
};

/// Runs the refinement with the given switches, timing it.
EngineResult run_engine(const Lts& lts, const PartitionRelationPair& initial, EngineOptions options);

/// Baseline: coarsest pair inducing the maximal simulation inside I.
PartitionRelationPair lrt(const Lts& lts, const PartitionRelationPair& initial);
EngineResult lrt_with_metrics(const Lts& lts, const PartitionRelationPair& initial);

/// Optimized refinement; same output pair as lrt().
EngineResult olrt(const Lts& lts, const PartitionRelationPair& initial);

} // namespace simrel
