#pragma once

#include <span>
#include <vector>

#include "simrel/lts.hh"
#include "simrel/relation.hh"

namespace simrel {

using Block = std::vector<StateId>;

struct SplitResult {
	std::vector<Block> blocks;
	/// parent[i] is the index in the input partition that blocks[i] came from.
	std::vector<BlockId> parent;
};

/// Refines every block B into B∖remove and B∩remove, dropping empty parts.
/// Block i keeps index i (holding B∖remove, or B itself when B ⊆ remove);
/// the B∩remove parts of blocks that actually split are appended in order.
SplitResult split(std::span<const Block> blocks, std::span<const StateId> remove);

/**
 * Partition of {0..n-1} into blocks with a relation on the blocks.
 *
 * Always stored in canonical form: members ascending within a block and
 * blocks ordered by their least member, with `rel` indexed accordingly.
 * Two pairs inducing the same relation through the same partition
 * therefore compare equal.
 */
class PartitionRelationPair {
public:
	PartitionRelationPair() = default;
	/// Throws InputError if `blocks` is not a partition of {0..state_count-1}
	/// or `rel` has the wrong dimension.
	PartitionRelationPair(std::vector<Block> blocks, const StateRelation& rel, std::size_t state_count);

	std::size_t state_count() const noexcept { return block_of_.size(); }
	std::size_t block_count() const noexcept { return blocks_.size(); }
	const std::vector<Block>& blocks() const noexcept { return blocks_; }
	const Block& block(BlockId b) const { return blocks_.at(b); }
	BlockId block_of(StateId v) const { return block_of_.at(v); }
	const StateRelation& rel() const noexcept { return rel_; }

	/// rel is reflexive, antisymmetric and transitive, i.e. the pair is the
	/// coarsest one for the preorder it induces.
	bool is_coarsest_preorder() const;

	friend bool operator==(const PartitionRelationPair&, const PartitionRelationPair&) = default;

private:
	std::vector<Block> blocks_;
	std::vector<BlockId> block_of_;
	StateRelation rel_;
};

/// ⋃_{(B,C)∈rel} B×C.
StateRelation induced_relation(const PartitionRelationPair& prp);

/// Coarsest pair inducing the preorder `rho`. Throws InputError naming a
/// violating pair if `rho` is not a preorder.
PartitionRelationPair coarsest_pair(const StateRelation& rho);

/// Merges blocks whose rel rows and columns coincide.
PartitionRelationPair coarsen(const PartitionRelationPair& prp);

/// Throws InputError unless `prp` is the coarsest pair of some preorder.
void require_coarsest_preorder(const PartitionRelationPair& prp);

} // namespace simrel
