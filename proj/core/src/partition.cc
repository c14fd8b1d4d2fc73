#include "simrel/partition.hh"

#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_map>

#include "simrel/error.hh"

namespace simrel {

namespace {

struct KeyHash {
	std::size_t operator()(const std::vector<std::uint32_t>& key) const noexcept
	{
		std::uint64_t h = 1469598103934665603ull;
		for (auto x : key) {
			h ^= x;
			h *= 1099511628211ull;
		}
		return static_cast<std::size_t>(h);
	}
};

std::string pair_text(std::uint32_t u, std::uint32_t v)
{
	return "(" + std::to_string(u) + ", " + std::to_string(v) + ")";
}

} // namespace

SplitResult split(std::span<const Block> blocks, std::span<const StateId> remove)
{
	StateId max_state = 0;
	for (const auto& b : blocks)
		for (StateId v : b)
			max_state = std::max(max_state, v);
	std::vector<char> marked(blocks.empty() ? 0 : max_state + 1, 0);
	for (StateId v : remove)
		if (v < marked.size())
			marked[v] = 1;

	SplitResult out;
	out.blocks.reserve(blocks.size());
	out.parent.reserve(blocks.size());
	std::vector<std::pair<BlockId, Block>> appended;
	for (BlockId i = 0; i < blocks.size(); ++i) {
		Block outside, inside;
		for (StateId v : blocks[i])
			(marked[v] ? inside : outside).push_back(v);
		if (outside.empty() || inside.empty()) {
			out.blocks.push_back(blocks[i]);
		} else {
			out.blocks.push_back(std::move(outside));
			appended.emplace_back(i, std::move(inside));
		}
		out.parent.push_back(i);
	}
	for (auto& [parent, block] : appended) {
		out.blocks.push_back(std::move(block));
		out.parent.push_back(parent);
	}
	return out;
}

PartitionRelationPair::PartitionRelationPair(std::vector<Block> blocks, const StateRelation& rel,
                                             std::size_t state_count)
{
	if (rel.size() != blocks.size())
		throw InputError("block relation dimension does not match block count");
	constexpr BlockId unassigned = ~BlockId{0};
	std::vector<BlockId> owner(state_count, unassigned);
	for (BlockId b = 0; b < blocks.size(); ++b) {
		if (blocks[b].empty())
			throw InputError("empty block " + std::to_string(b));
		for (StateId v : blocks[b]) {
			if (v >= state_count)
				throw InputError("state " + std::to_string(v) + " out of range");
			if (owner[v] != unassigned)
				throw InputError("state " + std::to_string(v) + " occurs in two blocks");
			owner[v] = b;
		}
		std::sort(blocks[b].begin(), blocks[b].end());
	}
	for (StateId v = 0; v < state_count; ++v)
		if (owner[v] == unassigned)
			throw InputError("state " + std::to_string(v) + " is not covered by the partition");

	std::vector<BlockId> order(blocks.size());
	std::iota(order.begin(), order.end(), 0);
	std::sort(order.begin(), order.end(),
		[&](BlockId x, BlockId y) { return blocks[x].front() < blocks[y].front(); });
	std::vector<BlockId> rank(blocks.size());
	for (BlockId i = 0; i < order.size(); ++i)
		rank[order[i]] = i;

	blocks_.reserve(blocks.size());
	for (BlockId b : order)
		blocks_.push_back(std::move(blocks[b]));
	block_of_.resize(state_count);
	for (StateId v = 0; v < state_count; ++v)
		block_of_[v] = rank[owner[v]];
	rel_ = StateRelation(blocks_.size());
	for (auto [b, c] : rel.pairs())
		rel_.insert(rank[b], rank[c]);
}

bool PartitionRelationPair::is_coarsest_preorder() const
{
	return rel_.is_reflexive() && rel_.is_antisymmetric() && rel_.is_transitive();
}

StateRelation induced_relation(const PartitionRelationPair& prp)
{
	StateRelation out(prp.state_count());
	for (auto [b, c] : prp.rel().pairs())
		for (StateId u : prp.block(b))
			for (StateId v : prp.block(c))
				out.insert(u, v);
	return out;
}

PartitionRelationPair coarsest_pair(const StateRelation& rho)
{
	if (auto bad = rho.preorder_violation())
		throw InputError("relation is not a preorder: missing pair " + pair_text(bad->first, bad->second));

	const std::size_t n = rho.size();
	const StateRelation down = rho.transposed();
	std::unordered_map<std::vector<std::uint32_t>, BlockId, KeyHash> groups;
	std::vector<Block> blocks;
	std::vector<StateId> representative;
	for (StateId v = 0; v < n; ++v) {
		auto key = rho.row(v);
		key.push_back(~std::uint32_t{0});
		auto lower = down.row(v);
		key.insert(key.end(), lower.begin(), lower.end());
		auto [it, fresh] = groups.try_emplace(std::move(key), static_cast<BlockId>(blocks.size()));
		if (fresh) {
			blocks.emplace_back();
			representative.push_back(v);
		}
		blocks[it->second].push_back(v);
	}
	StateRelation rel(blocks.size());
	for (BlockId b = 0; b < blocks.size(); ++b)
		for (BlockId c = 0; c < blocks.size(); ++c)
			if (rho.contains(representative[b], representative[c]))
				rel.insert(b, c);
	return PartitionRelationPair(std::move(blocks), rel, n);
}

PartitionRelationPair coarsen(const PartitionRelationPair& prp)
{
	const StateRelation& rel = prp.rel();
	const StateRelation cols = rel.transposed();
	std::unordered_map<std::vector<std::uint32_t>, BlockId, KeyHash> groups;
	std::vector<BlockId> merged_into(prp.block_count());
	std::vector<Block> blocks;
	std::vector<BlockId> representative;
	for (BlockId b = 0; b < prp.block_count(); ++b) {
		auto key = rel.row(b);
		key.push_back(~std::uint32_t{0});
		auto col = cols.row(b);
		key.insert(key.end(), col.begin(), col.end());
		auto [it, fresh] = groups.try_emplace(std::move(key), static_cast<BlockId>(blocks.size()));
		if (fresh) {
			blocks.emplace_back();
			representative.push_back(b);
		}
		merged_into[b] = it->second;
		const Block& src = prp.block(b);
		blocks[it->second].insert(blocks[it->second].end(), src.begin(), src.end());
	}
	if (blocks.size() == prp.block_count())
		return prp;
	StateRelation out(blocks.size());
	for (BlockId b = 0; b < blocks.size(); ++b)
		for (BlockId c = 0; c < blocks.size(); ++c)
			if (rel.contains(representative[b], representative[c]))
				out.insert(b, c);
	return PartitionRelationPair(std::move(blocks), out, prp.state_count());
}

void require_coarsest_preorder(const PartitionRelationPair& prp)
{
	const StateRelation& rel = prp.rel();
	for (BlockId b = 0; b < rel.size(); ++b)
		if (!rel.contains(b, b))
			throw InputError("initial pair is not reflexive on block " + std::to_string(b));
	if (!rel.is_antisymmetric())
		throw InputError("initial pair is not coarsest: block relation is not antisymmetric");
	if (!rel.is_transitive())
		throw InputError("initial pair does not induce a preorder: block relation is not transitive");
}

} // namespace simrel
