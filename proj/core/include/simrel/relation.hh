#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "simrel/lts.hh"

namespace simrel {

/// Binary relation on {0..n-1} stored as a dense bit matrix.
/// Pair enumeration is row-major by id.
class StateRelation {
public:
	explicit StateRelation(std::size_t n = 0);

	static StateRelation identity(std::size_t n);
	static StateRelation full(std::size_t n);

	std::size_t size() const noexcept { return n_; }

	bool contains(std::uint32_t u, std::uint32_t v) const
	{
		return (bits_[u * words_ + (v >> 6)] >> (v & 63)) & 1u;
	}
	void insert(std::uint32_t u, std::uint32_t v) { bits_[u * words_ + (v >> 6)] |= bit(v); }
	void erase(std::uint32_t u, std::uint32_t v) { bits_[u * words_ + (v >> 6)] &= ~bit(v); }

	std::size_t pair_count() const;
	std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs() const;

	/// Elements related to u (its up-set), ascending.
	std::vector<std::uint32_t> row(std::uint32_t u) const;
	bool same_row(std::uint32_t u, std::uint32_t v) const;

	StateRelation transposed() const;
	StateRelation& operator&=(const StateRelation& other);
	bool is_subset_of(const StateRelation& other) const;

	bool is_reflexive() const;
	bool is_antisymmetric() const;
	bool is_transitive() const;
	/// A pair witnessing non-reflexivity ((u,u) missing) or non-transitivity
	/// ((u,w) missing although (u,v),(v,w) present, reported as (u,w)).
	std::optional<std::pair<std::uint32_t, std::uint32_t>> preorder_violation() const;

	void close_reflexive_transitive();

	friend bool operator==(const StateRelation&, const StateRelation&) = default;

private:
	static std::uint64_t bit(std::uint32_t v) { return std::uint64_t{1} << (v & 63); }
	const std::uint64_t* row_words(std::uint32_t u) const { return bits_.data() + u * words_; }
	std::uint64_t* row_words(std::uint32_t u) { return bits_.data() + u * words_; }

	std::size_t n_ = 0;
	std::size_t words_ = 0;
	std::vector<std::uint64_t> bits_;
};

} // namespace simrel
