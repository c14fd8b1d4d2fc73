#include "simrel/relation.hh"

#include <bit>

namespace simrel {

StateRelation::StateRelation(std::size_t n) :
	n_(n),
	words_((n + 63) / 64),
	bits_(n * ((n + 63) / 64), 0)
{ }

StateRelation StateRelation::identity(std::size_t n)
{
	StateRelation r(n);
	for (std::uint32_t u = 0; u < n; ++u)
		r.insert(u, u);
	return r;
}

StateRelation StateRelation::full(std::size_t n)
{
	StateRelation r(n);
	for (std::uint32_t u = 0; u < n; ++u)
		for (std::uint32_t v = 0; v < n; ++v)
			r.insert(u, v);
	return r;
}

std::size_t StateRelation::pair_count() const
{
	std::size_t c = 0;
	for (auto w : bits_)
		c += static_cast<std::size_t>(std::popcount(w));
	return c;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> StateRelation::pairs() const
{
	std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
	for (std::uint32_t u = 0; u < n_; ++u)
		for (std::uint32_t v : row(u))
			out.emplace_back(u, v);
	return out;
}

std::vector<std::uint32_t> StateRelation::row(std::uint32_t u) const
{
	std::vector<std::uint32_t> out;
	const std::uint64_t* r = row_words(u);
	for (std::size_t w = 0; w < words_; ++w) {
		std::uint64_t bits = r[w];
		while (bits) {
			out.push_back(static_cast<std::uint32_t>(w * 64 + std::countr_zero(bits)));
			bits &= bits - 1;
		}
	}
	return out;
}

bool StateRelation::same_row(std::uint32_t u, std::uint32_t v) const
{
	const std::uint64_t* a = row_words(u);
	const std::uint64_t* b = row_words(v);
	for (std::size_t w = 0; w < words_; ++w)
		if (a[w] != b[w])
			return false;
	return true;
}

StateRelation StateRelation::transposed() const
{
	StateRelation t(n_);
	for (std::uint32_t u = 0; u < n_; ++u)
		for (std::uint32_t v : row(u))
			t.insert(v, u);
	return t;
}

StateRelation& StateRelation::operator&=(const StateRelation& other)
{
	for (std::size_t i = 0; i < bits_.size() && i < other.bits_.size(); ++i)
		bits_[i] &= other.bits_[i];
	return *this;
}

bool StateRelation::is_subset_of(const StateRelation& other) const
{
	if (other.n_ != n_)
		return false;
	for (std::size_t i = 0; i < bits_.size(); ++i)
		if (bits_[i] & ~other.bits_[i])
			return false;
	return true;
}

bool StateRelation::is_reflexive() const
{
	for (std::uint32_t u = 0; u < n_; ++u)
		if (!contains(u, u))
			return false;
	return true;
}

bool StateRelation::is_antisymmetric() const
{
	for (std::uint32_t u = 0; u < n_; ++u)
		for (std::uint32_t v : row(u))
			if (u != v && contains(v, u))
				return false;
	return true;
}

bool StateRelation::is_transitive() const
{
	for (std::uint32_t u = 0; u < n_; ++u) {
		const std::uint64_t* ru = row_words(u);
		for (std::uint32_t v : row(u)) {
			const std::uint64_t* rv = row_words(v);
			for (std::size_t w = 0; w < words_; ++w)
				if (rv[w] & ~ru[w])
					return false;
		}
	}
	return true;
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> StateRelation::preorder_violation() const
{
	for (std::uint32_t u = 0; u < n_; ++u)
		if (!contains(u, u))
			return std::pair{u, u};
	for (std::uint32_t u = 0; u < n_; ++u) {
		const std::uint64_t* ru = row_words(u);
		for (std::uint32_t v : row(u)) {
			const std::uint64_t* rv = row_words(v);
			for (std::size_t w = 0; w < words_; ++w)
				if (auto missing = rv[w] & ~ru[w])
					return std::pair{u, static_cast<std::uint32_t>(w * 64 + std::countr_zero(missing))};
		}
	}
	return std::nullopt;
}

void StateRelation::close_reflexive_transitive()
{
	for (std::uint32_t u = 0; u < n_; ++u)
		insert(u, u);
	// Warshall over bit rows.
	for (std::uint32_t k = 0; k < n_; ++k) {
		const std::uint64_t* rk = row_words(k);
		for (std::uint32_t u = 0; u < n_; ++u) {
			if (u == k || !contains(u, k))
				continue;
			std::uint64_t* ru = row_words(u);
			for (std::size_t w = 0; w < words_; ++w)
				ru[w] |= rk[w];
		}
	}
}

} // namespace simrel
