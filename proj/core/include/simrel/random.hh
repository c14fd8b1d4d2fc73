#pragma once

#include <cstdint>
#include <limits>
#include <random>

#include "simrel/lts.hh"
#include "simrel/relation.hh"
#include "simrel/tree_automaton.hh"

namespace simrel {

/// mt19937_64 with distribution code of our own, so that a seed gives the
/// same stream on every standard library.
class Rng {
public:
	explicit Rng(std::uint64_t seed) : engine_(seed) { }

	/// Uniform in [0, n). n must be positive.
	std::uint64_t below(std::uint64_t n);
	/// Uniform in [0, 1).
	double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
	bool chance(double p) { return unit() < p; }

private:
	std::mt19937_64 engine_;
};

struct RandomLtsParams {
	std::size_t states = 8;
	std::size_t symbols = 2;
	/// Probability of each edge v -a-> w with a in v's alphabet.
	double edge_probability = 0.3;
	/// Each state draws its out-alphabet from a random subset of
	/// max(1, round(sparsity·|Σ|)) symbols.
	double sparsity = 1.0;
};

/// States s0.., symbols a0..; all declared even if edgeless.
/// Throws ParameterError for out-of-range parameters.
Lts random_lts(const RandomLtsParams& params, std::uint64_t seed);

/// Reflexive-transitive closure of a random digraph with the given edge probability.
StateRelation random_preorder(std::size_t n, double edge_probability, Rng& rng);

struct RandomTaParams {
	std::size_t states = 4;
	std::size_t symbols = 3;
	std::uint32_t max_rank = 2;
	std::size_t rules = 8; ///< rule draws; duplicates collapse
	double final_probability = 0.3;
};

/// States q0.., symbols f0.. with f0 nullary and other ranks uniform in [0, max_rank].
TreeAutomaton random_ta(const RandomTaParams& params, std::uint64_t seed);

} // namespace simrel
