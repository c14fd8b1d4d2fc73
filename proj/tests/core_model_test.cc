#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <tuple>

#include "simrel/error.hh"
#include "simrel/io.hh"
#include "simrel/model.hh"
#include "simrel/oracle.hh"
#include "simrel/partition.hh"
#include "simrel/random.hh"
#include "support.hh"

using namespace simrel;
using namespace simrel::test;

namespace {

std::vector<std::string> names_of(const Lts& lts, const std::vector<SymbolId>& syms)
{
	std::vector<std::string> out;
	for (auto a : syms)
		out.push_back(lts.symbol_name(a));
	return out;
}

std::vector<std::string> state_names(const Lts& lts, const std::vector<StateId>& states)
{
	std::vector<std::string> out;
	for (auto v : states)
		out.push_back(lts.state_name(v));
	return out;
}

StateRelation rel_from(std::size_t n, std::initializer_list<std::pair<StateId, StateId>> pairs)
{
	StateRelation r(n);
	for (auto [u, v] : pairs)
		r.insert(u, v);
	return r;
}

} // namespace

TEST(BuildLts, SingleEdge)
{
	std::vector<NamedTransition> t{{"p", "a", "q"}};
	Lts lts = build_lts(t);
	EXPECT_EQ(lts.state_count(), 2u);
	EXPECT_EQ(lts.symbol_count(), 1u);
	EXPECT_EQ(lts.transition_count(), 1u);
	EXPECT_TRUE(lts.has_transition(0, 0, 1));
}

TEST(BuildLts, DuplicateTransitionsCollapse)
{
	std::vector<NamedTransition> once{{"p", "a", "q"}};
	std::vector<NamedTransition> twice{{"p", "a", "q"}, {"p", "a", "q"}};
	EXPECT_EQ(build_lts(once).transitions(), build_lts(twice).transitions());
	EXPECT_EQ(build_lts(twice).transition_count(), 1u);
}

TEST(BuildLts, FirstAppearanceOrderAndReverseAdjacency)
{
	Lts lts = l1();
	ASSERT_EQ(lts.state_count(), 3u);
	ASSERT_EQ(lts.symbol_count(), 2u);
	EXPECT_EQ(lts.state_name(0), "p");
	EXPECT_EQ(lts.state_name(1), "q");
	EXPECT_EQ(lts.state_name(2), "r");
	auto pred = lts.predecessors(*lts.symbols().find("a"), *lts.states().find("q"));
	EXPECT_EQ(state_names(lts, {pred.begin(), pred.end()}), (std::vector<std::string>{"p", "r"}));
}

TEST(BuildLts, EmptySystemIsRejected)
{
	EXPECT_THROW(build_lts({}), InputError);
	try {
		build_lts({});
	} catch (const InputError& e) {
		EXPECT_STREQ(e.what(), "empty system");
	}
	std::vector<std::string> declared{"x"};
	EXPECT_EQ(build_lts({}, declared).state_count(), 1u);
}

TEST(BuildLts, ForwardReverseConsistency)
{
	for (std::uint64_t seed = 0; seed < 30; ++seed) {
		Lts lts = random_lts({7, 3, 0.3, 1.0}, seed);
		std::size_t fwd = 0, bwd = 0;
		for (StateId v = 0; v < lts.state_count(); ++v) {
			for (const auto& r : lts.out_runs(v))
				for (StateId w : lts.out_targets(r)) {
					auto p = lts.predecessors(r.symbol, w);
					EXPECT_TRUE(std::binary_search(p.begin(), p.end(), v));
					++fwd;
				}
			for (const auto& r : lts.in_runs(v))
				bwd += r.end - r.begin;
		}
		EXPECT_EQ(fwd, bwd);
	}
}

TEST(InOutSets, L1)
{
	Lts lts = l1();
	auto s = in_out_sets(lts);
	EXPECT_EQ(names_of(lts, s.out_syms[0]), (std::vector<std::string>{"a"}));
	EXPECT_EQ(names_of(lts, s.out_syms[1]), (std::vector<std::string>{"b"}));
	EXPECT_EQ(names_of(lts, s.out_syms[2]), (std::vector<std::string>{"a"}));
	EXPECT_EQ(names_of(lts, s.in_syms[1]), (std::vector<std::string>{"a", "b"}));
	EXPECT_TRUE(s.in_syms[0].empty());
	EXPECT_TRUE(s.in_syms[2].empty());
	EXPECT_EQ(state_names(lts, s.has_out[0]), (std::vector<std::string>{"p", "r"}));
	EXPECT_EQ(state_names(lts, s.has_out[1]), (std::vector<std::string>{"q"}));
}

TEST(InOutSets, EdgelessState)
{
	Lts lts = parse_lts("#@states x\n");
	auto s = in_out_sets(lts);
	EXPECT_TRUE(s.in_syms[0].empty());
	EXPECT_TRUE(s.out_syms[0].empty());
	EXPECT_TRUE(s.has_out.empty());
}

TEST(InOutSets, DefinitionHoldsOnRandomSystems)
{
	for (std::uint64_t seed = 0; seed < 30; ++seed) {
		Lts lts = random_lts({6, 3, 0.2, 1.0}, seed);
		auto s = in_out_sets(lts);
		for (StateId v = 0; v < lts.state_count(); ++v)
			for (SymbolId a = 0; a < lts.symbol_count(); ++a) {
				bool out = std::binary_search(s.out_syms[v].begin(), s.out_syms[v].end(), a);
				bool in = std::binary_search(s.in_syms[v].begin(), s.in_syms[v].end(), a);
				bool has = std::binary_search(s.has_out[a].begin(), s.has_out[a].end(), v);
				EXPECT_EQ(out, !lts.successors(a, v).empty());
				EXPECT_EQ(in, !lts.predecessors(a, v).empty());
				EXPECT_EQ(has, out);
			}
	}
}

TEST(OutPreorder, L1)
{
	Lts lts = l1();
	NamedPairs expected{{"p", "p"}, {"q", "q"}, {"r", "r"}, {"p", "r"}, {"r", "p"}};
	EXPECT_EQ(named(out_preorder(lts), lts.states()), expected);
}

TEST(OutPreorder, EdgelessIsFull)
{
	Lts lts = parse_lts("#@states x y\n");
	EXPECT_EQ(out_preorder(lts), StateRelation::full(2));
}

TEST(OutPreorder, L3)
{
	Lts lts = l3();
	NamedPairs expected{{"p", "p"}, {"r", "r"}, {"s", "s"}, {"p", "r"}, {"r", "p"}, {"s", "p"}, {"s", "r"}};
	EXPECT_EQ(named(out_preorder(lts), lts.states()), expected);
}

TEST(OutPreorder, IsAPreorderAndMatchesSetInclusion)
{
	for (std::uint64_t seed = 0; seed < 50; ++seed) {
		Lts lts = random_lts({7, 4, 0.15, 0.5}, seed);
		auto out = out_preorder(lts);
		EXPECT_TRUE(out.is_reflexive());
		EXPECT_TRUE(out.is_transitive());
		auto s = in_out_sets(lts);
		for (StateId u = 0; u < lts.state_count(); ++u)
			for (StateId v = 0; v < lts.state_count(); ++v)
				EXPECT_EQ(out.contains(u, v), std::includes(s.out_syms[v].begin(), s.out_syms[v].end(),
				                                           s.out_syms[u].begin(), s.out_syms[u].end()));
	}
}

TEST(CoarsestPair, FullRelationIsOneBlock)
{
	auto prp = coarsest_pair(StateRelation::full(3));
	ASSERT_EQ(prp.block_count(), 1u);
	EXPECT_EQ(prp.block(0), (Block{0, 1, 2}));
	EXPECT_EQ(prp.rel(), StateRelation::full(1));
}

TEST(CoarsestPair, IdentityGivesSingletons)
{
	auto prp = coarsest_pair(StateRelation::identity(2));
	ASSERT_EQ(prp.block_count(), 2u);
	EXPECT_EQ(prp.rel(), StateRelation::identity(2));
}

TEST(CoarsestPair, OutOfL3)
{
	Lts lts = l3();
	auto prp = coarsest_pair(out_preorder(lts));
	EXPECT_EQ(named_blocks(prp, lts.states()), (NamedBlocks{{"p", "r"}, {"s"}}));
	using S = std::set<std::string>;
	std::set<std::pair<S, S>> rel{{{"p", "r"}, {"p", "r"}}, {{"s"}, {"s"}}, {{"s"}, {"p", "r"}}};
	EXPECT_EQ(named_rel(prp, lts.states()), rel);
	// Independent grouping by pairwise up/down-set comparison.
	auto brute = brute_classes(out_preorder(lts));
	auto got = block_sets(prp);
	EXPECT_EQ(std::set(brute.begin(), brute.end()), std::set(got.begin(), got.end()));
}

TEST(CoarsestPair, RejectsNonPreorder)
{
	auto r = rel_from(3, {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {1, 2}});
	try {
		coarsest_pair(r);
		FAIL() << "expected InputError";
	} catch (const InputError& e) {
		EXPECT_NE(std::string(e.what()).find("(0, 2)"), std::string::npos) << e.what();
	}
	EXPECT_THROW(coarsest_pair(rel_from(2, {{0, 0}})), InputError);
}

TEST(CoarsestPair, RoundTripAndLawsOnRandomPreorders)
{
	Rng rng(7);
	for (int i = 0; i < 200; ++i) {
		const std::size_t n = 1 + rng.below(7);
		auto rho = random_preorder(n, rng.unit() * 0.5, rng);
		auto prp = coarsest_pair(rho);
		EXPECT_EQ(induced_relation(prp), rho);
		EXPECT_TRUE(prp.is_coarsest_preorder());
		auto brute = brute_classes(rho);
		auto got = block_sets(prp);
		EXPECT_EQ(std::set(brute.begin(), brute.end()), std::set(got.begin(), got.end()));
	}
}

TEST(InducedRelation, Examples)
{
	auto one = PartitionRelationPair({{0, 1}}, StateRelation::full(1), 2);
	EXPECT_EQ(induced_relation(one), StateRelation::full(2));
	auto two = PartitionRelationPair({{0}, {1}}, StateRelation::identity(2), 2);
	EXPECT_EQ(induced_relation(two), StateRelation::identity(2));
}

TEST(PartitionRelationPair, RejectsNonPartitions)
{
	EXPECT_THROW(PartitionRelationPair({{0}, {0, 1}}, StateRelation::identity(2), 2), InputError);
	EXPECT_THROW(PartitionRelationPair({{0}}, StateRelation::identity(1), 2), InputError);
	EXPECT_THROW(PartitionRelationPair({{0}, {}}, StateRelation::identity(2), 1), InputError);
}

TEST(PartitionRelationPair, CanonicalFormMakesOrderIrrelevant)
{
	auto rel = rel_from(2, {{0, 0}, {1, 1}, {1, 0}});
	PartitionRelationPair a({{2}, {1, 0}}, rel, 3);
	PartitionRelationPair b({{0, 1}, {2}}, rel_from(2, {{0, 0}, {1, 1}, {0, 1}}), 3);
	EXPECT_EQ(a, b);
}

TEST(Split, Examples)
{
	std::vector<Block> p{{1, 2, 3}};
	auto r = split(p, std::vector<StateId>{2});
	EXPECT_EQ(r.blocks, (std::vector<Block>{{1, 3}, {2}}));
	EXPECT_EQ(r.parent, (std::vector<BlockId>{0, 0}));

	auto same = split(p, std::vector<StateId>{});
	EXPECT_EQ(same.blocks, p);
	EXPECT_EQ(same.parent, (std::vector<BlockId>{0}));

	std::vector<Block> q{{1, 2}, {3}};
	auto r2 = split(q, std::vector<StateId>{1, 3});
	std::set<Block> got(r2.blocks.begin(), r2.blocks.end());
	EXPECT_EQ(got, (std::set<Block>{{1}, {2}, {3}}));
	EXPECT_EQ(r2.blocks[1], (Block{3})); // unsplit block keeps its index
}

namespace {

std::vector<Block> random_partition(Rng& rng, std::size_t n)
{
	std::vector<Block> blocks(1 + rng.below(n));
	for (StateId v = 0; v < n; ++v)
		blocks[rng.below(blocks.size())].push_back(v);
	std::erase_if(blocks, [](const Block& b) { return b.empty(); });
	return blocks;
}

std::vector<StateId> random_subset(Rng& rng, std::size_t n, double p)
{
	std::vector<StateId> out;
	for (StateId v = 0; v < n; ++v)
		if (rng.chance(p))
			out.push_back(v);
	return out;
}

std::set<Block> as_set(const std::vector<Block>& blocks)
{
	std::set<Block> s;
	for (auto b : blocks) {
		std::sort(b.begin(), b.end());
		s.insert(b);
	}
	return s;
}

} // namespace

TEST(Split, LawsOnRandomPartitions)
{
	Rng rng(11);
	for (int i = 0; i < 300; ++i) {
		const std::size_t n = 1 + rng.below(9);
		auto p = random_partition(rng, n);
		auto z = random_subset(rng, n, 0.5);
		auto r = split(p, z);
		// Refinement: every child sits inside its parent.
		for (std::size_t b = 0; b < r.blocks.size(); ++b)
			for (StateId v : r.blocks[b])
				EXPECT_NE(std::find(p[r.parent[b]].begin(), p[r.parent[b]].end(), v), p[r.parent[b]].end());
		EXPECT_EQ(as_set(split(p, std::vector<StateId>{}).blocks), as_set(p));

		// If split(Q,Y) = Q and Y ⊆ Z then split(Q,Z) = split(Q,Z∖Y).
		// Y is a union of blocks of Q, so split(Q,Y) = Q.
		std::vector<StateId> y;
		for (const auto& b : p)
			if (rng.chance(0.4))
				y.insert(y.end(), b.begin(), b.end());
		ASSERT_EQ(as_set(split(p, y).blocks), as_set(p));
		std::vector<StateId> zy = z;
		for (StateId v : y)
			if (std::find(zy.begin(), zy.end(), v) == zy.end())
				zy.push_back(v);
		std::vector<StateId> z_minus_y;
		for (StateId v : zy)
			if (std::find(y.begin(), y.end(), v) == y.end())
				z_minus_y.push_back(v);
		EXPECT_EQ(as_set(split(p, zy).blocks), as_set(split(p, z_minus_y).blocks));
	}
}

TEST(RefineByOut, FullOnL3)
{
	Lts lts = l3();
	auto prp = refine_by_out(coarsest_pair(StateRelation::full(3)), lts);
	EXPECT_EQ(prp, coarsest_pair(out_preorder(lts)));
	EXPECT_EQ(named_blocks(prp, lts.states()), (NamedBlocks{{"p", "r"}, {"s"}}));
}

TEST(RefineByOut, IdentityIsUnchanged)
{
	Lts lts = l3();
	auto id = coarsest_pair(StateRelation::identity(3));
	EXPECT_EQ(refine_by_out(id, lts), id);
}

TEST(RefineByOut, FullOnL1)
{
	Lts lts = l1();
	auto prp = refine_by_out(coarsest_pair(StateRelation::full(3)), lts);
	EXPECT_EQ(named_blocks(prp, lts.states()), (NamedBlocks{{"p", "r"}, {"q"}}));
	using S = std::set<std::string>;
	std::set<std::pair<S, S>> rel{{{"p", "r"}, {"p", "r"}}, {{"q"}, {"q"}}};
	EXPECT_EQ(named_rel(prp, lts.states()), rel);
	auto both = out_preorder(lts);
	EXPECT_EQ(prp, coarsest_pair(both));
}

TEST(RefineByOut, EqualsCoarsestOfIntersectionOnRandomInputs)
{
	Rng rng(3);
	for (int i = 0; i < 300; ++i) {
		const std::size_t n = 1 + rng.below(7);
		Lts lts = random_lts({n, 1 + rng.below(4), 0.1 + 0.3 * rng.unit(), 1.0}, rng.below(1u << 30));
		auto init = random_preorder(n, rng.unit() * 0.6, rng);
		auto expected_rel = init;
		expected_rel &= out_preorder(lts);
		EXPECT_EQ(refine_by_out(coarsest_pair(init), lts), coarsest_pair(expected_rel));
	}
}

TEST(Coarsen, MergesBlocksWithIdenticalRowsAndColumns)
{
	// Blocks {0},{1} are mutually related and relate identically to {2}.
	auto rel = rel_from(3, {{0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 2}, {2, 0}, {2, 1}});
	PartitionRelationPair split_pair({{0}, {1}, {2}}, rel, 3);
	auto merged = coarsen(split_pair);
	EXPECT_EQ(merged.block_count(), 2u);
	EXPECT_EQ(induced_relation(merged), induced_relation(split_pair));
}

TEST(IsSimulation, Examples)
{
	Lts lts = l1();
	EXPECT_TRUE(is_simulation(lts, StateRelation(3)));
	EXPECT_TRUE(is_simulation(lts, StateRelation::identity(3)));
	auto pr = StateRelation::identity(3);
	pr.insert(0, 2);
	EXPECT_TRUE(is_simulation(lts, pr));
	auto qp = StateRelation::identity(3);
	qp.insert(1, 0);
	EXPECT_FALSE(is_simulation(lts, qp));
}

TEST(IsSimulation, AgreesWithOracleOutput)
{
	for (std::uint64_t seed = 0; seed < 40; ++seed) {
		Lts lts = random_lts({6, 2, 0.3, 1.0}, seed);
		auto sim = oracle::max_simulation_naive(lts, StateRelation::full(6)).relation;
		EXPECT_TRUE(is_simulation(lts, sim));
		EXPECT_TRUE(sim.is_subset_of(out_preorder(lts)));
	}
}

TEST(Quotient, IdentityPartitionIsIsomorphic)
{
	Lts lts = l1();
	auto q = quotient(lts, coarsest_pair(StateRelation::identity(3)));
	EXPECT_EQ(write_lts(q), write_lts(lts));
}

TEST(Quotient, L1MergingPR)
{
	Lts lts = l1();
	PartitionRelationPair prp({{0, 2}, {1}}, StateRelation::identity(2), 3);
	auto q = quotient(lts, prp);
	EXPECT_EQ(q.state_count(), 2u);
	EXPECT_EQ(write_lts(q), "#@states p q\np a q\nq b q\n");
}

TEST(Quotient, SingleBlock)
{
	Lts lts = l1();
	auto q = quotient(lts, coarsest_pair(StateRelation::full(3)));
	EXPECT_EQ(write_lts(q), "#@states p\np a p\np b p\n");
}

TEST(LtsText, ParseErrorsCarryLineNumbers)
{
	try {
		parse_lts("p a q\np a\n");
		FAIL();
	} catch (const ParseError& e) {
		EXPECT_EQ(e.line(), 2u);
		EXPECT_NE(std::string(e.what()).find("expected 3 tokens"), std::string::npos);
	}
	EXPECT_THROW(parse_lts("# only a comment\n"), ParseError);
	EXPECT_THROW(parse_lts("p a q(\n"), ParseError);
}

TEST(LtsText, WriteThenParseIsStable)
{
	for (std::uint64_t seed = 0; seed < 20; ++seed) {
		Lts lts = random_lts({6, 3, 0.2, 0.7}, seed);
		auto text = write_lts(lts);
		auto again = parse_lts(text);
		EXPECT_EQ(again.state_count(), lts.state_count());
		std::set<std::tuple<std::string, std::string, std::string>> a, b;
		for (auto [u, x, v] : lts.transitions())
			a.emplace(lts.state_name(u), lts.symbol_name(x), lts.state_name(v));
		for (auto [u, x, v] : again.transitions())
			b.emplace(again.state_name(u), again.symbol_name(x), again.state_name(v));
		EXPECT_EQ(a, b);
		EXPECT_EQ(write_lts(parse_lts(write_lts(again))), write_lts(again));
	}
}

TEST(RelationText, ParsePairsAndRejectUnknownNames)
{
	Lts lts = l1();
	auto r = parse_relation("p r\n# comment\nq q\n", lts.states());
	EXPECT_EQ(named(r, lts.states()), (NamedPairs{{"p", "r"}, {"q", "q"}}));
	EXPECT_THROW(parse_relation("p z\n", lts.states()), InputError);
	EXPECT_THROW(parse_relation("p q r\n", lts.states()), ParseError);
	EXPECT_EQ(write_pairs(r, lts.states()), "p r\nq q\n");
}
