#include <gtest/gtest.h>

#include <set>
#include <tuple>

#include "simrel/engine.hh"
#include "simrel/error.hh"
#include "simrel/model.hh"
#include "simrel/oracle.hh"
#include "simrel/translation.hh"
#include "simrel/tree_automaton.hh"
#include "instances.hh"
#include "support.hh"

using namespace simrel;
using namespace simrel::test;

namespace {

using NamedEdges = std::set<std::tuple<std::string, std::string, std::string>>;

NamedEdges edges(const Lts& lts)
{
	NamedEdges out;
	for (auto [u, a, v] : lts.transitions())
		out.emplace(lts.state_name(u), lts.symbol_name(a), lts.state_name(v));
	return out;
}

std::set<std::string> state_set(const Lts& lts)
{
	return {lts.states().names().begin(), lts.states().names().end()};
}

} // namespace

TEST(Timbuk, ParseT1)
{
	auto ta = t1();
	EXPECT_EQ(ta.name, "T1");
	EXPECT_EQ(ta.state_count(), 2u);
	EXPECT_EQ(ta.symbol_count(), 2u);
	EXPECT_EQ(ta.rules().size(), 3u);
	EXPECT_FALSE(ta.is_final(0));
	EXPECT_TRUE(ta.is_final(1));
	EXPECT_EQ(ta.max_rank(), 1u);
	EXPECT_EQ(ta.rank(*ta.symbols().find("a")), 0u);
}

TEST(Timbuk, NullaryWithoutParentheses)
{
	auto x = parse_timbuk("Ops a:0\nAutomaton X\nStates q\nFinal States q\nTransitions\na -> q\n");
	auto y = parse_timbuk("Ops a:0\nAutomaton X\nStates q\nFinal States q\nTransitions\na() -> q\n");
	EXPECT_EQ(serialize_timbuk(x), serialize_timbuk(y));
	EXPECT_EQ(x.rules().size(), 1u);
}

TEST(Timbuk, CommentsAndWhitespace)
{
	auto ta = parse_timbuk("# header\nOps a:0   g:1\nAutomaton T1\nStates q0 q1   # trailing\n"
	                       "Final States q1\nTransitions\n  a()->q0\ng( q0 ) ->   q1\ng(q1)->q1\n");
	EXPECT_EQ(serialize_timbuk(ta), serialize_timbuk(t1()));
}

TEST(Timbuk, Errors)
{
	try {
		parse_timbuk("Ops g:1\nAutomaton X\nStates q0 q1 q2\nFinal States\nTransitions\ng(q0,q1) -> q2\n");
		FAIL();
	} catch (const ParseError& e) {
		EXPECT_STREQ(e.what(), "arity mismatch at line 6");
	}
	EXPECT_THROW(parse_timbuk("Ops a:0\nAutomaton X\nStates q\nFinal States\nTransitions\na -> r\n"), ParseError);
	EXPECT_THROW(parse_timbuk("Ops a:0\nAutomaton X\nStates q\nFinal States\nTransitions\nb -> q\n"), ParseError);
	EXPECT_THROW(parse_timbuk("Ops a:0\nAutomaton X\nStates q\n"), ParseError);
	EXPECT_THROW(parse_timbuk("Automaton X\nStates q\nTransitions\n"), ParseError);
}

TEST(Timbuk, SerializeIsCanonical)
{
	for (const auto& ta : small_ta_family(60)) {
		auto once = serialize_timbuk(ta);
		auto back = parse_timbuk(once);
		EXPECT_EQ(serialize_timbuk(back), once);
		EXPECT_EQ(back.rules().size(), ta.rules().size());
		EXPECT_EQ(back.final_count(), ta.final_count());
	}
}

TEST(TreeAutomaton, RuleValidation)
{
	TreeAutomaton ta;
	auto q = ta.add_state("q");
	auto g = ta.add_symbol("g", 1);
	EXPECT_THROW(ta.add_rule({}, g, q), InputError);
	EXPECT_THROW(ta.add_rule({q}, g, 7), InputError);
	EXPECT_THROW(ta.add_symbol("g", 2), InputError);
	ta.add_rule({q}, g, q);
	ta.add_rule({q}, g, q);
	EXPECT_EQ(ta.rules().size(), 1u);
}

TEST(LhsAndEnvs, T1)
{
	auto ta = t1();
	auto le = lhs_and_envs(ta);
	EXPECT_EQ(le.lhs, (std::vector<Lhs>{{}, {0}, {1}}));
	ASSERT_EQ(le.envs.size(), 1u);
	EXPECT_EQ(le.envs[0].symbol, *ta.symbols().find("g"));
	EXPECT_EQ(le.envs[0].hole, 0u);
	EXPECT_EQ(le.envs[0].target, 1u);
}

TEST(LhsAndEnvs, NullaryOnly)
{
	auto ta = parse_timbuk("Ops a:0 b:0\nAutomaton X\nStates q r\nFinal States\nTransitions\na -> q\nb -> r\n");
	auto le = lhs_and_envs(ta);
	EXPECT_EQ(le.lhs, (std::vector<Lhs>{{}}));
	EXPECT_TRUE(le.envs.empty());
}

TEST(LhsAndEnvs, BinaryRuleGivesTwoEnvironments)
{
	auto ta = parse_timbuk("Ops f:2\nAutomaton X\nStates q0 q1 q2\nFinal States\nTransitions\nf(q0,q1) -> q2\n");
	auto le = lhs_and_envs(ta);
	ASSERT_EQ(le.envs.size(), 2u);
	const auto h = Environment::hole_marker;
	std::set<std::vector<StateId>> contexts{le.envs[0].context, le.envs[1].context};
	EXPECT_EQ(contexts, (std::set<std::vector<StateId>>{{h, 1}, {0, h}}));
}

TEST(DownwardTranslation, T1)
{
	auto ta = t1();
	auto tr = downward_translation(ta);
	EXPECT_EQ(state_set(tr.lts), (std::set<std::string>{"q0", "q1", "()", "(q0)", "(q1)"}));
	EXPECT_EQ(edges(tr.lts), (NamedEdges{{"q0", "a", "()"},
	                                     {"q1", "g", "(q0)"},
	                                     {"q1", "g", "(q1)"},
	                                     {"(q0)", "#1", "q0"},
	                                     {"(q1)", "#1", "q1"}}));
	EXPECT_EQ(tr.initial_relation, StateRelation::full(5));
	EXPECT_EQ(tr.initial, generic_initial(tr));
	ASSERT_EQ(tr.origin.size(), 5u);
	EXPECT_EQ(tr.origin[0].kind, Origin::Kind::state);
	EXPECT_EQ(tr.origin[2].kind, Origin::Kind::lhs);
}

TEST(DownwardTranslation, SingleNullaryRule)
{
	auto ta = parse_timbuk("Ops a:0\nAutomaton X\nStates q\nFinal States\nTransitions\na -> q\n");
	auto tr = downward_translation(ta);
	EXPECT_EQ(tr.lts.state_count(), 2u);
	EXPECT_EQ(edges(tr.lts), (NamedEdges{{"q", "a", "()"}}));
}

TEST(UpwardTranslation, T1)
{
	auto ta = t1();
	auto tr = upward_translation(ta, StateRelation::identity(2));
	ASSERT_EQ(tr.lts.state_count(), 3u);
	const std::string env = tr.lts.state_name(2);
	EXPECT_EQ(edges(tr.lts), (NamedEdges{{"q0", "#1", env}, {"q1", "#1", env}, {env, "g", "q1"}}));
	NamedPairs expected{{"q0", "q0"}, {"q0", "q1"}, {"q1", "q1"}, {env, env}};
	EXPECT_EQ(named(tr.initial_relation, tr.lts.states()), expected);
	EXPECT_EQ(tr.initial, generic_initial(tr));
}

TEST(UpwardTranslation, DistinctSymbolsAreNotOutRelated)
{
	auto ta = parse_timbuk("Ops f:1 g:1\nAutomaton X\nStates q0 q\nFinal States\nTransitions\nf(q0) -> q\ng(q0) -> q\n");
	auto tr = upward_translation(ta, StateRelation::identity(2));
	auto out = upward_out(ta, tr);
	ASSERT_EQ(tr.envs.size(), 2u);
	EXPECT_FALSE(out.contains(2, 3));
	EXPECT_FALSE(out.contains(3, 2));
}

TEST(UpwardTranslation, RejectsBadInducingRelation)
{
	auto ta = t1();
	EXPECT_THROW(upward_translation(ta, StateRelation(2)), InputError);
	EXPECT_THROW(upward_translation(ta, StateRelation::identity(3)), InputError);
}

TEST(SpecializedOut, MatchesGenericOutPreorder)
{
	for (const auto& ta : small_ta_family()) {
		auto down = downward_translation(ta);
		EXPECT_EQ(downward_out(ta, down), out_preorder(down.lts));
		auto up = upward_translation(ta, oracle::downward_naive(ta));
		EXPECT_EQ(upward_out(ta, up), out_preorder(up.lts));
	}
}

TEST(SpecializedOut, InitialPairEqualsGeneric)
{
	for (const auto& ta : small_ta_family()) {
		auto down = downward_translation(ta);
		EXPECT_EQ(down.initial, generic_initial(down));
		auto up = upward_translation(ta, downward_simulation(ta).relation);
		EXPECT_EQ(up.initial, generic_initial(up));
	}
}

TEST(TranslationStructure, OutSymbolsByKind)
{
	for (const auto& ta : small_ta_family(80)) {
		auto down = downward_translation(ta);
		auto sets = in_out_sets(down.lts);
		EXPECT_EQ(down.lts.state_count(), ta.state_count() + down.lhs.size());
		for (std::size_t i = 0; i < down.lhs.size(); ++i) {
			const auto& outs = sets.out_syms[ta.state_count() + i];
			ASSERT_EQ(outs.size(), down.lhs[i].size());
			for (std::size_t k = 0; k < outs.size(); ++k)
				EXPECT_EQ(down.lts.symbol_name(outs[k]), "#" + std::to_string(k + 1));
		}
		auto up = upward_translation(ta, StateRelation::identity(ta.state_count()));
		auto usets = in_out_sets(up.lts);
		for (std::size_t i = 0; i < up.envs.size(); ++i) {
			const auto& outs = usets.out_syms[ta.state_count() + i];
			ASSERT_EQ(outs.size(), 1u);
			EXPECT_EQ(up.lts.symbol_name(outs[0]), ta.symbol_name(up.envs[i].symbol));
		}
	}
}

TEST(TaSimulation, T1)
{
	auto ta = t1();
	auto d = downward_simulation(ta);
	EXPECT_EQ(named(d.relation, ta.states()), (NamedPairs{{"q0", "q0"}, {"q1", "q1"}}));
	auto u = upward_simulation(ta, d.relation);
	EXPECT_EQ(named(u.relation, ta.states()), (NamedPairs{{"q0", "q0"}, {"q0", "q1"}, {"q1", "q1"}}));
}

TEST(TaSimulation, VacuousCases)
{
	TreeAutomaton empty;
	empty.add_state("x");
	empty.add_state("y");
	EXPECT_EQ(downward_simulation(empty).relation, StateRelation::full(2));
	EXPECT_EQ(upward_simulation(empty, StateRelation::identity(2)).relation, StateRelation::full(2));
}

TEST(TaSimulation, MatchesOraclesOnRandomAutomata)
{
	for (const auto& ta : small_ta_family()) {
		auto d = oracle::downward_naive(ta);
		for (auto opts : {EngineOptions::olrt(), EngineOptions::lrt()}) {
			auto down = downward_simulation(ta, opts);
			ASSERT_EQ(down.relation, d) << serialize_timbuk(ta);
			auto up = upward_simulation(ta, down.relation, opts);
			ASSERT_EQ(up.relation, oracle::upward_naive(ta, d)) << serialize_timbuk(ta);
		}
		// Any reflexive d works as inducing relation.
		auto id = StateRelation::identity(ta.state_count());
		EXPECT_EQ(upward_simulation(ta, id).relation, oracle::upward_naive(ta, id));
	}
}

TEST(TaSimulation, LhsExtensionCorrespondence)
{
	for (const auto& ta : small_ta_family(120)) {
		auto tr = downward_translation(ta);
		auto full = oracle::max_simulation_naive(tr.lts, StateRelation::full(tr.lts.state_count())).relation;
		auto d = oracle::downward_naive(ta);
		const auto nq = static_cast<StateId>(ta.state_count());
		for (std::size_t i = 0; i < tr.lhs.size(); ++i)
			for (std::size_t j = 0; j < tr.lhs.size(); ++j) {
				const auto& x = tr.lhs[i];
				const auto& y = tr.lhs[j];
				if (x.size() != y.size())
					continue;
				bool ext = true;
				for (std::size_t k = 0; k < x.size(); ++k)
					ext = ext && d.contains(x[k], y[k]);
				EXPECT_EQ(full.contains(nq + static_cast<StateId>(i), nq + static_cast<StateId>(j)), ext);
			}
	}
}

TEST(TaQuotient, Examples)
{
	auto ta = t1();
	std::vector<std::vector<StateId>> id{{0}, {1}};
	EXPECT_EQ(serialize_timbuk(ta_quotient(ta, id)), serialize_timbuk(ta));
	std::vector<std::vector<StateId>> one{{0, 1}};
	auto q = ta_quotient(ta, one);
	EXPECT_EQ(q.state_count(), 1u);
	EXPECT_EQ(q.rules().size(), 2u);
	EXPECT_EQ(q.final_count(), 1u);
	EXPECT_EQ(q.state_name(0), "q0");
}
