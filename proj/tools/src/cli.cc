#include "cli.hh"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "simrel/engine.hh"
#include "simrel/error.hh"
#include "simrel/io.hh"
#include "simrel/model.hh"
#include "simrel/oracle.hh"
#include "simrel/random.hh"
#include "simrel/translation.hh"
#include "simrel/tree_automaton.hh"

namespace simrel::cli {

namespace {

struct Config {
	std::string input;
	std::string init_path;
	std::string down_path;
	std::string output_path;
	std::string metrics_path;
	bool closure = false;
	std::string algo = "olrt";
	std::string format = "pairs";
	std::string relation = "down";
	std::string kind = "lts";
	std::uint64_t seed = 0;

	RandomLtsParams lts;
	RandomTaParams ta;

	std::size_t bench_states = 1000;
	std::size_t bench_transitions = 4000;
	std::vector<std::size_t> bench_symbols{1, 4, 16, 64};
	double bench_sparsity = 0.25;
};

std::string read_file(const std::string& path)
{
	std::ifstream in(path, std::ios::binary);
	if (!in)
		throw InputError("cannot read " + path);
	std::ostringstream s;
	s << in.rdbuf();
	return s.str();
}

/// Writes to the -o file if one was given, else to `out`.
void emit(const Config& cfg, std::ostream& out, const std::string& text)
{
	if (cfg.output_path.empty()) {
		out << text;
		return;
	}
	std::ofstream f(cfg.output_path, std::ios::binary);
	if (!f)
		throw InputError("cannot write " + cfg.output_path);
	f << text;
}

struct RunInfo {
	std::string algo;
	std::size_t states = 0;
	std::size_t symbols = 0;
	std::size_t transitions = 0;
	std::size_t final_blocks = 0;
	std::optional<SimMetrics> metrics;
	std::size_t oracle_rounds = 0;
};

void write_metrics(const Config& cfg, const RunInfo& info)
{
	if (cfg.metrics_path.empty())
		return;
	std::ofstream f(cfg.metrics_path, std::ios::app);
	if (!f)
		throw InputError("cannot write " + cfg.metrics_path);
	f << "algorithm=" << info.algo << '\n'
	  << "states=" << info.states << '\n'
	  << "symbols=" << info.symbols << '\n'
	  << "transitions=" << info.transitions << '\n'
	  << "final_blocks=" << info.final_blocks << '\n';
	if (info.metrics) {
		const auto& m = *info.metrics;
		f << "counters_allocated=" << m.counters_allocated << '\n'
		  << "remove_enqueued=" << m.remove_enqueued << '\n'
		  << "iterations=" << m.iterations << '\n'
		  << "splits=" << m.splits << '\n'
		  << "skipped_iterations=" << m.skipped_iterations << '\n'
		  << "pruned_pairs=" << m.pruned_pairs << '\n'
		  << "time_ms=" << m.wall_time_ms << '\n';
	} else {
		f << "oracle_rounds=" << info.oracle_rounds << '\n';
	}
}

EngineOptions engine_options(const std::string& algo)
{
	return algo == "lrt" ? EngineOptions::lrt() : EngineOptions::olrt();
}

std::string render(const Config& cfg, const StateRelation& rel, const NameTable& names)
{
	if (cfg.format == "blocks")
		return write_blocks(coarsest_pair(rel), names);
	return write_pairs(rel, names);
}

/// Maximal simulation of an LTS inside `init`, by the selected algorithm.
StateRelation simulate_lts(const Config& cfg, const Lts& lts, const StateRelation& init, RunInfo& info)
{
	info.algo = cfg.algo;
	info.states = lts.state_count();
	info.symbols = lts.symbol_count();
	info.transitions = lts.transition_count();
	if (cfg.algo == "oracle") {
		auto r = oracle::max_simulation_naive(lts, init);
		info.oracle_rounds = r.rounds;
		info.final_blocks = coarsest_pair(r.relation).block_count();
		return r.relation;
	}
	auto r = run_engine(lts, coarsest_pair(init), engine_options(cfg.algo));
	info.metrics = r.metrics;
	info.final_blocks = r.pair.block_count();
	return induced_relation(r.pair);
}

StateRelation initial_relation(const Config& cfg, const Lts& lts)
{
	if (cfg.init_path.empty())
		return StateRelation::full(lts.state_count());
	auto rel = parse_relation(read_file(cfg.init_path), lts.states());
	if (cfg.closure)
		rel.close_reflexive_transitive();
	if (auto bad = rel.preorder_violation())
		throw InputError("initial relation is not a preorder: missing pair (" + lts.state_name(bad->first) + ", "
		                 + lts.state_name(bad->second) + ")");
	return rel;
}

StateRelation downward(const Config& cfg, const TreeAutomaton& ta, RunInfo& info)
{
	info.algo = cfg.algo;
	info.states = ta.state_count();
	info.symbols = ta.symbol_count();
	info.transitions = ta.rules().size();
	if (cfg.algo == "oracle") {
		auto d = oracle::downward_naive(ta);
		info.final_blocks = coarsest_pair(d).block_count();
		return d;
	}
	auto r = downward_simulation(ta, engine_options(cfg.algo));
	info.metrics = r.metrics;
	info.final_blocks = coarsest_pair(r.relation).block_count();
	return r.relation;
}

StateRelation upward(const Config& cfg, const TreeAutomaton& ta, const StateRelation& d, RunInfo& info)
{
	info.algo = cfg.algo;
	info.states = ta.state_count();
	info.symbols = ta.symbol_count();
	info.transitions = ta.rules().size();
	if (cfg.algo == "oracle") {
		auto u = oracle::upward_naive(ta, d);
		info.final_blocks = coarsest_pair(u).block_count();
		return u;
	}
	auto r = upward_simulation(ta, d, engine_options(cfg.algo));
	info.metrics = r.metrics;
	info.final_blocks = coarsest_pair(r.relation).block_count();
	return r.relation;
}

StateRelation supplied_or_computed_down(const Config& cfg, const TreeAutomaton& ta)
{
	if (cfg.down_path.empty()) {
		RunInfo ignored;
		return downward(cfg, ta, ignored);
	}
	auto d = parse_relation(read_file(cfg.down_path), ta.states());
	if (!d.is_reflexive())
		throw InputError("supplied downward relation is not reflexive");
	if (!oracle::is_downward_simulation(ta, d))
		throw InputError("supplied relation is not a downward simulation");
	return d;
}

int cmd_sim_lts(const Config& cfg, std::ostream& out)
{
	Lts lts = parse_lts(read_file(cfg.input));
	RunInfo info;
	auto sim = simulate_lts(cfg, lts, initial_relation(cfg, lts), info);
	emit(cfg, out, render(cfg, sim, lts.states()));
	write_metrics(cfg, info);
	return ok;
}

int cmd_ta_down(const Config& cfg, std::ostream& out)
{
	auto ta = parse_timbuk(read_file(cfg.input));
	RunInfo info;
	auto d = downward(cfg, ta, info);
	emit(cfg, out, render(cfg, d, ta.states()));
	write_metrics(cfg, info);
	return ok;
}

int cmd_ta_up(const Config& cfg, std::ostream& out)
{
	auto ta = parse_timbuk(read_file(cfg.input));
	auto d = supplied_or_computed_down(cfg, ta);
	RunInfo info;
	auto u = upward(cfg, ta, d, info);
	emit(cfg, out, render(cfg, u, ta.states()));
	write_metrics(cfg, info);
	return ok;
}

int cmd_minimize(const Config& cfg, std::ostream& out, std::ostream& err)
{
	const std::string text = read_file(cfg.input);
	std::string reduced;
	std::size_t before = 0, after = 0;
	RunInfo info;
	if (looks_like_timbuk(text)) {
		auto ta = parse_timbuk(text);
		auto d = downward(cfg, ta, info);
		auto rel = cfg.relation == "up" ? upward(cfg, ta, d, info) : d;
		auto prp = coarsest_pair(rel);
		auto q = ta_quotient(ta, prp.blocks());
		before = ta.state_count();
		after = q.state_count();
		reduced = serialize_timbuk(q);
	} else {
		Lts lts = parse_lts(text);
		auto sim = simulate_lts(cfg, lts, initial_relation(cfg, lts), info);
		auto q = quotient(lts, coarsest_pair(sim));
		before = lts.state_count();
		after = q.state_count();
		reduced = write_lts(q);
	}
	emit(cfg, out, reduced);
	// Keep the structure pipe-clean when it goes to stdout.
	(cfg.output_path.empty() ? err : out) << before << ' ' << after << '\n';
	write_metrics(cfg, info);
	return ok;
}

int cmd_gen(const Config& cfg, std::ostream& out)
{
	if (cfg.kind == "ta")
		emit(cfg, out, serialize_timbuk(random_ta(cfg.ta, cfg.seed)));
	else
		emit(cfg, out, write_lts(random_lts(cfg.lts, cfg.seed)));
	return ok;
}

int cmd_bench(const Config& cfg, std::ostream& out)
{
	if (cfg.bench_states == 0)
		throw ParameterError("state count must be positive");
	std::ostringstream csv;
	csv << "instance,states,symbols,transitions,algorithm,time_ms,counters_allocated,remove_enqueued,iterations,final_blocks\n";
	for (std::size_t i = 0; i < cfg.bench_symbols.size(); ++i) {
		const std::size_t sigma = cfg.bench_symbols[i];
		if (sigma == 0)
			throw ParameterError("symbol count must be positive");
		RandomLtsParams p;
		p.states = cfg.bench_states;
		p.symbols = sigma;
		p.sparsity = cfg.bench_sparsity;
		// Aim at the requested expected number of transitions.
		const auto per_state = std::max<double>(1.0, std::round(cfg.bench_sparsity * static_cast<double>(sigma)));
		const auto n = static_cast<double>(cfg.bench_states);
		p.edge_probability = std::min(1.0, static_cast<double>(cfg.bench_transitions) / (n * n * per_state));
		Lts lts = random_lts(p, cfg.seed + i);
		auto start = coarsest_pair(StateRelation::full(lts.state_count()));
		for (const char* algo : {"lrt", "olrt"}) {
			auto r = run_engine(lts, start, engine_options(algo));
			csv << i << ',' << lts.state_count() << ',' << lts.symbol_count() << ',' << lts.transition_count() << ','
			    << algo << ',' << r.metrics.wall_time_ms << ',' << r.metrics.counters_allocated << ','
			    << r.metrics.remove_enqueued << ',' << r.metrics.iterations << ',' << r.pair.block_count() << '\n';
		}
	}
	emit(cfg, out, csv.str());
	return ok;
}

void add_algo_flags(CLI::App* sub, Config& cfg)
{
	sub->add_option("--algo", cfg.algo, "olrt, lrt or oracle")->check(CLI::IsMember({"olrt", "lrt", "oracle"}));
	sub->add_option("--format", cfg.format, "pairs or blocks")->check(CLI::IsMember({"pairs", "blocks"}));
	sub->add_option("--metrics", cfg.metrics_path, "append key=value metrics to this file");
	sub->add_option("-o,--output", cfg.output_path, "write the result here instead of stdout");
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
	Config cfg;
	CLI::App app{"Maximal simulation preorders on labelled transition systems and tree automata", "simrel"};
	app.require_subcommand(1, 1);

	auto* sim = app.add_subcommand("sim-lts", "maximal simulation of an LTS");
	sim->add_option("input", cfg.input, "LTS file")->required();
	sim->add_option("--init", cfg.init_path, "initial preorder as 'U V' lines (default: all pairs)");
	sim->add_flag("--closure", cfg.closure, "close the initial relation reflexively and transitively");
	add_algo_flags(sim, cfg);

	auto* down = app.add_subcommand("ta-down", "maximal downward simulation of a tree automaton");
	down->add_option("input", cfg.input, "Timbuk file")->required();
	add_algo_flags(down, cfg);

	auto* up = app.add_subcommand("ta-up", "maximal upward simulation of a tree automaton");
	up->add_option("input", cfg.input, "Timbuk file")->required();
	up->add_option("--down", cfg.down_path, "downward simulation as 'U V' lines (default: computed)");
	add_algo_flags(up, cfg);

	auto* min = app.add_subcommand("minimize", "quotient an LTS or tree automaton by simulation equivalence");
	min->add_option("input", cfg.input, "LTS or Timbuk file")->required();
	min->add_option("--init", cfg.init_path, "initial preorder for LTS input");
	min->add_flag("--closure", cfg.closure, "close the initial relation reflexively and transitively");
	min->add_option("--relation", cfg.relation, "down or up, for tree automata")->check(CLI::IsMember({"down", "up"}));
	add_algo_flags(min, cfg);

	auto* gen = app.add_subcommand("gen", "generate a random LTS or tree automaton");
	gen->add_option("kind", cfg.kind, "lts or ta")->check(CLI::IsMember({"lts", "ta"}));
	gen->add_option("--seed", cfg.seed, "random seed");
	gen->add_option("--states", cfg.lts.states, "number of states");
	gen->add_option("--symbols", cfg.lts.symbols, "number of symbols");
	gen->add_option("--prob", cfg.lts.edge_probability, "LTS edge probability");
	gen->add_option("--sparsity", cfg.lts.sparsity, "fraction of the alphabet each LTS state may use");
	gen->add_option("--max-rank", cfg.ta.max_rank, "largest symbol rank (TA)");
	gen->add_option("--rules", cfg.ta.rules, "number of rule draws (TA)");
	gen->add_option("--final-prob", cfg.ta.final_probability, "probability of a final state (TA)");
	gen->add_option("-o,--output", cfg.output_path, "output file");

	auto* bench = app.add_subcommand("bench", "compare lrt and olrt on random LTSs; CSV output");
	bench->add_option("--seed", cfg.seed, "random seed");
	bench->add_option("--states", cfg.bench_states, "states per instance");
	bench->add_option("--transitions", cfg.bench_transitions, "expected transitions per instance");
	bench->add_option("--symbols", cfg.bench_symbols, "alphabet sizes to sweep")->delimiter(',');
	bench->add_option("--sparsity", cfg.bench_sparsity, "fraction of the alphabet each state may use");
	bench->add_option("-o,--output", cfg.output_path, "output file");

	try {
		std::vector<std::string> reversed(args.rbegin(), args.rend());
		app.parse(reversed);
	} catch (const CLI::CallForHelp&) {
		out << app.help();
		return ok;
	} catch (const CLI::CallForAllHelp&) {
		out << app.help("", CLI::AppFormatMode::All);
		return ok;
	} catch (const CLI::ParseError& e) {
		err << "simrel: " << e.what() << '\n';
		return bad_parameters;
	}

	// The generators share --states/--symbols between both kinds.
	cfg.ta.states = cfg.lts.states;
	cfg.ta.symbols = cfg.lts.symbols;
	if (gen->count("--states") == 0)
		cfg.ta.states = RandomTaParams{}.states;
	if (gen->count("--symbols") == 0)
		cfg.ta.symbols = RandomTaParams{}.symbols;

	try {
		if (*sim)
			return cmd_sim_lts(cfg, out);
		if (*down)
			return cmd_ta_down(cfg, out);
		if (*up)
			return cmd_ta_up(cfg, out);
		if (*min)
			return cmd_minimize(cfg, out, err);
		if (*gen)
			return cmd_gen(cfg, out);
		return cmd_bench(cfg, out);
	} catch (const ParseError& e) {
		err << "simrel: " << e.what() << '\n';
		return parse_error;
	} catch (const InputError& e) {
		err << "simrel: " << e.what() << '\n';
		return input_error;
	} catch (const ParameterError& e) {
		err << "simrel: " << e.what() << '\n';
		return bad_parameters;
	}
}

} // namespace simrel::cli
