#include "simrel/tree_automaton.hh"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>

#include "simrel/error.hh"

namespace simrel {

SymbolId TreeAutomaton::add_symbol(std::string_view name, std::uint32_t rank)
{
	if (auto id = symbols_.find(name)) {
		if (ranks_[*id] != rank)
			throw InputError("symbol " + std::string(name) + " redeclared with rank " + std::to_string(rank));
		return *id;
	}
	SymbolId id = symbols_.intern(name);
	ranks_.push_back(rank);
	return id;
}

void TreeAutomaton::add_rule(std::vector<StateId> lhs, SymbolId symbol, StateId target)
{
	if (symbol >= symbols_.size())
		throw InputError("rule uses an undeclared symbol");
	if (lhs.size() != ranks_[symbol])
		throw InputError("arity mismatch for symbol " + symbols_.name(symbol));
	for (StateId q : lhs)
		if (q >= states_.size())
			throw InputError("rule uses an undeclared state");
	if (target >= states_.size())
		throw InputError("rule uses an undeclared state");
	Rule r{std::move(lhs), symbol, target};
	auto it = std::lower_bound(rules_.begin(), rules_.end(), r);
	if (it == rules_.end() || *it != r)
		rules_.insert(it, std::move(r));
}

void TreeAutomaton::set_final(StateId q, bool final)
{
	if (q >= states_.size())
		throw InputError("final state is undeclared");
	finals_.resize(states_.size(), 0);
	finals_[q] = final ? 1 : 0;
}

std::size_t TreeAutomaton::final_count() const
{
	return static_cast<std::size_t>(std::count(finals_.begin(), finals_.end(), 1));
}

std::uint32_t TreeAutomaton::max_rank() const
{
	std::uint32_t m = 0;
	for (const Rule& r : rules_)
		m = std::max(m, static_cast<std::uint32_t>(r.lhs.size()));
	return m;
}

Environment environment_of(const Rule& rule, std::uint32_t hole)
{
	Environment e{rule.symbol, hole, rule.lhs, rule.target};
	e.context.at(hole) = Environment::hole_marker;
	return e;
}

LhsAndEnvs lhs_and_envs(const TreeAutomaton& ta)
{
	LhsAndEnvs out;
	for (const Rule& r : ta.rules()) {
		out.lhs.push_back(r.lhs);
		for (std::uint32_t i = 0; i < r.lhs.size(); ++i)
			out.envs.push_back(environment_of(r, i));
	}
	std::sort(out.lhs.begin(), out.lhs.end());
	out.lhs.erase(std::unique(out.lhs.begin(), out.lhs.end()), out.lhs.end());
	std::sort(out.envs.begin(), out.envs.end());
	out.envs.erase(std::unique(out.envs.begin(), out.envs.end()), out.envs.end());
	return out;
}

namespace {

bool is_ident_char(char c)
{
	return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-';
}

std::vector<std::string> split_ws(std::string_view line)
{
	std::vector<std::string> out;
	std::istringstream in{std::string(line)};
	std::string tok;
	while (in >> tok)
		out.push_back(tok);
	return out;
}

std::string strip(std::string_view s)
{
	auto b = s.find_first_not_of(" \t\r");
	if (b == std::string_view::npos)
		return {};
	auto e = s.find_last_not_of(" \t\r");
	return std::string(s.substr(b, e - b + 1));
}

// Drops a trailing ":N" annotation on state names.
std::string state_token(const std::string& tok)
{
	auto colon = tok.find(':');
	return colon == std::string::npos ? tok : tok.substr(0, colon);
}

void check_ident(const std::string& s, std::size_t line)
{
	if (s.empty() || !std::all_of(s.begin(), s.end(), is_ident_char))
		throw ParseError("invalid identifier '" + s + "'", line);
}

enum class Section { header, ops, states, finals, transitions };

} // namespace

TreeAutomaton parse_timbuk(std::string_view text)
{
	TreeAutomaton ta;
	bool seen_ops = false, seen_states = false, seen_transitions = false;
	Section section = Section::header;
	std::size_t line_no = 0;
	std::istringstream in{std::string(text)};
	std::string raw;
	while (std::getline(in, raw)) {
		++line_no;
		if (auto hash = raw.find('#'); hash != std::string::npos)
			raw.erase(hash);
		std::string line = strip(raw);
		if (line.empty())
			continue;
		auto toks = split_ws(line);

		if (toks[0] == "Ops") {
			seen_ops = true;
			section = Section::ops;
			toks.erase(toks.begin());
		} else if (toks[0] == "Automaton") {
			if (toks.size() != 2)
				throw ParseError("expected 'Automaton NAME'", line_no);
			ta.name = toks[1];
			section = Section::header;
			continue;
		} else if (toks[0] == "States") {
			if (!seen_ops)
				throw ParseError("missing Ops section", line_no);
			seen_states = true;
			section = Section::states;
			toks.erase(toks.begin());
		} else if (toks[0] == "Final") {
			if (toks.size() < 2 || toks[1] != "States")
				throw ParseError("expected 'Final States'", line_no);
			if (!seen_states)
				throw ParseError("missing States section", line_no);
			section = Section::finals;
			toks.erase(toks.begin(), toks.begin() + 2);
		} else if (toks[0] == "Transitions") {
			if (!seen_states)
				throw ParseError("missing States section", line_no);
			seen_transitions = true;
			section = Section::transitions;
			if (toks.size() != 1)
				throw ParseError("unexpected text after 'Transitions'", line_no);
			continue;
		}

		switch (section) {
		case Section::header:
			throw ParseError("unexpected text outside of a section", line_no);
		case Section::ops:
			for (const auto& t : toks) {
				auto colon = t.find(':');
				if (colon == std::string::npos)
					throw ParseError("expected 'name:rank' in Ops", line_no);
				std::string name = t.substr(0, colon);
				check_ident(name, line_no);
				std::uint32_t rank = 0;
				try {
					std::size_t used = 0;
					rank = static_cast<std::uint32_t>(std::stoul(t.substr(colon + 1), &used));
					if (used != t.size() - colon - 1)
						throw std::invalid_argument("rank");
				} catch (const std::exception&) {
					throw ParseError("invalid rank in '" + t + "'", line_no);
				}
				try {
					ta.add_symbol(name, rank);
				} catch (const InputError& e) {
					throw ParseError(e.what(), line_no);
				}
			}
			break;
		case Section::states:
			for (const auto& t : toks) {
				auto name = state_token(t);
				check_ident(name, line_no);
				ta.add_state(name);
			}
			break;
		case Section::finals:
			for (const auto& t : toks) {
				auto q = ta.states().find(state_token(t));
				if (!q)
					throw ParseError("undeclared state '" + t + "'", line_no);
				ta.set_final(*q);
			}
			break;
		case Section::transitions: {
			auto arrow = line.find("->");
			if (arrow == std::string::npos)
				throw ParseError("expected 'f(q1,...,qn) -> q'", line_no);
			std::string head = strip(line.substr(0, arrow));
			std::string target = strip(line.substr(arrow + 2));
			std::string sym = head;
			std::vector<std::string> args;
			if (auto open = head.find('('); open != std::string::npos) {
				if (head.back() != ')')
					throw ParseError("unbalanced parentheses", line_no);
				sym = strip(head.substr(0, open));
				std::string inner = head.substr(open + 1, head.size() - open - 2);
				if (!strip(inner).empty()) {
					std::istringstream parts(inner);
					std::string part;
					while (std::getline(parts, part, ','))
						args.push_back(strip(part));
				}
			}
			check_ident(sym, line_no);
			auto f = ta.symbols().find(sym);
			if (!f)
				throw ParseError("undeclared symbol '" + sym + "'", line_no);
			if (args.size() != ta.rank(*f))
				throw ParseError("arity mismatch", line_no);
			std::vector<StateId> lhs;
			for (const auto& a : args) {
				auto q = ta.states().find(a);
				if (!q)
					throw ParseError("undeclared state '" + a + "'", line_no);
				lhs.push_back(*q);
			}
			auto q = ta.states().find(target);
			if (!q)
				throw ParseError("undeclared state '" + target + "'", line_no);
			ta.add_rule(std::move(lhs), *f, *q);
			break;
		}
		}
	}
	if (!seen_ops)
		throw ParseError("missing Ops section", line_no);
	if (!seen_states)
		throw ParseError("missing States section", line_no);
	if (!seen_transitions)
		throw ParseError("missing Transitions section", line_no);
	return ta;
}

std::string serialize_timbuk(const TreeAutomaton& ta)
{
	auto sorted_ids = [](const NameTable& t) {
		std::vector<std::uint32_t> ids(t.size());
		for (std::uint32_t i = 0; i < ids.size(); ++i)
			ids[i] = i;
		std::sort(ids.begin(), ids.end(), [&](auto x, auto y) { return t.name(x) < t.name(y); });
		return ids;
	};
	std::ostringstream out;
	out << "Ops";
	for (SymbolId f : sorted_ids(ta.symbols()))
		out << ' ' << ta.symbol_name(f) << ':' << ta.rank(f);
	out << "\n\nAutomaton " << ta.name << "\nStates";
	const auto states = sorted_ids(ta.states());
	for (StateId q : states)
		out << ' ' << ta.state_name(q);
	out << "\nFinal States";
	for (StateId q : states)
		if (ta.is_final(q))
			out << ' ' << ta.state_name(q);
	out << "\nTransitions\n";
	std::vector<std::string> lines;
	for (const Rule& r : ta.rules()) {
		std::string s = ta.symbol_name(r.symbol) + "(";
		for (std::size_t i = 0; i < r.lhs.size(); ++i)
			s += (i ? "," : "") + ta.state_name(r.lhs[i]);
		s += ") -> " + ta.state_name(r.target);
		lines.push_back(std::move(s));
	}
	std::sort(lines.begin(), lines.end());
	for (const auto& l : lines)
		out << l << '\n';
	return out.str();
}

TreeAutomaton ta_quotient(const TreeAutomaton& ta, std::span<const std::vector<StateId>> blocks)
{
	constexpr StateId unassigned = ~StateId{0};
	std::vector<StateId> block_of(ta.state_count(), unassigned);
	for (StateId b = 0; b < blocks.size(); ++b)
		for (StateId q : blocks[b]) {
			if (q >= ta.state_count() || block_of[q] != unassigned)
				throw InputError("blocks do not partition the states");
			block_of[q] = b;
		}
	if (std::find(block_of.begin(), block_of.end(), unassigned) != block_of.end())
		throw InputError("blocks do not partition the states");

	TreeAutomaton out;
	out.name = ta.name;
	for (const auto& block : blocks) {
		if (block.empty())
			throw InputError("empty block");
		const std::string* least = &ta.state_name(block.front());
		for (StateId q : block)
			if (ta.state_name(q) < *least)
				least = &ta.state_name(q);
		out.add_state(*least);
	}
	for (SymbolId f = 0; f < ta.symbol_count(); ++f)
		out.add_symbol(ta.symbol_name(f), ta.rank(f));
	for (StateId b = 0; b < blocks.size(); ++b)
		out.set_final(b, std::any_of(blocks[b].begin(), blocks[b].end(),
			[&](StateId q) { return ta.is_final(q); }));
	for (const Rule& r : ta.rules()) {
		std::vector<StateId> lhs;
		for (StateId q : r.lhs)
			lhs.push_back(block_of[q]);
		out.add_rule(std::move(lhs), r.symbol, block_of[r.target]);
	}
	return out;
}

} // namespace simrel
