#include "simrel/io.hh"

#include <algorithm>
#include <cctype>
#include <tuple>
#include <sstream>
#include <vector>

#include "simrel/error.hh"

namespace simrel {

namespace {

const std::string_view states_directive = "#@states";

bool valid_ident(const std::string& s)
{
	return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
		return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-';
	});
}

std::vector<std::string> tokens(std::string_view line)
{
	std::vector<std::string> out;
	std::istringstream in{std::string(line)};
	std::string t;
	while (in >> t)
		out.push_back(t);
	return out;
}

template <typename F>
void for_each_line(std::string_view text, F&& f)
{
	std::size_t line_no = 0;
	std::size_t start = 0;
	while (start <= text.size()) {
		std::size_t end = text.find('\n', start);
		if (end == std::string_view::npos)
			end = text.size();
		++line_no;
		f(text.substr(start, end - start), line_no);
		start = end + 1;
	}
}

} // namespace

Lts parse_lts(std::string_view text)
{
	Lts::Builder b;
	for_each_line(text, [&](std::string_view line, std::size_t line_no) {
		auto toks = tokens(line);
		if (toks.empty())
			return;
		if (toks[0] == states_directive) {
			for (std::size_t i = 1; i < toks.size(); ++i) {
				if (!valid_ident(toks[i]))
					throw ParseError("invalid identifier '" + toks[i] + "'", line_no);
				b.add_state(toks[i]);
			}
			return;
		}
		if (toks[0].front() == '#')
			return;
		if (toks.size() != 3)
			throw ParseError("expected 3 tokens", line_no);
		for (const auto& t : toks)
			if (!valid_ident(t))
				throw ParseError("invalid identifier '" + t + "'", line_no);
		b.add_transition(toks[0], toks[1], toks[2]);
	});
	if (b.state_count() == 0)
		throw ParseError("empty system");
	return b.build();
}

std::string write_lts(const Lts& lts)
{
	std::ostringstream out;
	out << states_directive;
	for (StateId v = 0; v < lts.state_count(); ++v)
		out << ' ' << lts.state_name(v);
	out << '\n';
	for (auto [u, a, v] : lts.transitions())
		out << lts.state_name(u) << ' ' << lts.symbol_name(a) << ' ' << lts.state_name(v) << '\n';
	return out.str();
}

StateRelation parse_relation(std::string_view text, const NameTable& states)
{
	StateRelation rel(states.size());
	for_each_line(text, [&](std::string_view line, std::size_t line_no) {
		auto toks = tokens(line);
		if (toks.empty() || toks[0].front() == '#')
			return;
		if (toks.size() != 2)
			throw ParseError("expected 2 tokens", line_no);
		auto u = states.find(toks[0]);
		auto v = states.find(toks[1]);
		if (!u || !v)
			throw InputError("unknown state '" + (u ? toks[1] : toks[0]) + "' at line " + std::to_string(line_no));
		rel.insert(*u, *v);
	});
	return rel;
}

std::string write_pairs(const StateRelation& rel, const NameTable& names)
{
	std::vector<std::pair<const std::string*, const std::string*>> pairs;
	for (auto [u, v] : rel.pairs())
		pairs.emplace_back(&names.name(u), &names.name(v));
	std::sort(pairs.begin(), pairs.end(), [](const auto& x, const auto& y) {
		return std::tie(*x.first, *x.second) < std::tie(*y.first, *y.second);
	});
	std::string out;
	for (auto [u, v] : pairs)
		out += *u + ' ' + *v + '\n';
	return out;
}

std::string write_blocks(const PartitionRelationPair& prp, const NameTable& names)
{
	std::string out;
	for (BlockId b = 0; b < prp.block_count(); ++b) {
		std::vector<std::string> members;
		for (StateId v : prp.block(b))
			members.push_back(names.name(v));
		std::sort(members.begin(), members.end());
		out += '{';
		for (std::size_t i = 0; i < members.size(); ++i)
			out += (i ? " " : "") + members[i];
		out += "} -> {";
		auto above = prp.rel().row(b);
		for (std::size_t i = 0; i < above.size(); ++i)
			out += (i ? " " : "") + std::to_string(above[i]);
		out += "}\n";
	}
	return out;
}

bool looks_like_timbuk(std::string_view text)
{
	bool result = false;
	bool decided = false;
	for_each_line(text, [&](std::string_view line, std::size_t) {
		if (decided)
			return;
		auto toks = tokens(line);
		if (toks.empty() || toks[0].front() == '#')
			return;
		decided = true;
		result = toks[0] == "Ops" || toks[0] == "Automaton";
	});
	return result;
}

} // namespace simrel
