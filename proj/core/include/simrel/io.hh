#pragma once

#include <string>
#include <string_view>

#include "simrel/lts.hh"
#include "simrel/partition.hh"
#include "simrel/relation.hh"

namespace simrel {

/**
 * Line-based LTS text: `SRC LABEL DST` per line, `#` starts a comment.
 * A comment of the form `#@states A B ...` declares states up front, which
 * fixes their ids and lets edgeless states be written at all.
 *
 * Throws ParseError (with the line number) on malformed lines and on an
 * input without any state.
 */
Lts parse_lts(std::string_view text);
std::string write_lts(const Lts& lts);

/// Lines `U V` over the names in `states`. Unknown names raise InputError.
StateRelation parse_relation(std::string_view text, const NameTable& states);

/// Sorted `U V` lines, lexicographic by name.
std::string write_pairs(const StateRelation& rel, const NameTable& names);

/// One line per block: `{members} -> {ids of blocks above}`.
std::string write_blocks(const PartitionRelationPair& prp, const NameTable& names);

/// Whether the first meaningful line looks like a tree-automaton file.
bool looks_like_timbuk(std::string_view text);

} // namespace simrel
