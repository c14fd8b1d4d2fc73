#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace simrel {

/// Malformed textual input. Carries the 1-based line number when known.
class ParseError : public std::runtime_error {
public:
	ParseError(const std::string& what, std::size_t line = 0) :
		std::runtime_error(line ? what + " at line " + std::to_string(line) : what),
		line_(line)
	{ }

	std::size_t line() const noexcept { return line_; }

private:
	std::size_t line_;
};

/// Well-formed input that violates a semantic precondition
/// (relation is not a preorder, pair is not coarsest, ...).
class InputError : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

/// Out-of-range generator or engine parameters.
class ParameterError : public std::invalid_argument {
public:
	using std::invalid_argument::invalid_argument;
};

} // namespace simrel
