#pragma once

#include <istream>
#include <stdexcept>
#include <string>

#include "avgctrl/graph.hpp"

namespace avgctrl {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// Parses a node token: "b" or "beta" for the beta node, "a<k>" for
/// alpha_k. Throws ParseError(line) for anything else.
int parse_node(const std::string& token, int line);

/// Edge-list format: one "u v" pair per line, '#' starts a comment, blank
/// lines ignored. n is inferred from the largest alpha index. The result is
/// validated (ValidationError surfaces unchanged).
SparsityPattern parse_edge_list(std::istream& in);

/// Minimal DOT subset: "digraph <name> { a -> b; ... }" with the same node
/// tokens as the edge-list format.
SparsityPattern parse_dot(std::istream& in);

std::string to_edge_list(const SparsityPattern& g);

/// FNV-1a 64-bit hash, hex encoded; used as the report input_hash.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace avgctrl
