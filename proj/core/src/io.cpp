#include "avgctrl/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <iterator>
#include <sstream>

namespace avgctrl {

int parse_node(const std::string& token, int line) {
    if (token == "b" || token == "beta") return kBeta;
    if (token.size() >= 2 && token[0] == 'a' &&
        std::all_of(token.begin() + 1, token.end(),
                    [](unsigned char c) { return std::isdigit(c); })) {
        int idx = std::stoi(token.substr(1));
        if (idx >= 1) return idx;
    }
    throw ParseError(line, "unknown node token '" + token + "'");
}

namespace {

SparsityPattern build(const std::vector<Edge>& edges) {
    int n = 0;
    for (const Edge& e : edges) n = std::max({n, e.from, e.to});
    if (edges.empty()) throw ParseError(0, "no edges");
    return validate_pattern(n, edges);
}

}  // namespace

SparsityPattern parse_edge_list(std::istream& in) {
    std::vector<Edge> edges;
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::istringstream ls(raw);
        std::string u, v, extra;
        if (!(ls >> u)) continue;  // blank or comment-only line
        if (!(ls >> v)) throw ParseError(lineno, "expected 'u v' edge pair");
        if (ls >> extra) throw ParseError(lineno, "trailing token '" + extra + "'");
        edges.push_back({parse_node(u, lineno), parse_node(v, lineno)});
    }
    return build(edges);
}

SparsityPattern parse_dot(std::istream& in) {
    // Accepts the minimal subset: digraph <name> { a -> b; ... }.
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    auto open = text.find('{');
    auto close = text.rfind('}');
    if (open == std::string::npos || close == std::string::npos || close < open)
        throw ParseError(1, "expected 'digraph <name> { ... }'");
    std::string body = text.substr(open + 1, close - open - 1);
    for (char& c : body)
        if (c == ';' || c == '\n') c = ' ';
    std::istringstream bs(body);
    std::vector<Edge> edges;
    std::string u, arrow, v;
    while (bs >> u) {
        if (!(bs >> arrow >> v) || arrow != "->")
            throw ParseError(1, "expected 'u -> v' statement near '" + u + "'");
        edges.push_back({parse_node(u, 1), parse_node(v, 1)});
    }
    return build(edges);
}

std::string to_edge_list(const SparsityPattern& g) {
    std::ostringstream os;
    os << "# n = " << g.n << "\n";
    for (const Edge& e : g.edges)
        os << node_name(e.from) << " " << node_name(e.to) << "\n";
    return os.str();
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

}  // namespace avgctrl
