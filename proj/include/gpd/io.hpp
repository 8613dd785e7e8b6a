#pragma once

// Text formats for decompositions and block decompositions.
//
// Decomposition ("GPD 1"):
//   GPD 1
//   n <n> r <r> pieces <m>
//   <part> | <part> | ...        (m lines, canonical piece form)
// Block decomposition ("GPB 1"):
//   GPB 1
//   n <n> blocks <m>
//   a:<set> b:<set> ; a:<set> b:<set>
// Sets are comma-separated ascending vertices. LF line endings, no trailing
// whitespace, a single final LF.

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gpd/blocks.hpp"
#include "gpd/core.hpp"

namespace gpd {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

inline std::string serialize(const Decomposition& d) {
    std::string out = "GPD 1\n";
    out += "n " + std::to_string(d.ground.n) + " r " + std::to_string(d.ground.r) + " pieces " +
           std::to_string(d.pieces.size()) + "\n";
    for (const auto& piece : d.pieces) {
        out += to_string(piece);
        out += '\n';
    }
    return out;
}

inline std::string serialize(const BlockDecomposition& bd) {
    std::string out = "GPB 1\n";
    out += "n " + std::to_string(bd.n) + " blocks " + std::to_string(bd.blocks.size()) + "\n";
    for (const auto& b : bd.blocks) {
        out += "a:" + to_string(b.first.side_a) + " b:" + to_string(b.first.side_b) + " ; a:" +
               to_string(b.second.side_a) + " b:" + to_string(b.second.side_b) + "\n";
    }
    return out;
}

namespace detail {

inline std::vector<std::string_view> split_lines(std::string_view text) {
    if (text.empty() || text.back() != '\n') throw ParseError(0, "file must end with a single LF");
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        const auto end = text.find('\n', start);
        lines.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    return lines;
}

inline std::size_t parse_number(std::string_view s, std::size_t line) {
    if (s.empty()) throw ParseError(line, "expected a number");
    if (s.size() > 1 && s.front() == '0') throw ParseError(line, "leading zero in '" + std::string(s) + "'");
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ParseError(line, "invalid number '" + std::string(s) + "'");
    return v;
}

inline VertexSet parse_set(std::string_view s, std::size_t line) {
    VertexSet out;
    std::size_t start = 0;
    while (true) {
        const auto comma = s.find(',', start);
        const auto tok = s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        const auto v = parse_number(tok, line);
        if (v > std::numeric_limits<Vertex>::max()) throw ParseError(line, "vertex too large");
        if (!out.empty() && v <= out.back()) throw ParseError(line, "vertices must be strictly ascending");
        out.push_back(static_cast<Vertex>(v));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

inline std::vector<std::string_view> split_on(std::string_view s, std::string_view sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + sep.size();
    }
}

// Parses "<w0> <v0> <w1> <v1> ..." with the given keywords.
inline std::vector<std::size_t> parse_header(std::string_view line_text, const std::vector<std::string_view>& keys,
                                             std::size_t line) {
    const auto toks = split_on(line_text, " ");
    if (toks.size() != 2 * keys.size()) throw ParseError(line, "malformed header");
    std::vector<std::size_t> vals;
    for (std::size_t i = 0; i < keys.size(); ++i) {
        if (toks[2 * i] != keys[i]) throw ParseError(line, "expected '" + std::string(keys[i]) + "'");
        vals.push_back(parse_number(toks[2 * i + 1], line));
    }
    return vals;
}

inline BipartiteGraph parse_bipartite(std::string_view s, std::size_t line) {
    const auto sides = split_on(s, " ");
    if (sides.size() != 2 || !sides[0].starts_with("a:") || !sides[1].starts_with("b:"))
        throw ParseError(line, "expected 'a:<set> b:<set>'");
    return {parse_set(sides[0].substr(2), line), parse_set(sides[1].substr(2), line)};
}

}  // namespace detail

/// Parses a decomposition file. Each piece is rebuilt through canonicalize;
/// overlapping parts are a parse error. Part counts and vertex ranges are
/// left for the verifier to judge.
inline Decomposition parse_decomposition(std::string_view text) {
    const auto lines = detail::split_lines(text);
    if (lines.size() < 2) throw ParseError(1, "missing header");
    if (lines[0] != "GPD 1") throw ParseError(1, "expected magic 'GPD 1'");
    const auto hdr = detail::parse_header(lines[1], {"n", "r", "pieces"}, 2);
    Decomposition d;
    try {
        d.ground = GroundSet(hdr[0], hdr[1]);
    } catch (const std::invalid_argument& e) {
        throw ParseError(2, e.what());
    }
    if (lines.size() != hdr[2] + 2) throw ParseError(lines.size(), "piece count does not match header");
    for (std::size_t i = 2; i < lines.size(); ++i) {
        std::vector<VertexSet> parts;
        for (auto tok : detail::split_on(lines[i], " | ")) parts.push_back(detail::parse_set(tok, i + 1));
        try {
            d.pieces.push_back(canonicalize(std::move(parts)));
        } catch (const std::invalid_argument& e) {
            throw ParseError(i + 1, e.what());
        }
    }
    return d;
}

inline BlockDecomposition parse_block_decomposition(std::string_view text) {
    const auto lines = detail::split_lines(text);
    if (lines.size() < 2) throw ParseError(1, "missing header");
    if (lines[0] != "GPB 1") throw ParseError(1, "expected magic 'GPB 1'");
    const auto hdr = detail::parse_header(lines[1], {"n", "blocks"}, 2);
    BlockDecomposition bd{hdr[0], {}};
    if (lines.size() != hdr[1] + 2) throw ParseError(lines.size(), "block count does not match header");
    for (std::size_t i = 2; i < lines.size(); ++i) {
        const auto halves = detail::split_on(lines[i], " ; ");
        if (halves.size() != 2) throw ParseError(i + 1, "expected two bipartite factors separated by ' ; '");
        bd.blocks.push_back({detail::parse_bipartite(halves[0], i + 1), detail::parse_bipartite(halves[1], i + 1)});
    }
    return bd;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << contents;
    if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace gpd
