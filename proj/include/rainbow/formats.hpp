#pragma once

// RTS v1 (sequences) and RTG v1 (graphs) text formats and their JSON mirrors.
//
//   RTS 1 k=<k> n=<n>
//   <i> a=<color> e=<c0,c1,...|->          one line per vertex
//
//   RTG 1 n=<n>
//   <row j = 1..n-1: j characters, char i is adj(i, j)>
//
// Writers always terminate every line with '\n'. Readers accept a missing
// final newline and nothing else, so write(read(text)) == text for any text
// a writer produced.

#include <cctype>
#include <charconv>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rainbow/errors.hpp"
#include "rainbow/graph.hpp"
#include "rainbow/sequence.hpp"

namespace rainbow {

namespace detail {

/// Splits on '\n'; a trailing newline does not produce an extra empty line.
inline std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        const std::size_t nl = text.find('\n', start);
        if (nl == std::string_view::npos) {
            lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, nl - start));
        start = nl + 1;
    }
    return lines;
}

class LineCursor {
public:
    LineCursor(std::string_view line, std::size_t line_no) : line_(line), line_no_(line_no) {}

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(what, line_no_, pos_ + 1);
    }

    void expect(std::string_view literal) {
        if (line_.substr(pos_, literal.size()) != literal) {
            fail("expected '" + std::string(literal) + "'");
        }
        pos_ += literal.size();
    }

    bool peek(char c) const { return pos_ < line_.size() && line_[pos_] == c; }

    std::uint64_t integer() {
        const std::size_t begin = pos_;
        while (pos_ < line_.size() && std::isdigit(static_cast<unsigned char>(line_[pos_]))) ++pos_;
        if (pos_ == begin) fail("expected an unsigned integer");
        if (pos_ - begin > 1 && line_[begin] == '0') {
            pos_ = begin;
            fail("leading zeros are not allowed");
        }
        std::uint64_t value = 0;
        auto [ptr, ec] = std::from_chars(line_.data() + begin, line_.data() + pos_, value);
        if (ec != std::errc{}) {
            pos_ = begin;
            fail("integer out of range");
        }
        return value;
    }

    void expect_end() {
        if (pos_ != line_.size()) fail("unexpected trailing characters");
    }

    std::size_t column() const { return pos_ + 1; }

private:
    std::string_view line_;
    std::size_t line_no_;
    std::size_t pos_ = 0;
};

inline bool looks_like_json(std::string_view text) {
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        return c == '{';
    }
    return false;
}

}  // namespace detail

inline std::string write_rts(const RainbowSequence& s) {
    std::string out = "RTS 1 k=" + std::to_string(s.palette()) + " n=" + std::to_string(s.size()) + "\n";
    for (std::size_t i = 0; i < s.size(); ++i) {
        out += std::to_string(i) + " a=" + std::to_string(s[i].color) + " e=";
        ColorMask m = s[i].colors;
        if (m == 0) {
            out += '-';
        } else {
            bool first = true;
            for (Color c = 0; c < s.palette(); ++c) {
                if (!mask_contains(m, c)) continue;
                if (!first) out += ',';
                out += std::to_string(c);
                first = false;
            }
        }
        out += '\n';
    }
    return out;
}

inline RainbowSequence read_rts(std::string_view text) {
    const auto lines = detail::split_lines(text);
    if (lines.empty()) throw ParseError("empty input", 1, 1);
    detail::LineCursor header(lines[0], 1);
    header.expect("RTS ");
    header.expect("1");
    header.expect(" k=");
    const std::uint64_t k = header.integer();
    header.expect(" n=");
    const std::uint64_t n = header.integer();
    header.expect_end();
    if (k > kMaxPalette) throw ParseError("palette size exceeds " + std::to_string(kMaxPalette), 1, 9);
    if (k == 0 && n != 0) throw ParseError("k=0 is only allowed with n=0", 1, 9);
    if (lines.size() != n + 1) {
        throw ParseError("expected " + std::to_string(n) + " entry lines, found " +
                             std::to_string(lines.size() - 1),
                         lines.size() < n + 1 ? lines.size() : n + 2, 1);
    }
    std::vector<ColorSymbol> entries;
    entries.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        detail::LineCursor cur(lines[i + 1], i + 2);
        const std::size_t index_col = cur.column();
        if (cur.integer() != i) throw ParseError("expected vertex index " + std::to_string(i), i + 2, index_col);
        cur.expect(" a=");
        const std::size_t color_col = cur.column();
        const std::uint64_t a = cur.integer();
        if (a >= k) throw ParseError("color " + std::to_string(a) + " outside palette", i + 2, color_col);
        cur.expect(" e=");
        ColorMask e = 0;
        if (cur.peek('-')) {
            cur.expect("-");
        } else {
            std::int64_t previous = -1;
            while (true) {
                const std::size_t col = cur.column();
                const std::uint64_t c = cur.integer();
                if (c >= k) throw ParseError("color " + std::to_string(c) + " outside palette", i + 2, col);
                if (static_cast<std::int64_t>(c) <= previous) {
                    throw ParseError("colors in e must be strictly increasing", i + 2, col);
                }
                previous = static_cast<std::int64_t>(c);
                e |= ColorMask{1} << c;
                if (!cur.peek(',')) break;
                cur.expect(",");
            }
        }
        cur.expect_end();
        entries.push_back({static_cast<Color>(a), e});
    }
    return RainbowSequence(k, std::move(entries));
}

inline std::string write_rtg(const Graph& g) {
    const std::size_t n = g.order();
    std::string out = "RTG 1 n=" + std::to_string(n) + "\n";
    for (Vertex j = 1; j < n; ++j) {
        for (Vertex i = 0; i < j; ++i) out += g.adjacent(i, j) ? '1' : '0';
        out += '\n';
    }
    return out;
}

inline Graph read_rtg(std::string_view text) {
    const auto lines = detail::split_lines(text);
    if (lines.empty()) throw ParseError("empty input", 1, 1);
    detail::LineCursor header(lines[0], 1);
    header.expect("RTG ");
    header.expect("1");
    header.expect(" n=");
    const std::uint64_t n = header.integer();
    header.expect_end();
    const std::size_t expected_rows = n == 0 ? 0 : n - 1;
    if (lines.size() != expected_rows + 1) {
        throw ParseError("expected " + std::to_string(expected_rows) + " adjacency rows, found " +
                             std::to_string(lines.size() - 1),
                         lines.size() < expected_rows + 1 ? lines.size() : expected_rows + 2, 1);
    }
    Graph g(n);
    for (Vertex j = 1; j < n; ++j) {
        const std::string_view row = lines[j];
        for (std::size_t i = 0; i < row.size() && i < j; ++i) {
            if (row[i] == '1') {
                g.set_edge(i, j, true);
            } else if (row[i] != '0') {
                throw ParseError("expected '0' or '1'", j + 1, i + 1);
            }
        }
        if (row.size() != j) {
            throw ParseError("row for vertex " + std::to_string(j) + " must have exactly " +
                                 std::to_string(j) + " characters",
                             j + 1, std::min(row.size(), j) + 1);
        }
    }
    return g;
}

inline nlohmann::ordered_json sequence_to_json(const RainbowSequence& s) {
    nlohmann::ordered_json j;
    j["format"] = "RTS";
    j["version"] = 1;
    j["k"] = s.palette();
    j["n"] = s.size();
    auto entries = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < s.size(); ++i) {
        nlohmann::ordered_json e;
        e["i"] = i;
        e["a"] = s[i].color;
        auto colors = nlohmann::ordered_json::array();
        for (Color c = 0; c < s.palette(); ++c)
            if (mask_contains(s[i].colors, c)) colors.push_back(c);
        e["e"] = std::move(colors);
        entries.push_back(std::move(e));
    }
    j["entries"] = std::move(entries);
    return j;
}

inline RainbowSequence sequence_from_json(const nlohmann::json& j) {
    try {
        if (j.at("format").get<std::string>() != "RTS" || j.at("version").get<int>() != 1) {
            throw ParseError("not an RTS v1 document", 0, 0);
        }
        const auto k = j.at("k").get<std::size_t>();
        const auto n = j.at("n").get<std::size_t>();
        const auto& entries = j.at("entries");
        if (entries.size() != n) throw ParseError("entries length differs from n", 0, 0);
        std::vector<ColorSymbol> out;
        out.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto& e = entries[i];
            if (e.at("i").get<std::size_t>() != i) throw ParseError("entry index mismatch at " + std::to_string(i), 0, 0);
            ColorMask mask = 0;
            for (const auto& c : e.at("e")) {
                const auto color = c.get<std::size_t>();
                if (color >= k || color >= kMaxPalette) throw ParseError("color outside palette", 0, 0);
                mask |= ColorMask{1} << color;
            }
            out.push_back({e.at("a").get<Color>(), mask});
        }
        return RainbowSequence(k, std::move(out));
    } catch (const nlohmann::json::exception& ex) {
        throw ParseError(std::string("invalid RTS JSON: ") + ex.what(), 0, 0);
    } catch (const std::invalid_argument& ex) {
        throw ParseError(ex.what(), 0, 0);
    }
}

inline nlohmann::ordered_json graph_to_json(const Graph& g) {
    nlohmann::ordered_json j;
    j["format"] = "RTG";
    j["version"] = 1;
    j["n"] = g.order();
    auto rows = nlohmann::ordered_json::array();
    for (Vertex r = 1; r < g.order(); ++r) {
        std::string row;
        for (Vertex i = 0; i < r; ++i) row += g.adjacent(i, r) ? '1' : '0';
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    return j;
}

inline Graph graph_from_json(const nlohmann::json& j) {
    try {
        if (j.at("format").get<std::string>() != "RTG" || j.at("version").get<int>() != 1) {
            throw ParseError("not an RTG v1 document", 0, 0);
        }
        const auto n = j.at("n").get<std::size_t>();
        const auto& rows = j.at("rows");
        if (rows.size() != (n == 0 ? 0 : n - 1)) throw ParseError("rows length must be n-1", 0, 0);
        Graph g(n);
        for (Vertex r = 1; r < n; ++r) {
            const auto row = rows[r - 1].get<std::string>();
            if (row.size() != r) throw ParseError("row " + std::to_string(r) + " has wrong length", 0, 0);
            for (Vertex i = 0; i < r; ++i) {
                if (row[i] == '1') {
                    g.set_edge(i, r, true);
                } else if (row[i] != '0') {
                    throw ParseError("row characters must be 0 or 1", 0, 0);
                }
            }
        }
        return g;
    } catch (const nlohmann::json::exception& ex) {
        throw ParseError(std::string("invalid RTG JSON: ") + ex.what(), 0, 0);
    }
}

/// Text or JSON input, decided by the first non-space character.
inline RainbowSequence parse_sequence(std::string_view text) {
    if (detail::looks_like_json(text)) {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& ex) {
            throw ParseError(ex.what(), 0, ex.byte);
        }
        return sequence_from_json(j);
    }
    return read_rts(text);
}

inline Graph parse_graph(std::string_view text) {
    if (detail::looks_like_json(text)) {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& ex) {
            throw ParseError(ex.what(), 0, ex.byte);
        }
        return graph_from_json(j);
    }
    return read_rtg(text);
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline void write_text_file(const std::string& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

}  // namespace rainbow
