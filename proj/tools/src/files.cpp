#include "files.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>

namespace rdg::cli {

namespace {

[[noreturn]] void fail_line(const std::string& path, std::size_t line, const std::string& what) {
    throw ParseError(path + " line " + std::to_string(line) + ": " + what);
}

/// Parses "a,b" with strictly positive integers; no spaces, no extra fields.
std::pair<std::int64_t, std::int64_t> parse_pair(const std::string& text, const std::string& path,
                                                 std::size_t line) {
    const std::size_t comma = text.find(',');
    if (comma == std::string::npos)
        fail_line(path, line, "expected two comma-separated fields");
    std::int64_t a = 0;
    std::int64_t b = 0;
    const char* begin = text.data();
    auto first = std::from_chars(begin, begin + comma, a);
    if (first.ec != std::errc{} || first.ptr != begin + comma)
        fail_line(path, line, "bad integer in first field");
    const char* second_begin = begin + comma + 1;
    const char* end = begin + text.size();
    auto second = std::from_chars(second_begin, end, b);
    if (second.ec != std::errc{} || second.ptr != end)
        fail_line(path, line, "bad integer in second field");
    if (a < 1 || b < 1)
        fail_line(path, line, "ids must be positive");
    return {a, b};
}

} // namespace

void write_edges_csv(const std::string& path, const TypedDigraph& graph) {
    std::string out;
    out.reserve(graph.arcs.size() * 12);
    char buffer[32];
    for (const Arc& arc : graph.arcs) {
        auto r1 = std::to_chars(buffer, buffer + sizeof buffer, arc.src + 1);
        out.append(buffer, r1.ptr);
        out.push_back(',');
        auto r2 = std::to_chars(buffer, buffer + sizeof buffer, arc.dst + 1);
        out.append(buffer, r2.ptr);
        out.push_back('\n');
    }
    write_text_file(path, out);
}

void write_types_csv(const std::string& path, const TypedDigraph& graph) {
    std::string out;
    out.reserve(static_cast<std::size_t>(graph.n) * 8);
    char buffer[32];
    for (std::int64_t v = 0; v < graph.n; ++v) {
        auto r1 = std::to_chars(buffer, buffer + sizeof buffer, v + 1);
        out.append(buffer, r1.ptr);
        out.push_back(',');
        auto r2 = std::to_chars(buffer, buffer + sizeof buffer,
                                graph.types[static_cast<std::size_t>(v)] + 1);
        out.append(buffer, r2.ptr);
        out.push_back('\n');
    }
    write_text_file(path, out);
}

TypedDigraph read_graph(const std::string& edges_path, const std::string& types_path) {
    std::ifstream types_in(types_path, std::ios::binary);
    if (!types_in)
        throw ParseError("cannot open types file: " + types_path);

    TypedDigraph graph;
    std::string line;
    std::size_t line_number = 0;
    int max_label = 0;
    while (std::getline(types_in, line)) {
        ++line_number;
        if (line.empty())
            continue;
        const auto [id, label] = parse_pair(line, types_path, line_number);
        if (id != static_cast<std::int64_t>(graph.types.size()) + 1)
            fail_line(types_path, line_number,
                      "vertex ids must be dense and ascending from 1, got " + std::to_string(id));
        graph.types.push_back(static_cast<int>(label - 1));
        max_label = std::max(max_label, static_cast<int>(label));
    }
    if (graph.types.empty())
        throw ParseError(types_path + ": no vertices");
    graph.n = static_cast<std::int64_t>(graph.types.size());
    graph.num_types = max_label;

    std::ifstream edges_in(edges_path, std::ios::binary);
    if (!edges_in)
        throw ParseError("cannot open edges file: " + edges_path);
    line_number = 0;
    while (std::getline(edges_in, line)) {
        ++line_number;
        if (line.empty())
            continue;
        const auto [src, dst] = parse_pair(line, edges_path, line_number);
        if (src > graph.n || dst > graph.n)
            fail_line(edges_path, line_number, "vertex id out of range 1.." +
                                                   std::to_string(graph.n));
        graph.arcs.push_back({static_cast<std::uint32_t>(src - 1),
                              static_cast<std::uint32_t>(dst - 1)});
    }
    return graph;
}

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open file for digest: " + path);
    std::uint64_t hash = 0xCBF29CE484222325ull;
    char buffer[65536];
    while (in.read(buffer, sizeof buffer) || in.gcount() > 0) {
        const std::streamsize got = in.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            hash ^= static_cast<unsigned char>(buffer[i]);
            hash *= 0x100000001B3ull;
        }
    }
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(hash));
    return std::string("fnv1a:") + hex;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error("cannot open output file: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out)
        throw Error("failed writing: " + path);
}

std::string format_double(double value) {
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
    return std::string(buffer, result.ptr);
}

} // namespace rdg::cli
