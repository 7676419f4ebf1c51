#pragma once

#include <string>
#include <vector>

#include "rdg/errors.hpp"
#include "rdg/types.hpp"

namespace rdg::cli {

/// Edge/types file problem; message carries the path and 1-based line number.
struct ParseError : Error {
    using Error::Error;
};

/// "src,dst" per arc, 1-based vertex ids, LF line endings, every line
/// terminated, no header.
void write_edges_csv(const std::string& path, const TypedDigraph& graph);

/// "vertex_id,type" per vertex, 1-based ids and labels, LF, no header.
void write_types_csv(const std::string& path, const TypedDigraph& graph);

/// Reads the pair of files back into a graph. Vertex count and types come
/// from the types file; edge endpoints are validated against it.
TypedDigraph read_graph(const std::string& edges_path, const std::string& types_path);

/// FNV-1a 64-bit digest of the file bytes, rendered "fnv1a:%016x".
std::string file_digest(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);

/// Shortest round-trip decimal rendering.
std::string format_double(double value);

} // namespace rdg::cli
