#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace centrank {

/// Shortest text that parses back to the same double.
std::string format_double(double value);

/// `vertex,<column>` CSV. `ids` may be empty, in which case row indices are
/// written as vertex ids.
void write_vertex_csv(const std::filesystem::path& path, std::string_view column, std::span<const double> values,
                      std::span<const std::int64_t> ids = {});

/// Reads any CSV whose header starts with `vertex`; returns column name ->
/// (vertex id -> value).
struct VertexTable {
  std::vector<std::string> columns;
  std::vector<std::int64_t> ids;                 // row order
  std::map<std::string, std::vector<double>> values;  // column -> row-ordered values

  const std::vector<double>& column(const std::string& name) const;
};

VertexTable read_vertex_csv(const std::filesystem::path& path);

void write_json(const std::filesystem::path& path, const nlohmann::json& value);
nlohmann::json read_json(const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace centrank
