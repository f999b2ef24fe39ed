#include "centrank/io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include "centrank/error.hpp"

namespace centrank {

std::string format_double(double value) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) throw NumericalError("cannot format value");
  return std::string(buf.data(), ptr);
}

void write_vertex_csv(const std::filesystem::path& path, std::string_view column, std::span<const double> values,
                      std::span<const std::int64_t> ids) {
  if (!ids.empty() && ids.size() != values.size()) throw InputError("id mapping does not match the value count");
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << "vertex," << column << '\n';
  for (std::size_t i = 0; i < values.size(); ++i)
    out << (ids.empty() ? static_cast<std::int64_t>(i) : ids[i]) << ',' << format_double(values[i]) << '\n';
}

const std::vector<double>& VertexTable::column(const std::string& name) const {
  auto it = values.find(name);
  if (it == values.end()) throw InputError("CSV has no column '" + name + "'");
  return it->second;
}

VertexTable read_vertex_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  VertexTable table;
  std::string line;
  if (!std::getline(in, line)) throw InputError(path.string() + ": empty CSV");
  {
    std::stringstream header(line);
    std::string name;
    while (std::getline(header, name, ',')) table.columns.push_back(name);
  }
  if (table.columns.empty() || table.columns.front() != "vertex")
    throw InputError(path.string() + ": header must start with 'vertex'");
  for (std::size_t c = 1; c < table.columns.size(); ++c) table.values[table.columns[c]];

  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string_view> fields;
    std::string_view rest(line);
    while (true) {
      auto comma = rest.find(',');
      fields.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (fields.size() != table.columns.size())
      throw InputError(path.string() + ":" + std::to_string(line_no) + ": wrong number of fields");
    std::int64_t id = 0;
    auto [p, ec] = std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), id);
    if (ec != std::errc() || p != fields[0].data() + fields[0].size())
      throw InputError(path.string() + ":" + std::to_string(line_no) + ": bad vertex id");
    table.ids.push_back(id);
    for (std::size_t c = 1; c < fields.size(); ++c) {
      double v = 0.0;
      auto [q, ec2] = std::from_chars(fields[c].data(), fields[c].data() + fields[c].size(), v);
      if (ec2 != std::errc() || q != fields[c].data() + fields[c].size())
        throw InputError(path.string() + ":" + std::to_string(line_no) + ": bad number");
      table.values[table.columns[c]].push_back(v);
    }
  }
  return table;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& value) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << value.dump(2) << '\n';
}

nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
}

}  // namespace centrank
