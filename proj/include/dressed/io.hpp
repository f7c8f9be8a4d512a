#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace dressed::io {

// Plain CSV: optional '# ' metadata lines, one header row, numeric rows printed
// with 17 significant digits so repeated runs are byte-identical.
class CsvWriter {
public:
  explicit CsvWriter(const std::filesystem::path& path);

  void comment(const std::string& text);
  void header(const std::vector<std::string>& columns);
  void row(std::initializer_list<double> values);
  void row(const std::vector<double>& values);
  void raw_row(const std::vector<std::string>& cells);

private:
  std::ofstream out_;
  std::filesystem::path path_;
};

std::string format_number(double value);

// Hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

// Writes `document` to dir/name via a temporary file and rename.
void write_json_atomic(const std::filesystem::path& path, const nlohmann::json& document);

}  // namespace dressed::io
