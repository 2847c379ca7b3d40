#include "seesaw/io.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "seesaw/errors.hpp"

namespace seesaw {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string git_blob_sha1(std::string_view content) {
  const std::string head = "blob " + std::to_string(content.size()) + '\0';
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx) throw std::runtime_error("EVP_MD_CTX_new failed");
  const bool ok = EVP_DigestInit_ex(ctx, EVP_sha1(), nullptr) == 1 &&
                  EVP_DigestUpdate(ctx, head.data(), head.size()) == 1 &&
                  EVP_DigestUpdate(ctx, content.data(), content.size()) == 1 &&
                  EVP_DigestFinal_ex(ctx, md, &len) == 1;
  EVP_MD_CTX_free(ctx);
  if (!ok) throw std::runtime_error("SHA-1 digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 0xf]);
  }
  return out;
}

namespace {

std::string render(const std::string& body, const std::vector<std::pair<std::string, std::string>>& meta,
                   std::string_view config_echo, std::uint64_t seed) {
  std::ostringstream os;
  os << "# seesaw artifact\n";
  os << "# seed = " << seed << '\n';
  os << "# content_sha1 = " << git_blob_sha1(body) << '\n';
  for (const auto& [k, v] : meta) os << "# " << k << " = " << v << '\n';
  std::istringstream cfg{std::string(config_echo)};
  for (std::string line; std::getline(cfg, line);)
    if (!line.empty()) os << "#@ " << line << '\n';
  os << body;
  return os.str();
}

}  // namespace

std::string render_csv(const CsvTable& table, std::string_view config_echo, std::uint64_t seed) {
  if (table.names.size() != table.columns.size()) throw ValidationError("csv: names and columns differ");
  std::string body;
  for (std::size_t j = 0; j < table.names.size(); ++j) {
    if (j) body += ',';
    body += table.names[j];
  }
  body += '\n';
  const std::size_t rows = table.columns.empty() ? 0 : table.columns.front().size();
  for (const auto& c : table.columns)
    if (c.size() != rows) throw ValidationError("csv: ragged columns");
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < table.columns.size(); ++j) {
      if (j) body += ',';
      body += format_double(table.columns[j][i]);
    }
    body += '\n';
  }
  return render(body, table.meta, config_echo, seed);
}

std::string render_csv(const TimeSeries& ts, std::string_view config_echo, std::uint64_t seed) {
  return render_csv(CsvTable{ts.names, ts.columns, ts.header}, config_echo, seed);
}

std::string render_matrix_csv(std::string_view corner, std::span<const double> row_grid,
                              std::span<const double> col_grid, std::span<const double> values,
                              const std::vector<std::pair<std::string, std::string>>& meta,
                              std::string_view config_echo, std::uint64_t seed) {
  if (values.size() != row_grid.size() * col_grid.size()) throw ValidationError("matrix csv: size mismatch");
  std::string body(corner);
  for (double c : col_grid) body += ',' + format_double(c);
  body += '\n';
  for (std::size_t i = 0; i < row_grid.size(); ++i) {
    body += format_double(row_grid[i]);
    for (std::size_t j = 0; j < col_grid.size(); ++j) body += ',' + format_double(values[i * col_grid.size() + j]);
    body += '\n';
  }
  return render(body, meta, config_echo, seed);
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary);
    if (!f) throw ValidationError("cannot write " + path.string());
    f << text;
    if (!f) throw ValidationError("write failed for " + path.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot read " + path.string());
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

ParsedCsv parse_csv(std::string_view text) {
  ParsedCsv out;
  std::istringstream is{std::string(text)};
  std::string line;
  std::string body;
  bool have_names = false;
  while (std::getline(is, line)) {
    if (!have_names && line.rfind("#@ ", 0) == 0) {
      out.config += line.substr(3) + '\n';
      continue;
    }
    if (!have_names && line.rfind("#", 0) == 0) {
      const auto eq = line.find(" = ");
      if (eq != std::string::npos && line.size() > 2) {
        const std::string key = line.substr(2, eq - 2);
        const std::string value = line.substr(eq + 3);
        if (key == "content_sha1")
          out.content_hash = value;
        else if (key != "seed")
          out.table.meta.emplace_back(key, value);
      }
      continue;
    }
    body += line + '\n';
    std::vector<std::string> cells;
    std::stringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
    if (!have_names) {
      out.table.names = cells;
      out.table.columns.resize(cells.size());
      have_names = true;
      continue;
    }
    if (cells.size() != out.table.names.size()) throw ValidationError("csv: row width differs from header");
    for (std::size_t j = 0; j < cells.size(); ++j) {
      char* end = nullptr;
      const double v = std::strtod(cells[j].c_str(), &end);
      if (end == cells[j].c_str() || *end != '\0') throw ValidationError("csv: bad number '" + cells[j] + "'");
      out.table.columns[j].push_back(v);
    }
  }
  if (!have_names) throw ValidationError("csv: no header row");
  out.recomputed_hash = git_blob_sha1(body);
  return out;
}

std::string embedded_config(std::string_view csv_text) {
  std::string cfg;
  std::istringstream is{std::string(csv_text)};
  for (std::string line; std::getline(is, line);)
    if (line.rfind("#@ ", 0) == 0) cfg += line.substr(3) + '\n';
  return cfg;
}

}  // namespace seesaw
