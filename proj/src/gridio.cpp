#include "floqtop/gridio.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace floqtop {

std::string format_num(double v) {
  if (std::isnan(v)) throw std::invalid_argument("format_num: NaN not emitted");
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void TableWriter::header(const std::string& key, const std::string& value) {
  head_ += "# " + key + " = " + value + "\n";
}

void TableWriter::header(const std::string& key, double value) {
  header(key, format_num(value));
}

void TableWriter::header(const std::string& key, long value) {
  header(key, std::to_string(value));
}

void TableWriter::columns(const std::vector<std::string>& names) {
  std::string line = "# columns =";
  for (const auto& n : names) line += " " + n;
  head_ += line + "\n";
}

void TableWriter::begin_row() {
  if (row_open_) body_ += "\n";
  row_open_ = true;
  first_in_row_ = true;
}

void TableWriter::cell(double v) { cell(format_num(v)); }

void TableWriter::cell(long v) { cell(std::to_string(v)); }

void TableWriter::cell(const std::string& token) {
  if (!row_open_) begin_row();
  if (!first_in_row_) body_ += " ";
  first_in_row_ = false;
  body_ += token;
}

std::string TableWriter::str() const {
  std::string out = head_ + body_;
  if (row_open_) out += "\n";
  return out;
}

void TableWriter::write_file(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + path);
  f << str();
  if (!f) throw std::runtime_error("failed writing output file: " + path);
}

std::map<std::string, std::string> read_kv_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open config file: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto strip = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string{};
      const auto e = s.find_last_not_of(" \t\r");
      return s.substr(b, e - b + 1);
    };
    line = strip(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": expected key = value");
    const std::string key = strip(line.substr(0, eq));
    const std::string value = strip(line.substr(eq + 1));
    if (key.empty())
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": empty key");
    kv[key] = value;
  }
  return kv;
}

}  // namespace floqtop
