#pragma once

#include <map>
#include <string>
#include <vector>

namespace floqtop {

/// Fixed 12-significant-digit formatting used for every numeric output.
std::string format_num(double v);

/// Plot-ready delimiter-separated table: '#' header lines echoing the
/// resolved configuration, a '# columns = ...' line, then one row per
/// record. NaN is never emitted; degenerate or singular entries carry an
/// explicit sentinel token instead.
class TableWriter {
 public:
  void header(const std::string& key, const std::string& value);
  void header(const std::string& key, double value);
  void header(const std::string& key, long value);
  void columns(const std::vector<std::string>& names);

  void begin_row();
  void cell(double v);
  void cell(const std::string& token);
  void cell(long v);

  std::string str() const;
  void write_file(const std::string& path) const;

 private:
  std::string head_;
  std::string body_;
  bool row_open_ = false;
  bool first_in_row_ = true;
};

/// Flat key=value run-configuration text: one `key = value` pair per line,
/// '#' comments and blank lines ignored. Unknown keys are the caller's
/// problem; malformed lines throw std::invalid_argument.
std::map<std::string, std::string> read_kv_config(const std::string& path);

}  // namespace floqtop
