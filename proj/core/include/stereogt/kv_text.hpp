#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace stereogt {

/// Line-oriented `key=value` document. Blank lines and lines starting with
/// '#' are ignored; keys are unique. Insertion order is kept for writing.
class KeyValueDoc {
 public:
  /// Throws FormatError on malformed lines or duplicate keys. `source` names
  /// the file in diagnostics.
  static KeyValueDoc parse(std::string_view text, const std::string& source = "<text>");
  static KeyValueDoc load(const std::string& path);

  void set(const std::string& key, std::string value);
  void set(const std::string& key, double value);
  void set(const std::string& key, long long value);
  void set(const std::string& key, const std::vector<double>& values);

  [[nodiscard]] bool has(const std::string& key) const { return index_.count(key) != 0; }
  [[nodiscard]] const std::string& get(const std::string& key) const;
  [[nodiscard]] std::string get_or(const std::string& key, const std::string& fallback) const;
  [[nodiscard]] double get_double(const std::string& key) const;
  [[nodiscard]] double get_double_or(const std::string& key, double fallback) const;
  [[nodiscard]] long long get_int(const std::string& key) const;
  [[nodiscard]] long long get_int_or(const std::string& key, long long fallback) const;
  [[nodiscard]] std::uint64_t get_u64_or(const std::string& key, std::uint64_t fallback) const;
  [[nodiscard]] bool get_bool_or(const std::string& key, bool fallback) const;
  /// Whitespace-separated floats; throws FormatError when the count differs
  /// from `expected` (pass 0 to accept any count).
  [[nodiscard]] std::vector<double> get_doubles(const std::string& key, std::size_t expected = 0) const;

  [[nodiscard]] const std::vector<std::pair<std::string, std::string>>& entries() const {
    return entries_;
  }
  [[nodiscard]] std::vector<std::string> keys_with_prefix(std::string_view prefix) const;

  /// Merges `other` into this document; duplicate keys are an error.
  void merge(const KeyValueDoc& other);

  [[nodiscard]] std::string to_string() const;
  void save(const std::string& path) const;

  [[nodiscard]] const std::string& source() const { return source_; }

 private:
  [[noreturn]] void fail(const std::string& msg) const;

  std::string source_ = "<text>";
  std::vector<std::pair<std::string, std::string>> entries_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

}  // namespace stereogt
