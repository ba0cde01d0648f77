#include "stereogt/kv_text.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "stereogt/errors.hpp"

namespace stereogt {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

KeyValueDoc KeyValueDoc::parse(std::string_view text, const std::string& source) {
  KeyValueDoc doc;
  doc.source_ = source;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const std::string_view line = trim(text.substr(pos, nl - pos));
    ++line_no;
    pos = nl + 1;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      doc.fail("line " + std::to_string(line_no) + ": expected key=value");
    }
    const std::string key(trim(line.substr(0, eq)));
    if (key.empty()) doc.fail("line " + std::to_string(line_no) + ": empty key");
    if (doc.has(key)) doc.fail("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    doc.set(key, std::string(trim(line.substr(eq + 1))));
  }
  return doc;
}

KeyValueDoc KeyValueDoc::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path + ": cannot open for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

void KeyValueDoc::fail(const std::string& msg) const { throw FormatError(source_ + ": " + msg); }

void KeyValueDoc::set(const std::string& key, std::string value) {
  if (key.find('=') != std::string::npos || key.find('\n') != std::string::npos) {
    throw ArgumentError("invalid key '" + key + "'");
  }
  if (auto it = index_.find(key); it != index_.end()) {
    entries_[it->second].second = std::move(value);
    return;
  }
  index_.emplace(key, entries_.size());
  entries_.emplace_back(key, std::move(value));
}

void KeyValueDoc::set(const std::string& key, double value) { set(key, format_double(value)); }

void KeyValueDoc::set(const std::string& key, long long value) { set(key, std::to_string(value)); }

void KeyValueDoc::set(const std::string& key, const std::vector<double>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += ' ';
    s += format_double(values[i]);
  }
  set(key, std::move(s));
}

const std::string& KeyValueDoc::get(const std::string& key) const {
  auto it = index_.find(key);
  if (it == index_.end()) fail("missing key '" + key + "'");
  return entries_[it->second].second;
}

std::string KeyValueDoc::get_or(const std::string& key, const std::string& fallback) const {
  return has(key) ? get(key) : fallback;
}

namespace {

template <class T>
bool parse_number(std::string_view s, T& out) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

}  // namespace

double KeyValueDoc::get_double(const std::string& key) const {
  double v = 0.0;
  if (!parse_number(get(key), v)) fail("key '" + key + "': expected a number");
  return v;
}

double KeyValueDoc::get_double_or(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

long long KeyValueDoc::get_int(const std::string& key) const {
  long long v = 0;
  if (!parse_number(get(key), v)) fail("key '" + key + "': expected an integer");
  return v;
}

long long KeyValueDoc::get_int_or(const std::string& key, long long fallback) const {
  return has(key) ? get_int(key) : fallback;
}

std::uint64_t KeyValueDoc::get_u64_or(const std::string& key, std::uint64_t fallback) const {
  if (!has(key)) return fallback;
  std::uint64_t v = 0;
  if (!parse_number(get(key), v)) fail("key '" + key + "': expected an unsigned integer");
  return v;
}

bool KeyValueDoc::get_bool_or(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const std::string& v = get(key);
  if (v == "1" || v == "true" || v == "on" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "off" || v == "no") return false;
  fail("key '" + key + "': expected a boolean");
}

std::vector<double> KeyValueDoc::get_doubles(const std::string& key, std::size_t expected) const {
  std::vector<double> out;
  std::string_view s = get(key);
  while (true) {
    s = trim(s);
    if (s.empty()) break;
    auto sp = s.find_first_of(" \t");
    const std::string_view tok = s.substr(0, sp);
    double v = 0.0;
    if (!parse_number(tok, v)) fail("key '" + key + "': malformed number '" + std::string(tok) + "'");
    out.push_back(v);
    if (sp == std::string_view::npos) break;
    s.remove_prefix(sp);
  }
  if (expected != 0 && out.size() != expected) {
    fail("key '" + key + "': expected " + std::to_string(expected) + " values, got " +
         std::to_string(out.size()));
  }
  return out;
}

std::vector<std::string> KeyValueDoc::keys_with_prefix(std::string_view prefix) const {
  std::vector<std::string> out;
  for (const auto& [k, v] : entries_) {
    if (k.size() >= prefix.size() && std::string_view(k).substr(0, prefix.size()) == prefix) {
      out.push_back(k);
    }
  }
  return out;
}

void KeyValueDoc::merge(const KeyValueDoc& other) {
  for (const auto& [k, v] : other.entries_) {
    if (has(k)) fail("duplicate key '" + k + "' while merging " + other.source_);
    set(k, v);
  }
}

std::string KeyValueDoc::to_string() const {
  std::string out;
  for (const auto& [k, v] : entries_) {
    out += k;
    out += '=';
    out += v;
    out += '\n';
  }
  return out;
}

void KeyValueDoc::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path + ": cannot open for writing");
  const std::string s = to_string();
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
  if (!out) throw IoError(path + ": write failed");
}

}  // namespace stereogt
