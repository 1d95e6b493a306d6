#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace varleb_cli {

// Streaming JSON writer with insertion-ordered keys, two-space indent, and a
// fixed %.17g float format, so rerunning a config writes byte-identical
// reports. Keys are emitted with key()/kv(); containers with the begin/end
// pairs. No validation beyond what the call order implies.
class JsonWriter {
 public:
  explicit JsonWriter(std::ostream& out) : out_(out) {}

  void begin_object() { open('{'); }
  void end_object() { close('}'); }
  void begin_array() { open('['); }
  void end_array() { close(']'); }

  void key(const std::string& k) {
    separate();
    write_string(k);
    out_ << ": ";
    after_key_ = true;
  }

  void value(double v) {
    separate();
    out_ << num(v);
  }
  void value(long v) {
    separate();
    out_ << v;
  }
  void value(int v) { value(long(v)); }
  void value(bool v) {
    separate();
    out_ << (v ? "true" : "false");
  }
  void value(const std::string& v) {
    separate();
    write_string(v);
  }
  void value(const char* v) { value(std::string(v)); }

  template <class T>
  void kv(const std::string& k, T v) {
    key(k);
    value(v);
  }

  static std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
  }

 private:
  std::ostream& out_;
  std::vector<bool> first_;  // one flag per open container
  bool after_key_ = false;

  // comma/newline/indent before the next element; a value right after its
  // key stays on the key's line
  void separate() {
    if (after_key_) {
      after_key_ = false;
      return;
    }
    if (first_.empty()) return;  // top-level value
    if (!first_.back()) out_ << ",";
    first_.back() = false;
    out_ << "\n" << std::string(2 * first_.size(), ' ');
  }

  void open(char c) {
    separate();
    out_ << c;
    first_.push_back(true);
  }

  void close(char c) {
    const bool empty = first_.back();
    first_.pop_back();
    if (!empty) out_ << "\n" << std::string(2 * first_.size(), ' ');
    out_ << c;
  }

  void write_string(const std::string& v) {
    out_ << '"';
    for (char c : v) {
      if (c == '"' || c == '\\') {
        out_ << '\\' << c;
      } else if (static_cast<unsigned char>(c) < 0x20) {
        char buf[8];
        std::snprintf(buf, sizeof buf, "\\u%04x", c);
        out_ << buf;
      } else {
        out_ << c;
      }
    }
    out_ << '"';
  }
};

}  // namespace varleb_cli
