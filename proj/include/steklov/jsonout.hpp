#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

namespace steklov::jsonout {

/// Output precision: 17 significant digits by default (round-trips any
/// double, byte-stable across runs); lowered only via the CLI --digits flag.
inline int& output_digits() {
    static int digits = 17;
    return digits;
}

inline std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", output_digits(), v);
    return buf;
}

inline std::string escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += ch;
        }
    }
    return out;
}

/// Minimal ordered JSON object builder (insertion order preserved; keys are
/// emitted exactly once, the caller keeps them unique).
class Object {
public:
    Object& field(const std::string& key, double v) { return raw(key, num(v)); }
    Object& field(const std::string& key, int v) { return raw(key, std::to_string(v)); }
    Object& field(const std::string& key, std::int64_t v) { return raw(key, std::to_string(v)); }
    Object& field(const std::string& key, bool v) { return raw(key, v ? "true" : "false"); }
    Object& field(const std::string& key, const std::string& v) {
        return raw(key, "\"" + escape(v) + "\"");
    }
    Object& field(const std::string& key, const char* v) { return field(key, std::string(v)); }
    Object& raw(const std::string& key, const std::string& json) {
        buf_ += first_ ? "" : ",";
        buf_ += "\"" + escape(key) + "\":" + json;
        first_ = false;
        return *this;
    }
    std::string str() const { return "{" + buf_ + "}"; }

private:
    std::string buf_;
    bool first_ = true;
};

class Array {
public:
    Array& add(double v) { return raw(num(v)); }
    Array& add(const std::string& v) { return raw("\"" + escape(v) + "\""); }
    Array& raw(const std::string& json) {
        buf_ += first_ ? "" : ",";
        buf_ += json;
        first_ = false;
        return *this;
    }
    std::string str() const { return "[" + buf_ + "]"; }

private:
    std::string buf_;
    bool first_ = true;
};

} // namespace steklov::jsonout
