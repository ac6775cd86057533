#pragma once

#include <charconv>
#include <string>

namespace fcs {

// Shortest round-trip decimal form, locale-independent by construction.
inline std::string format_double(double v) {
    char buf[40];
    const auto r = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, r.ptr);
}

inline std::string format_int(long long v) {
    char buf[24];
    const auto r = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, r.ptr);
}

}  // namespace fcs
