// Round-trip decimal formatting for doubles (shortest representation that
// parses back to the same bits) and small CSV helpers. All emitted files are
// UTF-8 with LF line endings.
#pragma once

#include <charconv>
#include <string>

namespace qwalls {

inline std::string fmt_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace qwalls
