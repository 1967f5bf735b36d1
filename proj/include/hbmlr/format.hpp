#pragma once

#include <charconv>
#include <cstdint>
#include <string>

#include "hbmlr/types.hpp"

namespace hbmlr {

// 17 significant digits: enough to reload a double bit-faithfully.
inline std::string format_g17(double x) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& text) {
    double value = 0.0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
        throw Error("unparsable number '" + text + "'");
    return value;
}

}  // namespace hbmlr
