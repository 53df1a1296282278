#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "errors.hpp"

namespace cheeger2d {

// All numeric output is printed at 9 significant digits.
inline std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

// Write-through-temp-then-rename so readers never observe a partial file.
inline void write_text_atomic(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw io_error("cannot open for writing: " + tmp.string());
        out << content;
        if (!out) throw io_error("write failed: " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw io_error("cannot move " + tmp.string() + " to " + path.string());
}

} // namespace cheeger2d
