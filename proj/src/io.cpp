#include "spde2m/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace spde2m {

std::string format_double(double value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, ptr);
}

void atomic_write(const std::filesystem::path& path, std::string_view content) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("atomic_write: cannot open " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw std::runtime_error("atomic_write: short write to " + tmp.string());
    }
    fs::rename(tmp, path);
}

std::vector<double> parse_time_grid(const std::string& text) {
    const auto bad = [&] {
        return std::invalid_argument("t-grid: expected start:stop:step, got '" + text + "'");
    };
    std::vector<double> parts;
    std::size_t begin = 0;
    while (begin <= text.size()) {
        const std::size_t colon = text.find(':', begin);
        const std::string piece =
            text.substr(begin, colon == std::string::npos ? std::string::npos : colon - begin);
        try {
            std::size_t used = 0;
            parts.push_back(std::stod(piece, &used));
            if (used != piece.size()) throw bad();
        } catch (const std::logic_error&) {
            throw bad();
        }
        if (colon == std::string::npos) break;
        begin = colon + 1;
    }
    if (parts.size() == 1) return parts;
    if (parts.size() != 3) throw bad();
    const double start = parts[0], stop = parts[1], step = parts[2];
    if (step <= 0.0 || stop < start) throw bad();
    const long count = static_cast<long>(std::floor((stop - start) / step + 1e-9));
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(count) + 1);
    for (long i = 0; i <= count; ++i) grid.push_back(start + static_cast<double>(i) * step);
    return grid;
}

std::vector<std::size_t> parse_count_list(const std::string& text) {
    std::vector<std::size_t> out;
    std::size_t begin = 0;
    while (begin <= text.size()) {
        const std::size_t comma = text.find(',', begin);
        const std::string piece =
            text.substr(begin, comma == std::string::npos ? std::string::npos : comma - begin);
        unsigned long long v = 0;
        const auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), v);
        if (ec != std::errc() || ptr != piece.data() + piece.size() || v == 0)
            throw std::invalid_argument("count list: expected positive integers, got '" + text +
                                        "'");
        out.push_back(static_cast<std::size_t>(v));
        if (comma == std::string::npos) break;
        begin = comma + 1;
    }
    return out;
}

}  // namespace spde2m
