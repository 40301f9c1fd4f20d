#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tart::io {

/// Reads a whole file; throws ParseError if it cannot be opened.
std::vector<std::uint8_t> read_file(const std::string& path);
std::string read_text_file(const std::string& path);

/// Writes bytes/text, creating or truncating; throws ParseError on failure.
void write_file(const std::string& path, const std::string& contents);
void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes);

// Little-endian scalar helpers used by the binary file formats.
void put_u32le(std::vector<std::uint8_t>& out, std::uint32_t v);
void put_f32le(std::vector<std::uint8_t>& out, float v);
std::uint32_t get_u32le(const std::uint8_t* p);
float get_f32le(const std::uint8_t* p);

}  // namespace tart::io
