#pragma once

#include "situp/imageproc.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace situp {

// Decodes an image file into an RGB (3-channel) or gray (1-channel) plane.
// Throws Error(FrameDecode).
ImagePlane read_image(const std::filesystem::path& path);

// Writes an 8-bit PNG; intensities are rounded and clamped to [0, 255].
void write_png(const std::filesystem::path& path, const ImagePlane& img);

// Writes content to a sibling temp file, then renames it over path.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

// Shortest decimal representation that round-trips.
std::string format_double(double v);

}  // namespace situp
