#pragma once

#include <filesystem>
#include <string>

#include "waveorbit/field.hpp"

namespace waveorbit {

// Flat binary field record, little-endian:
//   int64 dim, double extent[dim], int64 points[dim],
//   then re/im pairs of 64-bit floats in row-major order.
void write_field(const std::filesystem::path& path, const ComplexField& u);
ComplexField read_field(const std::filesystem::path& path);

}  // namespace waveorbit
