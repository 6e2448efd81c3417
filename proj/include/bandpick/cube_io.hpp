#pragma once

#include <filesystem>

#include "bandpick/image.hpp"

namespace bandpick {

// Cube on disk = JSON header {"width","height","bands","dtype":"u16",
// "interleave":"bsq","endian":"little","raw":"<relative path>"} plus a raw
// file of little-endian u16, band-sequential.
HyperCube load_cube(const std::filesystem::path& header_path);
void write_cube(const HyperCube& cube, const std::filesystem::path& header_path);

// Ground truth = CSV of H rows x W integer cells, optional first line
// "#classes=<Nc>". Without the header, n_classes = max label found.
GroundTruth load_gt(const std::filesystem::path& path);
void write_gt(const GroundTruth& gt, const std::filesystem::path& path);

void write_real_csv(const RealImage& image, const std::filesystem::path& path);

// Write-to-temp-then-rename so partially written outputs never appear.
void atomic_write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace bandpick
