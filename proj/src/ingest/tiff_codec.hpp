#pragma once

#include <filesystem>

#include "fadsar/core/types.hpp"
#include "fadsar/ingest/raster_io.hpp"

namespace fadsar::ingest::tiff {

// Minimal GeoTIFF support: classic TIFF, single band, uncompressed strips,
// float32 or int16 samples, either byte order. Pixel spacing comes from
// ModelPixelScale (tag 33550) and the missing-value sentinel from GDAL_NODATA
// (tag 42113); defaults apply when the tags are absent. The writer emits
// little-endian float32 with both tags.

core::Raster read(const std::filesystem::path& path);
RasterHeader read_header(const std::filesystem::path& path);
void write(const core::Raster& raster, const std::filesystem::path& path);

}  // namespace fadsar::ingest::tiff
