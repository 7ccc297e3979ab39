#pragma once

#include <filesystem>

#include "fadsar/core/types.hpp"

namespace fadsar::ingest {

struct RasterHeader {
    int width = 0;
    int height = 0;
    double pixel_spacing_m = core::kDefaultPixelSpacingM;
    float nodata_sentinel = core::kDefaultNodataSentinel;
};

/// Reads a single-band raster. The format is chosen by extension:
///   .tif/.tiff  uncompressed single-band GeoTIFF, float32 or int16
///   .bin        raw little-endian float32 row-major with a sibling .json
///               header {width, height, pixel_spacing_m, nodata}
/// Anything else raises UnsupportedFormatError.
core::Raster read_raster(const std::filesystem::path& path);

/// Header-only read; does not decode pixel data.
RasterHeader read_raster_header(const std::filesystem::path& path);

/// Writes a raster in the format implied by the extension (see read_raster).
/// GeoTIFF output is always float32.
void write_raster(const core::Raster& raster, const std::filesystem::path& path);

}  // namespace fadsar::ingest
