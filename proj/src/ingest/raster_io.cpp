#include "fadsar/ingest/raster_io.hpp"

#include <bit>
#include <fstream>

#include <json.hpp>

#include "fadsar/errors.hpp"
#include "tiff_codec.hpp"

static_assert(std::endian::native == std::endian::little, "little-endian host assumed");

namespace fadsar::ingest {

namespace {

enum class Format { GeoTiff, RawBinary };

Format format_for(const std::filesystem::path& path) {
    const std::string ext = path.extension().string();
    if (ext == ".tif" || ext == ".tiff") return Format::GeoTiff;
    if (ext == ".bin") return Format::RawBinary;
    throw UnsupportedFormatError("unsupported raster extension '" + ext + "' in " + path.string());
}

std::filesystem::path header_path_for(const std::filesystem::path& bin_path) {
    std::filesystem::path p = bin_path;
    p.replace_extension(".json");
    return p;
}

RasterHeader read_raw_header(const std::filesystem::path& bin_path) {
    const auto hpath = header_path_for(bin_path);
    std::ifstream in(hpath);
    if (!in) throw IoError("cannot open raster header " + hpath.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw UnsupportedFormatError("bad raster header " + hpath.string() + ": " + e.what());
    }
    if (!j.contains("width") || !j.contains("height"))
        throw UnsupportedFormatError("raster header " + hpath.string() + " lacks width/height");

    RasterHeader h;
    h.width = j.at("width").get<int>();
    h.height = j.at("height").get<int>();
    if (h.width <= 0 || h.height <= 0)
        throw UnsupportedFormatError("raster header " + hpath.string() + " has bad dimensions");
    if (j.contains("pixel_spacing_m")) h.pixel_spacing_m = j.at("pixel_spacing_m").get<double>();
    if (h.pixel_spacing_m <= 0.0)
        throw UnsupportedFormatError("raster header " + hpath.string() + " has bad pixel spacing");
    if (j.contains("nodata")) h.nodata_sentinel = j.at("nodata").get<float>();
    return h;
}

core::Raster read_raw(const std::filesystem::path& bin_path) {
    const RasterHeader h = read_raw_header(bin_path);

    std::ifstream in(bin_path, std::ios::binary);
    if (!in) throw IoError("cannot open " + bin_path.string());
    in.seekg(0, std::ios::end);
    const std::size_t size = static_cast<std::size_t>(in.tellg());
    in.seekg(0);

    core::Raster raster;
    raster.width = h.width;
    raster.height = h.height;
    raster.pixel_spacing_m = h.pixel_spacing_m;
    raster.nodata_sentinel = h.nodata_sentinel;
    const std::size_t expected = raster.cell_count() * sizeof(float);
    if (size != expected) {
        throw UnsupportedFormatError(bin_path.string() + ": expected " + std::to_string(expected) +
                                     " bytes, found " + std::to_string(size));
    }
    raster.values.resize(raster.cell_count());
    in.read(reinterpret_cast<char*>(raster.values.data()), static_cast<std::streamsize>(expected));
    if (!in) throw IoError("cannot read " + bin_path.string());
    return raster;
}

void write_raw(const core::Raster& raster, const std::filesystem::path& bin_path) {
    nlohmann::json j;
    j["width"] = raster.width;
    j["height"] = raster.height;
    j["pixel_spacing_m"] = raster.pixel_spacing_m;
    j["nodata"] = raster.nodata_sentinel;

    const auto hpath = header_path_for(bin_path);
    std::ofstream hout(hpath, std::ios::trunc);
    if (!hout) throw IoError("cannot open " + hpath.string() + " for writing");
    hout << j.dump(2) << "\n";
    if (!hout) throw IoError("cannot write " + hpath.string());

    std::ofstream out(bin_path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + bin_path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(raster.values.data()),
              static_cast<std::streamsize>(raster.values.size() * sizeof(float)));
    if (!out) throw IoError("cannot write " + bin_path.string());
}

}  // namespace

core::Raster read_raster(const std::filesystem::path& path) {
    switch (format_for(path)) {
        case Format::GeoTiff: return tiff::read(path);
        case Format::RawBinary: return read_raw(path);
    }
    throw UnsupportedFormatError("unreachable");
}

RasterHeader read_raster_header(const std::filesystem::path& path) {
    switch (format_for(path)) {
        case Format::GeoTiff: return tiff::read_header(path);
        case Format::RawBinary: return read_raw_header(path);
    }
    throw UnsupportedFormatError("unreachable");
}

void write_raster(const core::Raster& raster, const std::filesystem::path& path) {
    if (raster.width <= 0 || raster.height <= 0 || raster.values.size() != raster.cell_count())
        throw ConfigError("write_raster: inconsistent raster dimensions");
    switch (format_for(path)) {
        case Format::GeoTiff: tiff::write(raster, path); return;
        case Format::RawBinary: write_raw(raster, path); return;
    }
}

}  // namespace fadsar::ingest
