#include "tiff_codec.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <optional>
#include <vector>

#include "fadsar/errors.hpp"
#include "fadsar/util/numeric.hpp"

static_assert(std::endian::native == std::endian::little, "little-endian host assumed");

namespace fadsar::ingest::tiff {

namespace {

constexpr std::uint16_t kTagImageWidth = 256;
constexpr std::uint16_t kTagImageLength = 257;
constexpr std::uint16_t kTagBitsPerSample = 258;
constexpr std::uint16_t kTagCompression = 259;
constexpr std::uint16_t kTagPhotometric = 262;
constexpr std::uint16_t kTagStripOffsets = 273;
constexpr std::uint16_t kTagSamplesPerPixel = 277;
constexpr std::uint16_t kTagRowsPerStrip = 278;
constexpr std::uint16_t kTagStripByteCounts = 279;
constexpr std::uint16_t kTagPlanarConfig = 284;
constexpr std::uint16_t kTagSampleFormat = 339;
constexpr std::uint16_t kTagModelPixelScale = 33550;
constexpr std::uint16_t kTagGdalNodata = 42113;

constexpr std::uint16_t kTypeShort = 3;
constexpr std::uint16_t kTypeLong = 4;
constexpr std::uint16_t kTypeAscii = 2;
constexpr std::uint16_t kTypeDouble = 12;

std::size_t type_size(std::uint16_t type) {
    switch (type) {
        case 1: case 2: case 6: case 7: return 1;
        case 3: case 8: return 2;
        case 4: case 9: case 11: return 4;
        case 5: case 10: case 12: return 8;
        default: return 0;
    }
}

struct Reader {
    std::vector<unsigned char> buf;
    bool swap = false;  // file byte order differs from host (little-endian)

    void require(bool ok, const std::string& msg) const {
        if (!ok) throw UnsupportedFormatError("tiff: " + msg);
    }

    std::uint16_t u16(std::size_t at) const {
        require(at + 2 <= buf.size(), "truncated file");
        std::uint16_t v;
        std::memcpy(&v, buf.data() + at, 2);
        if (swap) v = static_cast<std::uint16_t>((v >> 8) | (v << 8));
        return v;
    }

    std::uint32_t u32(std::size_t at) const {
        require(at + 4 <= buf.size(), "truncated file");
        std::uint32_t v;
        std::memcpy(&v, buf.data() + at, 4);
        if (swap) v = __builtin_bswap32(v);
        return v;
    }

    double f64(std::size_t at) const {
        require(at + 8 <= buf.size(), "truncated file");
        std::uint64_t v;
        std::memcpy(&v, buf.data() + at, 8);
        if (swap) v = __builtin_bswap64(v);
        double d;
        std::memcpy(&d, &v, 8);
        return d;
    }
};

struct Entry {
    std::uint16_t type = 0;
    std::uint32_t count = 0;
    std::size_t value_at = 0;  // absolute offset of the value bytes
};

struct Ifd {
    std::map<std::uint16_t, Entry> entries;

    const Entry* find(std::uint16_t tag) const {
        const auto it = entries.find(tag);
        return it == entries.end() ? nullptr : &it->second;
    }
};

Reader load_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    Reader r;
    in.seekg(0, std::ios::end);
    const auto size = in.tellg();
    in.seekg(0);
    r.buf.resize(static_cast<std::size_t>(size));
    in.read(reinterpret_cast<char*>(r.buf.data()), size);
    if (!in) throw IoError("cannot read " + path.string());

    r.require(r.buf.size() >= 8, "file too small");
    if (r.buf[0] == 'I' && r.buf[1] == 'I') {
        r.swap = false;
    } else if (r.buf[0] == 'M' && r.buf[1] == 'M') {
        r.swap = true;
    } else {
        throw UnsupportedFormatError("tiff: bad byte-order mark in " + path.string());
    }
    const std::uint16_t magic = r.u16(2);
    if (magic == 43) throw UnsupportedFormatError("tiff: BigTIFF is not supported");
    r.require(magic == 42, "bad magic");
    return r;
}

Ifd parse_ifd(const Reader& r) {
    const std::uint32_t ifd_off = r.u32(4);
    const std::uint16_t n = r.u16(ifd_off);
    Ifd ifd;
    for (std::uint16_t i = 0; i < n; ++i) {
        const std::size_t at = ifd_off + 2 + static_cast<std::size_t>(i) * 12;
        Entry e;
        const std::uint16_t tag = r.u16(at);
        e.type = r.u16(at + 2);
        e.count = r.u32(at + 4);
        const std::size_t bytes = type_size(e.type) * e.count;
        e.value_at = bytes <= 4 ? at + 8 : r.u32(at + 8);
        ifd.entries[tag] = e;
    }
    return ifd;
}

std::uint32_t scalar(const Reader& r, const Entry& e) {
    if (e.type == kTypeShort) return r.u16(e.value_at);
    if (e.type == kTypeLong) return r.u32(e.value_at);
    throw UnsupportedFormatError("tiff: unexpected tag type " + std::to_string(e.type));
}

std::vector<std::uint32_t> scalar_array(const Reader& r, const Entry& e) {
    std::vector<std::uint32_t> out(e.count);
    const std::size_t sz = type_size(e.type);
    for (std::uint32_t i = 0; i < e.count; ++i) {
        out[i] = e.type == kTypeShort ? r.u16(e.value_at + i * sz) : r.u32(e.value_at + i * sz);
    }
    return out;
}

RasterHeader header_from_ifd(const Reader& r, const Ifd& ifd, const std::filesystem::path& path) {
    const Entry* we = ifd.find(kTagImageWidth);
    const Entry* he = ifd.find(kTagImageLength);
    if (!we || !he) throw UnsupportedFormatError("tiff: missing dimensions in " + path.string());

    RasterHeader h;
    h.width = static_cast<int>(scalar(r, *we));
    h.height = static_cast<int>(scalar(r, *he));
    if (h.width <= 0 || h.height <= 0)
        throw UnsupportedFormatError("tiff: bad dimensions in " + path.string());

    if (const Entry* e = ifd.find(kTagModelPixelScale); e && e->type == kTypeDouble && e->count >= 1) {
        const double sx = r.f64(e->value_at);
        if (sx > 0.0) h.pixel_spacing_m = sx;
    }
    if (const Entry* e = ifd.find(kTagGdalNodata); e && e->type == kTypeAscii && e->count > 0) {
        std::string s(reinterpret_cast<const char*>(r.buf.data()) + e->value_at, e->count);
        while (!s.empty() && (s.back() == '\0' || s.back() == ' ')) s.pop_back();
        if (const auto v = util::parse_double(s)) h.nodata_sentinel = static_cast<float>(*v);
    }
    return h;
}

enum class SampleKind { Float32, Int16 };

SampleKind sample_kind(const Reader& r, const Ifd& ifd) {
    if (const Entry* e = ifd.find(kTagCompression); e && scalar(r, *e) != 1)
        throw UnsupportedFormatError("tiff: only uncompressed data is supported");
    if (const Entry* e = ifd.find(kTagSamplesPerPixel); e && scalar(r, *e) != 1)
        throw UnsupportedFormatError("tiff: only single-band rasters are supported");
    if (const Entry* e = ifd.find(kTagPlanarConfig); e && scalar(r, *e) != 1)
        throw UnsupportedFormatError("tiff: only chunky planar layout is supported");

    std::uint32_t bits = 1;
    if (const Entry* e = ifd.find(kTagBitsPerSample)) bits = scalar(r, *e);
    std::uint32_t fmt = 1;  // unsigned int by default
    if (const Entry* e = ifd.find(kTagSampleFormat)) fmt = scalar(r, *e);

    if (fmt == 3 && bits == 32) return SampleKind::Float32;
    if (fmt == 2 && bits == 16) return SampleKind::Int16;
    throw UnsupportedFormatError("tiff: unsupported sample layout (format " + std::to_string(fmt) +
                                 ", " + std::to_string(bits) + " bits)");
}

}  // namespace

RasterHeader read_header(const std::filesystem::path& path) {
    const Reader r = load_file(path);
    return header_from_ifd(r, parse_ifd(r), path);
}

core::Raster read(const std::filesystem::path& path) {
    const Reader r = load_file(path);
    const Ifd ifd = parse_ifd(r);
    const RasterHeader h = header_from_ifd(r, ifd, path);
    const SampleKind kind = sample_kind(r, ifd);

    const Entry* offs_e = ifd.find(kTagStripOffsets);
    const Entry* cnts_e = ifd.find(kTagStripByteCounts);
    if (!offs_e || !cnts_e)
        throw UnsupportedFormatError("tiff: missing strip layout in " + path.string());
    const auto offsets = scalar_array(r, *offs_e);
    const auto counts = scalar_array(r, *cnts_e);
    if (offsets.size() != counts.size())
        throw UnsupportedFormatError("tiff: inconsistent strip tables in " + path.string());

    core::Raster raster;
    raster.width = h.width;
    raster.height = h.height;
    raster.pixel_spacing_m = h.pixel_spacing_m;
    raster.nodata_sentinel = h.nodata_sentinel;
    raster.values.resize(raster.cell_count());

    const std::size_t sample_bytes = kind == SampleKind::Float32 ? 4 : 2;
    std::size_t cell = 0;
    for (std::size_t s = 0; s < offsets.size(); ++s) {
        const std::size_t n = counts[s] / sample_bytes;
        r.require(offsets[s] + counts[s] <= r.buf.size(), "strip past end of file");
        for (std::size_t i = 0; i < n; ++i) {
            if (cell >= raster.values.size())
                throw UnsupportedFormatError("tiff: more samples than width*height");
            const std::size_t at = offsets[s] + i * sample_bytes;
            if (kind == SampleKind::Float32) {
                std::uint32_t v;
                std::memcpy(&v, r.buf.data() + at, 4);
                if (r.swap) v = __builtin_bswap32(v);
                float f;
                std::memcpy(&f, &v, 4);
                raster.values[cell++] = f;
            } else {
                std::uint16_t v;
                std::memcpy(&v, r.buf.data() + at, 2);
                if (r.swap) v = static_cast<std::uint16_t>((v >> 8) | (v << 8));
                raster.values[cell++] = static_cast<float>(static_cast<std::int16_t>(v));
            }
        }
    }
    if (cell != raster.values.size())
        throw UnsupportedFormatError("tiff: fewer samples than width*height in " + path.string());
    return raster;
}

namespace {

struct Writer {
    std::vector<unsigned char> buf;

    void u16(std::uint16_t v) {
        buf.push_back(static_cast<unsigned char>(v & 0xFF));
        buf.push_back(static_cast<unsigned char>(v >> 8));
    }
    void u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) buf.push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xFF));
    }
    void raw(const void* p, std::size_t n) {
        const auto* b = static_cast<const unsigned char*>(p);
        buf.insert(buf.end(), b, b + n);
    }
};

struct OutEntry {
    std::uint16_t tag;
    std::uint16_t type;
    std::uint32_t count;
    std::uint32_t inline_value = 0;       // when the value fits in 4 bytes
    std::vector<unsigned char> external;  // when it does not
};

}  // namespace

void write(const core::Raster& raster, const std::filesystem::path& path) {
    if (raster.width <= 0 || raster.height <= 0 ||
        raster.values.size() != raster.cell_count()) {
        throw ConfigError("write_raster: inconsistent raster dimensions");
    }

    const std::uint32_t data_bytes = static_cast<std::uint32_t>(raster.cell_count() * 4);
    const std::uint32_t data_off = 8;

    const std::string nodata_str = util::format_float(raster.nodata_sentinel);
    std::vector<unsigned char> nodata_ascii(nodata_str.begin(), nodata_str.end());
    nodata_ascii.push_back('\0');

    std::vector<unsigned char> scale_bytes(24);
    const double scale[3] = {raster.pixel_spacing_m, raster.pixel_spacing_m, 0.0};
    std::memcpy(scale_bytes.data(), scale, 24);

    std::vector<OutEntry> entries = {
        {kTagImageWidth, kTypeLong, 1, static_cast<std::uint32_t>(raster.width), {}},
        {kTagImageLength, kTypeLong, 1, static_cast<std::uint32_t>(raster.height), {}},
        {kTagBitsPerSample, kTypeShort, 1, 32, {}},
        {kTagCompression, kTypeShort, 1, 1, {}},
        {kTagPhotometric, kTypeShort, 1, 1, {}},
        {kTagStripOffsets, kTypeLong, 1, data_off, {}},
        {kTagSamplesPerPixel, kTypeShort, 1, 1, {}},
        {kTagRowsPerStrip, kTypeLong, 1, static_cast<std::uint32_t>(raster.height), {}},
        {kTagStripByteCounts, kTypeLong, 1, data_bytes, {}},
        {kTagPlanarConfig, kTypeShort, 1, 1, {}},
        {kTagSampleFormat, kTypeShort, 1, 3, {}},
        {kTagModelPixelScale, kTypeDouble, 3, 0, scale_bytes},
        {kTagGdalNodata, kTypeAscii, static_cast<std::uint32_t>(nodata_ascii.size()), 0,
         nodata_ascii},
    };

    // Layout: header, pixel data, external tag values, IFD.
    std::uint32_t cursor = data_off + data_bytes;
    std::vector<std::uint32_t> external_offsets(entries.size(), 0);
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (!entries[i].external.empty() && entries[i].external.size() > 4) {
            if (cursor % 2 != 0) ++cursor;  // word-align external values
            external_offsets[i] = cursor;
            cursor += static_cast<std::uint32_t>(entries[i].external.size());
        }
    }
    if (cursor % 2 != 0) ++cursor;
    const std::uint32_t ifd_off = cursor;

    Writer w;
    w.buf.reserve(ifd_off + 6 + entries.size() * 12);
    w.raw("II", 2);
    w.u16(42);
    w.u32(ifd_off);
    w.raw(raster.values.data(), data_bytes);
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (external_offsets[i] != 0) {
            while (w.buf.size() < external_offsets[i]) w.buf.push_back(0);
            w.raw(entries[i].external.data(), entries[i].external.size());
        }
    }
    while (w.buf.size() < ifd_off) w.buf.push_back(0);

    w.u16(static_cast<std::uint16_t>(entries.size()));
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const OutEntry& e = entries[i];
        w.u16(e.tag);
        w.u16(e.type);
        w.u32(e.count);
        if (e.external.empty()) {
            if (e.type == kTypeShort) {
                w.u16(static_cast<std::uint16_t>(e.inline_value));
                w.u16(0);
            } else {
                w.u32(e.inline_value);
            }
        } else if (e.external.size() <= 4) {
            std::uint32_t packed = 0;
            std::memcpy(&packed, e.external.data(), e.external.size());
            w.u32(packed);
        } else {
            w.u32(external_offsets[i]);
        }
    }
    w.u32(0);  // no next IFD

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(w.buf.data()), static_cast<std::streamsize>(w.buf.size()));
    if (!out) throw IoError("cannot write " + path.string());
}

}  // namespace fadsar::ingest::tiff
