#include "fadsar/preprocess/patch_io.hpp"

#include <bit>
#include <fstream>

#include <json.hpp>

#include "fadsar/errors.hpp"

namespace fadsar::preprocess {

namespace {

using ordered_json = nlohmann::ordered_json;

static_assert(std::endian::native == std::endian::little,
              "patch binaries are written little-endian");

void write_plane(std::ofstream& out, const std::vector<float>& plane) {
    out.write(reinterpret_cast<const char*>(plane.data()),
              static_cast<std::streamsize>(plane.size() * sizeof(float)));
}

}  // namespace

std::string patch_file_name(const core::Patch& patch) {
    return patch.scene_id + "_r" + std::to_string(patch.row_offset) + "_c" +
           std::to_string(patch.col_offset) + ".bin";
}

void export_patches(std::span<const core::Patch> patches,
                    std::span<const DiscardEntry> discards, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);

    std::ofstream index(dir / "patches.jsonl", std::ios::trunc);
    if (!index) throw IoError("cannot write " + (dir / "patches.jsonl").string());

    for (const auto& patch : patches) {
        const std::string file = patch_file_name(patch);
        std::ofstream bin(dir / file, std::ios::binary | std::ios::trunc);
        if (!bin) throw IoError("cannot write " + (dir / file).string());
        for (const auto& plane : patch.channels) write_plane(bin, plane);
        bin.write(reinterpret_cast<const char*>(patch.valid.data()),
                  static_cast<std::streamsize>(patch.valid.size()));
        if (!bin) throw IoError("cannot write " + (dir / file).string());

        ordered_json line;
        line["type"] = "patch";
        line["scene_id"] = patch.scene_id;
        line["row_offset"] = patch.row_offset;
        line["col_offset"] = patch.col_offset;
        line["size"] = patch.size;
        line["channel_spec"] = patch.channel_spec;
        line["file"] = file;
        index << line.dump() << '\n';
    }
    for (const auto& d : discards) {
        ordered_json line;
        line["type"] = "discard";
        line["scene_id"] = d.scene_id;
        line["row_offset"] = d.row_offset;
        line["col_offset"] = d.col_offset;
        line["size"] = d.size;
        line["reason"] = d.reason;
        index << line.dump() << '\n';
    }
    if (!index) throw IoError("cannot write " + (dir / "patches.jsonl").string());
}

PreprocessResult import_patches(const std::filesystem::path& dir) {
    std::ifstream index(dir / "patches.jsonl");
    if (!index) throw IoError("cannot open " + (dir / "patches.jsonl").string());

    PreprocessResult result;
    std::string line;
    long long line_no = 0;
    while (std::getline(index, line)) {
        ++line_no;
        if (line.empty()) continue;
        ordered_json j;
        try {
            j = ordered_json::parse(line);
        } catch (const ordered_json::parse_error& e) {
            throw SchemaError("patches.jsonl line " + std::to_string(line_no) + ": " + e.what());
        }
        const std::string type = j.value("type", "");
        if (type == "discard") {
            DiscardEntry d;
            d.scene_id = j.at("scene_id").get<std::string>();
            d.row_offset = j.at("row_offset").get<int>();
            d.col_offset = j.at("col_offset").get<int>();
            d.size = j.at("size").get<int>();
            d.reason = j.at("reason").get<std::string>();
            result.discards.push_back(std::move(d));
            continue;
        }
        if (type != "patch")
            throw SchemaError("patches.jsonl line " + std::to_string(line_no) +
                              ": unknown type '" + type + "'");

        core::Patch patch;
        patch.scene_id = j.at("scene_id").get<std::string>();
        patch.row_offset = j.at("row_offset").get<int>();
        patch.col_offset = j.at("col_offset").get<int>();
        patch.size = j.at("size").get<int>();
        patch.channel_spec = j.at("channel_spec").get<std::string>();
        if (patch.size <= 0)
            throw SchemaError("patches.jsonl line " + std::to_string(line_no) + ": bad size");

        const std::filesystem::path bin_path = dir / j.at("file").get<std::string>();
        std::ifstream bin(bin_path, std::ios::binary);
        if (!bin) throw IoError("cannot open " + bin_path.string());
        const std::size_t n = patch.cell_count();
        for (auto& plane : patch.channels) {
            plane.resize(n);
            bin.read(reinterpret_cast<char*>(plane.data()),
                     static_cast<std::streamsize>(n * sizeof(float)));
        }
        patch.valid.resize(n);
        bin.read(reinterpret_cast<char*>(patch.valid.data()), static_cast<std::streamsize>(n));
        if (!bin)
            throw UnsupportedFormatError(bin_path.string() + ": truncated patch binary");
        result.patches.push_back(std::move(patch));
    }
    return result;
}

}  // namespace fadsar::preprocess
