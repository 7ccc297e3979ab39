#include "fadsar/annotate/coco.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <tuple>

#include <json.hpp>

#include "fadsar/errors.hpp"
#include "fadsar/preprocess/patch_io.hpp"

namespace fadsar::annotate {

namespace {

using ordered_json = nlohmann::ordered_json;

using PatchKey = std::tuple<std::string, int, int>;

int category_id(core::ClassLabel cls) { return static_cast<int>(cls) + 1; }

}  // namespace

void export_annotations(std::span<const Annotation> annotations,
                        std::span<const core::Patch> patches,
                        const std::filesystem::path& path) {
    std::vector<const core::Patch*> ordered;
    ordered.reserve(patches.size());
    for (const auto& p : patches) ordered.push_back(&p);
    std::sort(ordered.begin(), ordered.end(), [](const core::Patch* a, const core::Patch* b) {
        return std::tie(a->scene_id, a->row_offset, a->col_offset) <
               std::tie(b->scene_id, b->row_offset, b->col_offset);
    });

    std::map<PatchKey, int> image_ids;
    ordered_json images = ordered_json::array();
    for (std::size_t i = 0; i < ordered.size(); ++i) {
        const core::Patch& p = *ordered[i];
        const int id = static_cast<int>(i) + 1;
        image_ids[{p.scene_id, p.row_offset, p.col_offset}] = id;
        ordered_json img;
        img["id"] = id;
        img["file_name"] = preprocess::patch_file_name(p);
        img["width"] = p.size;
        img["height"] = p.size;
        img["scene_id"] = p.scene_id;
        img["row_offset"] = p.row_offset;
        img["col_offset"] = p.col_offset;
        images.push_back(std::move(img));
    }

    ordered_json anns = ordered_json::array();
    for (std::size_t i = 0; i < annotations.size(); ++i) {
        const Annotation& a = annotations[i];
        const auto it = image_ids.find({a.scene_id, a.row_offset, a.col_offset});
        if (it == image_ids.end())
            throw SchemaError("annotation " + a.detect_id + " references patch (" + a.scene_id +
                              ", " + std::to_string(a.row_offset) + ", " +
                              std::to_string(a.col_offset) + ") absent from the patch index");
        ordered_json ann;
        ann["id"] = static_cast<int>(i) + 1;
        ann["image_id"] = it->second;
        ann["category_id"] = category_id(a.cls);
        ann["bbox"] = {a.bbox.col_min, a.bbox.row_min, a.bbox.width(), a.bbox.height()};
        ann["area"] = a.bbox.area();
        ann["iscrowd"] = 0;
        ann["detect_id"] = a.detect_id;
        anns.push_back(std::move(ann));
    }

    ordered_json categories = ordered_json::array();
    for (core::ClassLabel cls :
         {core::ClassLabel::Fishing, core::ClassLabel::NonFishing, core::ClassLabel::NonVessel}) {
        categories.push_back(
            ordered_json{{"id", category_id(cls)}, {"name", core::to_string(cls)}});
    }

    ordered_json doc;
    doc["images"] = std::move(images);
    doc["annotations"] = std::move(anns);
    doc["categories"] = std::move(categories);

    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << doc.dump(2) << '\n';
    if (!out) throw IoError("cannot write " + path.string());
}

std::vector<Annotation> import_annotations(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    ordered_json doc;
    try {
        doc = ordered_json::parse(in);
    } catch (const ordered_json::parse_error& e) {
        throw SchemaError(path.string() + ": " + e.what());
    }
    if (!doc.contains("images") || !doc.contains("annotations") || !doc.contains("categories"))
        throw SchemaError(path.string() + ": missing images/annotations/categories");

    struct ImageRef {
        std::string scene_id;
        int row_offset = 0;
        int col_offset = 0;
    };
    std::map<int, ImageRef> images;
    for (const auto& img : doc["images"]) {
        ImageRef ref;
        ref.scene_id = img.at("scene_id").get<std::string>();
        ref.row_offset = img.at("row_offset").get<int>();
        ref.col_offset = img.at("col_offset").get<int>();
        images[img.at("id").get<int>()] = std::move(ref);
    }

    std::map<int, core::ClassLabel> categories;
    for (const auto& cat : doc["categories"]) {
        const auto cls = core::class_label_from_string(cat.at("name").get<std::string>());
        if (!cls)
            throw SchemaError(path.string() + ": unknown category '" +
                              cat.at("name").get<std::string>() + "'");
        categories[cat.at("id").get<int>()] = *cls;
    }

    std::vector<Annotation> annotations;
    for (const auto& j : doc["annotations"]) {
        Annotation a;
        const auto img = images.find(j.at("image_id").get<int>());
        if (img == images.end())
            throw SchemaError(path.string() + ": annotation references unknown image id " +
                              std::to_string(j.at("image_id").get<int>()));
        a.scene_id = img->second.scene_id;
        a.row_offset = img->second.row_offset;
        a.col_offset = img->second.col_offset;
        const auto cat = categories.find(j.at("category_id").get<int>());
        if (cat == categories.end())
            throw SchemaError(path.string() + ": annotation references unknown category id " +
                              std::to_string(j.at("category_id").get<int>()));
        a.cls = cat->second;
        const auto& bbox = j.at("bbox");
        if (!bbox.is_array() || bbox.size() != 4)
            throw SchemaError(path.string() + ": bbox must be [x, y, width, height]");
        a.bbox.col_min = bbox[0].get<int>();
        a.bbox.row_min = bbox[1].get<int>();
        a.bbox.col_max = a.bbox.col_min + bbox[2].get<int>();
        a.bbox.row_max = a.bbox.row_min + bbox[3].get<int>();
        a.detect_id = j.value("detect_id", "");
        annotations.push_back(std::move(a));
    }
    return annotations;
}

void write_drop_log(std::span<const DroppedLabel> dropped,
                    std::span<const SkippedLabel> skipped, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    const auto emit = [&](const core::LabelRecord& rec, const std::string& reason) {
        ordered_json line;
        line["detect_id"] = rec.detect_id;
        line["scene_id"] = rec.scene_id;
        line["row"] = rec.row;
        line["col"] = rec.col;
        line["reason"] = reason;
        out << line.dump() << '\n';
    };
    for (const auto& d : dropped) emit(d.record, to_string(d.reason));
    for (const auto& s : skipped) emit(s.record, s.reason);
    if (!out) throw IoError("cannot write " + path.string());
}

}  // namespace fadsar::annotate
