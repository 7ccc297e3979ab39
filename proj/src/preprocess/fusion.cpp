#include "fadsar/preprocess/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "fadsar/errors.hpp"

namespace fadsar::preprocess {

namespace {

// Nearest-neighbor source index at pixel centers: aux cell holding the center
// of scene cell `i` when `n` scene cells span the same extent as `an` aux cells.
int nn_index(int i, int n, int an) {
    const long long a = (2LL * i + 1) * an / (2LL * n);
    return static_cast<int>(std::clamp<long long>(a, 0, an - 1));
}

struct AuxWindow {
    std::vector<float> values;
    std::vector<std::uint8_t> usable;
};

AuxWindow extract_aux_window(const core::Raster& aux, const RawWindow& window, EdgePolicy edge,
                             int scene_height, int scene_width) {
    const int p = window.size;
    AuxWindow out;
    out.values.assign(window.cell_count(), 0.0f);
    out.usable.assign(window.cell_count(), 0);
    for (int r = 0; r < p; ++r) {
        const auto sr = source_index(window.row_offset, r, scene_height, edge);
        if (!sr) continue;
        const int ar = nn_index(*sr, scene_height, aux.height);
        for (int c = 0; c < p; ++c) {
            const auto sc = source_index(window.col_offset, c, scene_width, edge);
            if (!sc) continue;
            const int ac = nn_index(*sc, scene_width, aux.width);
            const float v = aux.at(ar, ac);
            const std::size_t i = static_cast<std::size_t>(r) * p + c;
            out.values[i] = v;
            out.usable[i] = std::isfinite(v) && !aux.is_missing(v);
        }
    }
    return out;
}

std::optional<NormalizedChannel> normalized_aux_window(const core::Raster& aux,
                                                       const RawWindow& window, EdgePolicy edge,
                                                       int scene_height, int scene_width) {
    const AuxWindow raw = extract_aux_window(aux, window, edge, scene_height, scene_width);
    return min_max_normalize(raw.values, raw.usable);
}

// Elementwise mean over channels; a cell is valid only when valid in every input.
NormalizedChannel mean_channels(const std::vector<const NormalizedChannel*>& inputs) {
    const std::size_t n = inputs.front()->values.size();
    NormalizedChannel out;
    out.values.assign(n, 0.0f);
    out.valid.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        float sum = 0.0f;
        bool ok = true;
        for (const auto* ch : inputs) {
            if (!ch->valid[i]) {
                ok = false;
                break;
            }
            sum += ch->values[i];
        }
        if (ok) {
            out.values[i] = sum / static_cast<float>(inputs.size());
            out.valid[i] = 1;
        }
    }
    return out;
}

std::vector<const core::Raster*> scene_auxiliaries(const core::Scene& scene,
                                                   const FusionMethod& method) {
    std::vector<const core::Raster*> rasters;
    for (const auto& [name, raster] : scene.auxiliaries) rasters.push_back(&raster);
    if (rasters.empty())
        throw MissingAuxiliaryError("fusion '" + method.name() +
                                    "' requires auxiliary channels, scene '" + scene.scene_id +
                                    "' has none");
    return rasters;
}

}  // namespace

FusionMethod FusionMethod::parse(const std::string& s) {
    FusionMethod m;
    if (s == "mean_vv_vh") {
        m.kind = Kind::MeanVvVh;
    } else if (s == "diff_vv_vh") {
        m.kind = Kind::DiffVvVh;
    } else if (s == "mean_auxiliaries") {
        m.kind = Kind::MeanAuxiliaries;
    } else if (s == "mean_all") {
        m.kind = Kind::MeanAll;
    } else if (s.rfind("aux:", 0) == 0 && s.size() > 4) {
        m.kind = Kind::SingleAuxiliary;
        m.auxiliary = s.substr(4);
        if (m.auxiliary == "wind_mass") m.auxiliary = "wind_quality";
    } else {
        throw ConfigError("unknown fusion method '" + s + "'");
    }
    return m;
}

std::string FusionMethod::name() const {
    switch (kind) {
        case Kind::SingleAuxiliary: return "aux:" + auxiliary;
        case Kind::MeanVvVh: return "mean_vv_vh";
        case Kind::DiffVvVh: return "diff_vv_vh";
        case Kind::MeanAuxiliaries: return "mean_auxiliaries";
        case Kind::MeanAll: return "mean_all";
    }
    return "mean_vv_vh";
}

std::optional<core::Patch> fuse_channels(const NormalizedChannel& vv_norm,
                                         const NormalizedChannel& vh_norm,
                                         const core::Scene& scene, const RawWindow& window,
                                         EdgePolicy edge, const FusionMethod& method) {
    const std::size_t n = window.cell_count();
    NormalizedChannel ch3;

    switch (method.kind) {
        case FusionMethod::Kind::MeanVvVh:
            ch3 = mean_channels({&vv_norm, &vh_norm});
            break;

        case FusionMethod::Kind::DiffVvVh: {
            std::vector<float> diff(n, 0.0f);
            std::vector<std::uint8_t> usable(n, 0);
            for (std::size_t i = 0; i < n; ++i) {
                if (!vv_norm.valid[i] || !vh_norm.valid[i]) continue;
                diff[i] = vv_norm.values[i] - vh_norm.values[i];
                usable[i] = 1;
            }
            auto renorm = min_max_normalize(diff, usable);
            if (!renorm) return std::nullopt;
            ch3 = std::move(*renorm);
            break;
        }

        case FusionMethod::Kind::SingleAuxiliary: {
            const auto it = scene.auxiliaries.find(method.auxiliary);
            if (it == scene.auxiliaries.end())
                throw MissingAuxiliaryError("scene '" + scene.scene_id +
                                            "' has no auxiliary channel '" + method.auxiliary +
                                            "'");
            auto norm = normalized_aux_window(it->second, window, edge, scene.height(),
                                              scene.width());
            if (!norm) return std::nullopt;
            ch3 = std::move(*norm);
            break;
        }

        case FusionMethod::Kind::MeanAuxiliaries:
        case FusionMethod::Kind::MeanAll: {
            std::vector<NormalizedChannel> normed;
            for (const core::Raster* aux : scene_auxiliaries(scene, method)) {
                auto norm = normalized_aux_window(*aux, window, edge, scene.height(),
                                                  scene.width());
                if (!norm) return std::nullopt;
                normed.push_back(std::move(*norm));
            }
            std::vector<const NormalizedChannel*> inputs;
            if (method.kind == FusionMethod::Kind::MeanAll) {
                inputs.push_back(&vv_norm);
                inputs.push_back(&vh_norm);
            }
            for (const auto& ch : normed) inputs.push_back(&ch);
            const NormalizedChannel mean = mean_channels(inputs);
            auto renorm = min_max_normalize(mean.values, mean.valid);
            if (!renorm) return std::nullopt;
            ch3 = std::move(*renorm);
            break;
        }
    }

    core::Patch patch;
    patch.scene_id = window.scene_id;
    patch.row_offset = window.row_offset;
    patch.col_offset = window.col_offset;
    patch.size = window.size;
    patch.channel_spec = "vv,vh," + method.name();
    patch.channels[0] = vv_norm.values;
    patch.channels[1] = vh_norm.values;
    patch.channels[2] = std::move(ch3.values);
    patch.valid.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        patch.valid[i] = vv_norm.valid[i] && vh_norm.valid[i] && ch3.valid[i];
        if (!patch.valid[i]) {
            patch.channels[0][i] = 0.0f;
            patch.channels[1][i] = 0.0f;
            patch.channels[2][i] = 0.0f;
        }
    }
    return patch;
}

}  // namespace fadsar::preprocess
