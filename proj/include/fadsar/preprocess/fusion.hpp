#pragma once

#include <optional>
#include <string>

#include "fadsar/core/types.hpp"
#include "fadsar/preprocess/normalize.hpp"
#include "fadsar/preprocess/tiling.hpp"

namespace fadsar::preprocess {

// How the third patch channel is built. Channels 1/2 are always VV/VH.
struct FusionMethod {
    enum class Kind { SingleAuxiliary, MeanVvVh, DiffVvVh, MeanAuxiliaries, MeanAll };

    Kind kind = Kind::MeanVvVh;
    std::string auxiliary;  // SingleAuxiliary only

    // Accepts mean_vv_vh | diff_vv_vh | mean_auxiliaries | mean_all | aux:<name>.
    // Throws ConfigError on anything else.
    static FusionMethod parse(const std::string& s);
    std::string name() const;
};

// Builds the 3-channel patch for one window. Returns nullopt when the fused
// channel is Degenerate under re-normalization (DiffVvVh and the auxiliary
// fusions re-normalize; MeanVvVh does not). Throws MissingAuxiliaryError when
// the method needs auxiliaries the scene does not carry.
std::optional<core::Patch> fuse_channels(const NormalizedChannel& vv_norm,
                                         const NormalizedChannel& vh_norm,
                                         const core::Scene& scene, const RawWindow& window,
                                         EdgePolicy edge, const FusionMethod& method);

}  // namespace fadsar::preprocess
