#include <doctest.h>

#include <cmath>
#include <limits>
#include <map>

#include "fadsar/errors.hpp"
#include "fadsar/ingest/synth.hpp"
#include "fadsar/preprocess/fusion.hpp"
#include "fadsar/preprocess/normalize.hpp"
#include "fadsar/preprocess/patch_io.hpp"
#include "fadsar/preprocess/pipeline.hpp"
#include "fadsar/preprocess/tiling.hpp"
#include "fadsar/util/rng.hpp"
#include "testutil.hpp"

using namespace fadsar;
using namespace fadsar::preprocess;

namespace {

// VV holds the cell index, VH its reverse; both strictly monotone so no
// window is ever degenerate.
core::Scene ramp_scene(int width, int height) {
    core::Scene scene;
    scene.scene_id = "ramp";
    const std::size_t n = static_cast<std::size_t>(width) * height;
    std::vector<float> vv(n);
    std::vector<float> vh(n);
    for (std::size_t i = 0; i < n; ++i) {
        vv[i] = static_cast<float>(i);
        vh[i] = static_cast<float>(n - 1 - i);
    }
    scene.vv = testutil::make_raster(width, height, std::move(vv));
    scene.vh = testutil::make_raster(width, height, std::move(vh));
    return scene;
}

bool patches_equal(const core::Patch& a, const core::Patch& b) {
    return a.scene_id == b.scene_id && a.row_offset == b.row_offset &&
           a.col_offset == b.col_offset && a.size == b.size && a.channel_spec == b.channel_spec &&
           a.valid == b.valid && a.channels == b.channels;
}

}  // namespace

TEST_CASE("edge policy names round-trip") {
    for (EdgePolicy e : {EdgePolicy::PadReflect, EdgePolicy::PadZero, EdgePolicy::DropPartial}) {
        const auto back = edge_policy_from_string(to_string(e));
        REQUIRE(back.has_value());
        CHECK(*back == e);
    }
    CHECK_FALSE(edge_policy_from_string("mirror").has_value());
}

TEST_CASE("tiling policy validation") {
    TilingPolicy p;
    CHECK_NOTHROW(p.validate());
    CHECK(p.effective_stride() == 800);

    p.stride = 400;
    CHECK(p.effective_stride() == 400);
    CHECK_NOTHROW(p.validate());

    SUBCASE("zero patch size") {
        p.patch_size = 0;
        CHECK_THROWS_AS(p.validate(), ConfigError);
    }
    SUBCASE("negative stride") {
        p.stride = -1;
        CHECK_THROWS_AS(p.validate(), ConfigError);
    }
    SUBCASE("stride larger than the patch") {
        p.stride = 900;
        CHECK_THROWS_AS(p.validate(), ConfigError);
    }
}

TEST_CASE("window counts per edge policy") {
    TilingPolicy pad;
    TilingPolicy drop;
    drop.edge = EdgePolicy::DropPartial;

    // Exact fit.
    CHECK(window_count(800, pad) == 1);
    CHECK(window_count(800, drop) == 1);
    // 2000 = 2 full strides + 400 leftover.
    CHECK(window_count(2000, pad) == 3);
    CHECK(window_count(2000, drop) == 2);
    // 1700 = 1 full stride + 900 leftover.
    CHECK(window_count(1700, pad) == 3);
    CHECK(window_count(1700, drop) == 2);
    // Scene smaller than one patch.
    CHECK(window_count(500, pad) == 1);
    CHECK(window_count(500, drop) == 0);

    // Overlapping windows.
    TilingPolicy half;
    half.stride = 400;
    CHECK(window_count(2000, half) == 4);
    half.edge = EdgePolicy::DropPartial;
    CHECK(window_count(2000, half) == 4);
    CHECK(window_count(799, half) == 0);
}

TEST_CASE("tile_scene emits row-major windows at stride offsets") {
    core::Scene scene = ramp_scene(1000, 900);
    TilingPolicy policy;
    const auto windows = tile_scene(scene, policy);
    REQUIRE(windows.size() == 4);
    CHECK(windows[0].row_offset == 0);
    CHECK(windows[0].col_offset == 0);
    CHECK(windows[1].row_offset == 0);
    CHECK(windows[1].col_offset == 800);
    CHECK(windows[2].row_offset == 800);
    CHECK(windows[2].col_offset == 0);
    CHECK(windows[3].row_offset == 800);
    CHECK(windows[3].col_offset == 800);

    // Bottom-right window: only the 100x200 in-scene corner is real data.
    const RawWindow& w = windows[3];
    for (int r = 0; r < 800; ++r) {
        for (int c = 0; c < 800; ++c) {
            const bool inside = r < 100 && c < 200;
            const std::size_t i = static_cast<std::size_t>(r) * 800 + c;
            REQUIRE(w.in_scene[i] == (inside ? 1 : 0));
            if (inside) {
                REQUIRE(w.vv[i] == scene.vv.at(800 + r, 800 + c));
            } else {
                REQUIRE(w.vv[i] == 0.0f);
            }
        }
    }
}

TEST_CASE("non-overlapping pad tiling covers every scene cell exactly once") {
    core::Scene scene = ramp_scene(130, 70);
    TilingPolicy policy;
    policy.patch_size = 50;

    std::map<std::pair<int, int>, int> hits;
    for (const RawWindow& w : tile_scene(scene, policy)) {
        for (int r = 0; r < w.size; ++r) {
            for (int c = 0; c < w.size; ++c) {
                const std::size_t i = static_cast<std::size_t>(r) * w.size + c;
                if (!w.in_scene[i]) continue;
                ++hits[{w.row_offset + r, w.col_offset + c}];
                REQUIRE(w.vv[i] == scene.vv.at(w.row_offset + r, w.col_offset + c));
            }
        }
    }
    REQUIRE(hits.size() == static_cast<std::size_t>(130) * 70);
    for (const auto& [cell, count] : hits) CHECK(count == 1);
}

TEST_CASE("reflect padding mirrors without repeating the edge") {
    CHECK(source_index(0, 3, 4, EdgePolicy::PadReflect) == 3);
    CHECK(source_index(0, 4, 4, EdgePolicy::PadReflect) == 2);
    CHECK(source_index(0, 5, 4, EdgePolicy::PadReflect) == 1);
    CHECK(source_index(0, 6, 4, EdgePolicy::PadReflect) == 0);
    CHECK(source_index(0, 7, 4, EdgePolicy::PadReflect) == 1);
    CHECK(source_index(0, 0, 1, EdgePolicy::PadReflect) == 0);
    CHECK(source_index(0, 9, 1, EdgePolicy::PadReflect) == 0);
    CHECK_FALSE(source_index(0, 4, 4, EdgePolicy::PadZero).has_value());

    core::Scene scene = ramp_scene(4, 4);
    TilingPolicy policy;
    policy.patch_size = 8;
    policy.edge = EdgePolicy::PadReflect;
    const auto windows = tile_scene(scene, policy);
    REQUIRE(windows.size() == 1);
    const RawWindow& w = windows[0];
    CHECK(w.vv[4] == scene.vv.at(0, 2));
    CHECK(w.vv[5] == scene.vv.at(0, 1));
    CHECK(w.vv[6] == scene.vv.at(0, 0));
    CHECK(w.vv[7] == scene.vv.at(0, 1));
    CHECK(w.vv[4 * 8 + 0] == scene.vv.at(2, 0));
    for (std::uint8_t flag : w.in_scene) CHECK(flag == 1);
}

TEST_CASE("min-max normalization") {
    SUBCASE("maps the usable range onto [0, 1]") {
        const std::vector<float> values = {2.0f, 4.0f, 6.0f};
        const std::vector<std::uint8_t> usable = {1, 1, 1};
        const auto out = min_max_normalize(values, usable);
        REQUIRE(out.has_value());
        CHECK(out->values[0] == 0.0f);
        CHECK(out->values[1] == 0.5f);
        CHECK(out->values[2] == 1.0f);
        CHECK(out->valid == std::vector<std::uint8_t>{1, 1, 1});
    }
    SUBCASE("ignores unusable cells when finding the range") {
        const std::vector<float> values = {2.0f, 100.0f, 6.0f};
        const std::vector<std::uint8_t> usable = {1, 0, 1};
        const auto out = min_max_normalize(values, usable);
        REQUIRE(out.has_value());
        CHECK(out->values[0] == 0.0f);
        CHECK(out->values[1] == 0.0f);
        CHECK(out->valid[1] == 0);
        CHECK(out->values[2] == 1.0f);
    }
    SUBCASE("constant input is degenerate") {
        const std::vector<float> values = {3.0f, 3.0f};
        const std::vector<std::uint8_t> usable = {1, 1};
        CHECK_FALSE(min_max_normalize(values, usable).has_value());
    }
    SUBCASE("no usable cell is degenerate") {
        const std::vector<float> values = {1.0f, 2.0f};
        const std::vector<std::uint8_t> usable = {0, 0};
        CHECK_FALSE(min_max_normalize(values, usable).has_value());
    }
}

TEST_CASE("channel mask flags out-of-scene, nodata and non-finite cells") {
    const std::vector<float> values = {1.0f, std::numeric_limits<float>::quiet_NaN(), -30000.0f,
                                       5.0f};
    const std::vector<std::uint8_t> in_scene = {1, 1, 1, 0};
    const auto mask = channel_mask(values, in_scene, -30000.0f);
    CHECK(mask == std::vector<std::uint8_t>{1, 0, 0, 0});
}

TEST_CASE("fusion method parsing") {
    CHECK(FusionMethod::parse("mean_vv_vh").kind == FusionMethod::Kind::MeanVvVh);
    CHECK(FusionMethod::parse("diff_vv_vh").kind == FusionMethod::Kind::DiffVvVh);
    CHECK(FusionMethod::parse("mean_auxiliaries").kind == FusionMethod::Kind::MeanAuxiliaries);
    CHECK(FusionMethod::parse("mean_all").kind == FusionMethod::Kind::MeanAll);

    const FusionMethod aux = FusionMethod::parse("aux:bathymetry");
    CHECK(aux.kind == FusionMethod::Kind::SingleAuxiliary);
    CHECK(aux.auxiliary == "bathymetry");
    CHECK(aux.name() == "aux:bathymetry");
    CHECK(FusionMethod::parse("aux:wind_mass").auxiliary == "wind_quality");

    CHECK_THROWS_AS(FusionMethod::parse("bogus"), ConfigError);
    CHECK_THROWS_AS(FusionMethod::parse("aux:"), ConfigError);
}

TEST_CASE("mean_vv_vh third channel") {
    core::Scene scene = ramp_scene(4, 4);
    TilingPolicy policy;
    policy.patch_size = 4;

    SUBCASE("equals VV when both polarizations agree") {
        scene.vh = scene.vv;
        const auto result = preprocess_scene(scene, policy, FusionMethod::parse("mean_vv_vh"));
        REQUIRE(result.patches.size() == 1);
        CHECK(result.patches[0].channels[2] == result.patches[0].channels[0]);
        CHECK(result.patches[0].channel_spec == "vv,vh,mean_vv_vh");
    }
    SUBCASE("is constant 0.5 for mirrored ramps, without re-normalization") {
        const auto result = preprocess_scene(scene, policy, FusionMethod::parse("mean_vv_vh"));
        REQUIRE(result.patches.size() == 1);
        for (float v : result.patches[0].channels[2]) CHECK(v == doctest::Approx(0.5));
    }
}

TEST_CASE("diff_vv_vh third channel is re-normalized") {
    core::Scene scene = ramp_scene(4, 4);
    TilingPolicy policy;
    policy.patch_size = 4;

    SUBCASE("mirrored ramps give a ramp back") {
        const auto result = preprocess_scene(scene, policy, FusionMethod::parse("diff_vv_vh"));
        REQUIRE(result.patches.size() == 1);
        const auto& ch3 = result.patches[0].channels[2];
        for (int i = 0; i < 16; ++i) CHECK(ch3[i] == doctest::Approx(i / 15.0));
    }
    SUBCASE("identical polarizations are degenerate") {
        scene.vh = scene.vv;
        const auto result = preprocess_scene(scene, policy, FusionMethod::parse("diff_vv_vh"));
        CHECK(result.patches.empty());
        REQUIRE(result.discards.size() == 1);
        CHECK(result.discards[0].reason == "degenerate_channel3");
        CHECK(result.discards[0].size == 4);
    }
}

TEST_CASE("auxiliary fusion upsamples by nearest neighbor then normalizes") {
    core::Scene scene = ramp_scene(4, 4);
    scene.auxiliaries["bathymetry"] =
        testutil::make_raster(2, 2, {10.0f, 20.0f, 30.0f, 40.0f}, 20.0);
    TilingPolicy policy;
    policy.patch_size = 4;

    const auto result = preprocess_scene(scene, policy, FusionMethod::parse("aux:bathymetry"));
    REQUIRE(result.patches.size() == 1);
    const core::Patch& patch = result.patches[0];
    CHECK(patch.channel_spec == "vv,vh,aux:bathymetry");

    // Each aux cell covers a 2x2 block; range 10..40 normalizes to thirds.
    const auto at = [&](int r, int c) { return patch.channels[2][r * 4 + c]; };
    CHECK(at(0, 0) == doctest::Approx(0.0));
    CHECK(at(0, 1) == doctest::Approx(0.0));
    CHECK(at(0, 2) == doctest::Approx(1.0 / 3.0));
    CHECK(at(1, 3) == doctest::Approx(1.0 / 3.0));
    CHECK(at(2, 0) == doctest::Approx(2.0 / 3.0));
    CHECK(at(3, 3) == doctest::Approx(1.0));
}

TEST_CASE("auxiliary fusion error and degeneracy handling") {
    core::Scene scene = ramp_scene(8, 8);
    TilingPolicy policy;
    policy.patch_size = 4;

    SUBCASE("no auxiliaries at all discards every window") {
        const auto result =
            preprocess_scene(scene, policy, FusionMethod::parse("mean_auxiliaries"));
        CHECK(result.patches.empty());
        REQUIRE(result.discards.size() == 4);
        for (const auto& d : result.discards) CHECK(d.reason == "missing_auxiliary");
    }
    SUBCASE("missing named auxiliary") {
        scene.auxiliaries["wind_speed"] = testutil::make_raster(2, 2, {1, 2, 3, 4});
        const auto result = preprocess_scene(scene, policy, FusionMethod::parse("aux:bathymetry"));
        CHECK(result.patches.empty());
        REQUIRE(result.discards.size() == 4);
        CHECK(result.discards[0].reason == "missing_auxiliary");
    }
    SUBCASE("one constant auxiliary poisons mean_auxiliaries") {
        // wind_speed varies inside every window; the constant bathymetry alone
        // must sink the patch.
        scene.auxiliaries["wind_speed"] = testutil::make_raster(
            4, 4, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16}, 20.0);
        scene.auxiliaries["bathymetry"] = testutil::make_raster(4, 4, std::vector<float>(16, 7.0f), 20.0);
        const auto result =
            preprocess_scene(scene, policy, FusionMethod::parse("mean_auxiliaries"));
        CHECK(result.patches.empty());
        REQUIRE(result.discards.size() == 4);
        for (const auto& d : result.discards) CHECK(d.reason == "degenerate_channel3");
    }
    SUBCASE("mean_all blends polarizations and auxiliaries") {
        scene.auxiliaries["wind_speed"] = testutil::make_raster(
            4, 4, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16}, 20.0);
        const auto result = preprocess_scene(scene, policy, FusionMethod::parse("mean_all"));
        CHECK(result.patches.size() == 4);
        CHECK(result.discards.empty());
    }
}

TEST_CASE("degenerate polarization windows are discarded with the right reason") {
    TilingPolicy policy;
    policy.patch_size = 4;
    const FusionMethod method = FusionMethod::parse("mean_vv_vh");

    SUBCASE("constant VV") {
        core::Scene scene = ramp_scene(4, 4);
        scene.vv.values.assign(16, 5.0f);
        const auto result = preprocess_scene(scene, policy, method);
        REQUIRE(result.discards.size() == 1);
        CHECK(result.discards[0].reason == "degenerate_vv");
    }
    SUBCASE("all-nodata VH") {
        core::Scene scene = ramp_scene(4, 4);
        scene.vh.values.assign(16, -30000.0f);
        const auto result = preprocess_scene(scene, policy, method);
        REQUIRE(result.discards.size() == 1);
        CHECK(result.discards[0].reason == "degenerate_vh");
    }
    SUBCASE("one bad block in a larger scene") {
        core::Scene scene = ramp_scene(8, 4);
        for (int r = 0; r < 4; ++r)
            for (int c = 4; c < 8; ++c) scene.vv.at(r, c) = 1.0f;
        const auto result = preprocess_scene(scene, policy, method);
        REQUIRE(result.patches.size() == 1);
        REQUIRE(result.discards.size() == 1);
        CHECK(result.patches[0].col_offset == 0);
        CHECK(result.discards[0].col_offset == 4);
        CHECK(result.discards[0].reason == "degenerate_vv");
    }
}

TEST_CASE("invalid cells zero all channels and clear the patch mask") {
    core::Scene scene = ramp_scene(4, 4);
    scene.vv.at(1, 2) = -30000.0f;  // nodata in VV only
    TilingPolicy policy;
    policy.patch_size = 4;

    const auto result = preprocess_scene(scene, policy, FusionMethod::parse("mean_vv_vh"));
    REQUIRE(result.patches.size() == 1);
    const core::Patch& patch = result.patches[0];
    const std::size_t bad = 1 * 4 + 2;
    for (std::size_t i = 0; i < patch.valid.size(); ++i) {
        if (i == bad) {
            CHECK(patch.valid[i] == 0);
            CHECK(patch.channels[0][i] == 0.0f);
            CHECK(patch.channels[1][i] == 0.0f);
            CHECK(patch.channels[2][i] == 0.0f);
        } else {
            CHECK(patch.valid[i] == 1);
        }
    }
}

TEST_CASE("normalization is per patch, not per scene") {
    core::Scene scene;
    scene.scene_id = "two-ranges";
    std::vector<float> vv(32);
    std::vector<float> vh(32);
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 8; ++c) {
            const float left = static_cast<float>(r * 4 + (c % 4));
            vv[r * 8 + c] = c < 4 ? left : 100.0f + 10.0f * left;
            vh[r * 8 + c] = vv[r * 8 + c];
        }
    }
    scene.vv = testutil::make_raster(8, 4, std::move(vv));
    scene.vh = testutil::make_raster(8, 4, std::move(vh));

    TilingPolicy policy;
    policy.patch_size = 4;
    const auto result = preprocess_scene(scene, policy, FusionMethod::parse("mean_vv_vh"));
    REQUIRE(result.patches.size() == 2);
    for (const core::Patch& patch : result.patches) {
        float lo = 1.0f;
        float hi = 0.0f;
        for (float v : patch.channels[0]) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        CHECK(lo == 0.0f);
        CHECK(hi == 1.0f);
    }
}

TEST_CASE("preprocess output is identical across worker counts") {
    ingest::SynthSpec spec;
    spec.width = 260;
    spec.height = 180;
    spec.n_targets = 4;
    spec.min_separation_m = 200.0;
    spec.rng_seed = 11;
    const auto [scene, labels] = ingest::synth_scene(spec);

    TilingPolicy policy;
    policy.patch_size = 100;
    const FusionMethod method = FusionMethod::parse("mean_vv_vh");

    const auto serial = preprocess_scene(scene, policy, method, 1);
    const auto parallel = preprocess_scene(scene, policy, method, 8);
    REQUIRE(serial.patches.size() == parallel.patches.size());
    CHECK(serial.discards == parallel.discards);
    for (std::size_t i = 0; i < serial.patches.size(); ++i)
        CHECK(patches_equal(serial.patches[i], parallel.patches[i]));
}

TEST_CASE("patch export/import round-trip") {
    core::Scene scene = ramp_scene(10, 7);
    scene.vv.at(2, 3) = -30000.0f;
    TilingPolicy policy;
    policy.patch_size = 4;
    auto result = preprocess_scene(scene, policy, FusionMethod::parse("diff_vv_vh"));
    REQUIRE_FALSE(result.patches.empty());

    // A synthetic discard entry exercises the discard lines too.
    result.discards.push_back({"ramp", 96, 0, 4, "degenerate_vv"});

    testutil::TempDir dir;
    export_patches(result.patches, result.discards, dir.path());
    CHECK(std::filesystem::exists(dir / "patches.jsonl"));
    CHECK(std::filesystem::exists(dir / patch_file_name(result.patches[0])));

    const PreprocessResult back = import_patches(dir.path());
    REQUIRE(back.patches.size() == result.patches.size());
    CHECK(back.discards == result.discards);
    for (std::size_t i = 0; i < back.patches.size(); ++i)
        CHECK(patches_equal(back.patches[i], result.patches[i]));
}

TEST_CASE("patch file names encode scene and offsets") {
    core::Patch patch;
    patch.scene_id = "scene-7";
    patch.row_offset = 1600;
    patch.col_offset = 0;
    CHECK(patch_file_name(patch) == "scene-7_r1600_c0.bin");
}

TEST_CASE("randomized scenes produce patches with in-range values and exact counts") {
    util::Rng rng(2024);
    const FusionMethod methods[] = {FusionMethod::parse("mean_vv_vh"),
                                    FusionMethod::parse("diff_vv_vh"),
                                    FusionMethod::parse("aux:wind_speed")};
    const EdgePolicy edges[] = {EdgePolicy::PadReflect, EdgePolicy::PadZero,
                                EdgePolicy::DropPartial};

    for (int iter = 0; iter < 60; ++iter) {
        const int width = rng.uniform_int(5, 40);
        const int height = rng.uniform_int(5, 40);
        core::Scene scene;
        scene.scene_id = "rand";
        std::vector<float> vv(static_cast<std::size_t>(width) * height);
        std::vector<float> vh(vv.size());
        for (std::size_t i = 0; i < vv.size(); ++i) {
            vv[i] = static_cast<float>(rng.uniform(-25.0, 5.0));
            vh[i] = static_cast<float>(rng.uniform(-30.0, 0.0));
        }
        scene.vv = testutil::make_raster(width, height, std::move(vv));
        scene.vh = testutil::make_raster(width, height, std::move(vh));
        const int aw = std::max(1, width / 3);
        const int ah = std::max(1, height / 3);
        std::vector<float> aux(static_cast<std::size_t>(aw) * ah);
        for (auto& v : aux) v = static_cast<float>(rng.uniform(0.0, 50.0));
        scene.auxiliaries["wind_speed"] = testutil::make_raster(aw, ah, std::move(aux));

        TilingPolicy policy;
        policy.patch_size = 16;
        policy.stride = rng.uniform_int(0, 1) == 0 ? 0 : 8;
        policy.edge = edges[rng.uniform_int(0, 2)];
        const FusionMethod& method = methods[rng.uniform_int(0, 2)];

        const auto result = preprocess_scene(scene, policy, method);
        const std::size_t expected = static_cast<std::size_t>(window_count(height, policy)) *
                                     window_count(width, policy);
        REQUIRE(result.patches.size() + result.discards.size() == expected);
        for (const core::Patch& patch : result.patches) {
            for (int ch = 0; ch < 3; ++ch) {
                for (std::size_t i = 0; i < patch.cell_count(); ++i) {
                    REQUIRE(patch.channels[ch][i] >= 0.0f);
                    REQUIRE(patch.channels[ch][i] <= 1.0f);
                    if (!patch.valid[i]) REQUIRE(patch.channels[ch][i] == 0.0f);
                }
            }
        }
    }
}
