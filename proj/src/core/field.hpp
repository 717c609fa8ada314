#pragma once

#include "core/nn.hpp"
#include "core/ray_batch.hpp"

#include <memory>
#include <span>
#include <string>

namespace tilefield {

// ------------------------------------------------------------------
// Optimizer: Adam with persistent step counts (never reset across window
// moves or checkpoint cycles).
// ------------------------------------------------------------------
struct AdamConfig {
    float beta1 = 0.9f;
    float beta2 = 0.99f;
    float eps = 1e-15f;
};

struct LrSchedule {
    double base = 1e-2;
    double decay_rate = 1.0;     // per decay_steps; 1.0 = constant
    uint64_t decay_steps = 1000;

    double lr_at(uint64_t step) const {
        if (decay_rate == 1.0) return base;
        return base * std::pow(decay_rate, double(step) / double(decay_steps));
    }
};

struct AdamState {
    std::vector<float> m, v;
    uint64_t step = 0;

    void init(size_t n) {
        m.assign(n, 0.f);
        v.assign(n, 0.f);
        step = 0;
    }
    size_t bytes() const { return (m.size() + v.size()) * 4; }
};

// One Adam update. The schedule consumes the persistent step count. Throws on
// non-finite gradients, naming `group`.
void adam_step(std::span<float> params, std::span<const float> grads, AdamState& state,
               const LrSchedule& schedule, const AdamConfig& cfg, const std::string& group);

// ------------------------------------------------------------------
// Occupancy grid over the tile's local [0,1]^3 cube. Fresh grids are fully
// occupied; EMA <- max(decay*EMA, sigma at a jittered point per voxel); the
// occupancy bit is a pure function of EMA and threshold.
// ------------------------------------------------------------------
struct OccupancyGrid {
    int res = 32;
    float decay = 0.95f;
    float threshold = 0.02f;
    std::vector<float> ema; // res^3, x fastest

    void init(int resolution, float decay_, float threshold_) {
        res = resolution;
        decay = decay_;
        threshold = threshold_;
        ema.assign(size_t(res) * res * res, 1.0f);
    }

    bool occupied(float x, float y, float z) const {
        return ema[voxel_index(x, y, z)] >= threshold;
    }
    size_t voxel_index(float x, float y, float z) const {
        auto clampi = [this](float v) {
            int i = int(v * float(res));
            return size_t(i < 0 ? 0 : (i >= res ? res - 1 : i));
        };
        return clampi(x) + size_t(res) * (clampi(y) + size_t(res) * clampi(z));
    }
    size_t bytes() const { return ema.size() * 4; }
};

// ------------------------------------------------------------------
// Per-tile learnable field: hash encoding + density MLP (sigma, embedding)
// with their own optimizers and occupancy grid.
// ------------------------------------------------------------------
struct TileField {
    TileId id;
    FieldConfig cfg;
    HashGridT<float> encoding;
    MlpT<float> density_net;
    AdamState enc_opt, dnet_opt;
    OccupancyGrid occupancy;

    static TileField create(const FieldConfig& cfg, TileId id, uint64_t seed);

    // Deterministic single-point forward pass; local coordinates clamped to
    // [0,1]^3 by the encoding. Returns sigma and writes `embedding` scalars
    // when non-null.
    float query_density(const Vec3f& local, float* embedding = nullptr) const;

    // EMA decay + jittered density probe per voxel; deterministic given
    // (seed, tile id, dnet_opt.step).
    void update_occupancy(uint64_t seed);

    size_t param_bytes() const {
        return (encoding.tables.size() + density_net.params.size()) * 4;
    }
    size_t optimizer_bytes() const { return enc_opt.bytes() + dnet_opt.bytes(); }
    size_t total_bytes() const { return param_bytes() + optimizer_bytes() + occupancy.bytes(); }
};

// The single color MLP shared by every tile; has its own never-reset
// optimizer. Input: density embedding + encoded view direction.
struct GlobalColorNet {
    FieldConfig cfg;
    MlpT<float> net;
    AdamState opt;

    static GlobalColorNet create(const FieldConfig& cfg, uint64_t seed);

    // RGB in (0,1)^3 for one embedding/view pair.
    Vec3f query_color(std::span<const float> embedding, const Vec3f& view_dir) const;

    size_t param_bytes() const { return net.params.size() * 4; }
};

// ------------------------------------------------------------------
// Batch forward/backward over a RaySegmentBatch. Templated on scalar so the
// finite-difference oracle can run the identical math in float64.
// ------------------------------------------------------------------
template <typename S>
struct FieldParamView {
    const FieldConfig* cfg = nullptr;
    const HashGridT<float>* grid = nullptr; // topology (resolutions/offsets)
    const MlpT<float>* dnet = nullptr;      // topology (widths)
    const S* enc_tables = nullptr;
    const S* dnet_params = nullptr;
};

template <typename S>
struct ColorParamView {
    const FieldConfig* cfg = nullptr;
    const MlpT<float>* net = nullptr; // topology
    const S* params = nullptr;
};

// Per-sample intermediates recorded by the forward pass for reverse mode.
template <typename S>
struct ForwardWorkspace {
    std::vector<S> view_enc;  // rays * view_enc_dim
    std::vector<S> dnet_acts; // samples * act_count(density widths)
    std::vector<S> cnet_acts; // samples * act_count(color widths)
    std::vector<S> sigma_raw; // samples (pre-activation)
    std::vector<S> sigma;     // samples
    std::vector<S> rgb;       // samples * 3 (post-sigmoid)

    size_t bytes() const {
        return (view_enc.capacity() + dnet_acts.capacity() + cnet_acts.capacity() +
                sigma_raw.capacity() + sigma.capacity() + rgb.capacity()) *
               sizeof(S);
    }
};

// Gradient accumulators matching one tile's parameter groups.
template <typename S>
struct FieldGrads {
    std::vector<S> enc;
    std::vector<S> dnet;
};

template <typename S>
struct BatchGrads {
    std::vector<FieldGrads<S>> tiles; // per slot
    std::vector<S> color;

    void init_like(std::span<const FieldParamView<S>> views, size_t color_params) {
        tiles.resize(views.size());
        for (size_t i = 0; i < views.size(); ++i) {
            tiles[i].enc.assign(views[i].grid->tables.size(), S(0));
            tiles[i].dnet.assign(views[i].dnet->params.size(), S(0));
        }
        color.assign(color_params, S(0));
    }
};

// Forward pass: per-sample sigma and rgb. Parallel over rays.
template <typename S>
void forward_batch(const RaySegmentBatch& batch, std::span<const FieldParamView<S>> tiles,
                   const ColorParamView<S>& color, ForwardWorkspace<S>& ws, int workers);

// Reverse pass from per-sample d_sigma / d_rgb into parameter gradients.
// Deterministic for a fixed worker count (privatized then reduced in order).
// Throws on non-finite gradients, naming the parameter group.
template <typename S>
void backward_batch(const RaySegmentBatch& batch, std::span<const FieldParamView<S>> tiles,
                    const ColorParamView<S>& color, const ForwardWorkspace<S>& ws,
                    std::span<const S> d_sigma, std::span<const S> d_rgb, BatchGrads<S>& grads,
                    int workers);

FieldParamView<float> make_view(const TileField& f);
ColorParamView<float> make_view(const GlobalColorNet& c);

// ------------------------------------------------------------------
// Checkpoints: versioned binary, raw little-endian arrays, bit-exact
// round-trip. Layout documented in field.cpp.
// ------------------------------------------------------------------
void save_tile_checkpoint(const std::string& path, const TileField& field);
TileField load_tile_checkpoint(const std::string& path, const FieldConfig& expect_cfg);

void save_color_checkpoint(const std::string& path, const GlobalColorNet& net);
GlobalColorNet load_color_checkpoint(const std::string& path, const FieldConfig& expect_cfg);

} // namespace tilefield
