#pragma once

#include "core/common.hpp"
#include "core/rng.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

namespace tilefield {

// Multi-resolution hash grid configuration plus the small MLP shapes hanging
// off it. One instance is shared by every tile of a run.
struct FieldConfig {
    int levels = 8;
    int table_size = 1 << 15; // per level, power of two
    int features = 2;
    int n_min = 16;
    int n_max = 256;
    int density_hidden = 64;
    int embedding = 15;
    int color_hidden = 64;
    int color_layers = 2;
    int view_freqs = 4;
    float density_max = 1e4f; // clamp of the exponential density activation

    int occupancy_resolution = 32;
    float occupancy_decay = 0.95f;
    float occupancy_threshold = 0.02f;
    int occupancy_interval = 16;

    int feature_dim() const { return levels * features; }
    int view_enc_dim() const { return 6 * view_freqs; }
    int color_in_dim() const { return embedding + view_enc_dim(); }

    bool operator==(const FieldConfig&) const = default;
};

// Per-level resolution follows geometric growth from n_min to n_max.
inline int level_resolution(const FieldConfig& cfg, int level) {
    if (cfg.levels <= 1) return cfg.n_min;
    double b = std::exp((std::log(double(cfg.n_max)) - std::log(double(cfg.n_min))) /
                        double(cfg.levels - 1));
    return int(std::floor(cfg.n_min * std::pow(b, level) + 0.5));
}

// ------------------------------------------------------------------
// Dense MLP with ReLU hidden activations and a linear output layer.
// Parameters are stored as one flat vector: [W0, b0, W1, b1, ...] with
// W row-major (out x in).
// ------------------------------------------------------------------
template <typename S>
struct MlpT {
    std::vector<int> widths; // [in, hidden..., out]
    std::vector<S> params;

    static size_t param_count(const std::vector<int>& widths) {
        size_t n = 0;
        for (size_t l = 0; l + 1 < widths.size(); ++l)
            n += size_t(widths[l + 1]) * widths[l] + widths[l + 1];
        return n;
    }
    // Activation buffer: input plus every layer output (post-ReLU for hidden).
    static size_t act_count(const std::vector<int>& widths) {
        size_t n = 0;
        for (int w : widths) n += w;
        return n;
    }

    void init(std::vector<int> w, Rng& rng) {
        widths = std::move(w);
        params.resize(param_count(widths));
        size_t p = 0;
        for (size_t l = 0; l + 1 < widths.size(); ++l) {
            int fan_in = widths[l], fan_out = widths[l + 1];
            S bound = S(std::sqrt(6.0 / (fan_in + fan_out)));
            for (int i = 0; i < fan_out * fan_in; ++i)
                params[p++] = S(rng.uniform(-double(bound), double(bound)));
            for (int i = 0; i < fan_out; ++i) params[p++] = S(0);
        }
    }

    int in_dim() const { return widths.front(); }
    int out_dim() const { return widths.back(); }

    // acts must hold act_count() scalars; returns pointer to the output block.
    const S* forward(const S* x, S* acts) const {
        return forward_p(params.data(), x, acts);
    }
    const S* forward_p(const S* p, const S* x, S* acts) const {
        S* a = acts;
        for (int i = 0; i < widths[0]; ++i) a[i] = x[i];
        for (size_t l = 0; l + 1 < widths.size(); ++l) {
            const S* in = a;
            S* out = a + widths[l];
            const S* W = p + layer_offset(l);
            const S* b = W + size_t(widths[l + 1]) * widths[l];
            bool last = (l + 2 == widths.size());
            for (int o = 0; o < widths[l + 1]; ++o) {
                S acc = b[o];
                const S* wrow = W + size_t(o) * widths[l];
                for (int i = 0; i < widths[l]; ++i) acc += wrow[i] * in[i];
                out[o] = (!last && acc < S(0)) ? S(0) : acc;
            }
            a = out;
        }
        return a;
    }

    // Reverse pass. `acts` from forward; d_out has out_dim entries. Parameter
    // gradients are accumulated into grad (same layout as params); input
    // gradient written to d_in when non-null. scratch needs 2*max_width.
    void backward(const S* acts, const S* d_out, S* grad, S* d_in, S* scratch) const {
        backward_p(params.data(), acts, d_out, grad, d_in, scratch);
    }
    void backward_p(const S* p, const S* acts, const S* d_out, S* grad, S* d_in,
                    S* scratch) const {
        int n_layers = int(widths.size()) - 1;
        int maxw = 0;
        for (int w : widths) maxw = std::max(maxw, w);
        S* d_cur = scratch;
        S* d_prev = scratch + maxw;
        for (int i = 0; i < widths[n_layers]; ++i) d_cur[i] = d_out[i];

        // Offsets of each layer's activation block.
        std::vector<size_t> act_off(widths.size());
        size_t off = 0;
        for (size_t l = 0; l < widths.size(); ++l) {
            act_off[l] = off;
            off += widths[l];
        }

        for (int l = n_layers - 1; l >= 0; --l) {
            const S* in = acts + act_off[l];
            const S* out = acts + act_off[l + 1];
            const S* W = p + layer_offset(l);
            S* gW = grad + layer_offset(l);
            S* gb = gW + size_t(widths[l + 1]) * widths[l];
            bool last = (l == n_layers - 1);

            for (int i = 0; i < widths[l]; ++i) d_prev[i] = S(0);
            for (int o = 0; o < widths[l + 1]; ++o) {
                S d = d_cur[o];
                if (!last && out[o] <= S(0)) d = S(0); // ReLU mask
                gb[o] += d;
                const S* wrow = W + size_t(o) * widths[l];
                S* grow = gW + size_t(o) * widths[l];
                for (int i = 0; i < widths[l]; ++i) {
                    grow[i] += d * in[i];
                    d_prev[i] += d * wrow[i];
                }
            }
            std::swap(d_cur, d_prev);
        }
        if (d_in)
            for (int i = 0; i < widths[0]; ++i) d_in[i] = d_cur[i];
    }

    size_t layer_offset(size_t layer) const {
        size_t off = 0;
        for (size_t l = 0; l < layer; ++l)
            off += size_t(widths[l + 1]) * widths[l] + widths[l + 1];
        return off;
    }
};

// ------------------------------------------------------------------
// Multi-resolution hash grid with trilinear interpolation. Levels whose
// dense vertex grid fits in the table are indexed directly; the rest use
// the spatial hash. Queries outside [0,1]^3 are clamped.
// ------------------------------------------------------------------
template <typename S>
struct HashGridT {
    FieldConfig cfg;
    std::vector<S> tables;          // concatenated per-level entries * features
    std::vector<int> level_res;     // vertex grid resolution N per level
    std::vector<size_t> level_off;  // entry offset of each level
    std::vector<size_t> level_size; // entries in each level

    void init(const FieldConfig& c, Rng& rng) {
        cfg = c;
        level_res.resize(c.levels);
        level_off.resize(c.levels);
        level_size.resize(c.levels);
        size_t total = 0;
        for (int l = 0; l < c.levels; ++l) {
            level_res[l] = level_resolution(c, l);
            size_t dense = size_t(level_res[l] + 1) * (level_res[l] + 1) * (level_res[l] + 1);
            level_off[l] = total;
            level_size[l] = std::min(dense, size_t(c.table_size));
            total += level_size[l];
        }
        tables.resize(total * c.features);
        for (S& v : tables) v = S(rng.uniform(-1e-4, 1e-4));
    }

    size_t param_count() const { return tables.size(); }

    static uint32_t spatial_hash(uint32_t x, uint32_t y, uint32_t z) {
        return x ^ (y * 2654435761u) ^ (z * 805459861u);
    }

    size_t entry_index(int level, int x, int y, int z) const {
        int n = level_res[level] + 1;
        size_t dense = size_t(n) * n * n;
        if (dense <= size_t(cfg.table_size))
            return size_t(x) + size_t(n) * (size_t(y) + size_t(n) * z);
        return spatial_hash(uint32_t(x), uint32_t(y), uint32_t(z)) & uint32_t(cfg.table_size - 1);
    }

    // out has levels*features entries.
    void lookup(const S* p3, S* out) const { lookup_p(tables.data(), p3, out); }
    void lookup_p(const S* tab, const S* p3, S* out) const {
        const int F = cfg.features;
        for (int l = 0; l < cfg.levels; ++l) {
            int corner[3];
            S frac[3];
            cell_of(l, p3, corner, frac);
            S* o = out + size_t(l) * F;
            for (int f = 0; f < F; ++f) o[f] = S(0);
            for (int c = 0; c < 8; ++c) {
                S w;
                size_t idx = corner_entry(l, corner, frac, c, &w);
                const S* e = tab + (level_off[l] + idx) * F;
                for (int f = 0; f < F; ++f) o[f] += w * e[f];
            }
        }
    }

    // Scatter-add gradient of the looked-up features into grad_tables.
    void backward(const S* p3, const S* d_out, S* grad_tables) const {
        const int F = cfg.features;
        for (int l = 0; l < cfg.levels; ++l) {
            int corner[3];
            S frac[3];
            cell_of(l, p3, corner, frac);
            const S* d = d_out + size_t(l) * F;
            for (int c = 0; c < 8; ++c) {
                S w;
                size_t idx = corner_entry(l, corner, frac, c, &w);
                S* g = grad_tables + (level_off[l] + idx) * F;
                for (int f = 0; f < F; ++f) g[f] += w * d[f];
            }
        }
    }

private:
    void cell_of(int level, const S* p3, int* corner, S* frac) const {
        int n = level_res[level];
        for (int k = 0; k < 3; ++k) {
            S v = p3[k];
            if (v < S(0)) v = S(0);
            if (v > S(1)) v = S(1);
            S scaled = v * S(n);
            int c = int(scaled);
            if (c > n - 1) c = n - 1;
            corner[k] = c;
            frac[k] = scaled - S(c);
        }
    }
    size_t corner_entry(int level, const int* corner, const S* frac, int c, S* w) const {
        int dx = c & 1, dy = (c >> 1) & 1, dz = (c >> 2) & 1;
        *w = (dx ? frac[0] : S(1) - frac[0]) * (dy ? frac[1] : S(1) - frac[1]) *
             (dz ? frac[2] : S(1) - frac[2]);
        return entry_index(level, corner[0] + dx, corner[1] + dy, corner[2] + dz);
    }
};

// Exponential density activation clamped at cfg.density_max.
template <typename S>
S density_activation(S raw, S max_density, S* d_raw) {
    S lim = std::log(max_density);
    if (raw >= lim) {
        if (d_raw) *d_raw = S(0);
        return max_density;
    }
    S v = std::exp(raw);
    if (d_raw) *d_raw = v;
    return v;
}

template <typename S>
S sigmoid(S x) {
    return S(1) / (S(1) + std::exp(-x));
}

// Sinusoidal direction encoding: sin/cos of 2^k * pi * d per component.
template <typename S>
void encode_direction(const S* dir3, int freqs, S* out) {
    int j = 0;
    for (int k = 0; k < freqs; ++k) {
        S scale = S(std::pow(2.0, k) * M_PI);
        for (int c = 0; c < 3; ++c) {
            out[j++] = std::sin(scale * dir3[c]);
            out[j++] = std::cos(scale * dir3[c]);
        }
    }
}

} // namespace tilefield
