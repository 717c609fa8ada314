#include "core/camera.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace tilefield {

void RationalCamera::validate() const {
    require(line_scale > 0 && samp_scale > 0 && lat_scale > 0 && long_scale > 0 && height_scale > 0,
            "RationalCamera: scales must be strictly positive");
    require(line_den[0] == 1.0 && samp_den[0] == 1.0,
            "RationalCamera: denominator constant term must be 1");
    require(image_rows > 0 && image_cols > 0, "RationalCamera: image size must be positive");
}

// RPC00B cubic term order over (P=lat-like, L=lon-like, H=height).
static void rpc_terms(double P, double L, double H, double* t) {
    t[0] = 1;
    t[1] = L;
    t[2] = P;
    t[3] = H;
    t[4] = L * P;
    t[5] = L * H;
    t[6] = P * H;
    t[7] = L * L;
    t[8] = P * P;
    t[9] = H * H;
    t[10] = P * L * H;
    t[11] = L * L * L;
    t[12] = L * P * P;
    t[13] = L * H * H;
    t[14] = L * L * P;
    t[15] = P * P * P;
    t[16] = P * H * H;
    t[17] = L * L * H;
    t[18] = P * P * H;
    t[19] = H * H * H;
}

static double poly20(const std::array<double, 20>& c, const double* t) {
    double s = 0;
    for (int i = 0; i < 20; ++i) s += c[i] * t[i];
    return s;
}

Vec2 project(const RationalCamera& cam, const Vec3& ground) {
    double L = (ground.x() - cam.long_off) / cam.long_scale;
    double P = (ground.y() - cam.lat_off) / cam.lat_scale;
    double H = (ground.z() - cam.height_off) / cam.height_scale;
    const double lim = RationalCamera::kValidityLimit;
    require(std::abs(L) <= lim && std::abs(P) <= lim && std::abs(H) <= lim,
            "project: ground point outside camera validity domain");

    double t[20];
    rpc_terms(P, L, H, t);
    double row_n = poly20(cam.line_num, t) / poly20(cam.line_den, t);
    double col_n = poly20(cam.samp_num, t) / poly20(cam.samp_den, t);
    return Vec2(cam.line_off + cam.line_scale * row_n, cam.samp_off + cam.samp_scale * col_n);
}

LocalizeResult localize(const RationalCamera& cam, const Vec2& pixel_rc, double height) {
    Vec2 xy(cam.long_off, cam.lat_off);
    const double hx = 1e-6 * cam.long_scale;
    const double hy = 1e-6 * cam.lat_scale;
    const double tol_px = 1e-4;
    const int max_iter = 50;

    auto residual = [&](const Vec2& g) {
        return project(cam, Vec3(g.x(), g.y(), height)) - pixel_rc;
    };

    Vec2 f = residual(xy);
    for (int it = 1; it <= max_iter; ++it) {
        if (f.norm() < tol_px) return {xy, f.norm(), it - 1};

        Eigen::Matrix2d jac;
        jac.col(0) = (residual(xy + Vec2(hx, 0)) - residual(xy - Vec2(hx, 0))) / (2 * hx);
        jac.col(1) = (residual(xy + Vec2(0, hy)) - residual(xy - Vec2(0, hy))) / (2 * hy);
        Vec2 step = jac.fullPivLu().solve(-f);

        // Damping: halve the step until the residual decreases.
        double lambda = 1.0;
        Vec2 xy_new = xy + step;
        Vec2 f_new = residual(xy_new);
        for (int h = 0; h < 6 && f_new.norm() > f.norm(); ++h) {
            lambda *= 0.5;
            xy_new = xy + lambda * step;
            f_new = residual(xy_new);
        }
        xy = xy_new;
        f = f_new;
    }
    if (f.norm() < tol_px) return {xy, f.norm(), max_iter};
    std::ostringstream msg;
    msg << "localize: no convergence after " << max_iter
        << " iterations, last residual " << f.norm() << " px";
    throw Error(msg.str());
}

Ray ray_from_pixel(const RationalCamera& cam, PixelRc pixel, double z_min, double z_max,
                   const Vec3f& target_color, int image_id) {
    Vec2 px(double(pixel.row), double(pixel.col));
    Vec2 top = localize(cam, px, z_max).ground_xy;
    Vec2 bottom = localize(cam, px, z_min).ground_xy;

    Vec3 origin(top.x(), top.y(), z_max);
    Vec3 delta = Vec3(bottom.x(), bottom.y(), z_min) - origin;
    double len = delta.norm();
    require(len > 1e-12 && z_max > z_min,
            "ray_from_pixel: degenerate baseline between localization heights");

    Ray ray;
    ray.origin = origin;
    ray.direction = delta / len;
    ray.image_id = image_id;
    ray.pixel = pixel;
    ray.target_color = target_color;
    return ray;
}

std::optional<CropSpec> crop_for_tile(const RationalCamera& cam, const Aabb3& tile_box,
                                      int margin_px, int image_id, TileId tile_id) {
    double row_lo = std::numeric_limits<double>::infinity(), row_hi = -row_lo;
    double col_lo = row_lo, col_hi = -row_lo;
    for (int i = 0; i < 8; ++i) {
        Vec2 p = project(cam, tile_box.corner(i));
        row_lo = std::min(row_lo, p.x());
        row_hi = std::max(row_hi, p.x());
        col_lo = std::min(col_lo, p.y());
        col_hi = std::max(col_hi, p.y());
    }
    CropSpec crop;
    crop.image_id = image_id;
    crop.tile_id = tile_id;
    crop.row_min = std::max(0, int(std::floor(row_lo)) - margin_px);
    crop.row_max = std::min(cam.image_rows, int(std::ceil(row_hi)) + 1 + margin_px);
    crop.col_min = std::max(0, int(std::floor(col_lo)) - margin_px);
    crop.col_max = std::min(cam.image_cols, int(std::ceil(col_hi)) + 1 + margin_px);
    if (crop.row_min >= crop.row_max || crop.col_min >= crop.col_max) return std::nullopt;
    return crop;
}

void save_rpc(const std::string& path, const RationalCamera& cam) {
    std::ofstream out(path);
    require(out.good(), "save_rpc: cannot open " + path);
    out.precision(17);
    auto kv = [&](const std::string& k, double v) { out << k << " = " << v << "\n"; };
    auto coeffs = [&](const std::string& k, const std::array<double, 20>& c) {
        for (int i = 0; i < 20; ++i) kv(k + "_" + std::to_string(i + 1), c[i]);
    };
    kv("LINE_OFF", cam.line_off);
    kv("SAMP_OFF", cam.samp_off);
    kv("LAT_OFF", cam.lat_off);
    kv("LONG_OFF", cam.long_off);
    kv("HEIGHT_OFF", cam.height_off);
    kv("LINE_SCALE", cam.line_scale);
    kv("SAMP_SCALE", cam.samp_scale);
    kv("LAT_SCALE", cam.lat_scale);
    kv("LONG_SCALE", cam.long_scale);
    kv("HEIGHT_SCALE", cam.height_scale);
    kv("IMAGE_ROWS", cam.image_rows);
    kv("IMAGE_COLS", cam.image_cols);
    coeffs("LINE_NUM_COEFF", cam.line_num);
    coeffs("LINE_DEN_COEFF", cam.line_den);
    coeffs("SAMP_NUM_COEFF", cam.samp_num);
    coeffs("SAMP_DEN_COEFF", cam.samp_den);
    require(out.good(), "save_rpc: write failed for " + path);
}

RationalCamera load_rpc(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), "load_rpc: cannot open " + path);
    std::map<std::string, double> kv;
    std::string line;
    while (std::getline(in, line)) {
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        std::string key = line.substr(0, eq);
        key.erase(key.find_last_not_of(" \t") + 1);
        kv[key] = std::stod(line.substr(eq + 1));
    }
    auto get = [&](const std::string& k) {
        auto it = kv.find(k);
        require(it != kv.end(), "load_rpc: missing key " + k + " in " + path);
        return it->second;
    };
    RationalCamera cam;
    cam.line_off = get("LINE_OFF");
    cam.samp_off = get("SAMP_OFF");
    cam.lat_off = get("LAT_OFF");
    cam.long_off = get("LONG_OFF");
    cam.height_off = get("HEIGHT_OFF");
    cam.line_scale = get("LINE_SCALE");
    cam.samp_scale = get("SAMP_SCALE");
    cam.lat_scale = get("LAT_SCALE");
    cam.long_scale = get("LONG_SCALE");
    cam.height_scale = get("HEIGHT_SCALE");
    cam.image_rows = int(get("IMAGE_ROWS"));
    cam.image_cols = int(get("IMAGE_COLS"));
    auto coeffs = [&](const std::string& k, std::array<double, 20>& c) {
        for (int i = 0; i < 20; ++i) c[i] = get(k + "_" + std::to_string(i + 1));
    };
    coeffs("LINE_NUM_COEFF", cam.line_num);
    coeffs("LINE_DEN_COEFF", cam.line_den);
    coeffs("SAMP_NUM_COEFF", cam.samp_num);
    coeffs("SAMP_DEN_COEFF", cam.samp_den);
    cam.validate();
    return cam;
}

} // namespace tilefield
