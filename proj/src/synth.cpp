// Procedural synthetic benchmark. Each appearance class is a (hue family,
// texture pattern) pair; the anomaly class uses a diagonal-stripe texture no
// known class ever uses, plus the hue most distant from every known hue.

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "dicnet/data.hpp"
#include "dicnet/errors.hpp"
#include "dicnet/rng.hpp"

namespace dicnet {

namespace {

constexpr double kGoldenRatioConjugate = 0.618033988749895;

double fract(double x) { return x - std::floor(x); }

double hue_for_class(int z) { return fract(0.11 + z * kGoldenRatioConjugate); }

double circular_distance(double a, double b) {
    double d = std::abs(fract(a) - fract(b));
    return std::min(d, 1.0 - d);
}

double anomaly_hue(int num_known) {
    double best_hue = 0.0;
    double best_dist = -1.0;
    for (int i = 0; i < 64; ++i) {
        double candidate = (i + 0.5) / 64.0;
        double dist = 1.0;
        for (int z = 0; z < num_known; ++z) {
            dist = std::min(dist, circular_distance(candidate, hue_for_class(z)));
        }
        if (dist > best_dist) {
            best_dist = dist;
            best_hue = candidate;
        }
    }
    return best_hue;
}

enum class Tex { plain, hstripes, checker, dots, diagonal };

// Diagonal stripes are reserved for the anomaly class.
Tex tex_for_known_class(int z) {
    switch (z % 4) {
        case 0: return Tex::plain;
        case 1: return Tex::hstripes;
        case 2: return Tex::checker;
        default: return Tex::dots;
    }
}

double pattern_factor(Tex tex, int x, int y) {
    switch (tex) {
        case Tex::plain: return 1.0;
        case Tex::hstripes: return (y / 3) % 2 ? 0.55 : 1.0;
        case Tex::checker: return ((x / 4) + (y / 4)) % 2 ? 0.55 : 1.0;
        case Tex::dots: {
            int dx = x % 6 - 3;
            int dy = y % 6 - 3;
            return dx * dx + dy * dy <= 2 ? 0.45 : 1.0;
        }
        case Tex::diagonal: return ((x + y) / 3) % 2 ? 0.55 : 1.0;
    }
    return 1.0;
}

struct Appearance {
    double hue;
    double sat;
    double value;
    Tex tex;
};

Appearance appearance_for(int class_id, int num_known, int anomaly_id) {
    if (class_id == anomaly_id) {
        return {anomaly_hue(num_known), 0.85, 0.85, Tex::diagonal};
    }
    double value = class_id == 0 ? 0.42 : 0.78;  // darker background
    return {hue_for_class(class_id), 0.65, value, tex_for_known_class(class_id)};
}

void hsv_to_rgb(double h, double s, double v, double rgb[3]) {
    h = fract(h) * 6.0;
    int i = static_cast<int>(h);
    double f = h - i;
    double p = v * (1.0 - s);
    double q = v * (1.0 - s * f);
    double t = v * (1.0 - s * (1.0 - f));
    switch (i % 6) {
        case 0: rgb[0] = v; rgb[1] = t; rgb[2] = p; break;
        case 1: rgb[0] = q; rgb[1] = v; rgb[2] = p; break;
        case 2: rgb[0] = p; rgb[1] = v; rgb[2] = t; break;
        case 3: rgb[0] = p; rgb[1] = q; rgb[2] = v; break;
        case 4: rgb[0] = t; rgb[1] = p; rgb[2] = v; break;
        default: rgb[0] = v; rgb[1] = p; rgb[2] = q; break;
    }
}

uint8_t to_u8(double v) {
    int x = static_cast<int>(std::lround(v * 255.0));
    return static_cast<uint8_t>(std::clamp(x, 0, 255));
}

// Noise is a pure function of (seed, pixel), so painting order cannot
// perturb it.
void pixel_noise(uint64_t noise_seed, int y, int x, int w, double level, double noise[3]) {
    uint64_t u = Rng::mix(noise_seed, static_cast<uint64_t>(y) * w + x);
    for (int c = 0; c < 3; ++c) {
        double r = static_cast<double>((u >> (c * 21)) & 0x1FFFFF) / 2097151.0;
        noise[c] = (2.0 * r - 1.0) * level;
    }
}

void paint_pixel(ImageU8& img, int y, int x, const Appearance& ap, uint64_t noise_seed,
                 double noise_level) {
    double rgb[3];
    hsv_to_rgb(ap.hue, ap.sat, ap.value * pattern_factor(ap.tex, x, y), rgb);
    double noise[3];
    pixel_noise(noise_seed, y, x, img.w, noise_level, noise);
    for (int c = 0; c < 3; ++c) img.at(y, x, c) = to_u8(rgb[c] + noise[c]);
}

enum class ShapeKind { circle, rectangle, triangle };

struct ShapeDraw {
    ShapeKind kind;
    double cx, cy;  // center, pixel coordinates
    double a, b;    // circle: a = radius; rect: half extents; triangle: half base/height
};

bool shape_contains(const ShapeDraw& s, double x, double y) {
    double dx = x - s.cx;
    double dy = y - s.cy;
    switch (s.kind) {
        case ShapeKind::circle:
            return dx * dx + dy * dy <= s.a * s.a;
        case ShapeKind::rectangle:
            return std::abs(dx) <= s.a && std::abs(dy) <= s.b;
        case ShapeKind::triangle: {
            // Isosceles, apex up: full width at the base, zero at the apex.
            if (dy < -s.b || dy > s.b) return false;
            double half_width = s.a * (dy + s.b) / (2.0 * s.b);
            return std::abs(dx) <= half_width;
        }
    }
    return false;
}

// Rasterizes over pixel centers within the bounding box; returns covered pixels.
std::vector<int> rasterize(const ShapeDraw& s, int h, int w) {
    double ext_x = s.kind == ShapeKind::circle ? s.a : s.a;
    double ext_y = s.kind == ShapeKind::circle ? s.a : s.b;
    int x0 = std::max(0, static_cast<int>(std::floor(s.cx - ext_x - 1)));
    int x1 = std::min(w - 1, static_cast<int>(std::ceil(s.cx + ext_x + 1)));
    int y0 = std::max(0, static_cast<int>(std::floor(s.cy - ext_y - 1)));
    int y1 = std::min(h - 1, static_cast<int>(std::ceil(s.cy + ext_y + 1)));
    std::vector<int> covered;
    for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
            if (shape_contains(s, x + 0.5, y + 0.5)) covered.push_back(y * w + x);
        }
    }
    return covered;
}

void blit(ImageSample& sample, const std::vector<int>& covered, int class_id,
          const Appearance& ap, uint64_t noise_seed, double noise_level) {
    int w = sample.image.w;
    for (int idx : covered) {
        sample.label.v[static_cast<size_t>(idx)] = static_cast<uint8_t>(class_id);
        paint_pixel(sample.image, idx / w, idx % w, ap, noise_seed, noise_level);
    }
}

ShapeKind pick_kind(Rng& rng) {
    switch (rng.uniform_int(0, 2)) {
        case 0: return ShapeKind::circle;
        case 1: return ShapeKind::rectangle;
        default: return ShapeKind::triangle;
    }
}

ShapeDraw shape_with_area(ShapeKind kind, double area, double aspect, double cx, double cy) {
    ShapeDraw s{kind, cx, cy, 0.0, 0.0};
    switch (kind) {
        case ShapeKind::circle:
            s.a = std::sqrt(area / 3.14159265358979323846);
            break;
        case ShapeKind::rectangle:
            // area = (2a)(2b), b = a / aspect
            s.a = 0.5 * std::sqrt(area * aspect);
            s.b = 0.5 * std::sqrt(area / aspect);
            break;
        case ShapeKind::triangle:
            // area = (2a)(2b)/2 = 2ab
            s.a = std::sqrt(0.5 * area * aspect);
            s.b = std::sqrt(0.5 * area / aspect);
            break;
    }
    return s;
}

}  // namespace

ImageSample generate_synthetic_scene(const DatasetSpec& spec, int64_t index, bool allow_anomaly) {
    spec.validate();
    if (spec.source != DataSource::synthetic) {
        throw ConfigError("generate_synthetic_scene requires a synthetic dataset spec");
    }
    const int h = spec.height;
    const int w = spec.width;
    const int z = spec.num_known_classes;

    uint64_t scene_seed = Rng::mix(spec.seed, static_cast<uint64_t>(index));
    Rng rng(scene_seed);
    uint64_t noise_seed = Rng::mix(scene_seed, 0x5EEDULL);
    const double noise_level = spec.synth.texture_noise;

    ImageSample sample;
    sample.image.h = h;
    sample.image.w = w;
    sample.image.rgb.resize(static_cast<size_t>(h) * w * 3);
    sample.label.h = h;
    sample.label.w = w;
    sample.label.v.assign(static_cast<size_t>(h) * w, 0);
    sample.split = allow_anomaly ? Split::test : Split::train;

    Appearance bg = appearance_for(0, z, spec.anomaly_id);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) paint_pixel(sample.image, y, x, bg, noise_seed, noise_level);
    }

    const double dim = std::min(h, w);
    int shape_count = rng.uniform_int(spec.synth.shape_count_min, spec.synth.shape_count_max);
    for (int s = 0; s < shape_count; ++s) {
        ShapeKind kind = pick_kind(rng);
        int class_id = z > 1 ? rng.uniform_int(1, z - 1) : 0;
        double ext = rng.uniform(0.07, 0.22) * dim;
        double ext2 = rng.uniform(0.07, 0.22) * dim;
        double cx = rng.uniform(0.08, 0.92) * w;
        double cy = rng.uniform(0.08, 0.92) * h;
        ShapeDraw draw{kind, cx, cy, ext, kind == ShapeKind::circle ? ext : ext2};
        blit(sample, rasterize(draw, h, w), class_id,
             appearance_for(class_id, z, spec.anomaly_id), noise_seed, noise_level);
    }

    if (allow_anomaly) {
        Rng arng(Rng::mix(scene_seed, 0xA70BA11ULL));
        Appearance anomaly_ap = appearance_for(spec.anomaly_id, z, spec.anomaly_id);
        const double total = static_cast<double>(h) * w;
        const int64_t min_px = static_cast<int64_t>(std::ceil(spec.synth.anomaly_frac_min * total));
        const int64_t max_px = static_cast<int64_t>(std::floor(spec.synth.anomaly_frac_max * total));
        bool placed = false;
        for (int attempt = 0; attempt < 32 && !placed; ++attempt) {
            double frac = arng.uniform(std::max(spec.synth.anomaly_frac_min * 1.5, 0.02),
                                       spec.synth.anomaly_frac_max * 0.65);
            double aspect = arng.uniform(0.7, 1.4);
            ShapeKind kind = pick_kind(arng);
            ShapeDraw probe = shape_with_area(kind, frac * total, aspect, 0.0, 0.0);
            double ext_x = probe.a + 2.0;
            double ext_y = (kind == ShapeKind::circle ? probe.a : probe.b) + 2.0;
            if (ext_x * 2.0 >= w || ext_y * 2.0 >= h) continue;
            probe.cx = arng.uniform(ext_x, w - ext_x);
            probe.cy = arng.uniform(ext_y, h - ext_y);
            std::vector<int> covered = rasterize(probe, h, w);
            int64_t n = static_cast<int64_t>(covered.size());
            if (n < min_px || n > max_px) continue;
            blit(sample, covered, spec.anomaly_id, anomaly_ap, noise_seed, noise_level);
            placed = true;
        }
        if (!placed) {
            throw ContractError(
                "could not place an anomaly shape within the configured pixel-fraction band");
        }
    }
    return sample;
}

}  // namespace dicnet
