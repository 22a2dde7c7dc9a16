#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace dicnet {

enum class Split { train, val, test };

const char* split_name(Split s);
Split split_from_name(const std::string& name);
inline constexpr std::array<Split, 3> kAllSplits = {Split::train, Split::val, Split::test};

// 8-bit RGB, HWC.
struct ImageU8 {
    int h = 0;
    int w = 0;
    std::vector<uint8_t> rgb;

    uint8_t& at(int y, int x, int c) { return rgb[(static_cast<size_t>(y) * w + x) * 3 + c]; }
    uint8_t at(int y, int x, int c) const { return rgb[(static_cast<size_t>(y) * w + x) * 3 + c]; }
};

// Per-pixel class ids.
struct LabelMap {
    int h = 0;
    int w = 0;
    std::vector<uint8_t> v;

    uint8_t& at(int y, int x) { return v[static_cast<size_t>(y) * w + x]; }
    uint8_t at(int y, int x) const { return v[static_cast<size_t>(y) * w + x]; }
};

struct ImageSample {
    ImageU8 image;
    LabelMap label;
    std::string id;
    Split split = Split::train;
};

enum class DataSource { synthetic, disk };

struct SynthParams {
    int shape_count_min = 3;
    int shape_count_max = 6;
    double texture_noise = 0.05;
    double anomaly_frac_min = 0.01;
    double anomaly_frac_max = 0.20;
    int train_count = 512;
    int val_count = 64;
    int test_count = 64;

    nlohmann::json to_json() const;
    static SynthParams from_json(const nlohmann::json& j);
};

struct DatasetSpec {
    int num_known_classes = 4;
    int anomaly_id = 4;
    int ignore_id = 255;
    int height = 64;
    int width = 64;
    DataSource source = DataSource::synthetic;
    SynthParams synth;
    uint64_t seed = 7;
    std::string root_path;

    void validate() const;  // throws ConfigError
    int split_count(Split s) const;

    nlohmann::json to_json() const;
    static DatasetSpec from_json(const nlohmann::json& j);
    uint64_t hash() const;
};

// Deterministic procedural scene: textured background plus geometric shapes
// from the known appearance classes; optionally one anomaly-class shape with
// a texture and hue family disjoint from every known class.
ImageSample generate_synthetic_scene(const DatasetSpec& spec, int64_t index, bool allow_anomaly);

// Reads <root>/images/<split>/*.png paired with <root>/annotations/<split>/*.png,
// ordered lexicographically by filename.
std::vector<ImageSample> load_split(const DatasetSpec& spec, Split split);

// Writes the sample under <root>/images/<split>/ and <root>/annotations/<split>/.
void export_sample(const std::string& root, const ImageSample& sample);

struct SplitStats {
    std::map<int, int64_t> class_histogram;
    int64_t total_pixels = 0;
    int64_t anomaly_pixels = 0;
    int64_t ignored_pixels = 0;
    double anomaly_prevalence = 0.0;
    int64_t sample_count = 0;
};

struct ValidationReport {
    std::map<std::string, SplitStats> splits;
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
    nlohmann::json to_json() const;
};

ValidationReport verify_dataset(const DatasetSpec& spec);

// Uniform sample access over synthetic (generated on demand, pure) and disk
// (lazily loaded, cached) sources. Safe for concurrent reads.
class Dataset {
public:
    explicit Dataset(DatasetSpec spec);

    const DatasetSpec& spec() const { return spec_; }
    size_t size(Split s) const;
    ImageSample sample(Split s, size_t i) const;

private:
    void ensure_loaded(Split s) const;

    DatasetSpec spec_;
    mutable std::array<std::vector<ImageSample>, 3> cache_;
    mutable std::array<std::once_flag, 3> load_once_;
};

}  // namespace dicnet
