#include "dicnet/data.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <set>

#include "dicnet/errors.hpp"
#include "dicnet/hashing.hpp"
#include "dicnet/png_io.hpp"

namespace fs = std::filesystem;

namespace dicnet {

const char* split_name(Split s) {
    switch (s) {
        case Split::train: return "train";
        case Split::val: return "val";
        default: return "test";
    }
}

Split split_from_name(const std::string& name) {
    if (name == "train") return Split::train;
    if (name == "val") return Split::val;
    if (name == "test") return Split::test;
    throw ConfigError("unknown split name: " + name);
}

nlohmann::json SynthParams::to_json() const {
    return {
        {"shape_count_min", shape_count_min},
        {"shape_count_max", shape_count_max},
        {"texture_noise", texture_noise},
        {"anomaly_frac_min", anomaly_frac_min},
        {"anomaly_frac_max", anomaly_frac_max},
        {"train_count", train_count},
        {"val_count", val_count},
        {"test_count", test_count},
    };
}

SynthParams SynthParams::from_json(const nlohmann::json& j) {
    SynthParams p;
    p.shape_count_min = j.value("shape_count_min", p.shape_count_min);
    p.shape_count_max = j.value("shape_count_max", p.shape_count_max);
    p.texture_noise = j.value("texture_noise", p.texture_noise);
    p.anomaly_frac_min = j.value("anomaly_frac_min", p.anomaly_frac_min);
    p.anomaly_frac_max = j.value("anomaly_frac_max", p.anomaly_frac_max);
    p.train_count = j.value("train_count", p.train_count);
    p.val_count = j.value("val_count", p.val_count);
    p.test_count = j.value("test_count", p.test_count);
    return p;
}

void DatasetSpec::validate() const {
    if (num_known_classes < 2) {
        throw ConfigError("num_known_classes must be >= 2, got " +
                          std::to_string(num_known_classes));
    }
    if (anomaly_id >= 0 && anomaly_id < num_known_classes) {
        throw ConfigError("anomaly_id collides with a known class id");
    }
    if (anomaly_id < 0 || anomaly_id > 255) {
        throw ConfigError("anomaly_id must be in [0,255] (labels are 8-bit)");
    }
    if (ignore_id < 0 || ignore_id > 255) {
        throw ConfigError("ignore_id must be in [0,255] (labels are 8-bit)");
    }
    if (ignore_id < num_known_classes || ignore_id == anomaly_id) {
        throw ConfigError("ignore_id collides with a known class or the anomaly id");
    }
    if (height <= 0 || width <= 0 || height % 8 != 0 || width % 8 != 0) {
        throw ConfigError("resolution must be positive and divisible by 8, got " +
                          std::to_string(height) + "x" + std::to_string(width));
    }
    if (source == DataSource::disk && root_path.empty()) {
        throw ConfigError("disk dataset requires root_path");
    }
    if (source == DataSource::synthetic) {
        if (synth.shape_count_min < 0 || synth.shape_count_max < synth.shape_count_min) {
            throw ConfigError("invalid shape count range");
        }
        if (!(synth.anomaly_frac_min > 0.0) || !(synth.anomaly_frac_max > synth.anomaly_frac_min) ||
            synth.anomaly_frac_max >= 1.0) {
            throw ConfigError("invalid anomaly pixel-fraction band");
        }
    }
}

int DatasetSpec::split_count(Split s) const {
    switch (s) {
        case Split::train: return synth.train_count;
        case Split::val: return synth.val_count;
        default: return synth.test_count;
    }
}

nlohmann::json DatasetSpec::to_json() const {
    nlohmann::json j{
        {"num_known_classes", num_known_classes},
        {"anomaly_id", anomaly_id},
        {"ignore_id", ignore_id},
        {"resolution", {{"height", height}, {"width", width}}},
        {"source", source == DataSource::synthetic ? "synthetic" : "disk"},
        {"seed", seed},
    };
    if (source == DataSource::synthetic) j["synth_params"] = synth.to_json();
    if (!root_path.empty()) j["root_path"] = root_path;
    return j;
}

DatasetSpec DatasetSpec::from_json(const nlohmann::json& j) {
    DatasetSpec s;
    s.num_known_classes = j.value("num_known_classes", s.num_known_classes);
    s.anomaly_id = j.value("anomaly_id", s.num_known_classes);
    s.ignore_id = j.value("ignore_id", s.ignore_id);
    if (j.contains("resolution")) {
        s.height = j["resolution"].value("height", s.height);
        s.width = j["resolution"].value("width", s.width);
    }
    std::string src = j.value("source", "synthetic");
    if (src == "synthetic") {
        s.source = DataSource::synthetic;
    } else if (src == "disk") {
        s.source = DataSource::disk;
    } else {
        throw ConfigError("unknown dataset source: " + src);
    }
    if (j.contains("synth_params")) s.synth = SynthParams::from_json(j["synth_params"]);
    s.seed = j.value("seed", s.seed);
    s.root_path = j.value("root_path", s.root_path);
    return s;
}

uint64_t DatasetSpec::hash() const { return fnv1a64(to_json().dump()); }

namespace {

ImageU8 to_image(const PngImage& png, const std::string& path) {
    if (png.channels != 3) {
        throw ContractError("image PNG must decode to RGB: " + path);
    }
    ImageU8 img;
    img.h = png.h;
    img.w = png.w;
    img.rgb = png.data;
    return img;
}

LabelMap to_label(const PngImage& png, const std::string& path) {
    if (png.channels != 1) {
        throw ContractError("annotation PNG must be single-channel grayscale: " + path);
    }
    LabelMap lab;
    lab.h = png.h;
    lab.w = png.w;
    lab.v = png.data;
    return lab;
}

std::vector<std::string> list_png_stems(const fs::path& dir) {
    std::vector<std::string> stems;
    if (!fs::exists(dir)) return stems;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".png") {
            stems.push_back(entry.path().stem().string());
        }
    }
    std::sort(stems.begin(), stems.end());
    return stems;
}

void count_pixels(const ImageSample& sample, const DatasetSpec& spec, SplitStats& stats,
                  std::vector<std::string>& violations) {
    bool protected_split = sample.split != Split::test;
    for (uint8_t v : sample.label.v) {
        ++stats.total_pixels;
        ++stats.class_histogram[v];
        if (v == spec.ignore_id) {
            ++stats.ignored_pixels;
        } else if (v == spec.anomaly_id) {
            ++stats.anomaly_pixels;
            if (protected_split) {
                violations.push_back(std::string("anomaly pixel in ") +
                                     split_name(sample.split) + " sample '" + sample.id + "'");
                protected_split = false;  // one violation entry per sample
            }
        }
    }
}

}  // namespace

std::vector<ImageSample> load_split(const DatasetSpec& spec, Split split) {
    spec.validate();
    if (spec.source != DataSource::disk) {
        throw ConfigError("load_split requires a disk dataset spec");
    }
    fs::path root(spec.root_path);
    if (!fs::exists(root)) throw IoError("dataset root does not exist: " + spec.root_path);
    fs::path img_dir = root / "images" / split_name(split);
    fs::path ann_dir = root / "annotations" / split_name(split);

    auto img_stems = list_png_stems(img_dir);
    auto ann_stems = list_png_stems(ann_dir);

    std::set<std::string> img_set(img_stems.begin(), img_stems.end());
    std::set<std::string> ann_set(ann_stems.begin(), ann_stems.end());
    for (const auto& s : img_stems) {
        if (!ann_set.count(s)) {
            throw ContractError("image without matching annotation: " +
                                (img_dir / (s + ".png")).string());
        }
    }
    for (const auto& s : ann_stems) {
        if (!img_set.count(s)) {
            throw ContractError("annotation without matching image: " +
                                (ann_dir / (s + ".png")).string());
        }
    }

    std::vector<ImageSample> samples;
    samples.reserve(img_stems.size());
    for (const auto& stem : img_stems) {
        std::string img_path = (img_dir / (stem + ".png")).string();
        std::string ann_path = (ann_dir / (stem + ".png")).string();
        ImageSample s;
        s.image = to_image(read_png(img_path), img_path);
        s.label = to_label(read_png(ann_path), ann_path);
        s.id = stem;
        s.split = split;
        if (s.image.h != s.label.h || s.image.w != s.label.w) {
            throw ContractError("image/annotation size mismatch for '" + stem + "'");
        }
        for (uint8_t v : s.label.v) {
            if (v < spec.num_known_classes || v == spec.anomaly_id || v == spec.ignore_id) continue;
            throw ContractError("label value " + std::to_string(int(v)) +
                                " outside the declared class set in " + ann_path);
        }
        samples.push_back(std::move(s));
    }
    return samples;
}

void export_sample(const std::string& root, const ImageSample& sample) {
    fs::path img_dir = fs::path(root) / "images" / split_name(sample.split);
    fs::path ann_dir = fs::path(root) / "annotations" / split_name(sample.split);
    std::error_code ec;
    fs::create_directories(img_dir, ec);
    fs::create_directories(ann_dir, ec);
    write_png_rgb((img_dir / (sample.id + ".png")).string(), sample.image.h, sample.image.w,
                  sample.image.rgb.data());
    write_png_gray((ann_dir / (sample.id + ".png")).string(), sample.label.h, sample.label.w,
                   sample.label.v.data());
}

ValidationReport verify_dataset(const DatasetSpec& spec) {
    spec.validate();
    Dataset ds(spec);
    ValidationReport report;
    for (Split split : kAllSplits) {
        SplitStats stats;
        size_t n = ds.size(split);
        stats.sample_count = static_cast<int64_t>(n);
        for (size_t i = 0; i < n; ++i) {
            count_pixels(ds.sample(split, i), spec, stats, report.violations);
        }
        int64_t considered = stats.total_pixels - stats.ignored_pixels;
        stats.anomaly_prevalence =
            considered > 0 ? static_cast<double>(stats.anomaly_pixels) / considered : 0.0;
        report.splits[split_name(split)] = stats;
    }
    return report;
}

nlohmann::json ValidationReport::to_json() const {
    nlohmann::json j;
    for (const auto& [name, stats] : splits) {
        nlohmann::json hist = nlohmann::json::object();
        for (const auto& [cls, count] : stats.class_histogram) {
            hist[std::to_string(cls)] = count;
        }
        j["splits"][name] = {
            {"class_histogram", hist},
            {"total_pixels", stats.total_pixels},
            {"anomaly_pixels", stats.anomaly_pixels},
            {"ignored_pixels", stats.ignored_pixels},
            {"anomaly_prevalence", stats.anomaly_prevalence},
            {"sample_count", stats.sample_count},
        };
    }
    j["violations"] = violations;
    j["ok"] = ok();
    return j;
}

Dataset::Dataset(DatasetSpec spec) : spec_(std::move(spec)) { spec_.validate(); }

size_t Dataset::size(Split s) const {
    if (spec_.source == DataSource::synthetic) {
        return static_cast<size_t>(spec_.split_count(s));
    }
    ensure_loaded(s);
    return cache_[static_cast<int>(s)].size();
}

ImageSample Dataset::sample(Split s, size_t i) const {
    if (spec_.source == DataSource::synthetic) {
        if (i >= size(s)) throw ContractError("sample index out of range");
        // Disjoint deterministic index streams per split.
        int64_t stream = static_cast<int64_t>(s) * (int64_t(1) << 40) + static_cast<int64_t>(i);
        ImageSample sample = generate_synthetic_scene(spec_, stream, s == Split::test);
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%06zu", i);
        sample.id = buf;
        sample.split = s;
        return sample;
    }
    ensure_loaded(s);
    const auto& vec = cache_[static_cast<int>(s)];
    if (i >= vec.size()) throw ContractError("sample index out of range");
    return vec[i];
}

void Dataset::ensure_loaded(Split s) const {
    std::call_once(load_once_[static_cast<int>(s)],
                   [&] { cache_[static_cast<int>(s)] = load_split(spec_, s); });
}

}  // namespace dicnet
