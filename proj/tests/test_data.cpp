#include <doctest.h>

#include <filesystem>
#include <set>

#include "dicnet/data.hpp"
#include "dicnet/errors.hpp"
#include "dicnet/png_io.hpp"

using namespace dicnet;
namespace fs = std::filesystem;

namespace {

DatasetSpec toy_spec() {
    DatasetSpec spec;
    spec.num_known_classes = 4;
    spec.anomaly_id = 4;
    spec.seed = 7;
    spec.synth.train_count = 10;
    spec.synth.val_count = 5;
    spec.synth.test_count = 5;
    return spec;
}

struct TempDir {
    fs::path path;
    TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("train scene labels stay within the known class set") {
    DatasetSpec spec = toy_spec();
    ImageSample s = generate_synthetic_scene(spec, 0, false);
    std::set<int> seen(s.label.v.begin(), s.label.v.end());
    for (int v : seen) {
        CHECK(v >= 0);
        CHECK(v < spec.num_known_classes);
    }
    CHECK(s.image.h == 64);
    CHECK(s.image.w == 64);
}

TEST_CASE("anomaly scene contains an in-band anomaly shape") {
    DatasetSpec spec = toy_spec();
    ImageSample s = generate_synthetic_scene(spec, 0, true);
    int64_t anomaly = 0;
    for (uint8_t v : s.label.v) {
        if (v == spec.anomaly_id) ++anomaly;
    }
    CHECK(anomaly >= 1);
    double frac = static_cast<double>(anomaly) / (64.0 * 64.0);
    CHECK(frac >= spec.synth.anomaly_frac_min);
    CHECK(frac <= spec.synth.anomaly_frac_max);
}

TEST_CASE("generation is a pure function of (seed, index, allow_anomaly)") {
    DatasetSpec spec = toy_spec();
    ImageSample a = generate_synthetic_scene(spec, 3, true);
    ImageSample b = generate_synthetic_scene(spec, 3, true);
    CHECK(a.image.rgb == b.image.rgb);
    CHECK(a.label.v == b.label.v);

    ImageSample c = generate_synthetic_scene(spec, 4, true);
    CHECK(a.image.rgb != c.image.rgb);
}

TEST_CASE("no anomaly pixels in train/val across many seeds") {
    DatasetSpec spec = toy_spec();
    for (uint64_t seed = 0; seed < 100; ++seed) {
        spec.seed = seed;
        ImageSample s = generate_synthetic_scene(spec, static_cast<int64_t>(seed), false);
        for (uint8_t v : s.label.v) CHECK(v != spec.anomaly_id);
    }
}

TEST_CASE("invalid resolution is a configuration error") {
    DatasetSpec spec = toy_spec();
    spec.height = 60;  // not divisible by 8
    CHECK_THROWS_AS(generate_synthetic_scene(spec, 0, false), ConfigError);
}

TEST_CASE("spec id collisions are configuration errors") {
    DatasetSpec spec = toy_spec();
    spec.anomaly_id = 2;
    CHECK_THROWS_AS(spec.validate(), ConfigError);

    spec = toy_spec();
    spec.ignore_id = spec.anomaly_id;
    CHECK_THROWS_AS(spec.validate(), ConfigError);

    spec = toy_spec();
    spec.num_known_classes = 1;
    CHECK_THROWS_AS(spec.validate(), ConfigError);
}

TEST_CASE("export then load round-trips pixels exactly") {
    TempDir dir("dicnet_test_roundtrip");
    DatasetSpec spec = toy_spec();

    std::vector<ImageSample> originals;
    for (int i = 0; i < 3; ++i) {
        ImageSample s = generate_synthetic_scene(spec, i, false);
        char buf[8];
        std::snprintf(buf, sizeof(buf), "%03d", i);
        s.id = buf;
        s.split = Split::train;
        originals.push_back(s);
        export_sample(dir.path.string(), s);
    }

    DatasetSpec disk = spec;
    disk.source = DataSource::disk;
    disk.root_path = dir.path.string();
    auto loaded = load_split(disk, Split::train);
    REQUIRE(loaded.size() == 3);
    for (size_t i = 0; i < 3; ++i) {
        CHECK(loaded[i].id == originals[i].id);
        CHECK(loaded[i].image.rgb == originals[i].image.rgb);
        CHECK(loaded[i].label.v == originals[i].label.v);
    }
}

TEST_CASE("load_split orders samples lexicographically and flags orphans") {
    TempDir dir("dicnet_test_orphan");
    DatasetSpec spec = toy_spec();
    DatasetSpec disk = spec;
    disk.source = DataSource::disk;
    disk.root_path = dir.path.string();

    // Empty split directory -> empty sequence.
    fs::create_directories(dir.path / "images" / "val");
    fs::create_directories(dir.path / "annotations" / "val");
    CHECK(load_split(disk, Split::val).empty());

    ImageSample s = generate_synthetic_scene(spec, 0, false);
    s.split = Split::train;
    s.id = "b_sample";
    export_sample(dir.path.string(), s);
    s.id = "a_sample";
    export_sample(dir.path.string(), s);
    auto loaded = load_split(disk, Split::train);
    REQUIRE(loaded.size() == 2);
    CHECK(loaded[0].id == "a_sample");
    CHECK(loaded[1].id == "b_sample");

    // Image without annotation -> error naming the file.
    fs::remove(dir.path / "annotations" / "train" / "a_sample.png");
    try {
        load_split(disk, Split::train);
        FAIL("expected ContractError");
    } catch (const ContractError& e) {
        CHECK(std::string(e.what()).find("a_sample") != std::string::npos);
    }
}

TEST_CASE("load_split rejects out-of-set label values") {
    TempDir dir("dicnet_test_badlabel");
    DatasetSpec spec = toy_spec();
    ImageSample s = generate_synthetic_scene(spec, 0, false);
    s.id = "bad";
    s.split = Split::train;
    s.label.v[10] = 99;  // not known, not anomaly, not ignore
    export_sample(dir.path.string(), s);

    DatasetSpec disk = spec;
    disk.source = DataSource::disk;
    disk.root_path = dir.path.string();
    CHECK_THROWS_AS(load_split(disk, Split::train), ContractError);
}

TEST_CASE("verify_dataset reports clean synthetic splits and test prevalence") {
    DatasetSpec spec = toy_spec();
    ValidationReport report = verify_dataset(spec);
    CHECK(report.ok());
    CHECK(report.splits.at("train").anomaly_pixels == 0);
    CHECK(report.splits.at("val").anomaly_pixels == 0);
    double prevalence = report.splits.at("test").anomaly_prevalence;
    CHECK(prevalence > 0.0);
    CHECK(prevalence < 1.0);

    // Recount anomaly pixels independently.
    Dataset ds(spec);
    int64_t anomaly = 0, considered = 0;
    for (size_t i = 0; i < ds.size(Split::test); ++i) {
        ImageSample s = ds.sample(Split::test, i);
        for (uint8_t v : s.label.v) {
            if (v == spec.ignore_id) continue;
            ++considered;
            if (v == spec.anomaly_id) ++anomaly;
        }
    }
    CHECK(prevalence == doctest::Approx(static_cast<double>(anomaly) / considered));
}

TEST_CASE("verify_dataset flags anomaly pixels in a train label") {
    TempDir dir("dicnet_test_violation");
    DatasetSpec spec = toy_spec();
    ImageSample s = generate_synthetic_scene(spec, 0, false);
    s.id = "tainted";
    s.split = Split::train;
    s.label.v[0] = static_cast<uint8_t>(spec.anomaly_id);
    export_sample(dir.path.string(), s);
    for (Split split : {Split::val, Split::test}) {
        fs::create_directories(dir.path / "images" / split_name(split));
        fs::create_directories(dir.path / "annotations" / split_name(split));
    }

    DatasetSpec disk = spec;
    disk.source = DataSource::disk;
    disk.root_path = dir.path.string();
    ValidationReport report = verify_dataset(disk);
    CHECK_FALSE(report.ok());
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].find("tainted") != std::string::npos);
}

TEST_CASE("dataset spec JSON round-trip and hash stability") {
    DatasetSpec spec = toy_spec();
    DatasetSpec back = DatasetSpec::from_json(spec.to_json());
    CHECK(back.to_json() == spec.to_json());
    CHECK(back.hash() == spec.hash());

    back.seed = 8;
    CHECK(back.hash() != spec.hash());
}
