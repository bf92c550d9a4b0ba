#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "dedekind/io.hpp"

using namespace dedekind;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() : path(std::filesystem::temp_directory_path() / "dedekind_io_test") {
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("interval class files round-trip") {
    const Lattice lat = generate_lattice(2);
    const auto classes = classify_intervals(lat);
    TempDir dir;
    const auto path = dir.path / "classes.jsonl";
    save_interval_classes(path, classes);

    const auto records = load_interval_classes(path);
    REQUIRE(records.size() == classes.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        CHECK(records[i].lo == classes[i].representative.lo);
        CHECK(records[i].hi == classes[i].representative.hi);
        CHECK(records[i].cardinality == classes[i].cardinality);
    }

    SUBCASE("file is line-oriented JSON with decimal strings") {
        std::ifstream is(path);
        std::string first;
        std::getline(is, first);
        CHECK(first == R"({"card":"6","hi":"0","lo":"0"})");
    }
}

TEST_CASE("pair class files round-trip") {
    const Lattice lat = generate_lattice(2);
    const IntervalTable tbl = build_interval_table(lat, {0, 15});
    const auto pairs = classify_pairs(tbl, build_context(tbl));
    TempDir dir;
    const auto path = dir.path / pair_file_name({0, 15});
    CHECK(pair_file_name({0, 15}) == "0:15.jsonl");
    save_pair_classes(path, pairs);

    const auto records = load_pair_classes(path);
    REQUIRE(records.size() == pairs.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        CHECK(records[i].a == pairs[i].a);
        CHECK(records[i].b == pairs[i].b);
        CHECK(records[i].cardinality == pairs[i].cardinality);
        CHECK(records[i].weight == pairs[i].weight);
    }
}

TEST_CASE("corrupt class files are reported") {
    TempDir dir;
    const auto path = dir.path / "bad.jsonl";
    {
        std::ofstream os(path);
        os << "{\"lo\": \"0\", \"hi\": \"15\"\n";  // truncated JSON
    }
    CHECK_THROWS_AS(load_interval_classes(path), std::runtime_error);
    {
        std::ofstream os(path, std::ios::trunc);
        os << "{\"lo\": \"zero\", \"hi\": \"15\", \"card\": \"1\"}\n";
    }
    CHECK_THROWS(load_interval_classes(path));
    CHECK_THROWS_AS(load_interval_classes(dir.path / "absent.jsonl"), std::runtime_error);
}

TEST_CASE("checkpoints persist exactly") {
    TempDir dir;
    const auto path = dir.path / "state.ckpt";
    Checkpoint ck;
    ck.base = 3;
    ck.method = "plus4-sym";
    ck.chunks_per_class = {2, -1, 5};
    ck.done = {"0:0", "0:1", "2:4"};
    ck.partial = BigCounter::from_string("340282366920938463463374607431768211456");
    save_checkpoint(path, ck);

    const Checkpoint back = load_checkpoint(path);
    CHECK(back.base == ck.base);
    CHECK(back.method == ck.method);
    CHECK(back.chunks_per_class == ck.chunks_per_class);
    CHECK(back.done == ck.done);
    CHECK(back.partial == ck.partial);
}

TEST_CASE("corrupt checkpoints are reported") {
    TempDir dir;
    const auto path = dir.path / "broken.ckpt";
    {
        std::ofstream os(path);
        os << "{\"base\": 3}";
    }
    CHECK_THROWS_AS(load_checkpoint(path), std::runtime_error);
    {
        std::ofstream os(path, std::ios::trunc);
        os << "not json";
    }
    CHECK_THROWS_AS(load_checkpoint(path), std::runtime_error);
    CHECK_THROWS_AS(load_checkpoint(dir.path / "absent.ckpt"), std::runtime_error);
}
