// Hashing, CSV emission, and run manifests.
#include <cstdio>
#include <filesystem>
#include <string>

#include "doctest.h"
#include "gpexp/errors.hpp"
#include "gpexp/io.hpp"
#include "nlohmann/json.hpp"

using namespace gpexp;
namespace fs = std::filesystem;

namespace {
struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("gpexp_io_test_" + std::to_string(std::rand()));
        fs::create_directories(path);
    }
    ~TempDir() { std::error_code ec; fs::remove_all(path, ec); }
};
} // namespace

TEST_CASE("sha256 matches the published reference vectors") {
    CHECK(io::sha256_hex("") ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(io::sha256_hex("abc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(io::sha256_hex("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq") ==
          "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
}

TEST_CASE("file digests agree with in-memory digests") {
    TempDir tmp;
    const fs::path p = tmp.path / "sub" / "payload.bin";
    const std::string payload = "stream of bytes\nwith a second line\n";
    io::write_file(p, payload); // creates the parent directory
    CHECK(io::read_file(p) == payload);
    CHECK(io::sha256_file(p) == io::sha256_hex(payload));
    CHECK_THROWS_AS(io::read_file(tmp.path / "missing.bin"), ConfigError);
}

TEST_CASE("g17 formatting round-trips doubles through text") {
    for (double v : {0.1, 1.0 / 3.0, 0.249022499567306, 1e-300, -2.5, 0.0}) {
        const std::string s = io::format_g17(v);
        CHECK(std::stod(s) == v);
    }
}

TEST_CASE("csv writer emits comments, header, and checked rows") {
    io::CsvWriter csv({"n", "rate", "value"});
    csv.comment("tool demo v0");
    csv.row({"8", "0.05", "0.25"});
    csv.row_values({16.0, 0.05, 0.125});
    csv.comment("digest added after the data rows");
    const std::string text = csv.content();
    CHECK(text ==
          "# tool demo v0\n"
          "# digest added after the data rows\n"
          "n,rate,value\n"
          "8,0.05,0.25\n"
          "16,0.050000000000000003,0.125\n");

    CHECK_THROWS_AS(csv.row({"1", "2"}), ConfigError);             // width mismatch
    CHECK_THROWS_AS(csv.row({"1", "2,3", "4"}), ConfigError);      // comma in cell
    CHECK_THROWS_AS(io::CsvWriter({"a", "b,c"}), ConfigError);     // comma in header
    CHECK_THROWS_AS(io::CsvWriter({"a", "#b"}), ConfigError);      // comment marker

    TempDir tmp;
    const fs::path p = tmp.path / "table.csv";
    const std::string digest = csv.save(p);
    CHECK(digest == io::sha256_hex(text));
    CHECK(io::read_file(p) == text);
}

TEST_CASE("run manifests capture config, digests, and identify their outputs") {
    TempDir tmp;
    io::RunManifest m;
    m.subcommand = "exponent";
    m.config_json = "{\n  \"rate\": 0.1\n}\n";
    m.seed = 42;
    m.version = "0.1.0";
    m.wall_time_seconds = 1.5;
    m.output_digests.push_back({"out.csv", io::sha256_hex("body")});
    CHECK(m.config_digest() == io::sha256_hex(m.config_json));

    const fs::path p = tmp.path / "run.manifest.json";
    m.save(p);
    const nlohmann::json doc = nlohmann::json::parse(io::read_file(p));
    CHECK(doc.at("subcommand") == "exponent");
    CHECK(doc.at("seed") == 42);
    CHECK(doc.at("version") == "0.1.0");
    CHECK(doc.at("config").at("rate") == 0.1);
    CHECK(doc.at("config_sha256") == m.config_digest());
    CHECK(doc.at("outputs").at("out.csv") == io::sha256_hex("body"));
    CHECK(doc.at("wall_time_seconds") == 1.5);

    // Same content, same bytes: manifests are reproducible.
    const std::string first = io::read_file(p);
    m.save(p);
    CHECK(io::read_file(p) == first);
}
