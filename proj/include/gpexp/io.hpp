#pragma once

// Deterministic run artifacts: CSV emission with a traceability header,
// SHA-256 digests, and JSON run manifests.  CSV bytes depend only on the
// resolved configuration and results, never on wall-clock state, so a replay
// from a manifest reproduces them exactly.

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gpexp::io {

// Hex-encoded SHA-256 of a byte string.
std::string sha256_hex(std::string_view data);

// Hex-encoded SHA-256 of a file's contents.  Throws ConfigError when the
// file cannot be read.
std::string sha256_file(const std::string& path);

// Shortest round-trip decimal rendering used for every numeric CSV cell.
std::string format_g17(double value);

// Column-checked CSV builder.  Comment lines ("# ...") are gathered in call
// order and always emitted as a block ahead of the column header, no matter
// when they are added relative to the data rows.
class CsvWriter {
  public:
    explicit CsvWriter(std::vector<std::string> columns);

    void comment(const std::string& line);
    void row(const std::vector<std::string>& cells);
    void row_values(const std::vector<double>& values);

    std::string content() const;

    // Writes the accumulated bytes and returns their SHA-256 digest.
    std::string save(const std::string& path) const;

  private:
    std::vector<std::string> columns_;
    std::string comments_;
    std::string body_;
};

// Everything needed to reproduce a run: the subcommand, the fully resolved
// configuration (canonical JSON), the seed, and digests of the files the run
// produced.  Wall time is informational and lives only here, never in CSVs.
struct RunManifest {
    std::string subcommand;
    std::string config_json;
    std::uint64_t seed = 0;
    std::string version;
    double wall_time_seconds = 0.0;
    std::vector<std::pair<std::string, std::string>> output_digests;

    std::string config_digest() const;
    std::string to_json() const;
    void save(const std::string& path) const;
};

// Writes a whole byte string to a file, creating parent directories as
// needed.  Throws ConfigError on failure.
void write_file(const std::string& path, std::string_view data);

// Reads a whole file into a string.  Throws ConfigError on failure.
std::string read_file(const std::string& path);

}  // namespace gpexp::io
