#include "gpexp/io.hpp"

#include <array>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gpexp/errors.hpp"

namespace gpexp::io {

namespace {

// FIPS 180-4 SHA-256.
class Sha256 {
  public:
    Sha256() { reset(); }

    void reset() {
        state_ = {0x6a09e667u, 0xbb67ae85u, 0x3c6ef372u, 0xa54ff53au,
                  0x510e527fu, 0x9b05688cu, 0x1f83d9abu, 0x5be0cd19u};
        buffer_len_ = 0;
        total_bits_ = 0;
    }

    void update(const unsigned char* data, std::size_t len) {
        total_bits_ += static_cast<std::uint64_t>(len) * 8;
        while (len > 0) {
            const std::size_t take = std::min(len, std::size_t{64} - buffer_len_);
            std::memcpy(buffer_.data() + buffer_len_, data, take);
            buffer_len_ += take;
            data += take;
            len -= take;
            if (buffer_len_ == 64) {
                process_block(buffer_.data());
                buffer_len_ = 0;
            }
        }
    }

    std::string hex_final() {
        const std::uint64_t bits = total_bits_;
        const unsigned char pad_byte = 0x80;
        update(&pad_byte, 1);
        const unsigned char zero = 0x00;
        while (buffer_len_ != 56) update(&zero, 1);
        std::array<unsigned char, 8> len_bytes{};
        for (int i = 0; i < 8; ++i)
            len_bytes[static_cast<std::size_t>(i)] =
                static_cast<unsigned char>((bits >> (56 - 8 * i)) & 0xffu);
        update(len_bytes.data(), len_bytes.size());

        std::string out(64, '0');
        static const char* digits = "0123456789abcdef";
        for (int i = 0; i < 8; ++i) {
            const std::uint32_t w = state_[static_cast<std::size_t>(i)];
            for (int b = 0; b < 4; ++b) {
                const unsigned byte = (w >> (24 - 8 * b)) & 0xffu;
                out[static_cast<std::size_t>(8 * i + 2 * b)] = digits[byte >> 4];
                out[static_cast<std::size_t>(8 * i + 2 * b + 1)] = digits[byte & 0xfu];
            }
        }
        return out;
    }

  private:
    static std::uint32_t rotr(std::uint32_t x, int n) {
        return (x >> n) | (x << (32 - n));
    }

    void process_block(const unsigned char* block) {
        static constexpr std::array<std::uint32_t, 64> k = {
            0x428a2f98u, 0x71374491u, 0xb5c0fbcfu, 0xe9b5dba5u, 0x3956c25bu,
            0x59f111f1u, 0x923f82a4u, 0xab1c5ed5u, 0xd807aa98u, 0x12835b01u,
            0x243185beu, 0x550c7dc3u, 0x72be5d74u, 0x80deb1feu, 0x9bdc06a7u,
            0xc19bf174u, 0xe49b69c1u, 0xefbe4786u, 0x0fc19dc6u, 0x240ca1ccu,
            0x2de92c6fu, 0x4a7484aau, 0x5cb0a9dcu, 0x76f988dau, 0x983e5152u,
            0xa831c66du, 0xb00327c8u, 0xbf597fc7u, 0xc6e00bf3u, 0xd5a79147u,
            0x06ca6351u, 0x14292967u, 0x27b70a85u, 0x2e1b2138u, 0x4d2c6dfcu,
            0x53380d13u, 0x650a7354u, 0x766a0abbu, 0x81c2c92eu, 0x92722c85u,
            0xa2bfe8a1u, 0xa81a664bu, 0xc24b8b70u, 0xc76c51a3u, 0xd192e819u,
            0xd6990624u, 0xf40e3585u, 0x106aa070u, 0x19a4c116u, 0x1e376c08u,
            0x2748774cu, 0x34b0bcb5u, 0x391c0cb3u, 0x4ed8aa4au, 0x5b9cca4fu,
            0x682e6ff3u, 0x748f82eeu, 0x78a5636fu, 0x84c87814u, 0x8cc70208u,
            0x90befffau, 0xa4506cebu, 0xbef9a3f7u, 0xc67178f2u};

        std::array<std::uint32_t, 64> w{};
        for (int i = 0; i < 16; ++i)
            w[static_cast<std::size_t>(i)] =
                (static_cast<std::uint32_t>(block[4 * i]) << 24) |
                (static_cast<std::uint32_t>(block[4 * i + 1]) << 16) |
                (static_cast<std::uint32_t>(block[4 * i + 2]) << 8) |
                static_cast<std::uint32_t>(block[4 * i + 3]);
        for (std::size_t i = 16; i < 64; ++i) {
            const std::uint32_t s0 =
                rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
            const std::uint32_t s1 =
                rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
            w[i] = w[i - 16] + s0 + w[i - 7] + s1;
        }

        std::uint32_t a = state_[0], b = state_[1], c = state_[2], d = state_[3];
        std::uint32_t e = state_[4], f = state_[5], g = state_[6], h = state_[7];
        for (std::size_t i = 0; i < 64; ++i) {
            const std::uint32_t s1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
            const std::uint32_t ch = (e & f) ^ (~e & g);
            const std::uint32_t t1 = h + s1 + ch + k[i] + w[i];
            const std::uint32_t s0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
            const std::uint32_t maj = (a & b) ^ (a & c) ^ (b & c);
            const std::uint32_t t2 = s0 + maj;
            h = g;
            g = f;
            f = e;
            e = d + t1;
            d = c;
            c = b;
            b = a;
            a = t1 + t2;
        }
        state_[0] += a;
        state_[1] += b;
        state_[2] += c;
        state_[3] += d;
        state_[4] += e;
        state_[5] += f;
        state_[6] += g;
        state_[7] += h;
    }

    std::array<std::uint32_t, 8> state_{};
    std::array<unsigned char, 64> buffer_{};
    std::size_t buffer_len_ = 0;
    std::uint64_t total_bits_ = 0;
};

}  // namespace

std::string sha256_hex(std::string_view data) {
    Sha256 h;
    h.update(reinterpret_cast<const unsigned char*>(data.data()), data.size());
    return h.hex_final();
}

std::string sha256_file(const std::string& path) {
    return sha256_hex(read_file(path));
}

std::string format_g17(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

CsvWriter::CsvWriter(std::vector<std::string> columns)
    : columns_(std::move(columns)) {
    if (columns_.empty()) throw ConfigError("a CSV needs at least one column");
    for (const auto& c : columns_)
        if (c.find_first_of(",\n\r#") != std::string::npos)
            throw ConfigError("CSV column names must not contain ',', '#', or newlines");
}

void CsvWriter::comment(const std::string& line) {
    if (line.find_first_of("\n\r") != std::string::npos)
        throw ConfigError("CSV comments must be single lines");
    comments_ += "# ";
    comments_ += line;
    comments_ += '\n';
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_.size())
        throw ConfigError("CSV row width does not match the column count");
    for (const auto& c : cells)
        if (c.find_first_of(",\n\r") != std::string::npos)
            throw ConfigError("CSV cells must not contain ',' or newlines");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) body_ += ',';
        body_ += cells[i];
    }
    body_ += '\n';
}

void CsvWriter::row_values(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(format_g17(v));
    row(cells);
}

std::string CsvWriter::content() const {
    std::string out = comments_;
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (i) out += ',';
        out += columns_[i];
    }
    out += '\n';
    out += body_;
    return out;
}

std::string CsvWriter::save(const std::string& path) const {
    const std::string bytes = content();
    write_file(path, bytes);
    return sha256_hex(bytes);
}

std::string RunManifest::config_digest() const {
    return sha256_hex(config_json);
}

std::string RunManifest::to_json() const {
    nlohmann::json doc;
    doc["tool"] = "gpexp";
    doc["version"] = version;
    doc["subcommand"] = subcommand;
    try {
        doc["config"] = nlohmann::json::parse(config_json);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("manifest config is not valid JSON: ") + e.what());
    }
    doc["config_sha256"] = config_digest();
    doc["seed"] = seed;
    doc["wall_time_seconds"] = wall_time_seconds;
    nlohmann::json outs = nlohmann::json::object();
    for (const auto& [path, digest] : output_digests) outs[path] = digest;
    doc["outputs"] = outs;
    return doc.dump(2) + "\n";
}

void RunManifest::save(const std::string& path) const {
    write_file(path, to_json());
}

void write_file(const std::string& path, std::string_view data) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(p.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot open '" + path + "' for writing");
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) throw ConfigError("failed while writing '" + path + "'");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw ConfigError("failed while reading '" + path + "'");
    return ss.str();
}

}  // namespace gpexp::io
