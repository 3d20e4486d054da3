#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "srlrc/dynamics.hpp"

namespace srlrc {

/// Parsed operator configuration: Construction-1 parameters plus optional
/// systematic distribution and physical placement permutation.
struct ShardConfig {
    CodeProfile profile;
    std::optional<std::vector<int>> systematic;
    std::vector<int> permutation;  // logical -> physical label; empty = identity
};

/// JSON document -> validated profile. Accepts scalar or per-group array
/// forms for r, delta and q_local, or the explicit "groups" tree used by
/// manifests. q values are field sizes (powers of two).
ShardConfig parse_config(const std::string& json_text);

std::string profile_to_json(const CodeProfile& profile);

/// Hash over the full canonical profile (detects any configuration change).
std::string profile_hash_hex(const CodeProfile& profile);

/// Hash over the outer-code identity only (q, m, k, top-level localities):
/// the part every shard is bound to. Local recodings of one group do not
/// change it, so untouched groups keep their shard bytes.
std::array<uint8_t, 32> outer_identity_hash(const CodeProfile& profile);

struct Manifest {
    CodeProfile profile;
    std::optional<std::vector<int>> systematic;
    std::vector<int> permutation;
    uint64_t block_count = 0;
    uint64_t file_length = 0;
    int payload_k = 0;  // message symbols per stripe holding the original payload
    std::string profile_hash;  // full-profile hash, hex

    std::string to_json() const;
    static Manifest from_json(const std::string& text);
};

/// `group:pos[,pos]*[;group:...]` with 1-based group and in-group position.
ErasurePattern parse_pattern(const std::string& text, const CodeProfile& profile);

/// A directory of shard files plus the manifest describing them. One shard
/// file per codeword position; a stripe is one outer block of the file, and
/// shard payloads hold that position's symbol of every stripe.
class ShardSet {
   public:
    static constexpr uint16_t kFormatVersion = 1;
    static constexpr size_t kHeaderSize = 4 + 2 + 2 + 2 + 32 + 8;

    /// encode: split the payload into k-symbol stripes and write shards.
    static ShardSet create(const std::filesystem::path& dir, const ShardConfig& config,
                           std::span<const uint8_t> bytes);
    static ShardSet open(const std::filesystem::path& dir);

    const std::filesystem::path& dir() const { return dir_; }
    const Manifest& manifest() const { return manifest_; }

    GlobalCode code() const;

    /// Global positions whose shard payloads are missing.
    std::vector<int> erased_positions() const;

    /// Decode the stored file; `extra` adds assumed erasures on top of the
    /// truncated shards.
    std::vector<uint8_t> decode(const ErasurePattern& extra = {}) const;

    /// Truncate the targeted shards to header-only.
    void erase(const ErasurePattern& pattern);
    void erase_random(int count, uint64_t seed);

    /// Restore truncated shards: per-group local repair where the survivor
    /// rank allows it, global decode otherwise. Only erased shard files are
    /// rewritten; returns the number of groups that needed global repair.
    int repair();

    /// Recode one top-level group to a fresh MDS local code with the given
    /// local field and delta (dimension unchanged). Touches only that
    /// group's shard files.
    void recode_group(int group, int local_q, int delta);

    /// Split one top-level group into sub-codes of the given dimensions,
    /// each an MDS code over local_q with the given delta.
    void split_group(int group, const std::vector<int>& parts, int local_q, int delta);

    /// Grow or shrink the file dimension. Growing consumes extra payload
    /// bytes (bit-packed like the main payload, zero-filled when absent).
    void resize_k(int new_k, std::span<const uint8_t> extra_bytes = {});

    /// Append `count` identical new groups (r, delta, local_q) or drop
    /// trailing groups down to new_g.
    void add_groups(int count, int r, int delta, int local_q);
    void remove_groups(int new_g);

    /// Change one group's locality through the nested generator family.
    void set_locality(int group, int new_r, std::optional<int> delta = std::nullopt);

    std::filesystem::path shard_path(int logical) const;

   private:
    ShardSet(std::filesystem::path dir, Manifest manifest)
        : dir_(std::move(dir)), manifest_(std::move(manifest)) {}

    int symbol_bytes() const;
    std::vector<std::vector<uint64_t>> load_stripes(const std::vector<int>& positions) const;
    void write_shard(int logical, std::span<const uint64_t> symbols) const;
    void write_erased_shard(int logical) const;
    void write_manifest_atomic() const;
    void persist_all(const std::vector<std::vector<uint64_t>>& stripes, const CodeProfile& old_profile);
    DynamicState load_dynamic_state() const;
    std::pair<int, int> group_span(int group) const;

    std::filesystem::path dir_;
    Manifest manifest_;
};

/// Bit-packing between byte payloads and field-symbol stripes. The payload
/// is prefixed with its 8-byte little-endian length and zero-filled to a
/// whole number of k-symbol stripes; symbols take `ebits` stream bits each,
/// most significant bit first.
std::vector<std::vector<uint64_t>> pack_payload(std::span<const uint8_t> bytes, int k, int ebits);
std::vector<uint8_t> unpack_payload(const std::vector<std::vector<uint64_t>>& messages, int k, int ebits);

}  // namespace srlrc
