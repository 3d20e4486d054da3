#include "srlrc/shards.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <random>

#include "json.hpp"
#include "srlrc/sha256.hpp"

namespace srlrc {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int bits_of_size(uint64_t q, const char* what) {
    if (q < 2 || (q & (q - 1)) != 0)
        fail(Errc::ProfileInvalid, std::string(what) + " must be a power of two (characteristic 2)");
    int b = 0;
    while ((1ull << b) < q) ++b;
    return b;
}

std::vector<int> as_int_array(const json& v, int g, const char* what) {
    std::vector<int> out;
    if (v.is_number_integer()) {
        out.assign(static_cast<size_t>(g), v.get<int>());
    } else if (v.is_array()) {
        for (const auto& x : v) out.push_back(x.get<int>());
        if (static_cast<int>(out.size()) != g)
            fail(Errc::ParseError, std::string(what) + " array length must equal g");
    } else {
        fail(Errc::ParseError, std::string(what) + " must be an integer or an array");
    }
    return out;
}

json profile_json(const CodeProfile& p) {
    json groups = json::array();
    for (const auto& gr : p.groups) {
        json leaves = json::array();
        for (const auto& l : gr.leaves)
            leaves.push_back({{"r", l.r}, {"delta", l.delta}, {"n", l.n}, {"q_local", 1ull << l.q_bits}});
        groups.push_back({{"leaves", leaves}});
    }
    return json{{"q", 1ull << p.q_bits}, {"m", p.m}, {"k", p.k}, {"groups", groups}};
}

CodeProfile profile_from_groups_json(const json& j) {
    CodeProfile p;
    p.q_bits = bits_of_size(j.at("q").get<uint64_t>(), "q");
    p.m = j.at("m").get<int>();
    p.k = j.at("k").get<int>();
    for (const auto& gj : j.at("groups")) {
        GroupSpec gs;
        for (const auto& lj : gj.at("leaves")) {
            LeafSpec l;
            l.r = lj.at("r").get<int>();
            l.delta = lj.at("delta").get<int>();
            l.n = lj.at("n").get<int>();
            l.q_bits = bits_of_size(lj.at("q_local").get<uint64_t>(), "q_local");
            gs.leaves.push_back(l);
        }
        p.groups.push_back(gs);
    }
    return p;
}

void put_u16(std::string& s, uint16_t v) {
    s.push_back(static_cast<char>(v & 0xff));
    s.push_back(static_cast<char>(v >> 8));
}

void put_u64(std::string& s, uint64_t v) {
    for (int i = 0; i < 8; ++i) s.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

uint16_t get_u16(const uint8_t* p) { return static_cast<uint16_t>(p[0] | (p[1] << 8)); }

uint64_t get_u64(const uint8_t* p) {
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(p[i]) << (8 * i);
    return v;
}

std::vector<uint8_t> read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::IoError, "cannot open " + path.string());
    std::vector<uint8_t> data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return data;
}

void write_file(const fs::path& path, std::span<const uint8_t> data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(Errc::IoError, "cannot write " + path.string());
    out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
    if (!out) fail(Errc::IoError, "short write to " + path.string());
}

}  // namespace

ShardConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        fail(Errc::ParseError, std::string("config is not valid JSON: ") + e.what());
    }
    ShardConfig cfg;
    try {
        if (j.contains("groups")) {
            cfg.profile = profile_from_groups_json(j);
        } else {
            CodeProfile p;
            int g = j.at("g").get<int>();
            if (g < 1) fail(Errc::ProfileInvalid, "g >= 1 required");
            auto r = as_int_array(j.at("r"), g, "r");
            auto delta = as_int_array(j.at("delta"), g, "delta");
            std::vector<int> qloc;
            if (j.contains("q_local")) {
                auto sizes = j.at("q_local");
                if (sizes.is_number_integer()) {
                    qloc.assign(static_cast<size_t>(g), bits_of_size(sizes.get<uint64_t>(), "q_local"));
                } else {
                    for (const auto& x : sizes) qloc.push_back(bits_of_size(x.get<uint64_t>(), "q_local"));
                    if (static_cast<int>(qloc.size()) != g)
                        fail(Errc::ParseError, "q_local array length must equal g");
                }
            } else {
                qloc.assign(static_cast<size_t>(g), bits_of_size(j.at("q").get<uint64_t>(), "q"));
            }
            p.q_bits = bits_of_size(j.at("q").get<uint64_t>(), "q");
            p.m = j.at("m").get<int>();
            p.k = j.at("k").get<int>();
            for (int i = 0; i < g; ++i) {
                GroupSpec gs;
                gs.leaves.push_back(LeafSpec{r[static_cast<size_t>(i)], delta[static_cast<size_t>(i)],
                                             r[static_cast<size_t>(i)] + delta[static_cast<size_t>(i)] - 1,
                                             qloc[static_cast<size_t>(i)]});
                p.groups.push_back(gs);
            }
            cfg.profile = p;
        }
        if (j.contains("systematic") && !j.at("systematic").is_null())
            cfg.systematic = j.at("systematic").get<std::vector<int>>();
        if (j.contains("permutation") && !j.at("permutation").is_null())
            cfg.permutation = j.at("permutation").get<std::vector<int>>();
    } catch (const json::exception& e) {
        fail(Errc::ParseError, std::string("config field error: ") + e.what());
    }
    cfg.profile.validate();
    if (cfg.systematic) {
        if (static_cast<int>(cfg.systematic->size()) != cfg.profile.g())
            fail(Errc::ProfileInvalid, "systematic distribution needs one k_i per group");
        int sum = 0;
        for (int i = 0; i < cfg.profile.g(); ++i) {
            int ki = (*cfg.systematic)[static_cast<size_t>(i)];
            if (ki < 0 || ki > cfg.profile.groups[static_cast<size_t>(i)].r())
                fail(Errc::ProfileInvalid, "0 <= k_i <= r_i required");
            sum += ki;
        }
        if (sum != cfg.profile.k) fail(Errc::ProfileInvalid, "systematic k_i must sum to k");
    }
    if (!cfg.permutation.empty()) {
        int n = cfg.profile.n();
        if (static_cast<int>(cfg.permutation.size()) != n)
            fail(Errc::ProfileInvalid, "permutation length must equal n");
        std::vector<char> seen(static_cast<size_t>(n), 0);
        for (int v : cfg.permutation) {
            if (v < 0 || v >= n || seen[static_cast<size_t>(v)])
                fail(Errc::ProfileInvalid, "permutation must be a bijection on [0, n)");
            seen[static_cast<size_t>(v)] = 1;
        }
    }
    return cfg;
}

std::string profile_to_json(const CodeProfile& profile) { return profile_json(profile).dump(); }

std::string profile_hash_hex(const CodeProfile& profile) { return sha256_hex(profile_to_json(profile)); }

std::array<uint8_t, 32> outer_identity_hash(const CodeProfile& profile) {
    json j{{"q", 1ull << profile.q_bits}, {"m", profile.m}, {"k", profile.k}};
    json rs = json::array();
    for (const auto& gr : profile.groups) rs.push_back(gr.r());
    j["r"] = rs;
    std::string s = j.dump();
    return sha256(std::span<const uint8_t>(reinterpret_cast<const uint8_t*>(s.data()), s.size()));
}

std::string Manifest::to_json() const {
    json j;
    j["format"] = "srlc-manifest";
    j["version"] = 1;
    j["profile"] = profile_json(profile);
    j["profile_hash"] = profile_hash;
    j["systematic"] = systematic ? json(*systematic) : json(nullptr);
    j["permutation"] = permutation.empty() ? json(nullptr) : json(permutation);
    j["block_count"] = block_count;
    j["file_length"] = file_length;
    j["payload_k"] = payload_k;
    return j.dump(2);
}

Manifest Manifest::from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        fail(Errc::ParseError, std::string("manifest is not valid JSON: ") + e.what());
    }
    Manifest m;
    try {
        if (j.at("format").get<std::string>() != "srlc-manifest") fail(Errc::ParseError, "not a manifest");
        m.profile = profile_from_groups_json(j.at("profile"));
        m.profile_hash = j.at("profile_hash").get<std::string>();
        if (!j.at("systematic").is_null()) m.systematic = j.at("systematic").get<std::vector<int>>();
        if (!j.at("permutation").is_null()) m.permutation = j.at("permutation").get<std::vector<int>>();
        m.block_count = j.at("block_count").get<uint64_t>();
        m.file_length = j.at("file_length").get<uint64_t>();
        m.payload_k = j.at("payload_k").get<int>();
    } catch (const json::exception& e) {
        fail(Errc::ParseError, std::string("manifest field error: ") + e.what());
    }
    if (profile_hash_hex(m.profile) != m.profile_hash)
        fail(Errc::ParseError, "manifest profile hash mismatch (corrupt configuration)");
    m.profile.validate();
    return m;
}

ErasurePattern parse_pattern(const std::string& text, const CodeProfile& profile) {
    std::vector<int> idx;
    std::vector<int> offsets;
    int off = 0;
    for (const auto& gr : profile.groups) {
        offsets.push_back(off);
        off += gr.n();
    }
    size_t pos = 0;
    while (pos < text.size()) {
        size_t colon = text.find(':', pos);
        if (colon == std::string::npos) fail(Errc::ParseError, "pattern: expected group:pos list");
        int group = std::stoi(text.substr(pos, colon - pos));
        if (group < 1 || group > profile.g()) fail(Errc::ParseError, "pattern: group out of range");
        size_t semi = text.find(';', colon);
        std::string body = text.substr(colon + 1, (semi == std::string::npos ? text.size() : semi) - colon - 1);
        size_t b = 0;
        while (b < body.size()) {
            size_t comma = body.find(',', b);
            int p = std::stoi(body.substr(b, (comma == std::string::npos ? body.size() : comma) - b));
            int glen = profile.groups[static_cast<size_t>(group - 1)].n();
            if (p < 1 || p > glen) fail(Errc::ParseError, "pattern: position out of group");
            idx.push_back(offsets[static_cast<size_t>(group - 1)] + p - 1);
            if (comma == std::string::npos) break;
            b = comma + 1;
        }
        if (semi == std::string::npos) break;
        pos = semi + 1;
    }
    return ErasurePattern::of(std::move(idx));
}

std::vector<std::vector<uint64_t>> pack_payload(std::span<const uint8_t> bytes, int k, int ebits) {
    std::vector<uint8_t> payload(8);
    uint64_t len = bytes.size();
    for (int i = 0; i < 8; ++i) payload[static_cast<size_t>(i)] = static_cast<uint8_t>(len >> (8 * i));
    payload.insert(payload.end(), bytes.begin(), bytes.end());
    const uint64_t total_bits = payload.size() * 8;
    const uint64_t stripe_bits = static_cast<uint64_t>(k) * static_cast<uint64_t>(ebits);
    const uint64_t stripes = (total_bits + stripe_bits - 1) / stripe_bits;
    auto bit_at = [&](uint64_t t) -> uint64_t {
        uint64_t byte = t / 8;
        return byte < payload.size() ? (payload[byte] >> (7 - t % 8)) & 1 : 0;
    };
    std::vector<std::vector<uint64_t>> out(stripes, std::vector<uint64_t>(static_cast<size_t>(k), 0));
    for (uint64_t s = 0; s < stripes; ++s)
        for (int j = 0; j < k; ++j) {
            uint64_t v = 0;
            uint64_t base = (s * static_cast<uint64_t>(k) + static_cast<uint64_t>(j)) * static_cast<uint64_t>(ebits);
            for (int b = 0; b < ebits; ++b) v = (v << 1) | bit_at(base + static_cast<uint64_t>(b));
            out[s][static_cast<size_t>(j)] = v;
        }
    return out;
}

std::vector<uint8_t> unpack_payload(const std::vector<std::vector<uint64_t>>& messages, int k, int ebits) {
    const uint64_t total_bits = messages.size() * static_cast<uint64_t>(k) * static_cast<uint64_t>(ebits);
    std::vector<uint8_t> payload((total_bits + 7) / 8, 0);
    uint64_t t = 0;
    for (const auto& msg : messages)
        for (int j = 0; j < k; ++j) {
            uint64_t v = msg[static_cast<size_t>(j)];
            for (int b = ebits - 1; b >= 0; --b) {
                if ((v >> b) & 1) payload[t / 8] |= static_cast<uint8_t>(0x80u >> (t % 8));
                ++t;
            }
        }
    if (payload.size() < 8) fail(Errc::IoError, "payload too short for its length prefix");
    uint64_t len = 0;
    for (int i = 0; i < 8; ++i) len |= static_cast<uint64_t>(payload[static_cast<size_t>(i)]) << (8 * i);
    if (len > payload.size() - 8) fail(Errc::IoError, "corrupt payload length prefix");
    return {payload.begin() + 8, payload.begin() + 8 + static_cast<long>(len)};
}

int ShardSet::symbol_bytes() const { return (manifest_.profile.q_bits * manifest_.profile.m + 7) / 8; }

std::pair<int, int> ShardSet::group_span(int group) const {
    int off = 0;
    for (int i = 0; i < group; ++i) off += manifest_.profile.groups[static_cast<size_t>(i)].n();
    return {off, manifest_.profile.groups[static_cast<size_t>(group)].n()};
}

std::filesystem::path ShardSet::shard_path(int logical) const {
    if (!manifest_.permutation.empty()) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "node%04d.shard", manifest_.permutation[static_cast<size_t>(logical)]);
        return dir_ / buf;
    }
    int group = 0, pos = logical;
    while (pos >= manifest_.profile.groups[static_cast<size_t>(group)].n()) {
        pos -= manifest_.profile.groups[static_cast<size_t>(group)].n();
        ++group;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "g%02d_p%02d.shard", group, pos);
    return dir_ / buf;
}

void ShardSet::write_shard(int logical, std::span<const uint64_t> symbols) const {
    int group = 0, pos = logical;
    while (pos >= manifest_.profile.groups[static_cast<size_t>(group)].n()) {
        pos -= manifest_.profile.groups[static_cast<size_t>(group)].n();
        ++group;
    }
    std::string data;
    data.reserve(kHeaderSize + symbols.size() * static_cast<size_t>(symbol_bytes()));
    data += "SRLC";
    put_u16(data, kFormatVersion);
    put_u16(data, static_cast<uint16_t>(group));
    put_u16(data, static_cast<uint16_t>(pos));
    auto oh = outer_identity_hash(manifest_.profile);
    data.append(reinterpret_cast<const char*>(oh.data()), oh.size());
    put_u64(data, manifest_.block_count);
    const int B = symbol_bytes();
    for (uint64_t v : symbols)
        for (int b = B - 1; b >= 0; --b) data.push_back(static_cast<char>((v >> (8 * b)) & 0xff));
    write_file(shard_path(logical),
               std::span<const uint8_t>(reinterpret_cast<const uint8_t*>(data.data()), data.size()));
}

void ShardSet::write_erased_shard(int logical) const {
    int group = 0, pos = logical;
    while (pos >= manifest_.profile.groups[static_cast<size_t>(group)].n()) {
        pos -= manifest_.profile.groups[static_cast<size_t>(group)].n();
        ++group;
    }
    std::string data;
    data += "SRLC";
    put_u16(data, kFormatVersion);
    put_u16(data, static_cast<uint16_t>(group));
    put_u16(data, static_cast<uint16_t>(pos));
    auto oh = outer_identity_hash(manifest_.profile);
    data.append(reinterpret_cast<const char*>(oh.data()), oh.size());
    put_u64(data, manifest_.block_count);
    write_file(shard_path(logical),
               std::span<const uint8_t>(reinterpret_cast<const uint8_t*>(data.data()), data.size()));
}

void ShardSet::write_manifest_atomic() const {
    fs::path tmp = dir_ / "manifest.json.tmp";
    std::string text = manifest_.to_json();
    write_file(tmp, std::span<const uint8_t>(reinterpret_cast<const uint8_t*>(text.data()), text.size()));
    fs::rename(tmp, dir_ / "manifest.json");
}

ShardSet ShardSet::create(const fs::path& dir, const ShardConfig& config, std::span<const uint8_t> bytes) {
    config.profile.validate();
    fs::create_directories(dir);
    GlobalCode code = GlobalCode::construct(config.profile, std::nullopt, config.systematic);
    const int ebits = config.profile.q_bits * config.profile.m;
    auto messages = pack_payload(bytes, config.profile.k, ebits);

    Manifest m;
    m.profile = config.profile;
    m.systematic = config.systematic;
    m.permutation = config.permutation;
    m.block_count = messages.size();
    m.file_length = bytes.size();
    m.payload_k = config.profile.k;
    m.profile_hash = profile_hash_hex(config.profile);
    ShardSet set(dir, std::move(m));

    const int n = config.profile.n();
    std::vector<std::vector<uint64_t>> columns(static_cast<size_t>(n),
                                               std::vector<uint64_t>(messages.size()));
    for (size_t s = 0; s < messages.size(); ++s) {
        auto cw = code.encode(messages[s]);
        for (int j = 0; j < n; ++j) columns[static_cast<size_t>(j)][s] = cw[static_cast<size_t>(j)];
    }
    for (int j = 0; j < n; ++j) set.write_shard(j, columns[static_cast<size_t>(j)]);
    set.write_manifest_atomic();
    return set;
}

ShardSet ShardSet::open(const fs::path& dir) {
    auto text = read_file(dir / "manifest.json");
    Manifest m = Manifest::from_json(std::string(text.begin(), text.end()));
    ShardSet set(dir, std::move(m));
    // Validate headers of the shards that are present.
    const auto oh = outer_identity_hash(set.manifest_.profile);
    for (int j = 0; j < set.manifest_.profile.n(); ++j) {
        auto data = read_file(set.shard_path(j));
        if (data.size() < kHeaderSize || std::memcmp(data.data(), "SRLC", 4) != 0)
            fail(Errc::IoError, "bad shard header: " + set.shard_path(j).string());
        if (get_u16(data.data() + 4) != kFormatVersion)
            fail(Errc::IoError, "unsupported shard format version");
        if (std::memcmp(data.data() + 10, oh.data(), 32) != 0)
            fail(Errc::IoError, "shard does not belong to this configuration");
        if (get_u64(data.data() + 42) != set.manifest_.block_count)
            fail(Errc::IoError, "shard block count mismatch");
        size_t payload = data.size() - kHeaderSize;
        size_t expect = static_cast<size_t>(set.manifest_.block_count) * static_cast<size_t>(set.symbol_bytes());
        if (payload != 0 && payload != expect)
            fail(Errc::IoError, "shard payload truncated mid-symbol: " + set.shard_path(j).string());
    }
    return set;
}

GlobalCode ShardSet::code() const {
    return GlobalCode::construct(manifest_.profile, std::nullopt, manifest_.systematic);
}

std::vector<int> ShardSet::erased_positions() const {
    std::vector<int> out;
    for (int j = 0; j < manifest_.profile.n(); ++j) {
        std::error_code ec;
        auto sz = fs::file_size(shard_path(j), ec);
        if (ec) fail(Errc::IoError, "missing shard: " + shard_path(j).string());
        if (sz == kHeaderSize) out.push_back(j);
    }
    return out;
}

std::vector<std::vector<uint64_t>> ShardSet::load_stripes(const std::vector<int>& positions) const {
    const int B = symbol_bytes();
    const size_t blocks = manifest_.block_count;
    std::vector<std::vector<uint64_t>> stripes(blocks, std::vector<uint64_t>(positions.size(), 0));
    for (size_t pi = 0; pi < positions.size(); ++pi) {
        auto data = read_file(shard_path(positions[pi]));
        if (data.size() == kHeaderSize) fail(Errc::IoError, "shard is erased: " + shard_path(positions[pi]).string());
        const uint8_t* p = data.data() + kHeaderSize;
        for (size_t s = 0; s < blocks; ++s) {
            uint64_t v = 0;
            for (int b = 0; b < B; ++b) v = (v << 8) | p[s * static_cast<size_t>(B) + static_cast<size_t>(b)];
            stripes[s][pi] = v;
        }
    }
    return stripes;
}

std::vector<uint8_t> ShardSet::decode(const ErasurePattern& extra) const {
    auto erased = erased_positions();
    for (int j : extra.erased)
        if (j < 0 || j >= manifest_.profile.n()) fail(Errc::ParseError, "erasure index out of range");
    erased.insert(erased.end(), extra.erased.begin(), extra.erased.end());
    auto pattern = ErasurePattern::of(std::move(erased));

    GlobalCode gc = code();
    if (!gc.correctable(pattern))
        fail(Errc::InsufficientRank, "erasure pattern is not information-theoretically correctable");
    auto surv = pattern.survivors(gc.length());
    auto stripes = load_stripes(surv);
    auto dec = gc.decoder(pattern);
    const size_t pk = static_cast<size_t>(manifest_.payload_k);
    std::vector<std::vector<uint64_t>> messages(stripes.size());
    for (size_t s = 0; s < stripes.size(); ++s) {
        auto msg = dec.decode(stripes[s]);
        msg.resize(pk);
        messages[s] = std::move(msg);
    }
    return unpack_payload(messages, manifest_.payload_k, manifest_.profile.q_bits * manifest_.profile.m);
}

void ShardSet::erase(const ErasurePattern& pattern) {
    for (int j : pattern.erased) {
        if (j < 0 || j >= manifest_.profile.n()) fail(Errc::ParseError, "erase index out of range");
        write_erased_shard(j);
    }
}

void ShardSet::erase_random(int count, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<int> all(static_cast<size_t>(manifest_.profile.n()));
    for (int i = 0; i < manifest_.profile.n(); ++i) all[static_cast<size_t>(i)] = i;
    std::shuffle(all.begin(), all.end(), rng);
    if (count > static_cast<int>(all.size())) count = static_cast<int>(all.size());
    erase(ErasurePattern::of({all.begin(), all.begin() + count}));
}

int ShardSet::repair() {
    auto erased = erased_positions();
    if (erased.empty()) return 0;
    auto pattern = ErasurePattern::of(erased);
    GlobalCode gc = code();
    auto leaf_surv = pattern.leaf_survivors(manifest_.profile);
    auto leaf_eras = pattern.leaf_erasures(manifest_.profile);
    auto offs = manifest_.profile.leaf_offsets();
    auto leaves = manifest_.profile.leaf_list();
    const int ext = gc.ext_field();

    std::vector<size_t> global_leaves;
    for (size_t li = 0; li < leaves.size(); ++li) {
        if (leaf_eras[li].empty()) continue;
        const LocalCode& lc = gc.locals()[li];
        Matrix a_surv = lc.generator().cols_subset(leaf_surv[li]).embed_to(ext);
        if (a_surv.rank() < static_cast<size_t>(lc.r())) {
            global_leaves.push_back(li);
            continue;
        }
        // Local repair: solve u from r independent survivor columns, then
        // re-encode only the erased positions.
        auto sel = a_surv.independent_columns(static_cast<size_t>(lc.r()));
        Matrix inv = a_surv.cols_subset(sel).inverse();
        Matrix a_full = lc.generator().embed_to(ext);
        std::vector<int> surv_global(leaf_surv[li].size());
        for (size_t t = 0; t < leaf_surv[li].size(); ++t) surv_global[t] = offs[li] + leaf_surv[li][t];
        auto stripes = load_stripes(surv_global);
        std::vector<int> erased_cols = leaf_eras[li];
        Matrix a_erased = a_full.cols_subset(erased_cols);
        std::vector<std::vector<uint64_t>> restored(erased_cols.size(),
                                                    std::vector<uint64_t>(stripes.size()));
        for (size_t s = 0; s < stripes.size(); ++s) {
            std::vector<uint64_t> ysel(sel.size());
            for (size_t t = 0; t < sel.size(); ++t) ysel[t] = stripes[s][static_cast<size_t>(sel[t])];
            auto u = inv.left_mul(ysel);
            auto vals = a_erased.left_mul(u);
            for (size_t t = 0; t < erased_cols.size(); ++t) restored[t][s] = vals[t];
        }
        for (size_t t = 0; t < erased_cols.size(); ++t)
            write_shard(offs[li] + erased_cols[t], restored[t]);
    }

    if (global_leaves.empty()) return 0;
    // Escalate: decode the whole file once, re-encode, and fill every
    // still-erased position of the escalated leaves.
    if (!gc.correctable(pattern))
        fail(Errc::InsufficientRank, "pattern not correctable; global repair impossible");
    auto surv = pattern.survivors(gc.length());
    auto stripes = load_stripes(surv);
    auto dec = gc.decoder(pattern);
    std::vector<int> fill;
    for (size_t li : global_leaves)
        for (int t : leaf_eras[li]) fill.push_back(offs[li] + t);
    Matrix cols = gc.global_generator().cols_subset(fill);
    std::vector<std::vector<uint64_t>> restored(fill.size(), std::vector<uint64_t>(stripes.size()));
    for (size_t s = 0; s < stripes.size(); ++s) {
        auto msg = dec.decode(stripes[s]);
        auto vals = cols.left_mul(msg);
        for (size_t t = 0; t < fill.size(); ++t) restored[t][s] = vals[t];
    }
    for (size_t t = 0; t < fill.size(); ++t) write_shard(fill[static_cast<size_t>(t)], restored[t]);
    return static_cast<int>(global_leaves.size());
}

void ShardSet::recode_group(int group, int local_q, int delta) {
    split_group(group, {manifest_.profile.groups.at(static_cast<size_t>(group)).r()}, local_q, delta);
}

void ShardSet::split_group(int group, const std::vector<int>& parts, int local_q, int delta) {
    if (group < 0 || group >= manifest_.profile.g()) fail(Errc::GroupCountOutOfRange, "group out of range");
    if (!manifest_.permutation.empty())
        fail(Errc::ProfileInvalid, "reconfiguration with an explicit placement permutation is not supported");
    const int qb = bits_of_size(static_cast<uint64_t>(local_q), "local_q");
    if (manifest_.profile.q_bits % qb != 0)
        fail(Errc::ProfileInvalid, "q must be a power of the new local field size");

    // Build target sub-codes over the (possibly new) local field. The tower
    // needs that field; rebuild a tower containing it.
    auto exps = manifest_.profile.tower_exponents();
    exps.push_back(qb);
    TowerPtr tw = FieldTower::for_exponents(exps);
    int sum = 0;
    std::vector<LocalCode> subs;
    for (int pr : parts) {
        sum += pr;
        subs.push_back(LocalCode::mds(tw, tw->find(qb), pr, delta));
    }
    if (sum != manifest_.profile.groups[static_cast<size_t>(group)].r())
        fail(Errc::BadPartitionSum, "part localities must sum to the group locality");

    // Current composite generator of the group, over the base field.
    const int base = tw->find(manifest_.profile.q_bits);
    const int extf = tw->find(manifest_.profile.q_bits * manifest_.profile.m);
    std::vector<Matrix> cur_blocks;
    for (const auto& leaf : manifest_.profile.groups[static_cast<size_t>(group)].leaves) {
        LocalCode lc = LocalCode::mds(tw, tw->find(leaf.q_bits), leaf.r, leaf.delta);
        cur_blocks.push_back(lc.generator().embed_to(base));
    }
    std::vector<Matrix> tgt_blocks;
    for (const auto& s : subs) tgt_blocks.push_back(s.generator().embed_to(base));
    Matrix t = recoding_matrix(block_diag(cur_blocks), block_diag(tgt_blocks)).embed_to(extf);

    auto [off, old_width] = group_span(group);
    std::vector<int> positions(static_cast<size_t>(old_width));
    for (int i = 0; i < old_width; ++i) positions[static_cast<size_t>(i)] = off + i;
    auto stripes = load_stripes(positions);

    int new_width = 0;
    for (const auto& s : subs) new_width += s.n();
    std::vector<std::vector<uint64_t>> columns(static_cast<size_t>(new_width),
                                               std::vector<uint64_t>(stripes.size()));
    for (size_t s = 0; s < stripes.size(); ++s) {
        auto recoded = t.left_mul(stripes[s]);
        for (int j = 0; j < new_width; ++j) columns[static_cast<size_t>(j)][s] = recoded[static_cast<size_t>(j)];
    }

    // Update manifest first in memory so shard paths reflect the new layout.
    std::vector<LeafSpec> new_leaves;
    for (const auto& s : subs)
        new_leaves.push_back(LeafSpec{s.r(), delta, s.n(), qb});
    Manifest updated = manifest_;
    updated.profile.groups[static_cast<size_t>(group)].leaves = new_leaves;
    updated.profile_hash = profile_hash_hex(updated.profile);

    // Remove stale files beyond the new group width, then write the new
    // group shards and the manifest.
    for (int i = new_width; i < old_width; ++i) fs::remove(shard_path(off + i));
    manifest_ = std::move(updated);
    for (int j = 0; j < new_width; ++j) write_shard(off + j, columns[static_cast<size_t>(j)]);
    write_manifest_atomic();
}

DynamicState ShardSet::load_dynamic_state() const {
    if (manifest_.systematic)
        fail(Errc::ProfileInvalid, "k/locality/group updates require plain (non-systematic) encoding");
    if (!manifest_.permutation.empty())
        fail(Errc::ProfileInvalid, "reconfiguration with an explicit placement permutation is not supported");
    if (!erased_positions().empty())
        fail(Errc::UnrepairableLocally, "shard set has erased shards; repair before reconfiguring");
    DynamicState st(manifest_.profile);
    std::vector<int> all(static_cast<size_t>(manifest_.profile.n()));
    for (int i = 0; i < manifest_.profile.n(); ++i) all[static_cast<size_t>(i)] = i;
    st.set_stripes(load_stripes(all));
    return st;
}

void ShardSet::persist_all(const std::vector<std::vector<uint64_t>>& stripes, const CodeProfile& old_profile) {
    // Drop every file of the old layout, then write the new one.
    Manifest old = manifest_;
    old.profile = old_profile;
    for (int j = 0; j < old_profile.n(); ++j) {
        ShardSet tmp(dir_, old);
        fs::remove(tmp.shard_path(j));
    }
    const int n = manifest_.profile.n();
    std::vector<std::vector<uint64_t>> columns(static_cast<size_t>(n),
                                               std::vector<uint64_t>(stripes.size()));
    for (size_t s = 0; s < stripes.size(); ++s)
        for (int j = 0; j < n; ++j) columns[static_cast<size_t>(j)][s] = stripes[s][static_cast<size_t>(j)];
    for (int j = 0; j < n; ++j) write_shard(j, columns[static_cast<size_t>(j)]);
    write_manifest_atomic();
}

void ShardSet::resize_k(int new_k, std::span<const uint8_t> extra_bytes) {
    auto st = load_dynamic_state();
    CodeProfile old_profile = manifest_.profile;
    if (new_k == manifest_.profile.k) return;
    if (new_k < manifest_.payload_k)
        fail(Errc::KOutOfRange, "shrinking below the stored payload would truncate the file");
    if (new_k > manifest_.profile.k) {
        const int added = new_k - manifest_.profile.k;
        // Raw bit-packing of the extra payload, one row per stripe.
        std::vector<std::vector<uint64_t>> rows(st.stripe_count(),
                                                std::vector<uint64_t>(static_cast<size_t>(added), 0));
        const int ebits = manifest_.profile.q_bits * manifest_.profile.m;
        uint64_t t = 0;
        auto bit_at = [&](uint64_t bit) -> uint64_t {
            uint64_t byte = bit / 8;
            return byte < extra_bytes.size() ? (extra_bytes[byte] >> (7 - bit % 8)) & 1 : 0;
        };
        for (auto& row : rows)
            for (int j = 0; j < added; ++j) {
                uint64_t v = 0;
                for (int b = 0; b < ebits; ++b) v = (v << 1) | bit_at(t++);
                row[static_cast<size_t>(j)] = v;
            }
        st.grow_file(new_k, rows);
    } else {
        st.shrink_file(new_k);
    }
    manifest_.profile = st.code().profile();
    manifest_.profile_hash = profile_hash_hex(manifest_.profile);
    persist_all(st.stripes(), old_profile);
}

void ShardSet::add_groups(int count, int r, int delta, int local_q) {
    auto st = load_dynamic_state();
    CodeProfile old_profile = manifest_.profile;
    const int qb = bits_of_size(static_cast<uint64_t>(local_q), "local_q");
    // The state owns its tower; it carries every divisor of q, which is
    // exactly the set of legal local fields.
    if (st.code().tower()->find(qb) < 0)
        fail(Errc::ProfileInvalid, "local field size must divide into q by power");
    std::vector<std::pair<int, LocalCode>> specs;
    for (int i = 0; i < count; ++i)
        specs.emplace_back(r, LocalCode::mds(st.code().tower(), st.code().tower()->find(qb), r, delta));
    st.add_groups(specs);
    manifest_.profile = st.code().profile();
    manifest_.profile_hash = profile_hash_hex(manifest_.profile);
    persist_all(st.stripes(), old_profile);
}

void ShardSet::remove_groups(int new_g) {
    auto st = load_dynamic_state();
    CodeProfile old_profile = manifest_.profile;
    st.remove_groups(new_g);
    manifest_.profile = st.code().profile();
    manifest_.profile_hash = profile_hash_hex(manifest_.profile);
    persist_all(st.stripes(), old_profile);
}

void ShardSet::set_locality(int group, int new_r, std::optional<int> delta) {
    auto st = load_dynamic_state();
    CodeProfile old_profile = manifest_.profile;
    std::optional<LocalCode> replacement;
    if (delta) {
        const auto& leaf = manifest_.profile.groups.at(static_cast<size_t>(group)).leaves.at(0);
        replacement = LocalCode::mds(st.code().tower(), st.code().tower()->find(leaf.q_bits), new_r, *delta);
    }
    st.change_locality(group, new_r, std::move(replacement));
    manifest_.profile = st.code().profile();
    manifest_.profile_hash = profile_hash_hex(manifest_.profile);
    persist_all(st.stripes(), old_profile);
}

}  // namespace srlrc
