// srlrc: maximally recoverable LRC toolbox over sum-rank outer codes.
// Shards a file into local groups with per-group parities plus global
// parities, simulates erasures, repairs locally or globally, and reshapes
// live shard sets (recode, split, grow, add groups) without global recoding.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "srlrc/alternant.hpp"
#include "srlrc/shards.hpp"

namespace fs = std::filesystem;
using namespace srlrc;

namespace {

int exit_code_for(const Error& e) {
    switch (e.code()) {
        case Errc::InsufficientRank:
        case Errc::UnrepairableLocally:
            return 2;
        case Errc::ProfileInvalid:
        case Errc::ParseError:
        case Errc::NonDividingChain:
        case Errc::BadDistribution:
        case Errc::BadPartitionSum:
        case Errc::KOutOfRange:
        case Errc::LocalityOutOfRange:
        case Errc::GroupCountOutOfRange:
        case Errc::WouldViolateKBound:
        case Errc::FieldTooSmall:
            return 3;
        case Errc::IoError:
            return 4;
        default:
            return 1;
    }
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) fail(Errc::IoError, "cannot open " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<uint8_t> slurp_bytes(const fs::path& p) {
    auto s = slurp(p);
    return {s.begin(), s.end()};
}

void spit(const fs::path& p, std::span<const uint8_t> data) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) fail(Errc::IoError, "cannot write " + p.string());
    out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    size_t pos = 0;
    while (pos < s.size()) {
        size_t comma = s.find(',', pos);
        out.push_back(std::stoi(s.substr(pos, (comma == std::string::npos ? s.size() : comma) - pos)));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sum-rank MR-LRC shard tool"};
    app.require_subcommand(1);

    std::string config_path, dir, input, output, pattern_text, systematic_text, parts_text;
    int group = 1, new_k = 0, new_r = 0, rr = 6, dd = 3, gg = 7, local_q = 0, delta = 0, count = 1, remove_to = 0;
    int random_erasures = 0;
    uint64_t seed = 1;

    auto* enc = app.add_subcommand("encode", "shard a file under a profile");
    enc->add_option("--config", config_path, "profile JSON")->required();
    enc->add_option("--input", input, "payload file")->required();
    enc->add_option("--out", dir, "shard directory")->required();
    enc->add_option("--systematic", systematic_text, "comma list k_1,..,k_g of systematic symbols per group");

    auto* dec = app.add_subcommand("decode", "reassemble the file from survivors");
    dec->add_option("--dir", dir, "shard directory")->required();
    dec->add_option("--out", output, "output file")->required();
    dec->add_option("--erase", pattern_text, "extra assumed erasures group:pos[,pos]*[;...] (1-based)");

    auto* era = app.add_subcommand("erase", "truncate shards to simulate failures");
    era->add_option("--dir", dir)->required();
    era->add_option("--pattern", pattern_text, "group:pos[,pos]*[;...] (1-based)");
    era->add_option("--random", random_erasures, "erase this many uniformly random positions");
    era->add_option("--seed", seed, "random seed");

    auto* rep = app.add_subcommand("repair", "restore erased shards (local first, global when needed)");
    rep->add_option("--dir", dir)->required();

    auto* plan = app.add_subcommand("plan", "field-size planner F(x) over group counts x");
    plan->add_option("--g", gg)->required();
    plan->add_option("--r", rr)->required();
    plan->add_option("--delta", dd)->required();

    auto* vmr = app.add_subcommand("verify-mr", "exhaustive maximal-recoverability check");
    vmr->add_option("--config", config_path, "profile JSON")->required();

    auto* dist = app.add_subcommand("distance", "global Hamming distance and erasure threshold");
    dist->add_option("--config", config_path, "profile JSON")->required();

    auto* rec = app.add_subcommand("recode", "recode one group to a fresh local code");
    rec->add_option("--dir", dir)->required();
    rec->add_option("--group", group, "1-based group index")->required();
    rec->add_option("--local-q", local_q, "new local field size")->required();
    rec->add_option("--delta", delta, "new local distance")->required();

    auto* split = app.add_subcommand("split-group", "partition one group into sub-codes");
    split->add_option("--dir", dir)->required();
    split->add_option("--group", group, "1-based group index")->required();
    split->add_option("--parts", parts_text, "comma list of sub-localities")->required();
    split->add_option("--local-q", local_q, "sub-code field size")->required();
    split->add_option("--delta", delta, "sub-code local distance")->default_val(2);

    auto* growk = app.add_subcommand("grow-k", "change the file dimension k in place");
    growk->add_option("--dir", dir)->required();
    growk->add_option("--k", new_k, "new dimension")->required();
    growk->add_option("--input", input, "extra payload consumed when growing");

    auto* addg = app.add_subcommand("add-group", "append local groups (or drop trailing ones)");
    addg->add_option("--dir", dir)->required();
    addg->add_option("--r", new_r, "locality of each new group");
    addg->add_option("--delta", delta, "local distance of each new group");
    addg->add_option("--local-q", local_q, "local field size of each new group");
    addg->add_option("--count", count, "number of groups to append")->default_val(1);
    addg->add_option("--remove-to", remove_to, "instead drop trailing groups down to this count");

    auto* setloc = app.add_subcommand("set-locality", "change one group's locality r_i");
    setloc->add_option("--dir", dir)->required();
    setloc->add_option("--group", group, "1-based group index")->required();
    setloc->add_option("--r", new_r, "new locality")->required();
    setloc->add_option("--delta", delta, "replacement local distance (default: keep)");

    auto* info = app.add_subcommand("info", "print manifest summary");
    info->add_option("--dir", dir)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (enc->parsed()) {
            auto cfg = parse_config(slurp(config_path));
            if (!systematic_text.empty()) cfg.systematic = parse_int_list(systematic_text);
            auto bytes = slurp_bytes(input);
            ShardSet::create(dir, cfg, bytes);
            std::cout << "encoded " << bytes.size() << " bytes into " << cfg.profile.n() << " shards\n";
        } else if (dec->parsed()) {
            auto set = ShardSet::open(dir);
            ErasurePattern extra;
            if (!pattern_text.empty()) extra = parse_pattern(pattern_text, set.manifest().profile);
            auto bytes = set.decode(extra);
            spit(output, bytes);
            std::cout << "decoded " << bytes.size() << " bytes\n";
        } else if (era->parsed()) {
            auto set = ShardSet::open(dir);
            if (!pattern_text.empty())
                set.erase(parse_pattern(pattern_text, set.manifest().profile));
            else if (random_erasures > 0)
                set.erase_random(random_erasures, seed);
            else
                fail(Errc::ParseError, "erase needs --pattern or --random");
            std::cout << "erased\n";
        } else if (rep->parsed()) {
            auto set = ShardSet::open(dir);
            int global = set.repair();
            std::cout << (global ? "repaired (global decode for " + std::to_string(global) + " group(s))\n"
                                 : "repaired locally\n");
        } else if (plan->parsed()) {
            auto table = plan_field_size(gg, rr, dd);
            for (const auto& e : table.entries) {
                std::cout << "x=" << e.x << "  F(x)=" << e.base << "^" << e.exponent;
                if (e.pow2_exponent) std::cout << " = 2^" << *e.pow2_exponent;
                std::cout << "  (" << e.log2_size << " bits)\n";
            }
            const auto& best = table.entries[static_cast<size_t>(table.argmin_x - 1)];
            std::cout << "min at x=" << table.argmin_x << ": " << best.base << "^" << best.exponent;
            if (best.pow2_exponent) std::cout << " = 2^" << *best.pow2_exponent;
            std::cout << "\n";
        } else if (vmr->parsed()) {
            auto cfg = parse_config(slurp(config_path));
            auto code = GlobalCode::construct(cfg.profile, std::nullopt, cfg.systematic);
            uint64_t patterns = 1;
            for (const auto& l : cfg.profile.leaf_list()) {
                uint64_t c = 1, e = static_cast<uint64_t>(l.delta - 1);
                for (uint64_t i = 0; i < e; ++i) c = c * static_cast<uint64_t>(l.n - static_cast<int>(i)) / (i + 1);
                patterns *= c;
            }
            bool ok = code.verify_mr_exhaustive();
            std::cout << "MR: " << (ok ? "PASS" : "FAIL") << " (patterns checked: " << patterns << ")\n";
            return ok ? 0 : 1;
        } else if (dist->parsed()) {
            auto cfg = parse_config(slurp(config_path));
            auto code = GlobalCode::construct(cfg.profile, std::nullopt, cfg.systematic);
            int d = global_distance(code);
            std::cout << "d_H = " << d << " (corrects any " << d - 1 << " erasures; MR covers more)\n";
        } else if (rec->parsed()) {
            auto set = ShardSet::open(dir);
            set.recode_group(group - 1, local_q, delta);
            std::cout << "recoded group " << group << "\n";
        } else if (split->parsed()) {
            auto set = ShardSet::open(dir);
            set.split_group(group - 1, parse_int_list(parts_text), local_q, delta);
            std::cout << "split group " << group << " into " << parts_text << "\n";
        } else if (growk->parsed()) {
            auto set = ShardSet::open(dir);
            std::vector<uint8_t> extra;
            if (!input.empty()) extra = slurp_bytes(input);
            set.resize_k(new_k, extra);
            std::cout << "k -> " << new_k << "\n";
        } else if (addg->parsed()) {
            auto set = ShardSet::open(dir);
            if (remove_to > 0) {
                set.remove_groups(remove_to);
                std::cout << "groups -> " << remove_to << "\n";
            } else {
                if (new_r <= 0 || delta <= 0 || local_q <= 0)
                    fail(Errc::ParseError, "add-group needs --r, --delta and --local-q");
                set.add_groups(count, new_r, delta, local_q);
                std::cout << "added " << count << " group(s)\n";
            }
        } else if (setloc->parsed()) {
            auto set = ShardSet::open(dir);
            set.set_locality(group - 1, new_r, delta > 0 ? std::optional<int>(delta) : std::nullopt);
            std::cout << "group " << group << " locality -> " << new_r << "\n";
        } else if (info->parsed()) {
            auto set = ShardSet::open(dir);
            const auto& m = set.manifest();
            std::cout << "profile: " << profile_to_json(m.profile) << "\n";
            std::cout << "blocks: " << m.block_count << "  file bytes: " << m.file_length << "\n";
            std::cout << "erased: " << set.erased_positions().size() << "\n";
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
