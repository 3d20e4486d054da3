#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "srlrc/alternant.hpp"
#include "srlrc/shards.hpp"

namespace py = pybind11;
using namespace srlrc;

namespace {

GlobalCode code_from_json(const std::string& config_json) {
    auto cfg = parse_config(config_json);
    return GlobalCode::construct(cfg.profile, std::nullopt, cfg.systematic);
}

std::vector<uint8_t> to_bytes(const py::bytes& b) {
    std::string s = b;
    return {s.begin(), s.end()};
}

py::bytes from_bytes(const std::vector<uint8_t>& v) {
    return py::bytes(reinterpret_cast<const char*>(v.data()), v.size());
}

}  // namespace

PYBIND11_MODULE(_srlrc, m) {
    m.doc() = "Maximally recoverable locally repairable codes over sum-rank outer codes";

    py::register_exception<Error>(m, "SrlrcError");

    m.def(
        "plan_field_size",
        [](int g, int r, int delta) {
            auto table = plan_field_size(g, r, delta);
            py::list entries;
            for (const auto& e : table.entries) {
                py::dict d;
                d["x"] = e.x;
                d["base"] = e.base;
                d["exponent"] = e.exponent;
                d["log2_size"] = static_cast<double>(e.log2_size);
                d["pow2_exponent"] = e.pow2_exponent ? py::object(py::int_(*e.pow2_exponent)) : py::none();
                entries.append(d);
            }
            return py::make_tuple(entries, table.argmin_x);
        },
        py::arg("g"), py::arg("r"), py::arg("delta"),
        "Field-size table F(x) = max(x+1, r+delta-1)^ceil(gr/x) and its argmin.");

    m.def(
        "verify_mr",
        [](const std::string& config_json) { return code_from_json(config_json).verify_mr_exhaustive(); },
        py::arg("config_json"), "Exhaustive maximal-recoverability check for a profile.");

    m.def(
        "global_distance",
        [](const std::string& config_json) { return global_distance(code_from_json(config_json)); },
        py::arg("config_json"), "Global Hamming distance e(A,k)+1 of a profile's code.");

    m.def(
        "msrd_distance",
        [](const std::string& config_json) {
            auto code = code_from_json(config_json);
            const auto& lin = code.outer_linrs();
            auto rep = polynomial_basis(code.tower(), code.base_field(), code.ext_field());
            return min_sum_rank_distance(lin->generator(), lin->partition(), rep);
        },
        py::arg("config_json"), "Brute-force minimum sum-rank distance of the outer code.");

    m.def(
        "encode_file",
        [](const std::string& config_json, const py::bytes& data, const std::string& dir) {
            auto cfg = parse_config(config_json);
            ShardSet::create(dir, cfg, to_bytes(data));
        },
        py::arg("config_json"), py::arg("data"), py::arg("dir"),
        "Shard a payload into the given directory.");

    m.def(
        "decode_file",
        [](const std::string& dir, const std::string& extra_pattern) {
            auto set = ShardSet::open(dir);
            ErasurePattern extra;
            if (!extra_pattern.empty()) extra = parse_pattern(extra_pattern, set.manifest().profile);
            return from_bytes(set.decode(extra));
        },
        py::arg("dir"), py::arg("extra_pattern") = std::string(),
        "Reassemble the stored file, optionally assuming extra erasures.");

    m.def(
        "erase",
        [](const std::string& dir, const std::string& pattern, int random_count, uint64_t seed) {
            auto set = ShardSet::open(dir);
            if (!pattern.empty())
                set.erase(parse_pattern(pattern, set.manifest().profile));
            else
                set.erase_random(random_count, seed);
        },
        py::arg("dir"), py::arg("pattern") = std::string(), py::arg("random_count") = 0, py::arg("seed") = 1);

    m.def(
        "repair", [](const std::string& dir) { return ShardSet::open(dir).repair(); }, py::arg("dir"),
        "Restore erased shards; returns the number of groups that needed global decode.");

    m.def(
        "erased_positions",
        [](const std::string& dir) { return ShardSet::open(dir).erased_positions(); }, py::arg("dir"));

    m.def(
        "split_group",
        [](const std::string& dir, int group, const std::vector<int>& parts, int local_q, int delta) {
            ShardSet::open(dir).split_group(group, parts, local_q, delta);
        },
        py::arg("dir"), py::arg("group"), py::arg("parts"), py::arg("local_q"), py::arg("delta") = 2);

    m.def(
        "recode_group",
        [](const std::string& dir, int group, int local_q, int delta) {
            ShardSet::open(dir).recode_group(group, local_q, delta);
        },
        py::arg("dir"), py::arg("group"), py::arg("local_q"), py::arg("delta"));

    m.def(
        "resize_k",
        [](const std::string& dir, int k, const py::bytes& extra) {
            ShardSet::open(dir).resize_k(k, to_bytes(extra));
        },
        py::arg("dir"), py::arg("k"), py::arg("extra") = py::bytes());

    m.def(
        "add_groups",
        [](const std::string& dir, int count, int r, int delta, int local_q) {
            ShardSet::open(dir).add_groups(count, r, delta, local_q);
        },
        py::arg("dir"), py::arg("count"), py::arg("r"), py::arg("delta"), py::arg("local_q"));

    m.def(
        "remove_groups", [](const std::string& dir, int g) { ShardSet::open(dir).remove_groups(g); },
        py::arg("dir"), py::arg("g"));

    m.def(
        "set_locality",
        [](const std::string& dir, int group, int r, std::optional<int> delta) {
            ShardSet::open(dir).set_locality(group, r, delta);
        },
        py::arg("dir"), py::arg("group"), py::arg("r"), py::arg("delta") = py::none());

    m.def(
        "manifest_json",
        [](const std::string& dir) { return ShardSet::open(dir).manifest().to_json(); }, py::arg("dir"));
}
