// Command-line front end for the co-ranking library: cut computation and
// validation, parallel merge, multi-shard fractional knapsack, instance
// generation, and a benchmark harness.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "coranking/corank.hpp"
#include "coranking/io.hpp"
#include "coranking/knapsack.hpp"
#include "coranking/merge.hpp"
#include "coranking/oracle.hpp"

namespace {

using coranking::Bound;
using coranking::BoundaryKey;
using coranking::CutVector;
using coranking::DupProfile;
using coranking::GenSpec;
using coranking::Instance;

constexpr int kExitInvalid = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

std::string format_boundary(const BoundaryKey<std::int64_t>& key) {
    switch (key.tag) {
    case Bound::NegInf: return "-inf";
    case Bound::PosInf: return "+inf";
    case Bound::Finite: break;
    }
    return std::to_string(key.value);
}

void print_trace(const coranking::RoundStats<std::int64_t>& stats) {
    for (const auto& move : stats.transfers) {
        std::cout << "round " << move.round << ": donor " << move.donor
                  << " (left " << format_boundary(move.donor_left) << ") -> receiver "
                  << move.receiver << " (right " << format_boundary(move.receiver_right)
                  << "), delta " << move.delta << ", width_sum " << move.width_sum << "\n";
    }
    std::cout << "rounds " << stats.rounds << ", heap_updates " << stats.heap_updates << "\n";
}

DupProfile parse_dups(const std::string& name) {
    if (name == "none") return DupProfile::None;
    if (name == "heavy") return DupProfile::Heavy;
    if (name == "runs") return DupProfile::Runs;
    throw CLI::ValidationError("--dups", "expected one of none, heavy, runs");
}

double parse_capacity(const std::string& text) {
    const auto slash = text.find('/');
    try {
        std::size_t used = 0;
        if (slash == std::string::npos) {
            const double value = std::stod(text, &used);
            if (used != text.size()) throw std::invalid_argument(text);
            return value;
        }
        const double num = std::stod(text.substr(0, slash), &used);
        if (used != slash) throw std::invalid_argument(text);
        const std::string den_text = text.substr(slash + 1);
        const double den = std::stod(den_text, &used);
        if (used != den_text.size() || den == 0.0) throw std::invalid_argument(text);
        return num / den;
    } catch (const std::exception&) {
        throw coranking::io::ParseError("capacity '" + text + "' is not a number or p/q");
    }
}

int cmd_corank(const std::string& path, std::int64_t k, bool canonical, bool trace) {
    const Instance<std::int64_t> inst = coranking::io::read_instance(path);
    const auto result = coranking::corank(inst, k, trace);
    const CutVector cut =
        canonical ? coranking::canonicalize_cut(inst, result.cut) : result.cut;
    std::cout << coranking::io::format_cut(cut) << "\n";
    if (trace) print_trace(result.stats);
    return 0;
}

int cmd_validate(const std::string& path, std::int64_t k, const std::string& cut_text) {
    const Instance<std::int64_t> inst = coranking::io::read_instance(path);
    const CutVector cut = coranking::io::parse_cut(cut_text, k);
    if (cut.index.size() != inst.lists.size())
        throw std::invalid_argument("cut has " + std::to_string(cut.index.size()) +
                                    " entries for " + std::to_string(inst.lists.size()) +
                                    " lists");
    for (std::size_t t = 0; t < inst.lists.size(); ++t) {
        if (cut.index[t] < 0 || cut.index[t] > static_cast<std::int64_t>(inst.lists[t].size()))
            throw std::invalid_argument("cut index " + std::to_string(cut.index[t]) +
                                        " out of range for list " + std::to_string(t));
    }
    if (coranking::cut_mass(cut) != k) {
        std::cout << "INVALID: cut mass " << coranking::cut_mass(cut)
                  << " does not match k " << k << "\n";
        return kExitInvalid;
    }
    // Locate the extremal boundary pair so the verdict can name it.
    BoundaryKey<std::int64_t> max_left{Bound::NegInf, 0, -1};
    BoundaryKey<std::int64_t> min_right{Bound::PosInf, 0, -1};
    for (std::size_t t = 0; t < inst.lists.size(); ++t) {
        const auto left = coranking::boundary_left(inst, static_cast<int>(t), cut.index[t]);
        const auto right = coranking::boundary_right(inst, static_cast<int>(t), cut.index[t]);
        if (coranking::compare_boundaries(max_left, left) < 0 || max_left.list < 0) max_left = left;
        if (coranking::compare_boundaries(right, min_right) < 0 || min_right.list < 0) min_right = right;
    }
    if (coranking::compare_boundaries(min_right, max_left) < 0) {
        std::cout << "INVALID: left boundary " << format_boundary(max_left) << " (list "
                  << max_left.list << ") exceeds right boundary " << format_boundary(min_right)
                  << " (list " << min_right.list << ")\n";
        return kExitInvalid;
    }
    std::cout << "VALID\n";
    return 0;
}

int cmd_merge(const std::string& path, int processors, const std::string& out_path) {
    const Instance<std::int64_t> inst = coranking::io::read_instance(path);
    const std::vector<std::int64_t> merged = coranking::parallel_merge(inst, processors);
    std::string text = "[";
    for (std::size_t j = 0; j < merged.size(); ++j) {
        if (j > 0) text += ',';
        text += std::to_string(merged[j]);
    }
    text += "]\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + out_path);
        out << text;
    }
    return 0;
}

int cmd_knapsack(const std::string& path, const std::string& capacity_text) {
    const auto shards = coranking::io::read_shards(path);
    const double capacity = parse_capacity(capacity_text);
    const auto solution = coranking::knapsack_split(shards, capacity);
    std::cout << std::setprecision(17) << "{\"counts\":[";
    for (std::size_t t = 0; t < solution.counts.size(); ++t) {
        if (t > 0) std::cout << ',';
        std::cout << solution.counts[t];
    }
    std::cout << "],\"fraction\":";
    if (solution.fraction) {
        std::cout << "{\"shard\":" << solution.fraction->shard << ",\"item\":"
                  << solution.fraction->item << ",\"amount\":" << solution.fraction->amount
                  << "}";
    } else {
        std::cout << "null";
    }
    std::cout << ",\"total_value\":" << solution.total_value << ",\"total_weight\":"
              << solution.total_weight << "}\n";
    return 0;
}

int cmd_gen(std::uint64_t seed, int m, std::int64_t n, const std::string& dups,
            const std::string& out_path) {
    GenSpec spec;
    spec.m_min = spec.m_max = m;
    spec.n_min = spec.n_max = n;
    spec.dups = parse_dups(dups);
    spec.seed = seed;
    coranking::io::write_instance_file(coranking::gen_instance(spec), out_path);
    return 0;
}

template <typename Fn>
std::int64_t time_ns(int reps, Fn&& fn) {
    std::int64_t best = -1;
    for (int r = 0; r < reps; ++r) {
        const auto start = std::chrono::steady_clock::now();
        fn();
        const auto stop = std::chrono::steady_clock::now();
        const auto ns =
            std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count();
        if (best < 0 || ns < best) best = ns;
    }
    return best;
}

int cmd_bench(std::uint64_t seed, const std::string& grid, int reps, const std::string& dups) {
    std::vector<std::int64_t> sizes;
    std::vector<int> list_counts;
    if (grid == "quick") {
        sizes = {1000, 10000};
        list_counts = {2, 16};
    } else if (grid == "default") {
        sizes = {1000, 10000, 100000, 1000000};
        list_counts = {2, 16, 256};
    } else if (grid == "full") {
        sizes = {1000, 10000, 100000, 1000000, 10000000};
        list_counts = {2, 16, 256};
    } else {
        throw CLI::ValidationError("--grid", "expected one of quick, default, full");
    }
    const DupProfile profile = parse_dups(dups);
    const int threads = std::max(1u, std::thread::hardware_concurrency());

    std::cout << "m,N,K,dups,rounds,heap_updates,corank_ns,baseline_ns,merge_serial_ns,merge_parallel_ns\n";
    for (const std::int64_t size : sizes) {
        for (const int m : list_counts) {
            GenSpec spec;
            spec.m_min = spec.m_max = m;
            spec.n_min = spec.n_max = size / m;
            spec.dups = profile;
            spec.seed = seed ^ (static_cast<std::uint64_t>(size) * 31 + static_cast<std::uint64_t>(m));
            const Instance<std::int64_t> inst = coranking::gen_instance(spec);
            const std::int64_t total = inst.total;

            std::vector<std::int64_t> sink;
            const std::int64_t serial_ns = time_ns(reps, [&] { sink = coranking::merge_all(inst); });
            const std::int64_t parallel_ns =
                time_ns(reps, [&] { sink = coranking::parallel_merge(inst, threads); });

            for (const std::int64_t k :
                 {std::int64_t{0}, total / 4, total / 2, 3 * total / 4, total}) {
                coranking::CorankResult<std::int64_t> result;
                const std::int64_t corank_ns =
                    time_ns(reps, [&] { result = coranking::corank(inst, k); });
                CutVector baseline;
                const std::int64_t baseline_ns =
                    time_ns(reps, [&] { baseline = coranking::value_space_baseline(inst, k); });
                std::cout << m << ',' << total << ',' << k << ',' << dups << ','
                          << result.stats.rounds << ',' << result.stats.heap_updates << ','
                          << corank_ns << ',' << baseline_ns << ',' << serial_ns << ','
                          << parallel_ns << "\n";
            }
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"merge-free multi-way co-ranking over sorted sequences"};
    app.require_subcommand(1);

    std::string path, out_path, cut_text, capacity_text;
    std::string dups = "none", grid = "default";
    std::int64_t k = 0, n = 0;
    int processors = 1, m = 1, reps = 3;
    std::uint64_t seed = 0;
    bool canonical = false, trace = false;

    auto* corank_cmd = app.add_subcommand("corank", "compute a cut vector for a rank");
    corank_cmd->add_option("file", path)->required();
    corank_cmd->add_option("--k", k, "target rank")->required();
    corank_cmd->add_flag("--canonical", canonical, "normalize ties to the canonical cut");
    corank_cmd->add_flag("--trace", trace, "print per-round transfers");

    auto* validate_cmd = app.add_subcommand("validate", "check a cut vector against a rank");
    validate_cmd->add_option("file", path)->required();
    validate_cmd->add_option("--k", k, "target rank")->required();
    validate_cmd->add_option("--cut", cut_text, "comma-separated cut")->required();

    auto* merge_cmd = app.add_subcommand("merge", "emit the full stable merge");
    merge_cmd->add_option("file", path)->required();
    merge_cmd->add_option("--p", processors, "slice count")->required();
    merge_cmd->add_option("--out", out_path, "write to a file instead of stdout");

    auto* knapsack_cmd = app.add_subcommand("knapsack", "fractional knapsack across shards");
    knapsack_cmd->add_option("file", path)->required();
    knapsack_cmd->add_option("--capacity", capacity_text, "weight budget (decimal or p/q)")->required();

    auto* bench_cmd = app.add_subcommand("bench", "round counts and timings over a size grid");
    bench_cmd->add_option("--seed", seed);
    bench_cmd->add_option("--grid", grid, "quick, default, or full");
    bench_cmd->add_option("--reps", reps, "timing repetitions");
    bench_cmd->add_option("--dups", dups, "none, heavy, or runs");

    auto* gen_cmd = app.add_subcommand("gen", "write a deterministic instance file");
    gen_cmd->add_option("--seed", seed)->required();
    gen_cmd->add_option("--m", m, "list count")->required();
    gen_cmd->add_option("--n", n, "elements per list")->required();
    gen_cmd->add_option("--dups", dups, "none, heavy, or runs");
    gen_cmd->add_option("--out", out_path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (corank_cmd->parsed()) return cmd_corank(path, k, canonical, trace);
        if (validate_cmd->parsed()) return cmd_validate(path, k, cut_text);
        if (merge_cmd->parsed()) return cmd_merge(path, processors, out_path);
        if (knapsack_cmd->parsed()) return cmd_knapsack(path, capacity_text);
        if (bench_cmd->parsed()) return cmd_bench(seed, grid, reps, dups);
        if (gen_cmd->parsed()) return cmd_gen(seed, m, n, dups, out_path);
    } catch (const coranking::StalledError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
