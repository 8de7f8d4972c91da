// patsort: command-line surface for the pattern-avoiding sorter.
// Subcommands: sort, check, gen, count, bench.
// Exit codes: 0 ok/avoids, 1 contains/self-check failure, 2 usage or parse
// error, 3 resource cap.

#include "patsort/generators.hpp"
#include "patsort/matrix_oracle.hpp"
#include "patsort/sorter.hpp"
#include "patsort/treesort.hpp"

#include <optional>

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <string>
#include <vector>

namespace {

using patsort::Pattern;

// Whitespace-separated ASCII integers. On a bad token the error message
// names the 1-based line and column of the token start.
bool parse_values(const std::string& text, std::vector<std::int64_t>& out,
                  std::string& err) {
    std::size_t line = 1, col = 1, i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (c == '\n') {
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++col;
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])))
            ++j;
        std::int64_t v = 0;
        const char* first = text.data() + i;
        const char* last = text.data() + j;
        const auto res = std::from_chars(first, last, v);
        if (res.ec != std::errc() || res.ptr != last) {
            err = "line " + std::to_string(line) + ", column " + std::to_string(col) +
                  ": invalid integer '" + std::string(first, last) + "'";
            return false;
        }
        out.push_back(v);
        col += j - i;
        i = j;
    }
    return true;
}

bool read_stream(std::istream& in, std::vector<std::int64_t>& out, std::string& err) {
    const std::string text{std::istreambuf_iterator<char>(in),
                           std::istreambuf_iterator<char>()};
    return parse_values(text, out, err);
}

// path "-" means stdin.
bool read_values_from(const std::string& path, std::vector<std::int64_t>& out,
                      std::string& err) {
    if (path == "-") return read_stream(std::cin, out, err);
    std::ifstream f(path);
    if (!f) {
        err = "cannot open '" + path + "'";
        return false;
    }
    return read_stream(f, out, err);
}

std::uint64_t env_default_seed() {
    const char* s = std::getenv("PATSORT_SEED");
    if (s == nullptr) return 0;
    std::uint64_t v = 0;
    const char* last = s + std::string::traits_type::length(s);
    const auto res = std::from_chars(s, last, v);
    if (res.ec != std::errc() || res.ptr != last)
        throw std::invalid_argument("PATSORT_SEED is not an unsigned integer");
    return v;
}

struct SortOpts {
    std::string stats_path;
    std::optional<int> k;
    std::optional<std::uint64_t> budget;
    bool seeded_check = false;
    std::string pattern;
};

struct CheckOpts {
    std::string file;
    std::string pattern;
};

struct GenOpts {
    std::string family;
    int n = 0;
    int target = 231;
    int t = 0;
    std::string pattern;
    std::optional<std::uint64_t> seed;
    bool target_given = false, t_given = false, pattern_given = false;
};

struct CountOpts {
    std::string what;
    std::string pattern;
    std::optional<int> n, m, k, height;
};

struct BenchOpts {
    std::string family = "stack";
    std::string sizes;
    int reps = 1;
    int target = 231;
    int t = 3;
    std::string pattern;
    std::optional<std::uint64_t> seed;
    std::string out;
};

void write_stats(const std::string& path, const std::string& cmdline,
                 const patsort::SortReport& rep, const std::string& pattern,
                 std::int64_t wall_ms) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["command"] = cmdline;
    j["n"] = rep.n;
    j["k"] = rep.k;
    if (!pattern.empty()) j["pattern"] = pattern;
    j["small_path"] = rep.small_path;
    j["t1"] = rep.t1;
    j["t2"] = rep.t2;

    // Per-phase breakdown of the final merge; earlier layers are aggregated.
    nlohmann::json phases = nlohmann::json::array();
    for (const auto& m : rep.layers[2].merges)
        for (const auto& p : m.phases)
            phases.push_back({{"d", p.d}, {"m_i", p.runs_at_start},
                              {"rounds", p.rounds.size()}});
    j["phases"] = phases;

    nlohmann::json layers = nlohmann::json::array();
    for (const auto& l : rep.layers) {
        std::size_t lp = 0, lr = 0;
        for (const auto& m : l.merges) {
            lp += m.phases.size();
            for (const auto& p : m.phases) lr += p.rounds.size();
        }
        layers.push_back({{"groups", l.groups},
                          {"runs_before", l.runs_before},
                          {"runs_after", l.runs_after},
                          {"comparisons", l.comparisons},
                          {"phases", lp},
                          {"rounds", lr}});
    }
    j["layers"] = layers;

    j["blocks"] = rep.block_stats.blocks;
    j["successful_runs"] = rep.block_stats.successful_runs;
    j["tree_advances"] = rep.block_stats.tree_advances;
    j["fallback_blocks"] = rep.block_stats.fallback_blocks;
    j["final_height"] = rep.block_stats.final_height;
    j["comparisons"] = rep.comparisons;
    j["search_comparisons"] = rep.search_comparisons;
    j["wall_time_ms"] = wall_ms;

    std::ofstream f(path);
    if (!f) throw std::invalid_argument("cannot open stats path '" + path + "'");
    f << j.dump(2) << "\n";
}

int run_sort(const SortOpts& o, const std::string& cmdline) {
    std::vector<std::int64_t> values;
    std::string err;
    if (!read_stream(std::cin, values, err)) {
        std::cerr << "patsort sort: " << err << "\n";
        return 2;
    }

    patsort::SorterConfig cfg;
    if (o.k) cfg.k_override = *o.k;
    if (o.budget) cfg.tree_budget = *o.budget;

    const auto t0 = std::chrono::steady_clock::now();
    auto [keys, rep] = patsort::sort_keys_pattern_avoiding(values, cfg);
    const auto wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - t0)
                             .count();

    if (o.seeded_check) {
        auto expect = patsort::make_keys(values);
        std::stable_sort(expect.begin(), expect.end(),
                         [](const patsort::Key& a, const patsort::Key& b) {
                             return a.value < b.value;
                         });
        if (expect != keys) {
            std::cerr << "patsort sort: self-check failed\n";
            return 1;
        }
    }

    std::string out;
    out.reserve(keys.size() * 8);
    for (const auto& k : keys) {
        out += std::to_string(k.value);
        out += '\n';
    }
    std::cout << out;
    std::cout.flush();

    if (!o.stats_path.empty()) write_stats(o.stats_path, cmdline, rep, o.pattern, wall_ms);
    return 0;
}

int run_check(const CheckOpts& o) {
    const Pattern p = Pattern::parse(o.pattern);
    std::vector<std::int64_t> values;
    std::string err;
    if (!read_values_from(o.file, values, err)) {
        std::cerr << "patsort check: " << err << "\n";
        return 2;
    }
    if (patsort::contains_pattern(values, p)) {
        std::cout << "contains\n";
        return 1;
    }
    std::cout << "avoids\n";
    return 0;
}

std::vector<std::int64_t> generate_instance(const std::string& family, int n,
                                            int target, int t,
                                            const std::string& pattern,
                                            std::uint64_t seed) {
    if (family == "stack")
        return patsort::gen_stack_family(n, patsort::stack_target_from_int(target), seed)
            .values();
    if (family == "layered") return patsort::gen_layered_runs(n, t, seed).values();
    return patsort::gen_rejection(Pattern::parse(pattern), n, seed).values();
}

int run_gen(const GenOpts& o) {
    if (o.family == "stack" && (o.t_given || o.pattern_given)) {
        std::cerr << "patsort gen: family 'stack' takes --target only\n";
        return 2;
    }
    if (o.family == "layered" && (!o.t_given || o.target_given || o.pattern_given)) {
        std::cerr << "patsort gen: family 'layered' requires --t and takes no other shape flag\n";
        return 2;
    }
    if (o.family == "rejection" && (!o.pattern_given || o.target_given || o.t_given)) {
        std::cerr << "patsort gen: family 'rejection' requires --pattern and takes no other shape flag\n";
        return 2;
    }
    const std::uint64_t seed = o.seed ? *o.seed : env_default_seed();
    const auto values = generate_instance(o.family, o.n, o.target, o.t, o.pattern, seed);
    std::string out;
    for (const auto v : values) {
        out += std::to_string(v);
        out += '\n';
    }
    std::cout << out;
    return 0;
}

int run_count(const CountOpts& o) {
    const auto need = [](bool ok, const char* msg) {
        if (!ok) throw std::invalid_argument(msg);
    };
    patsort::BigInt result;
    if (o.what == "avoiders") {
        need(!o.pattern.empty() && o.n.has_value(),
             "count avoiders needs --pattern and --n");
        result = patsort::count_avoiders(Pattern::parse(o.pattern), *o.n);
    } else if (o.what == "matrices") {
        need(!o.pattern.empty() && o.m.has_value() && o.n.has_value(),
             "count matrices needs --pattern, --m and --n");
        result = patsort::count_T(Pattern::parse(o.pattern), *o.m, *o.n);
    } else if (o.what == "trees") {
        need(o.k.has_value() && o.height.has_value(),
             "count trees needs --k and --height");
        result = patsort::count_trees_exact(*o.k, *o.height);
    } else { // ex
        need(!o.pattern.empty() && o.n.has_value(), "count ex needs --pattern and --n");
        result = patsort::ex_brute(Pattern::parse(o.pattern), *o.n);
    }
    std::cout << result << "\n";
    return 0;
}

int run_bench(const BenchOpts& o) {
    if (o.family == "rejection" && o.pattern.empty()) {
        std::cerr << "patsort bench: family 'rejection' requires --pattern\n";
        return 2;
    }
    if (o.reps < 1) {
        std::cerr << "patsort bench: --reps must be >= 1\n";
        return 2;
    }

    std::vector<int> sizes;
    {
        std::size_t i = 0;
        const std::string& s = o.sizes;
        while (i < s.size()) {
            std::size_t j = s.find(',', i);
            if (j == std::string::npos) j = s.size();
            int v = 0;
            const auto res = std::from_chars(s.data() + i, s.data() + j, v);
            if (res.ec != std::errc() || res.ptr != s.data() + j || v < 1) {
                std::cerr << "patsort bench: bad size '" << s.substr(i, j - i) << "'\n";
                return 2;
            }
            sizes.push_back(v);
            i = j + 1;
        }
        if (sizes.empty() || !std::is_sorted(sizes.begin(), sizes.end())) {
            std::cerr << "patsort bench: --sizes must be a non-empty ascending list\n";
            return 2;
        }
    }

    std::ofstream file;
    if (!o.out.empty()) {
        file.open(o.out);
        if (!file) {
            std::cerr << "patsort bench: cannot open '" << o.out << "'\n";
            return 2;
        }
    }
    std::ostream& os = o.out.empty() ? std::cout : file;

    std::string param;
    if (o.family == "stack") {
        param = std::to_string(o.target);
    } else if (o.family == "layered") {
        param = std::to_string(o.t);
    } else {
        param = o.pattern;
        std::replace(param.begin(), param.end(), ',', '-');
    }

    os << "family,param,n,rep,seed,k,comparisons,search_comparisons,tree_advances,"
          "fallback_blocks,phases,rounds,wall_time_ms\n";
    patsort::SplitMix64 seeder(o.seed ? *o.seed : env_default_seed());
    for (const int n : sizes) {
        for (int rep = 1; rep <= o.reps; ++rep) {
            const std::uint64_t row_seed = seeder.next();
            const auto values =
                generate_instance(o.family, n, o.target, o.t, o.pattern, row_seed);
            const auto t0 = std::chrono::steady_clock::now();
            auto [keys, srep] = patsort::sort_keys_pattern_avoiding(values, {});
            const auto wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                     std::chrono::steady_clock::now() - t0)
                                     .count();
            os << o.family << ',' << param << ',' << n << ',' << rep << ','
               << row_seed << ',' << srep.k << ',' << srep.comparisons << ','
               << srep.search_comparisons << ',' << srep.block_stats.tree_advances
               << ',' << srep.block_stats.fallback_blocks << ','
               << srep.total_phases() << ',' << srep.total_rounds() << ','
               << wall_ms << '\n';
        }
    }
    os.flush();
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    std::ios::sync_with_stdio(false);
    std::string cmdline;
    for (int i = 0; i < argc; ++i) {
        if (i > 0) cmdline += ' ';
        cmdline += argv[i];
    }

    CLI::App app{"stable adaptive sorter for pattern-avoiding integer sequences"};
    app.require_subcommand(1);

    SortOpts so;
    auto* sort_cmd =
        app.add_subcommand("sort", "read integers from stdin, print them sorted");
    sort_cmd->add_option("--stats", so.stats_path, "write a JSON stats document here");
    sort_cmd->add_option("--k", so.k, "override the block length");
    sort_cmd->add_option("--budget", so.budget,
                         "tree-search advance budget; 0 keeps the first candidate "
                         "(default 10000000)");
    sort_cmd->add_flag("--seeded-check", so.seeded_check,
                       "verify the output against a reference stable sort");
    sort_cmd->add_option("--pattern", so.pattern,
                         "pattern annotation echoed into the stats document");

    CheckOpts co;
    auto* check_cmd = app.add_subcommand(
        "check", "test a sequence file ('-' for stdin) for pattern containment");
    check_cmd->add_option("file", co.file, "sequence file, or '-'")->required();
    check_cmd->add_option("--pattern", co.pattern, "permutation, e.g. 2,3,1")
        ->required();

    GenOpts go;
    auto* gen_cmd = app.add_subcommand("gen", "generate a pattern-avoiding instance");
    gen_cmd->add_option("--family", go.family, "stack, layered or rejection")
        ->required()
        ->check(CLI::IsMember({"stack", "layered", "rejection"}));
    gen_cmd->add_option("--n", go.n, "instance length")->required();
    auto* g_target =
        gen_cmd->add_option("--target", go.target, "stack family: 231, 312, 132 or 213");
    auto* g_t = gen_cmd->add_option("--t", go.t, "layered family: number of runs");
    auto* g_pattern =
        gen_cmd->add_option("--pattern", go.pattern, "rejection family: pattern to avoid");
    gen_cmd->add_option("--seed", go.seed, "RNG seed (default: PATSORT_SEED or 0)");

    CountOpts cnt;
    auto* count_cmd = app.add_subcommand("count", "exact counting oracles");
    count_cmd->add_option("--what", cnt.what, "avoiders, matrices, trees or ex")
        ->required()
        ->check(CLI::IsMember({"avoiders", "matrices", "trees", "ex"}));
    count_cmd->add_option("--pattern", cnt.pattern, "permutation, e.g. 2,3,1");
    count_cmd->add_option("--n", cnt.n, "length / number of 1-entries / matrix side");
    count_cmd->add_option("--m", cnt.m, "matrix side for --what matrices");
    count_cmd->add_option("--k", cnt.k, "sequence length for --what trees");
    count_cmd->add_option("--height", cnt.height, "tree height for --what trees");

    BenchOpts bo;
    auto* bench_cmd = app.add_subcommand("bench", "comparison-count benchmark CSV");
    bench_cmd->add_option("--family", bo.family, "stack, layered or rejection")
        ->check(CLI::IsMember({"stack", "layered", "rejection"}));
    bench_cmd->add_option("--sizes", bo.sizes, "ascending comma-separated lengths")
        ->required();
    bench_cmd->add_option("--reps", bo.reps, "instances per size (default 1)");
    bench_cmd->add_option("--target", bo.target, "stack family target (default 231)");
    bench_cmd->add_option("--t", bo.t, "layered family run count (default 3)");
    bench_cmd->add_option("--pattern", bo.pattern, "rejection family pattern");
    bench_cmd->add_option("--seed", bo.seed, "base RNG seed (default: PATSORT_SEED or 0)");
    bench_cmd->add_option("--out", bo.out, "CSV output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    go.target_given = g_target->count() > 0;
    go.t_given = g_t->count() > 0;
    go.pattern_given = g_pattern->count() > 0;

    try {
        if (*sort_cmd) return run_sort(so, cmdline);
        if (*check_cmd) return run_check(co);
        if (*gen_cmd) return run_gen(go);
        if (*count_cmd) return run_count(cnt);
        if (*bench_cmd) return run_bench(bo);
    } catch (const patsort::resource_limit_error& e) {
        std::cerr << "patsort: resource limit: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "patsort: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
