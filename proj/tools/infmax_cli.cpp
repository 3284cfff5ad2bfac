#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "infmax/dcg.hpp"
#include "infmax/fixtures.hpp"
#include "infmax/greedy.hpp"

using namespace infmax;

namespace {

struct RunConfig {
    std::string dataset;
    std::string builtin;
    bool undirected = false;
    std::string model = "ic";
    double p = 0.1;
    std::size_t scenarios = 100;
    bool exhaustive = false;
    bool all_live = false;
    std::string k = "2";
    std::vector<std::string> algos{"dcg-subwarmup"};
    std::uint64_t seed = 1;
    double epsilon = 0.0;
    double master_gap = 0.01;
    bool warm_start = false;
    bool singlecut = false;
    double time_limit = 0.0;
    std::size_t max_subsets = 10'000'000;
    std::string out;
    std::string format = "csv";
    std::size_t threads = 1;
    bool no_time = false;
};

struct Row {
    std::string dataset;
    std::string model;
    std::size_t k = 0;
    std::size_t num_scenarios = 0;
    std::string algorithm;
    SolveReport report;
    std::string seeds;
    std::uint64_t rng_seed = 0;
};

const std::vector<std::string> kColumns{"dataset",    "model",      "k",              "num_scenarios", "algorithm",
                                        "objective",  "bound",      "gap",            "cuts_total",    "cuts_by_family",
                                        "iterations", "time_ms",    "seeds",          "rng_seed"};

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::vector<std::size_t> parse_k(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream in(text);
    std::string part;
    while (std::getline(in, part, ',')) {
        const auto dash = part.find('-');
        try {
            if (dash == std::string::npos) {
                out.push_back(std::stoul(part));
            } else {
                const auto lo = std::stoul(part.substr(0, dash));
                const auto hi = std::stoul(part.substr(dash + 1));
                if (lo > hi) throw std::invalid_argument("empty k range");
                for (auto k = lo; k <= hi; ++k) out.push_back(k);
            }
        } catch (const std::logic_error&) {
            throw std::invalid_argument("bad --k value '" + text + "' (use 3, 1-5 or 1,2,4)");
        }
    }
    if (out.empty()) throw std::invalid_argument("--k is empty");
    return out;
}

std::shared_ptr<const DirectedGraph> load_graph(const RunConfig& cfg, std::string& name) {
    if (!cfg.builtin.empty()) {
        name = cfg.builtin;
        if (cfg.builtin == "fig1") return std::make_shared<const DirectedGraph>(fixtures::fig1_network());
        if (cfg.builtin == "a1_15node") return std::make_shared<const DirectedGraph>(fixtures::a1_15node());
        throw std::invalid_argument("unknown builtin '" + cfg.builtin + "' (fig1, a1_15node)");
    }
    std::ifstream in(cfg.dataset);
    if (!in) throw std::runtime_error("cannot open dataset '" + cfg.dataset + "'");
    name = std::filesystem::path(cfg.dataset).stem().string();
    return std::make_shared<const DirectedGraph>(
        parse_edge_list(in, cfg.undirected ? EdgeMode::undirected : EdgeMode::directed));
}

ScenarioSet make_scenarios(const RunConfig& cfg, std::shared_ptr<const DirectedGraph> g, std::string& model) {
    if (cfg.all_live) {
        model = "all-live";
        return all_live(std::move(g));
    }
    if (cfg.model == "ic") {
        model = "ic";
        if (cfg.exhaustive) return enumerate_ic(std::move(g), cfg.p);
        const std::vector<double> probs(g->num_arcs(), cfg.p);
        return sample_ic(std::move(g), probs, cfg.scenarios, cfg.seed, cfg.threads);
    }
    if (cfg.model == "lt") {
        if (cfg.exhaustive) throw std::invalid_argument("--exhaustive is only available for the ic model");
        model = "lt";
        const auto weights = lt_default_weights(*g);
        return sample_lt(std::move(g), weights, cfg.scenarios, cfg.seed, cfg.threads);
    }
    throw std::invalid_argument("unknown model '" + cfg.model + "' (ic, lt)");
}

SolveReport run_algorithm(const std::string& algo, const ScenarioSet& set, std::size_t k, const RunConfig& cfg) {
    if (algo == "greedy") return run_greedy(set, k, cfg.threads);
    if (algo == "brute") return brute_force_opt(set, k, cfg.max_subsets, cfg.threads);
    DcgOptions o;
    o.epsilon = cfg.epsilon;
    o.master_rel_gap = cfg.master_gap;
    o.aggregation = cfg.singlecut ? Aggregation::singlecut : Aggregation::multicut;
    o.warm_start_empty_set = cfg.warm_start;
    o.time_limit_seconds = cfg.time_limit;
    o.workers = cfg.threads;
    if (algo == "dcg-subineqs") {
        o.cut_family = CutFamily::submodular;
    } else if (algo == "dcg-subwarmup") {
        o.cut_family = CutFamily::submodular;
        o.warm_start_empty_set = true;
    } else if (algo == "dcg-comb") {
        o.cut_family = CutFamily::combinatorial;
    } else if (algo == "dcg-lshaped") {
        o.cut_family = CutFamily::lshaped_strengthened;
    } else {
        throw std::invalid_argument("unknown algorithm '" + algo + "'");
    }
    return run_dcg(set, k, o);
}

std::vector<std::string> cells(const Row& r, bool no_time) {
    return {r.dataset,
            r.model,
            std::to_string(r.k),
            std::to_string(r.num_scenarios),
            r.algorithm,
            num(r.report.objective),
            num(r.report.bound),
            num(r.report.gap),
            std::to_string(r.report.cuts_total),
            format_cut_counts(r.report.cuts_by_family),
            std::to_string(r.report.iterations),
            no_time ? "-" : num(r.report.wall_ms),
            r.seeds,
            std::to_string(r.rng_seed)};
}

void emit(std::ostream& out, const std::vector<Row>& rows, const RunConfig& cfg) {
    if (cfg.format == "csv") {
        for (std::size_t i = 0; i < kColumns.size(); ++i) out << (i ? "," : "") << kColumns[i];
        out << '\n';
        for (const auto& r : rows) {
            const auto c = cells(r, cfg.no_time);
            for (std::size_t i = 0; i < c.size(); ++i) out << (i ? "," : "") << c[i];
            out << '\n';
        }
        return;
    }
    auto array = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json j;
        const auto c = cells(r, cfg.no_time);
        for (std::size_t i = 0; i < c.size(); ++i) j[kColumns[i]] = c[i];
        array.push_back(std::move(j));
    }
    out << array.dump(2) << '\n';
}

int run(const RunConfig& cfg) {
    if (cfg.dataset.empty() == cfg.builtin.empty()) throw std::invalid_argument("give exactly one of --dataset, --builtin");
    if (cfg.format != "csv" && cfg.format != "json") throw std::invalid_argument("--format must be csv or json");
    std::string name;
    std::string model;
    auto graph = load_graph(cfg, name);
    const auto set = make_scenarios(cfg, graph, model);
    const auto ks = parse_k(cfg.k);

    std::vector<Row> rows;
    for (auto k : ks) {
        for (const auto& algo : cfg.algos) {
            Row row;
            row.dataset = name;
            row.model = model;
            row.k = k;
            row.num_scenarios = set.size();
            row.algorithm = algo;
            row.report = run_algorithm(algo, set, k, cfg);
            // Never trust a solver's own bookkeeping for the printed value.
            row.report.objective = expected_spread(set, row.report.seeds, cfg.threads);
            for (auto v : row.report.seeds.members()) {
                if (!row.seeds.empty()) row.seeds += ' ';
                row.seeds += std::to_string(graph->label(v));
            }
            row.rng_seed = cfg.seed;
            rows.push_back(std::move(row));
        }
    }
    if (cfg.out.empty()) {
        emit(std::cout, rows, cfg);
    } else {
        std::ofstream out(cfg.out);
        if (!out) throw std::runtime_error("cannot write '" + cfg.out + "'");
        emit(out, rows, cfg);
    }
    return 0;
}

int table1(std::size_t threads) {
    const auto g = std::make_shared<const DirectedGraph>(fixtures::fig1_network());
    std::vector<std::string> dcg_row{"DCG"};
    std::vector<std::string> greedy_row{"Greedy"};
    std::cout << "algorithm";
    for (int i = 10; i >= 1; --i) {
        const double p = i / 10.0;
        std::cout << ",p=" << num(p);
        const auto set = enumerate_ic(g, p);
        DcgOptions o;
        o.warm_start_empty_set = true;
        o.master_rel_gap = 0.0;
        o.workers = threads;
        dcg_row.push_back(num(run_dcg(set, 2, o).objective));
        greedy_row.push_back(num(run_greedy(set, 2, threads).objective));
    }
    std::cout << '\n';
    for (const auto* row : {&dcg_row, &greedy_row}) {
        for (std::size_t i = 0; i < row->size(); ++i) std::cout << (i ? "," : "") << (*row)[i];
        std::cout << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact and greedy stochastic influence maximization"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto* run_cmd = app.add_subcommand("run", "Solve one configuration and print report rows");
    run_cmd->add_option("--dataset", cfg.dataset, "Edge list file (u v per line, # or % comments)");
    run_cmd->add_option("--builtin", cfg.builtin, "Builtin network")->check(CLI::IsMember({"fig1", "a1_15node"}));
    run_cmd->add_flag("--undirected", cfg.undirected, "Treat each line as two opposite arcs");
    run_cmd->add_option("--model", cfg.model, "Diffusion model")->check(CLI::IsMember({"ic", "lt"}));
    run_cmd->add_option("--p", cfg.p, "IC arc probability")->check(CLI::Range(0.0, 1.0));
    auto* count = run_cmd->add_option("--scenarios", cfg.scenarios, "Number of sampled scenarios");
    auto* exh = run_cmd->add_flag("--exhaustive", cfg.exhaustive, "Enumerate all IC scenarios (m <= 24)");
    auto* live = run_cmd->add_flag("--all-live", cfg.all_live, "Single scenario with every arc live");
    exh->excludes(count)->excludes(live);
    live->excludes(count);
    run_cmd->add_option("--k", cfg.k, "Seed budget: 3, 1-5 or 1,2,4");
    run_cmd->add_option("--algo", cfg.algos, "greedy, dcg-subineqs, dcg-subwarmup, dcg-comb, dcg-lshaped, brute")
        ->delimiter(',')
        ->check(CLI::IsMember({"greedy", "dcg-subineqs", "dcg-subwarmup", "dcg-comb", "dcg-lshaped", "brute"}));
    run_cmd->add_option("--seed", cfg.seed, "Scenario sampling seed");
    run_cmd->add_option("--epsilon", cfg.epsilon, "Stop when UB - LB <= epsilon")->check(CLI::NonNegativeNumber);
    run_cmd->add_option("--master-gap", cfg.master_gap, "Relative gap for each master solve")
        ->check(CLI::NonNegativeNumber);
    run_cmd->add_flag("--warm-start", cfg.warm_start, "Seed every DCG run with the empty-set cuts");
    run_cmd->add_flag("--singlecut", cfg.singlecut, "One aggregated value variable instead of one per scenario");
    run_cmd->add_option("--time-limit", cfg.time_limit, "DCG time budget in seconds (0 = none)")
        ->check(CLI::NonNegativeNumber);
    run_cmd->add_option("--max-subsets", cfg.max_subsets, "Brute force refuses above this many seed sets");
    run_cmd->add_option("--out", cfg.out, "Write rows here instead of stdout");
    run_cmd->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    run_cmd->add_option("--threads", cfg.threads, "Worker threads (0 = all cores)");
    run_cmd->add_flag("--no-time", cfg.no_time, "Print '-' for time_ms so output is reproducible byte for byte");

    auto* t1 = app.add_subcommand("table1", "Expected influence on the 9-node network, k = 2, p = 1.0 .. 0.1");
    t1->add_option("--threads", cfg.threads, "Worker threads (0 = all cores)");

    CLI11_PARSE(app, argc, argv);
    try {
        if (*run_cmd) return run(cfg);
        return table1(cfg.threads);
    } catch (const ParseError& e) {
        std::cerr << "infmax: " << cfg.dataset << ": " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "infmax: " << e.what() << '\n';
        return 1;
    }
}
