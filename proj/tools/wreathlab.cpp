// wreathlab command-line interface: exact cycle-index computation, coupled
// samplers, limit-law specs, the partition chain, pattern statistics and the
// verification experiments. Same (command, flags, seed) always produces
// byte-identical output.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "wreathlab/wreathlab.hpp"

namespace wl = wreathlab;
using wl::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCap = 2;

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

long long env_cap() {
    if (const char* env = std::getenv("WREATHLAB_CAP")) {
        try {
            return std::stoll(env);
        } catch (const std::exception&) {
            throw std::invalid_argument("WREATHLAB_CAP is not an integer");
        }
    }
    return wl::kDefaultEnumerationCap;
}

// "S3", "C4" or "@elements.json" ({"degree": k, "elements": [[one-line],..]})
wl::GroupSpec parse_group(const std::string& text) {
    if (!text.empty() && text[0] == '@') {
        std::ifstream in(text.substr(1));
        if (!in) throw std::invalid_argument("cannot open group file " + text.substr(1));
        json j = json::parse(in);
        std::vector<wl::Permutation> elements;
        for (const auto& images : j.at("elements"))
            elements.push_back(wl::Permutation::from_one_line(images.get<std::vector<int>>()));
        return wl::GroupSpec::explicit_group(std::move(elements));
    }
    return wl::GroupSpec::parse(text);
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

// line-oriented sampling keeps stdout clean; the seed goes to stderr
void note_seed(std::uint64_t seed) { std::cerr << "seed: " << seed << "\n"; }

struct CycleIndexArgs {
    std::string family;
    std::string gamma = "S2";
    std::string a = "S2", b = "S2";
    int n = 2;
    std::string outer = "S";
    std::string group_file;
    std::string format = "json";
};

int run_cycle_index(const CycleIndexArgs& args) {
    wl::CycleIndexPoly z = wl::build_symmetric(0);
    if (args.family == "symmetric") {
        z = wl::build_symmetric(args.n);
    } else if (args.family == "cyclic") {
        z = wl::build_cyclic(args.n);
    } else if (args.family == "wreath") {
        const auto inner = parse_group(args.gamma).cycle_index();
        const auto outer =
            args.outer == "C" ? wl::build_cyclic(args.n) : wl::build_symmetric(args.n);
        z = wl::wreath_compose(outer, inner);
    } else if (args.family == "product") {
        z = wl::product_compose(parse_group(args.a).cycle_index(),
                                parse_group(args.b).cycle_index());
    } else {  // "group"
        z = parse_group(args.group_file).cycle_index();
    }
    if (args.format == "text")
        std::cout << z.to_display_string() << "\n";
    else
        emit(wl::cycle_index_to_json(z));
    return kExitOk;
}

int run_sample_element(const std::string& gamma, int n, long long count, std::uint64_t seed) {
    const auto spec = parse_group(gamma);
    note_seed(seed);
    wl::Rng rng(seed);
    for (long long i = 0; i < count; ++i)
        std::cout << wl::sample_uniform(spec, n, rng).to_literal() << "\n";
    return kExitOk;
}

// the zero vector prints as "-" so line-oriented output has no blank lines
std::string counts_as_text(const std::vector<int>& counts) {
    wl::Partition p;
    for (std::size_t b = 0; b < counts.size(); ++b)
        if (counts[b] > 0) p.add_part(static_cast<int>(b) + 1, counts[b]);
    return p.empty() ? "-" : p.to_string();
}


int run_sample_type(const std::string& kind, const std::string& gamma, int k, int n, int B,
                    long long count, std::uint64_t seed, bool histogram) {
    if (!histogram) note_seed(seed);
    wl::Rng rng(seed);
    std::map<std::string, long long> hist;
    auto sink = [&](const std::string& line) {
        if (histogram)
            ++hist[line];
        else
            std::cout << line << "\n";
    };
    if (kind == "type") {
        const wl::CycleTypeSampler types(parse_group(gamma).cycle_index());
        for (long long i = 0; i < count; ++i)
            sink(wl::sample_cycle_type(types, n, rng).to_string());
    } else if (kind == "skn") {
        std::vector<int> counts;
        for (long long i = 0; i < count; ++i) {
            wl::sample_skn_counts(k, n, B, counts, rng);
            sink(counts_as_text(counts));
        }
    } else {  // "product"
        std::vector<int> counts;
        for (long long i = 0; i < count; ++i) {
            wl::sample_product_coupled_counts(k, n, B, counts, rng);
            sink(counts_as_text(counts));
        }
    }
    if (histogram) {
        json out = json::object();
        for (const auto& [key, c] : hist) out[key.empty() ? "-" : key] = c;
        emit(json{{"seed", seed}, {"count", count}, {"histogram", out}});
    }
    return kExitOk;
}

struct LimitArgs {
    std::string mode;  // build | sample | pmf
    std::string gamma = "S3";
    bool skn = false;
    bool product = false;
    std::string t = "1";
    int B = 8;
    double eps = 1e-12;
    int coordinate = 1;
    int support_max = 30;
    long long count = 10;
    std::uint64_t seed = 1;
};

int run_limit(const LimitArgs& args) {
    if (args.mode == "build") {
        if (args.skn)
            emit(wl::compound_spec_to_json(wl::skn_limit_spec(args.B, args.eps)));
        else
            emit(wl::compound_spec_to_json(wl::build_spec(parse_group(args.gamma).cycle_index(),
                                                          wl::rat_from_string(args.t), args.B)));
        return kExitOk;
    }
    if (args.mode == "sample") {
        note_seed(args.seed);
        wl::Rng rng(args.seed);
        std::vector<int> counts;
        for (long long i = 0; i < args.count; ++i) {
            std::vector<long> draw;
            if (args.product)
                draw = wl::sample_product_action(wl::ProductActionSpec{args.B}, rng);
            else if (args.skn)
                draw = wl::sample(wl::skn_limit_spec(args.B, args.eps), rng);
            else
                draw = wl::sample(wl::build_spec(parse_group(args.gamma).cycle_index(),
                                                 wl::rat_from_string(args.t), args.B),
                                  rng);
            counts.assign(draw.begin(), draw.end());
            std::cout << counts_as_text(counts) << "\n";
        }
        return kExitOk;
    }
    // pmf
    std::vector<double> pmf;
    if (args.skn)
        pmf = wl::marginal_pmf(wl::skn_limit_spec(args.B, args.eps), args.coordinate,
                               args.support_max);
    else
        pmf = wl::marginal_pmf(wl::build_spec(parse_group(args.gamma).cycle_index(),
                                              wl::rat_from_string(args.t), args.B),
                               args.coordinate, args.support_max);
    json values = json::array();
    for (double p : pmf) values.push_back(p);
    emit(json{{"coordinate", args.coordinate}, {"pmf", std::move(values)}});
    return kExitOk;
}

struct ChainArgs {
    std::string mode;  // step | run | matrix
    int n = 5;
    std::string state;
    std::string start;
    long long steps = 1000;
    long long thin = 1;
    long long count = 1;
    std::uint64_t seed = 1;
    bool occupancy = false;
    std::string format = "csv";
};

int run_chain(const ChainArgs& args) {
    if (args.mode == "matrix") {
        const auto m = wl::exact_lumped_matrix(args.n);
        if (args.format == "json") {
            json states = json::array(), rows = json::array();
            for (const auto& s : m.states) states.push_back(s.to_string());
            for (const auto& row : m.entries) {
                json r = json::array();
                for (const auto& q : row) r.push_back(wl::rat_to_string(q));
                rows.push_back(std::move(r));
            }
            emit(json{{"n", args.n}, {"states", std::move(states)}, {"rows", std::move(rows)}});
        } else {
            std::cout << wl::lumped_matrix_to_csv(m);
        }
        return kExitOk;
    }
    if (args.mode == "step") {
        auto state = wl::Partition::parse(args.state);
        if (state.weight() != args.n)
            throw std::invalid_argument("state is not a partition of n");
        wl::LumpedStepper stepper;
        note_seed(args.seed);
        wl::Rng rng(args.seed);
        for (long long i = 0; i < args.count; ++i) {
            state = stepper.step(state, rng);
            std::cout << state.to_string() << "\n";
        }
        return kExitOk;
    }
    // run
    const auto start = args.start.empty() ? wl::Partition::from_mults({{1, args.n}})
                                          : wl::Partition::parse(args.start);
    if (!args.occupancy) note_seed(args.seed);
    wl::Rng rng(args.seed);
    const auto run = wl::run_lumped(args.n, args.steps, start, rng, !args.occupancy, args.thin);
    if (args.occupancy) {
        json occ = json::object();
        for (const auto& [state, c] : run.occupancy) occ[state.to_string()] = c;
        emit(json{{"n", args.n},
                  {"steps", args.steps},
                  {"thin", args.thin},
                  {"seed", args.seed},
                  {"occupancy", std::move(occ)}});
    } else {
        for (const auto& state : run.trajectory) std::cout << state.to_string() << "\n";
    }
    return kExitOk;
}

struct StatsArgs {
    std::string statistic;  // descents | inversions | cycles
    std::string gamma = "S3";
    int n = 100;
    long long count = 10000;
    std::uint64_t seed = 1;
    int max_k = 30;  // cyclic-moments
};

int run_stats(const StatsArgs& args) {
    if (args.statistic == "cyclic-moments") {
        json rows = json::array();
        for (int k = 1; k <= args.max_k; ++k) {
            const auto m = wl::cycle_count_moments_cyclic(k);
            rows.push_back({{"k", k},
                            {"mean", wl::rat_to_string(m.mean)},
                            {"variance", wl::rat_to_string(m.variance)}});
        }
        json discrepancies = json::array();
        for (const auto& d : wl::cyclic_second_moment_discrepancies(args.max_k))
            discrepancies.push_back({{"p", d.p},
                                     {"a", d.a},
                                     {"closed_form", wl::rat_to_string(d.closed_form)},
                                     {"divisor_sum", wl::rat_to_string(d.divisor_sum)}});
        emit(json{{"moments", std::move(rows)},
                  {"second_moment_closed_form_discrepancies", std::move(discrepancies)}});
        return kExitOk;
    }

    const auto gamma = parse_group(args.gamma);
    const int k = gamma.block_size();
    wl::Rng rng(args.seed);
    wl::MomentPair moments;
    std::vector<long> values;
    values.reserve(args.count);
    if (args.statistic == "cycles") {
        moments = wl::wreath_cycle_count_moments(gamma.cycle_index(), args.n);
        const wl::CycleTypeSampler types(gamma.cycle_index());
        for (long long i = 0; i < args.count; ++i)
            values.push_back(
                static_cast<long>(wl::sample_cycle_type(types, args.n, rng).part_count()));
    } else {
        if (gamma.kind() != wl::GroupSpec::Kind::Symmetric)
            throw std::invalid_argument("descent/inversion statistics expect full symmetric blocks");
        moments = args.statistic == "descents" ? wl::wreath_descent_moments(k, args.n)
                                               : wl::wreath_inversion_moments(k, args.n);
        for (long long i = 0; i < args.count; ++i) {
            const auto sigma = wl::induced_permutation(wl::sample_uniform(gamma, args.n, rng));
            values.push_back(args.statistic == "descents"
                                 ? wl::descents(sigma)
                                 : static_cast<long>(wl::inversions(sigma)));
        }
    }
    // lattice continuity correction, then KS against the standard normal
    const double variance = wl::to_double(moments.variance);
    const auto dithered = wl::dither_lattice_samples(values, rng);
    const double ks =
        wl::clt_report(dithered, wl::to_double(moments.mean), std::sqrt(variance + 1.0 / 12));
    emit(json{{"statistic", args.statistic},
              {"gamma", gamma.to_string()},
              {"n", args.n},
              {"mean", fmt17(wl::to_double(moments.mean))},
              {"variance", fmt17(variance)},
              {"ks", fmt17(ks)},
              {"ks_threshold_default", fmt17(wl::ks_default_threshold(values.size()))},
              {"n_samples", values.size()},
              {"seed", args.seed}});
    return kExitOk;
}

struct VerifyArgs {
    std::string experiment;
    std::string gamma = "S3";
    int k = 100;
    int n = 200;
    int B = 3;
    long long samples = 1000000;
    long long steps = 100000;
    long long thin = 10;
    std::uint64_t seed = 1;
    int threads = 1;
    long long cap = wl::kDefaultEnumerationCap;
    double alpha = 0.001;
};

int run_verify(const VerifyArgs& args) {
    if (args.experiment == "census") {
        const auto dist = wl::census(parse_group(args.gamma), args.n, args.B, args.cap);
        json rows = json::array();
        for (std::size_t i = 0; i < dist.support.size(); ++i)
            rows.push_back({{"counts", dist.support[i]},
                            {"prob", wl::rat_to_string(dist.exact_probs[i])}});
        emit(json{{"experiment", "census"},
                  {"gamma", args.gamma},
                  {"n", args.n},
                  {"B", args.B},
                  {"law", std::move(rows)}});
        return kExitOk;
    }
    if (args.experiment == "triangle") {
        const auto gamma = parse_group(args.gamma);
        const int B = gamma.block_size() * args.n;
        const auto by_enum = wl::census(gamma, args.n, B, args.cap);
        const auto by_coupling = wl::Distribution::from_exact(
            wl::exact_coupled_distribution(gamma, args.n, B, args.cap));
        const auto by_index = wl::census_from_cycle_index(
            wl::wreath_compose(wl::build_symmetric(args.n), gamma.cycle_index()), B);
        const bool eq1 = wl::distributions_equal_exact(by_enum, by_coupling);
        const bool eq2 = wl::distributions_equal_exact(by_enum, by_index);
        emit(json{{"experiment", "triangle"},
                  {"gamma", args.gamma},
                  {"n", args.n},
                  {"census_equals_coupling", eq1},
                  {"census_equals_cycle_index", eq2},
                  {"pass", eq1 && eq2}});
        return eq1 && eq2 ? kExitOk : kExitUsage;
    }
    if (args.experiment == "tv-wreath" || args.experiment == "tv-skn" ||
        args.experiment == "tv-product") {
        wl::BoundReport report;
        if (args.experiment == "tv-wreath")
            report = wl::check_tv_bound_wreath(parse_group(args.gamma), args.n, args.B,
                                               args.samples, args.seed, args.threads);
        else if (args.experiment == "tv-skn")
            report = wl::check_tv_bound_skn(args.k, args.n, args.B, args.samples, args.seed,
                                            args.threads);
        else
            report = wl::check_product_bound(args.k, args.n, args.B, args.samples, args.seed,
                                             args.threads);
        emit(wl::bound_report_to_json(report));
        return kExitOk;
    }
    if (args.experiment == "chain-uniform") {
        wl::Rng rng(args.seed);
        const auto run = wl::run_lumped(args.n, args.steps, wl::Partition::from_mults({{1, args.n}}),
                                        rng, false, args.thin);
        std::vector<long long> counts;
        for (const auto& lam : wl::partitions_of(args.n))
            counts.push_back(run.occupancy.count(lam) ? run.occupancy.at(lam) : 0);
        const auto r = wl::chi_square_uniform(counts);
        emit(json{{"experiment", "chain-uniform"},
                  {"n", args.n},
                  {"steps", args.steps},
                  {"thin", args.thin},
                  {"chi_square", fmt17(r.statistic)},
                  {"df", r.df},
                  {"p_value", fmt17(r.p_value)},
                  {"alpha", args.alpha},
                  {"pass", r.p_value > args.alpha},
                  {"seed", args.seed}});
        return kExitOk;
    }
    if (args.experiment == "element-chain") {
        wl::ElementChain chain(wl::GroupSpec::symmetric(args.k).elements());
        std::map<wl::Partition, int> class_id;
        for (const auto& lam : wl::partitions_of(args.k))
            class_id.emplace(lam, static_cast<int>(class_id.size()));
        std::vector<int> class_of;
        for (const auto& p : chain.elements()) class_of.push_back(class_id.at(p.cycle_type()));
        wl::Rng rng(args.seed);
        std::size_t state = 0;
        std::vector<long long> counts(class_id.size(), 0);
        for (long long t = 0; t < args.steps; ++t) {
            state = chain.step_index(state, rng);
            if (t % args.thin == 0) ++counts[class_of[state]];
        }
        const auto r = wl::chi_square_uniform(counts);
        emit(json{{"experiment", "element-chain"},
                  {"degree", args.k},
                  {"steps", args.steps},
                  {"thin", args.thin},
                  {"chi_square", fmt17(r.statistic)},
                  {"df", r.df},
                  {"p_value", fmt17(r.p_value)},
                  {"alpha", args.alpha},
                  {"pass", r.p_value > args.alpha},
                  {"seed", args.seed}});
        return kExitOk;
    }
    throw std::invalid_argument("unknown verify experiment " + args.experiment);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"wreathlab: block-permutation groups, exact cycle indices, coupled samplers "
                 "and compound-Poisson limit laws"};
    app.require_subcommand(1);

    CycleIndexArgs ci;
    auto* ci_cmd = app.add_subcommand("cycle-index", "build and compose exact cycle indices");
    ci_cmd->add_option("family", ci.family, "symmetric | cyclic | wreath | product | group")
        ->required()
        ->check(CLI::IsMember({"symmetric", "cyclic", "wreath", "product", "group"}));
    ci_cmd->add_option("--n", ci.n, "degree / number of blocks");
    ci_cmd->add_option("--gamma", ci.gamma, "block group (S<k>, C<k>, @file.json)");
    ci_cmd->add_option("--outer", ci.outer, "outer group family for wreath: S or C")
        ->check(CLI::IsMember({"S", "C"}));
    ci_cmd->add_option("--a", ci.a, "first factor (product)");
    ci_cmd->add_option("--b", ci.b, "second factor (product)");
    ci_cmd->add_option("--group", ci.group_file, "@file.json with explicit elements");
    ci_cmd->add_option("--format", ci.format, "json | text")
        ->check(CLI::IsMember({"json", "text"}));

    auto* sample_cmd = app.add_subcommand("sample", "draw elements or cycle types");
    std::string sample_kind;
    std::string sample_gamma = "S3";
    int sample_k = 2, sample_n = 10, sample_B = 4;
    long long sample_count = 1;
    std::uint64_t sample_seed = 1;
    bool sample_hist = false;
    sample_cmd->add_option("kind", sample_kind, "element | type | skn | product")
        ->required()
        ->check(CLI::IsMember({"element", "type", "skn", "product"}));
    sample_cmd->add_option("--gamma", sample_gamma, "block group");
    sample_cmd->add_option("--k", sample_k, "block size (skn/product)");
    sample_cmd->add_option("--n", sample_n, "number of blocks");
    sample_cmd->add_option("--trunc-B", sample_B, "count truncation");
    sample_cmd->add_option("--count", sample_count, "number of draws");
    sample_cmd->add_option("--seed", sample_seed, "rng seed");
    sample_cmd->add_flag("--histogram", sample_hist, "aggregate draws into a JSON histogram");

    LimitArgs limit;
    auto* limit_cmd = app.add_subcommand("limit", "compound-Poisson limit laws");
    limit_cmd->add_option("mode", limit.mode, "build | sample | pmf")
        ->required()
        ->check(CLI::IsMember({"build", "sample", "pmf"}));
    limit_cmd->add_option("--gamma", limit.gamma, "block group");
    limit_cmd->add_flag("--skn", limit.skn, "growing-block-size limit law");
    limit_cmd->add_flag("--product", limit.product, "product-action limit law (sample only)");
    limit_cmd->add_option("--t", limit.t, "geometric randomization parameter in (0,1], rational");
    limit_cmd->add_option("--trunc-B", limit.B, "truncation");
    limit_cmd->add_option("--eps", limit.eps, "atom truncation threshold (skn)");
    limit_cmd->add_option("--i", limit.coordinate, "coordinate (pmf)");
    limit_cmd->add_option("--support-max", limit.support_max, "pmf support maximum");
    limit_cmd->add_option("--count", limit.count, "number of draws (sample)");
    limit_cmd->add_option("--seed", limit.seed, "rng seed");

    ChainArgs chain;
    auto* chain_cmd = app.add_subcommand("chain", "commuting-graph partition chain");
    chain_cmd->add_option("mode", chain.mode, "step | run | matrix")
        ->required()
        ->check(CLI::IsMember({"step", "run", "matrix"}));
    chain_cmd->add_option("--n", chain.n, "partition weight");
    chain_cmd->add_option("--state", chain.state, "current partition, e.g. \"1^3 2\"");
    chain_cmd->add_option("--start", chain.start, "starting partition (run)");
    chain_cmd->add_option("--steps", chain.steps, "number of steps (run)");
    chain_cmd->add_option("--thin", chain.thin, "record every thin-th state (run)");
    chain_cmd->add_option("--count", chain.count, "number of steps to print (step)");
    chain_cmd->add_option("--seed", chain.seed, "rng seed");
    chain_cmd->add_flag("--occupancy", chain.occupancy, "emit occupancy JSON instead of trajectory");
    chain_cmd->add_option("--format", chain.format, "csv | json (matrix)")
        ->check(CLI::IsMember({"csv", "json"}));

    StatsArgs stats;
    auto* stats_cmd = app.add_subcommand("stats", "pattern statistics and CLT reports");
    stats_cmd
        ->add_option("statistic", stats.statistic, "descents | inversions | cycles | cyclic-moments")
        ->required()
        ->check(CLI::IsMember({"descents", "inversions", "cycles", "cyclic-moments"}));
    stats_cmd->add_option("--gamma", stats.gamma, "block group");
    stats_cmd->add_option("--n", stats.n, "number of blocks");
    stats_cmd->add_option("--count", stats.count, "number of draws");
    stats_cmd->add_option("--seed", stats.seed, "rng seed");
    stats_cmd->add_option("--max-k", stats.max_k, "largest cyclic order (cyclic-moments)");

    VerifyArgs verify;
    auto* verify_cmd = app.add_subcommand("verify", "censuses, TV bound checks, uniformity");
    verify_cmd
        ->add_option("experiment", verify.experiment,
                     "census | triangle | tv-wreath | tv-skn | tv-product | chain-uniform | "
                     "element-chain")
        ->required();
    verify_cmd->add_option("--gamma", verify.gamma, "block group");
    verify_cmd->add_option("--k", verify.k, "block size / degree");
    verify_cmd->add_option("--n", verify.n, "number of blocks / partition weight");
    verify_cmd->add_option("--trunc-B", verify.B, "count truncation");
    verify_cmd->add_option("--samples", verify.samples, "Monte Carlo sample count per side");
    verify_cmd->add_option("--steps", verify.steps, "chain steps");
    verify_cmd->add_option("--thin", verify.thin, "chain thinning stride");
    verify_cmd->add_option("--seed", verify.seed, "rng seed");
    verify_cmd->add_option("--threads", verify.threads, "worker threads (deterministic merge)");
    verify_cmd->add_option("--alpha", verify.alpha, "uniformity test level");
    verify_cmd->add_option("--cap", verify.cap, "enumeration cap")->default_val(env_cap());

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (ci_cmd->parsed()) return run_cycle_index(ci);
        if (sample_cmd->parsed()) {
            if (sample_kind == "element")
                return run_sample_element(sample_gamma, sample_n, sample_count, sample_seed);
            return run_sample_type(sample_kind, sample_gamma, sample_k, sample_n, sample_B,
                                   sample_count, sample_seed, sample_hist);
        }
        if (limit_cmd->parsed()) return run_limit(limit);
        if (chain_cmd->parsed()) return run_chain(chain);
        if (stats_cmd->parsed()) return run_stats(stats);
        if (verify_cmd->parsed()) return run_verify(verify);
    } catch (const wl::CapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return kExitCap;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
