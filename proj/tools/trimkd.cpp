#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "trimkd/alphastar.hpp"
#include "trimkd/asymptotics.hpp"
#include "trimkd/cli_support.hpp"
#include "trimkd/errors.hpp"
#include "trimkd/experiments.hpp"
#include "trimkd/testing.hpp"
#include "trimkd/trimdist.hpp"

namespace {

using namespace trimkd;
using cli::Envelope;

constexpr const char* kVersion = "0.1.0";

struct CommonOpts {
    std::string out;
    std::string format = "envelope";
    int workers = 0;
};

struct InputOpts {
    std::string path;
    std::string column;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--out", c.out, "write results to this file instead of stdout");
    cmd->add_option("--format", c.format, "output format: envelope or csv")
        ->check(CLI::IsMember({"envelope", "csv"}));
    cmd->add_option("--workers", c.workers, "worker threads (0 = all cores, 1 = serial)");
}

void add_input(CLI::App* cmd, InputOpts& in) {
    cmd->add_option("--input", in.path, "CSV file with the sample")->required();
    cmd->add_option("--column", in.column, "named column to read (default: single column)");
}

std::vector<double> read_sample(const InputOpts& in) {
    return in.column.empty() ? cli::ingest_sample(in.path, cli::CsvFormat::single_column)
                             : cli::ingest_sample(in.path, cli::CsvFormat::named_column, in.column);
}

class Timer {
public:
    double seconds() const {
        return std::chrono::duration<double>(Clock::now() - start_).count();
    }

private:
    using Clock = std::chrono::steady_clock;
    Clock::time_point start_ = Clock::now();
};

void emit(Envelope& env, const CommonOpts& c, const Timer& timer) {
    env.set("wall_time_sec", timer.seconds());
    if (c.out.empty()) {
        c.format == "csv" ? env.write_csv(std::cout) : env.write(std::cout);
    } else {
        env.write_to(c.out, c.format == "csv");
    }
}

void stamp(Envelope& env, const CommonOpts& c) {
    env.set("version", std::string(kVersion));
    env.set("workers", static_cast<std::size_t>(c.workers < 0 ? 0 : c.workers));
}

// lo:hi:count -> uniform grid
std::vector<double> parse_grid_spec(const std::string& spec) {
    double lo, hi;
    long count;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%ld", &lo, &hi, &count) != 3 || count < 1 || hi < lo)
        throw parameter_error("bad grid spec '" + spec + "', expected lo:hi:count");
    std::vector<double> g(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i)
        g[static_cast<std::size_t>(i)] =
            count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    return g;
}

std::vector<std::size_t> parse_size_list(const std::string& csv) {
    std::vector<std::size_t> out;
    std::string cur;
    for (char ch : csv + ",") {
        if (ch == ',') {
            if (!cur.empty()) out.push_back(static_cast<std::size_t>(std::stoull(cur)));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (out.empty()) throw parameter_error("empty size list");
    return out;
}

// beta:ALPHA | halfkink:D,ALPHA | ab:A,B,Q,ALPHA
ExtremeCaseModel parse_case(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) throw parameter_error("bad case spec '" + spec + "'");
    const std::string kind = spec.substr(0, colon);
    const std::string rest = spec.substr(colon + 1);
    double p[4];
    if (kind == "beta") {
        if (std::sscanf(rest.c_str(), "%lf", &p[0]) != 1)
            throw parameter_error("bad case spec '" + spec + "'");
        return ExtremeCaseModel::beta_extreme(p[0]);
    }
    if (kind == "halfkink") {
        if (std::sscanf(rest.c_str(), "%lf,%lf", &p[0], &p[1]) != 2)
            throw parameter_error("bad case spec '" + spec + "'");
        return ExtremeCaseModel::half_kink(p[0], p[1]);
    }
    if (kind == "ab") {
        if (std::sscanf(rest.c_str(), "%lf,%lf,%lf,%lf", &p[0], &p[1], &p[2], &p[3]) != 4)
            throw parameter_error("bad case spec '" + spec + "'");
        return ExtremeCaseModel::piecewise_ab(p[0], p[1], p[2], p[3]);
    }
    throw parameter_error("unknown case kind '" + kind + "'");
}

std::vector<std::string> split_cases(const std::string& list) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : list + ";") {
        if (ch == ';') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    return out;
}

std::pair<double, double> parse_normal_params(const std::string& model_spec) {
    double mu, sigma;
    if (std::sscanf(model_spec.c_str(), "normal:%lf,%lf", &mu, &sigma) != 2)
        throw parameter_error("tolregion needs a normal model, e.g. normal:0,1");
    return {mu, sigma};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"trimmed Kolmogorov distance: approximate model validation toolkit"};
    app.require_subcommand(1);

    // ---- distance ----
    struct {
        CommonOpts common;
        InputOpts input;
        std::string model;
        double alpha = 0.0;
        bool curve = false;
    } dist;
    auto* cmd_distance = app.add_subcommand("distance", "trimmed distance of a sample to a model");
    cmd_distance->add_option("--model", dist.model, "null model spec")->required();
    cmd_distance->add_option("--alpha", dist.alpha, "trimming level in [0,1)")->required();
    cmd_distance->add_flag("--curve", dist.curve, "embed the optimal trimming curve table");
    add_input(cmd_distance, dist.input);
    add_common(cmd_distance, dist.common);

    // ---- test ----
    struct {
        CommonOpts common;
        InputOpts input;
        std::string model;
        double alpha = 0.0, eps1 = 0.05, eps2 = 0.05;
    } tst;
    auto* cmd_test = app.add_subcommand("test", "contamination test with exponential error bounds");
    cmd_test->add_option("--model", tst.model)->required();
    cmd_test->add_option("--alpha", tst.alpha)->required();
    cmd_test->add_option("--eps1", tst.eps1, "type I target");
    cmd_test->add_option("--eps2", tst.eps2, "type II target");
    add_input(cmd_test, tst.input);
    add_common(cmd_test, tst.common);

    // ---- confbounds ----
    struct {
        CommonOpts common;
        InputOpts input;
        std::string model;
        double alpha = 0.0, beta = 0.05;
    } cb;
    auto* cmd_conf = app.add_subcommand("confbounds", "confidence bounds for the trimmed distance");
    cmd_conf->add_option("--model", cb.model)->required();
    cmd_conf->add_option("--alpha", cb.alpha)->required();
    cmd_conf->add_option("--beta", cb.beta, "one-sided level (bounds hold with prob >= 1-beta)");
    add_input(cmd_conf, cb.input);
    add_common(cmd_conf, cb.common);

    // ---- credibility ----
    struct {
        CommonOpts common;
        InputOpts input;
        std::string model;
        double alpha = 0.0, eps1 = 0.05, eps2 = 0.05, delta = 0.5;
        std::size_t subsamples = 0;
        std::uint64_t seed = 0;
        bool seed_given = false;
    } cred;
    auto* cmd_cred = app.add_subcommand("credibility", "credibility-index bounds (and optional subsampling)");
    cmd_cred->add_option("--model", cred.model)->required();
    cmd_cred->add_option("--alpha", cred.alpha)->required();
    cmd_cred->add_option("--eps1", cred.eps1);
    cmd_cred->add_option("--eps2", cred.eps2);
    cmd_cred->add_option("--delta", cred.delta, "rejection probability defining the index");
    cmd_cred->add_option("--subsamples", cred.subsamples, "M subsamples; 0 skips the estimator");
    auto* cred_seed = cmd_cred->add_option("--seed", cred.seed, "seed for the subsampling estimator");
    add_input(cmd_cred, cred.input);
    add_common(cmd_cred, cred.common);

    // ---- alphastar ----
    struct {
        CommonOpts common;
        InputOpts input;
        std::string model;
        double eps1 = 0.05;
    } ast;
    auto* cmd_ast = app.add_subcommand("alphastar", "minimal contamination level (index of fit)");
    cmd_ast->add_option("--model", ast.model)->required();
    cmd_ast->add_option("--eps1", ast.eps1);
    add_input(cmd_ast, ast.input);
    add_common(cmd_ast, ast.common);

    // ---- kuiper ----
    struct {
        CommonOpts common;
        InputOpts input;
        std::string model;
        double gamma = 0.05;
        bool restrict_pairs = false;
    } kp;
    auto* cmd_kuiper = app.add_subcommand("kuiper", "lower confidence bound for the contamination level");
    cmd_kuiper->add_option("--model", kp.model)->required();
    cmd_kuiper->add_option("--gamma", kp.gamma, "1 - confidence level");
    cmd_kuiper->add_flag("--restrict-pairs", kp.restrict_pairs, "scan only pairs with j-i <= n/2");
    add_input(cmd_kuiper, kp.input);
    add_common(cmd_kuiper, kp.common);

    // ---- tolregion ----
    struct {
        CommonOpts common;
        std::string model = "normal:0,1";
        double alpha = 0.05, tol = 0.0;
        std::size_t grid = 20000;
        std::string mu_grid = "-1:1:41", sigma_grid = "0.5:1.5:41";
    } tr;
    auto* cmd_tol = app.add_subcommand("tolregion", "normal-family tolerance region");
    cmd_tol->add_option("--model", tr.model, "null model, normal:mu,sigma")->required();
    cmd_tol->add_option("--alpha", tr.alpha)->required();
    cmd_tol->add_option("--tol", tr.tol, "membership cut on the distance (0 = auto)");
    cmd_tol->add_option("--grid", tr.grid, "quantile grid size per candidate");
    cmd_tol->add_option("--mu-grid", tr.mu_grid, "candidate means, lo:hi:count");
    cmd_tol->add_option("--sigma-grid", tr.sigma_grid, "candidate sigmas, lo:hi:count");
    add_common(cmd_tol, tr.common);

    // ---- simulate ----
    auto* cmd_sim = app.add_subcommand("simulate", "reproduction suites");
    cmd_sim->require_subcommand(1);

    struct {
        CommonOpts common;
        double alpha = 0.1;
        std::size_t n = 1000;
        std::uint64_t seed = 0;
    } t1;
    auto* sim_t1 = cmd_sim->add_subcommand("table1", "threshold cells over the (EI, EII) battery");
    sim_t1->add_option("--alpha", t1.alpha);
    sim_t1->add_option("--n", t1.n);
    sim_t1->add_option("--seed", t1.seed)->required();
    add_common(sim_t1, t1.common);

    struct {
        CommonOpts common;
        std::string gen = "mix:0.9;normal:0,1;normal:3,1";
        std::string model = "normal:0,1";
        std::string sizes = "2000,4000,6000";
        std::string alpha_grid = "0.01:0.2:20";
        std::size_t replicates = 150;
        double eps1 = 0.05, eps2 = 0.05;
        std::uint64_t seed = 0;
    } f2;
    auto* sim_f2 = cmd_sim->add_subcommand("figure2", "rejection-frequency curves over trimming levels");
    sim_f2->add_option("--gen", f2.gen, "data generator spec");
    sim_f2->add_option("--model", f2.model, "null model spec");
    sim_f2->add_option("--sizes", f2.sizes, "comma-separated sample sizes");
    sim_f2->add_option("--alpha-grid", f2.alpha_grid, "lo:hi:count");
    sim_f2->add_option("--replicates", f2.replicates);
    sim_f2->add_option("--eps1", f2.eps1);
    sim_f2->add_option("--eps2", f2.eps2);
    sim_f2->add_option("--seed", f2.seed)->required();
    add_common(sim_f2, f2.common);

    struct {
        CommonOpts common;
        std::string cases = "beta:0.05;halfkink:0.1,0.05;ab:0.333333,0.666667,0.01,0.01;ab:0.01,0.99,0.01,0.01";
        std::string sizes = "100,1000,5000";
        std::size_t replicates = 1200;
        double beta = 0.05;
        std::uint64_t seed = 0;
    } t3;
    auto* sim_t3 = cmd_sim->add_subcommand("table3", "confidence-bound coverage on extreme cases");
    sim_t3->add_option("--cases", t3.cases, "semicolon-separated case specs");
    sim_t3->add_option("--sizes", t3.sizes);
    sim_t3->add_option("--replicates", t3.replicates);
    sim_t3->add_option("--beta", t3.beta);
    sim_t3->add_option("--seed", t3.seed)->required();
    add_common(sim_t3, t3.common);

    struct {
        CommonOpts common;
        int scenario = 1;
        double alphastar = 0.05, eps1 = 0.05, gamma = 0.05;
        std::size_t runs = 100, n = 1000;
        std::uint64_t seed = 0;
    } cp;
    auto* sim_cp = cmd_sim->add_subcommand("comp", "contamination-estimate comparison runs");
    sim_cp->add_option("--scenario", cp.scenario, "1 shift, 2 spread, 3 uniform/beta")
        ->check(CLI::Range(1, 3));
    sim_cp->add_option("--alphastar", cp.alphastar, "true contamination fraction");
    sim_cp->add_option("--runs", cp.runs);
    sim_cp->add_option("--n", cp.n);
    sim_cp->add_option("--eps1", cp.eps1);
    sim_cp->add_option("--gamma", cp.gamma);
    sim_cp->add_option("--seed", cp.seed)->required();
    add_common(sim_cp, cp.common);

    try {
        app.parse(argc, argv);

        if (*cmd_distance) {
            Timer timer;
            Envelope env("distance");
            stamp(env, dist.common);
            env.set("model", dist.model);
            env.set("alpha", dist.alpha);
            env.set("input", dist.input.path);
            const auto sample = read_sample(dist.input);
            const auto f0 = cli::parse_model(dist.model);
            const auto r = empirical_trimmed_kd(sample, f0, dist.alpha);
            env.set("n", sample.size());
            env.set("distance", r.distance);
            if (dist.curve) {
                auto& t = env.add_table("trimming_curve", {"t", "g", "upper", "lower", "h_tilde"});
                for (std::size_t i = 0; i < r.grid.size(); ++i)
                    t.add_row({r.grid[i], r.g_values[i], r.upper_env[i], r.lower_env[i], r.h_tilde[i]});
            }
            emit(env, dist.common, timer);
        } else if (*cmd_test) {
            Timer timer;
            Envelope env("test");
            stamp(env, tst.common);
            env.set("model", tst.model);
            env.set("alpha", tst.alpha);
            env.set("eps1", tst.eps1);
            env.set("eps2", tst.eps2);
            env.set("input", tst.input.path);
            const auto sample = read_sample(tst.input);
            const auto f0 = cli::parse_model(tst.model);
            const TestPlan plan = plan_test(tst.alpha, tst.eps1, tst.eps2, sample.size());
            const TestOutcome out = run_test(sample, f0, plan);
            env.set("n", sample.size());
            env.set("lambda", plan.lambda);
            env.set("rho", plan.rho);
            env.set("rho_n", plan.rho_n);
            env.set("threshold", plan.threshold);
            env.set("statistic", out.statistic);
            env.set("reject", out.reject);
            env.set("ei_bound", out.ei_bound);
            env.set("eii_bound", out.eii_bound);
            emit(env, tst.common, timer);
        } else if (*cmd_conf) {
            Timer timer;
            Envelope env("confbounds");
            stamp(env, cb.common);
            env.set("model", cb.model);
            env.set("alpha", cb.alpha);
            env.set("beta", cb.beta);
            env.set("input", cb.input.path);
            const auto sample = read_sample(cb.input);
            const auto f0 = cli::parse_model(cb.model);
            const double dn = empirical_trimmed_kd(sample, f0, cb.alpha).distance;
            const auto ci = confidence_bounds(dn, sample.size(), cb.alpha, cb.beta);
            env.set("n", sample.size());
            env.set("distance", dn);
            env.set("lower", ci.lower);
            env.set("upper", ci.upper);
            emit(env, cb.common, timer);
        } else if (*cmd_cred) {
            Timer timer;
            Envelope env("credibility");
            stamp(env, cred.common);
            env.set("model", cred.model);
            env.set("alpha", cred.alpha);
            env.set("eps1", cred.eps1);
            env.set("eps2", cred.eps2);
            env.set("delta", cred.delta);
            env.set("input", cred.input.path);
            const auto sample = read_sample(cred.input);
            const auto f0 = cli::parse_model(cred.model);
            const TestPlan plan = plan_test(cred.alpha, cred.eps1, cred.eps2, sample.size());
            const double dn = empirical_trimmed_kd(sample, f0, cred.alpha).distance;
            const auto bounds = credibility_bounds(dn, cred.alpha, plan.lambda, plan.rho, cred.delta);
            env.set("n", sample.size());
            env.set("distance", dn);
            env.set("lambda", plan.lambda);
            env.set("rho", plan.rho);
            env.set("threshold", plan.threshold);
            env.set("index_infinite", bounds.index_infinite);
            env.set("l_delta", bounds.l_defined ? cli::format_double(bounds.l_delta) : "inf");
            env.set("u_delta", bounds.u_defined ? cli::format_double(bounds.u_delta) : "inf");
            if (cred.subsamples > 0) {
                if (cred_seed->count() == 0)
                    throw parameter_error("credibility: --seed is required with --subsamples");
                const auto sub = subsample_credibility(sample, f0, cred.alpha, plan, cred.delta,
                                                       cred.subsamples, cred.seed,
                                                       ExecPolicy{cred.common.workers});
                env.set("seed", static_cast<std::size_t>(cred.seed));
                env.set("subsample_reached", sub.reached);
                env.set("n_subs", sub.m);
                env.set("subsample_frequency", sub.frequency_at_m);
            }
            emit(env, cred.common, timer);
        } else if (*cmd_ast) {
            Timer timer;
            Envelope env("alphastar");
            stamp(env, ast.common);
            env.set("model", ast.model);
            env.set("eps1", ast.eps1);
            env.set("input", ast.input.path);
            const auto sample = read_sample(ast.input);
            const auto f0 = cli::parse_model(ast.model);
            const auto r = tk_index(sample, f0, ast.eps1);
            env.set("n", sample.size());
            env.set("alpha_star", r.alpha_star);
            env.set("threshold", r.threshold);
            env.set("d_untrimmed", r.d_untrimmed);
            env.set("bracket_lo", r.bracket.first);
            env.set("bracket_hi", r.bracket.second);
            emit(env, ast.common, timer);
        } else if (*cmd_kuiper) {
            Timer timer;
            Envelope env("kuiper");
            stamp(env, kp.common);
            env.set("model", kp.model);
            env.set("gamma", kp.gamma);
            env.set("restrict_pairs", kp.restrict_pairs);
            env.set("input", kp.input.path);
            const auto sample = read_sample(kp.input);
            const auto f0 = cli::parse_model(kp.model);
            const double bound = kuiper_lower_bound(sample, f0, kp.gamma, kp.restrict_pairs,
                                                    ExecPolicy{kp.common.workers});
            env.set("n", sample.size());
            env.set("alpha_lower_bound", bound);
            emit(env, kp.common, timer);
        } else if (*cmd_tol) {
            Timer timer;
            Envelope env("tolregion");
            stamp(env, tr.common);
            env.set("model", tr.model);
            env.set("alpha", tr.alpha);
            env.set("tol", tr.tol);
            env.set("grid", tr.grid);
            const auto [mu0, sigma0] = parse_normal_params(tr.model);
            const auto mu_grid = parse_grid_spec(tr.mu_grid);
            const auto sigma_grid = parse_grid_spec(tr.sigma_grid);
            const auto region =
                normal_tolerance_region(mu0, sigma0, tr.alpha, mu_grid, sigma_grid, tr.tol, tr.grid,
                                        ExecPolicy{tr.common.workers});
            auto& cells = env.add_table("region", {"mu", "sigma", "member"});
            for (std::size_t j = 0; j < sigma_grid.size(); ++j)
                for (std::size_t i = 0; i < mu_grid.size(); ++i)
                    cells.add_row({mu_grid[i], sigma_grid[j], region.is_member(i, j) ? 1.0 : 0.0});
            auto& boundary = env.add_table("boundary", {"mu", "sigma"});
            for (const auto& [m, s] : region.boundary) boundary.add_row({m, s});
            emit(env, tr.common, timer);
        } else if (*sim_t1) {
            Timer timer;
            Envelope env("simulate table1");
            stamp(env, t1.common);
            env.set("alpha", t1.alpha);
            env.set("n", t1.n);
            env.set("seed", static_cast<std::size_t>(t1.seed));
            auto& cells = env.add_table("cells", {"eps1", "eps2", "lambda", "rho_n"});
            for (const auto& c : experiments::threshold_table(t1.alpha, t1.n))
                cells.add_row({c.eps1, c.eps2, c.lambda, c.rho_n});
            emit(env, t1.common, timer);
        } else if (*sim_f2) {
            Timer timer;
            Envelope env("simulate figure2");
            stamp(env, f2.common);
            env.set("gen", f2.gen);
            env.set("model", f2.model);
            env.set("replicates", f2.replicates);
            env.set("eps1", f2.eps1);
            env.set("eps2", f2.eps2);
            env.set("seed", static_cast<std::size_t>(f2.seed));
            const auto gen = cli::parse_model(f2.gen);
            const auto f0 = cli::parse_model(f2.model);
            const auto alphas = parse_grid_spec(f2.alpha_grid);
            auto& curve = env.add_table("curve", {"n", "alpha", "reject_frequency"});
            for (std::size_t n : parse_size_list(f2.sizes)) {
                const auto rc = experiments::rejection_curve(gen, f0, alphas, n, f2.replicates,
                                                             f2.eps1, f2.eps2, f2.seed,
                                                             ExecPolicy{f2.common.workers});
                for (std::size_t j = 0; j < rc.alphas.size(); ++j)
                    curve.add_row({static_cast<double>(n), rc.alphas[j], rc.frequency[j]});
            }
            emit(env, f2.common, timer);
        } else if (*sim_t3) {
            Timer timer;
            Envelope env("simulate table3");
            stamp(env, t3.common);
            env.set("replicates", t3.replicates);
            env.set("beta", t3.beta);
            env.set("seed", static_cast<std::size_t>(t3.seed));
            auto& cov = env.add_table("coverage", {"case", "N", "lower", "upper", "true_distance"});
            for (const auto& spec : split_cases(t3.cases)) {
                const auto model = parse_case(spec);
                for (std::size_t N : parse_size_list(t3.sizes)) {
                    const auto r = experiments::coverage_extreme(model, N, t3.replicates, t3.beta,
                                                                 t3.seed, ExecPolicy{t3.common.workers});
                    cov.add_row({spec, std::to_string(N), cli::format_double(r.lower_coverage),
                                 cli::format_double(r.upper_coverage),
                                 cli::format_double(r.true_distance)});
                }
            }
            emit(env, t3.common, timer);
        } else if (*sim_cp) {
            Timer timer;
            Envelope env("simulate comp");
            stamp(env, cp.common);
            env.set("scenario", static_cast<std::size_t>(cp.scenario));
            env.set("alphastar_true", cp.alphastar);
            env.set("runs", cp.runs);
            env.set("n", cp.n);
            env.set("eps1", cp.eps1);
            env.set("gamma", cp.gamma);
            env.set("seed", static_cast<std::size_t>(cp.seed));
            const auto scenario = cp.scenario == 1   ? experiments::CompScenario::normal_shift
                                  : cp.scenario == 2 ? experiments::CompScenario::normal_spread
                                                     : experiments::CompScenario::uniform_beta;
            const auto runs = experiments::comp_runs(scenario, cp.alphastar, cp.runs, cp.n, cp.eps1,
                                                     cp.gamma, cp.seed, ExecPolicy{cp.common.workers});
            auto& table = env.add_table("runs", {"run", "alpha_star_n", "kuiper_bound"});
            double mean_ast = 0.0;
            std::size_t kuiper_below = 0;
            for (std::size_t r = 0; r < runs.size(); ++r) {
                table.add_row({static_cast<double>(r), runs[r].alpha_star_n, runs[r].kuiper_bound});
                mean_ast += runs[r].alpha_star_n;
                kuiper_below += runs[r].kuiper_bound <= cp.alphastar;
            }
            env.set("alpha_star_mean", mean_ast / static_cast<double>(runs.size()));
            env.set("kuiper_below_true_fraction",
                    static_cast<double>(kuiper_below) / static_cast<double>(runs.size()));
            emit(env, cp.common, timer);
        }
        return 0;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const parameter_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const data_error& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 3;
    } catch (const numeric_error& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 4;
    } catch (const unsupported_case& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}
