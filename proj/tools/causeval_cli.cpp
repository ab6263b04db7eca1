// Command-line front end: generate synthetic ground truth, bias factorial
// samples, learn structures, fit parameters, score candidates, and run full
// evaluation experiments.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "causeval/harness.hpp"

namespace {

using namespace causeval;

std::string slurp(const std::string& path) { return read_text_file(path); }

int cmd_generate(const GenConfig& gen, const std::string& out_net, const std::string& out_dag,
                 const std::string& out_data, int sample_rows, int factorial_subjects,
                 const std::vector<std::string>& treatments) {
    gen.validate();
    const Network net = generate_network(gen);
    if (!out_net.empty()) write_text_file(out_net, network_to_string(net));
    if (!out_dag.empty()) write_text_file(out_dag, network_dag(net).to_string());
    if (!out_data.empty()) {
        const std::uint64_t sseed = derive_seed(gen.seed, {2});
        const Dataset data =
            factorial_subjects > 0
                ? factorial_dataset(net, factorial_subjects, treatments, sseed)
                : sample(net, sample_rows, sseed);
        write_text_file(out_data, data.to_string());
    }
    return 0;
}

int cmd_bias(const std::string& data_path, const std::string& covariate, double beta,
             std::uint64_t seed, const std::string& out) {
    const Dataset data = ingest_dataset(data_path);
    write_text_file(out, bias_sample(data, beta, covariate, seed).to_string());
    return 0;
}

int cmd_learn(const std::string& data_path, const std::string& algorithm, double alpha,
              int max_cond_size, std::uint64_t seed, const std::string& out,
              const std::string& out_dag) {
    const Dataset data = ingest_dataset(data_path);
    ExperimentConfig knobs;
    knobs.alpha = alpha;
    knobs.max_cond_size = max_cond_size;
    Dag raw;
    const Cpdag learned = detail::run_learner(algorithm, data, knobs, &raw);
    write_text_file(out, learner_manifest(algorithm, alpha, seed) + learned.to_string());
    if (!out_dag.empty()) {
        if (algorithm != "hill-climb")
            throw std::runtime_error("--out-dag applies to hill-climb only");
        write_text_file(out_dag, raw.to_string());
    }
    return 0;
}

int cmd_fit(const std::string& data_path, const std::string& graph_path, double pseudocount,
            const std::string& out) {
    const Dataset data = ingest_dataset(data_path);
    const Dag g = Dag::parse(slurp(graph_path));
    if (detail::all_variable_columns_discrete(data))
        write_text_file(out, fit_mle_discrete(g, data, pseudocount).to_string());
    else
        write_text_file(out, fit_mle_gaussian(g, data).to_string());
    return 0;
}

int cmd_eval(const std::string& truth_path, const std::string& learned_path,
             const std::string& data_path, const std::string& metric, int extension_cap,
             std::uint64_t seed, const std::string& tv_mode, double pseudocount,
             const std::string& policy_spec, double tol) {
    std::optional<Network> truth;
    Dag truth_dag;
    try {
        truth = parse_network_auto(slurp(truth_path));
        truth_dag = network_dag(*truth);
    } catch (const std::exception&) {
        truth_dag = Dag::parse(slurp(truth_path));
    }
    const Cpdag learned = Cpdag::parse(slurp(learned_path));
    const bool want_all = metric == "all";
    std::string out;
    if (want_all || metric == "shd")
        out += "shd=" +
               format_double(
                   metric_on_cpdag(truth_dag, learned, StructMetric::shd, extension_cap, seed)
                       .value) +
               "\n";
    if (want_all || metric == "sid")
        out += "sid=" +
               format_double(
                   metric_on_cpdag(truth_dag, learned, StructMetric::sid, extension_cap, seed)
                       .value) +
               "\n";
    if (want_all || metric == "tv") {
        if (!truth) throw std::runtime_error("tv needs a network file for --truth");
        if (data_path.empty()) throw std::runtime_error("tv needs --data to fit candidates");
        const Dataset data = ingest_dataset(data_path);
        TvContext ctx;
        ctx.reference = &*truth;
        ctx.data = &data;
        ctx.policy = detail::parse_policy_spec(policy_spec);
        ctx.mode = tv_mode_from_name(tv_mode);
        ctx.pseudocount = pseudocount;
        ctx.tol = tol;
        out += "tv=" +
               format_double(
                   metric_on_cpdag(truth_dag, learned, StructMetric::tv, extension_cap, seed, &ctx)
                       .value) +
               "\n";
    }
    std::fputs(out.c_str(), stdout);
    return 0;
}

int cmd_report(const std::string& in, const std::string& format, const std::string& out) {
    const EvalReport report = EvalReport::from_csv(slurp(in));
    if (out.empty())
        std::fputs(emit_report(report, format).c_str(), stdout);
    else
        emit_report(report, format, out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"causal-discovery evaluation toolkit"};
    app.require_subcommand(1);

    // generate -----------------------------------------------------------
    GenConfig gen;
    std::string gen_family = family_name(gen.family);
    std::string out_net, out_dag, out_data;
    int sample_rows = 0, factorial_subjects = 0;
    std::vector<std::string> treatments;
    CLI::App* generate = app.add_subcommand("generate", "random ground-truth network and data");
    generate->add_option("--family", gen_family, "dirichlet|linear-gaussian|logistic");
    generate->add_option("--vertices", gen.n_vertices);
    generate->add_option("--neighborhood", gen.expected_neighborhood, "expected neighborhood size");
    generate->add_option("--arity", gen.arity);
    generate->add_option("--ess", gen.equivalent_sample_size, "Dirichlet equivalent sample size");
    generate->add_option("--delta", gen.delta, "logistic edge strength");
    generate->add_option("--weight-lo", gen.weight_lo);
    generate->add_option("--weight-hi", gen.weight_hi);
    generate->add_option("--multiplier", gen.strength_multiplier);
    generate->add_option("--seed", gen.seed);
    generate->add_option("--out-net", out_net, "network file to write");
    generate->add_option("--out-dag", out_dag, "graph file to write");
    generate->add_option("--out-data", out_data, "dataset file to write");
    generate->add_option("--sample", sample_rows, "iid rows for --out-data");
    generate->add_option("--factorial-subjects", factorial_subjects,
                         "full-factorial subjects for --out-data");
    generate->add_option("--treatments", treatments, "treatment columns for factorial data")
        ->delimiter(',');

    // bias ----------------------------------------------------------------
    std::string bias_data, bias_cov = "C", bias_out;
    double beta = 1.0;
    std::uint64_t bias_seed = 0;
    CLI::App* bias = app.add_subcommand("bias", "observational bias for a factorial dataset");
    bias->add_option("--data", bias_data)->required();
    bias->add_option("--covariate", bias_cov, "biasing covariate column");
    bias->add_option("--beta", beta, "bias strength");
    bias->add_option("--seed", bias_seed);
    bias->add_option("--out", bias_out)->required();

    // learn ---------------------------------------------------------------
    std::string learn_data, learn_algo = "pc", learn_out, learn_out_dag;
    double alpha = 0.05;
    int max_cond_size = 3;
    std::uint64_t learn_seed = 0;
    CLI::App* learn = app.add_subcommand("learn", "structure learning to a pattern file");
    learn->add_option("--data", learn_data)->required();
    learn->add_option("--algorithm", learn_algo, "pc|hill-climb");
    learn->add_option("--alpha", alpha, "test level for pc");
    learn->add_option("--max-cond-size", max_cond_size, "conditioning cap for pc, -1 unlimited");
    learn->add_option("--seed", learn_seed, "recorded in the output manifest");
    learn->add_option("--out", learn_out)->required();
    learn->add_option("--out-dag", learn_out_dag, "raw hill-climb graph");

    // fit -------------------------------------------------------------
    std::string fit_data, fit_graph, fit_out;
    double fit_pseudocount = 1.0;
    CLI::App* fit = app.add_subcommand("fit", "maximum-likelihood parameters for a graph");
    fit->add_option("--data", fit_data)->required();
    fit->add_option("--graph", fit_graph)->required();
    fit->add_option("--pseudocount", fit_pseudocount);
    fit->add_option("--out", fit_out)->required();

    // eval ------------------------------------------------------------
    std::string eval_truth, eval_learned, eval_data, eval_metric = "all";
    std::string eval_tv_mode = "marginal", eval_policy;
    int extension_cap = 100;
    std::uint64_t eval_seed = 0;
    double eval_pseudocount = 1.0, eval_tol = 1e-6;
    CLI::App* eval = app.add_subcommand("eval", "score a learned structure against truth");
    eval->add_option("--truth", eval_truth, "truth network or graph file")->required();
    eval->add_option("--learned", eval_learned, "pattern file to score")->required();
    eval->add_option("--data", eval_data, "dataset for candidate fitting (tv)");
    eval->add_option("--metric", eval_metric, "shd|sid|tv|all");
    eval->add_option("--extension-cap", extension_cap);
    eval->add_option("--seed", eval_seed, "extension sampling seed");
    eval->add_option("--tv-mode", eval_tv_mode, "marginal|parents-at-mean");
    eval->add_option("--pseudocount", eval_pseudocount);
    eval->add_option("--policy", eval_policy, "do()-values, e.g. V3=2,V1=1");
    eval->add_option("--tv-tolerance", eval_tol);

    // run -------------------------------------------------------------
    std::string run_config, run_recipe, run_output_dir, run_dataset, run_truth_net;
    std::string run_tv_mode, run_policy, run_domain;
    int run_replicates = 0, run_sample_size = 0, run_max_cond_size = 0, run_extension_cap = 0;
    int run_subjects = 0, run_treatments = 0, run_outcomes = 0, run_covariates = 0, run_levels = 0;
    double run_alpha = 0, run_pseudocount = 0, run_tol = 0, run_beta = 0;
    std::uint64_t run_seed = 0;
    std::vector<std::string> run_algorithms;
    std::vector<double> run_multipliers;
    std::vector<std::string> run_generators;
    CLI::App* run = app.add_subcommand("run", "full evaluation experiment");
    run->add_option("--config", run_config, "key-value experiment document");
    run->add_option("--recipe", run_recipe,
                    "relative-performance|over-under|strength-sweep|table1|custom");
    run->add_option("--replicates", run_replicates);
    run->add_option("--sample-size", run_sample_size);
    run->add_option("--alpha", run_alpha);
    run->add_option("--max-cond-size", run_max_cond_size);
    run->add_option("--algorithms", run_algorithms)->delimiter(',');
    run->add_option("--multipliers", run_multipliers)->delimiter(',');
    run->add_option("--generator", run_generators,
                    "key=value list, e.g. family=dirichlet vertices=14; repeatable");
    run->add_option("--seed", run_seed);
    run->add_option("--output-dir", run_output_dir);
    run->add_option("--tv-mode", run_tv_mode, "marginal|parents-at-mean");
    run->add_option("--pseudocount", run_pseudocount);
    run->add_option("--extension-cap", run_extension_cap);
    run->add_option("--tv-tolerance", run_tol);
    run->add_option("--policy", run_policy, "do()-values, e.g. V3=2,V1=1");
    run->add_option("--dataset", run_dataset, "ingested dataset for the custom recipe");
    run->add_option("--truth-net", run_truth_net, "truth network for the custom recipe");
    run->add_option("--domain", run_domain, "look-alike study domain (J|P|H)");
    run->add_option("--subjects", run_subjects);
    run->add_option("--treatments", run_treatments);
    run->add_option("--outcomes", run_outcomes);
    run->add_option("--covariates", run_covariates);
    run->add_option("--levels", run_levels, "biasing covariate levels");
    run->add_option("--beta", run_beta, "bias strength");

    // report ----------------------------------------------------------
    std::string report_in, report_format = "table", report_out;
    CLI::App* report = app.add_subcommand("report", "render a result csv");
    report->add_option("--in", report_in)->required();
    report->add_option("--format", report_format, "csv|table|plotdata");
    report->add_option("--out", report_out, "write here instead of stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (generate->parsed()) {
            gen.family = family_from_name(gen_family);
            return cmd_generate(gen, out_net, out_dag, out_data, sample_rows, factorial_subjects,
                                treatments);
        }
        if (bias->parsed()) return cmd_bias(bias_data, bias_cov, beta, bias_seed, bias_out);
        if (learn->parsed())
            return cmd_learn(learn_data, learn_algo, alpha, max_cond_size, learn_seed, learn_out,
                             learn_out_dag);
        if (fit->parsed()) return cmd_fit(fit_data, fit_graph, fit_pseudocount, fit_out);
        if (eval->parsed())
            return cmd_eval(eval_truth, eval_learned, eval_data, eval_metric, extension_cap,
                            eval_seed, eval_tv_mode, eval_pseudocount, eval_policy, eval_tol);
        if (run->parsed()) {
            ExperimentConfig cfg;
            if (!run_config.empty())
                cfg = load_experiment_config(slurp(run_config));
            else if (!run_recipe.empty())
                cfg = ExperimentConfig::recipe_defaults(recipe_from_name(run_recipe));
            else
                throw std::runtime_error("run needs --config or --recipe");
            if (!run_recipe.empty() && !run_config.empty() &&
                recipe_from_name(run_recipe) != cfg.recipe)
                throw std::runtime_error("--recipe conflicts with the config document");
            if (run->count("--replicates")) cfg.replicates = run_replicates;
            if (run->count("--sample-size")) cfg.sample_size = run_sample_size;
            if (run->count("--alpha")) cfg.alpha = run_alpha;
            if (run->count("--max-cond-size")) cfg.max_cond_size = run_max_cond_size;
            if (run->count("--algorithms")) cfg.algorithms = run_algorithms;
            if (run->count("--multipliers")) cfg.strength_multipliers = run_multipliers;
            if (run->count("--generator")) {
                cfg.generators.clear();
                for (const std::string& spec : run_generators)
                    cfg.generators.push_back(detail::parse_generator_spec(spec));
            }
            if (run->count("--seed")) cfg.master_seed = run_seed;
            if (run->count("--output-dir")) cfg.output_dir = run_output_dir;
            if (run->count("--tv-mode")) cfg.tv_mode = tv_mode_from_name(run_tv_mode);
            if (run->count("--pseudocount")) cfg.pseudocount = run_pseudocount;
            if (run->count("--extension-cap")) cfg.extension_cap = run_extension_cap;
            if (run->count("--tv-tolerance")) cfg.tv_tolerance = run_tol;
            if (run->count("--policy")) cfg.policy = detail::parse_policy_spec(run_policy);
            if (run->count("--dataset")) cfg.dataset_path = run_dataset;
            if (run->count("--truth-net")) cfg.truth_net_path = run_truth_net;
            if (run->count("--domain")) cfg.lookalike = lookalike_config(run_domain);
            if (run->count("--subjects")) cfg.lookalike.subjects = run_subjects;
            if (run->count("--treatments")) cfg.lookalike.treatments = run_treatments;
            if (run->count("--outcomes")) cfg.lookalike.outcomes = run_outcomes;
            if (run->count("--covariates")) cfg.lookalike.covariates = run_covariates;
            if (run->count("--levels")) cfg.lookalike.biasing_levels = run_levels;
            if (run->count("--beta")) cfg.lookalike.beta = run_beta;
            const EvalReport result = run_experiment(cfg);
            std::fputs(result.to_table().c_str(), stdout);
            return result.failed_replicates == 0 ? 0 : 1;
        }
        if (report->parsed()) return cmd_report(report_in, report_format, report_out);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "causeval: %s\n", e.what());
        return 1;
    }
    return 0;
}
