#include "seqmine/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <string>

#include <CLI11.hpp>

#include "seqmine/evaluate.hpp"
#include "seqmine/generate.hpp"
#include "seqmine/io.hpp"
#include "seqmine/learn.hpp"

namespace seqmine {

namespace {

struct MineArgs {
    std::string input, format = "plain";
    std::string output_patterns, output_model;
    EmConfig cfg;
    std::uint64_t seed = 0;
    bool quiet = false;
};

void log_progress(const MiningProgress& p) {
    std::fprintf(stderr, "iter=%zu tried=%zu accepted=%d profit=%.6f patterns=%zu nonsingleton=%zu\n",
                 p.iteration, p.candidates_tried, p.accepted ? 1 : 0, p.mean, p.pattern_count,
                 p.nonsingleton_count);
}

int cmd_mine(const MineArgs& a) {
    auto parsed = parse_database(a.input, parse_format(a.format));
    ProgressFn progress = a.quiet ? ProgressFn{} : log_progress;
    auto result = mine(parsed.db, a.cfg, a.seed, progress);
    auto ranked = rank_patterns(result.model, result.coverings, parsed.db, a.cfg.threads);

    if (!a.output_patterns.empty()) write_patterns(ranked, parsed.vocab, a.output_patterns);
    if (!a.output_model.empty()) serialize_model(result.model, parsed.vocab, a.output_model);

    std::fprintf(stderr,
                 "mined %zu patterns (%zu non-singleton) over %zu iterations; mean objective %.6f\n",
                 result.model.size(),
                 static_cast<std::size_t>(std::count_if(
                     result.model.patterns().begin(), result.model.patterns().end(),
                     [](const Sequence& s) { return s.size() > 1; })),
                 result.iterations_run, result.mean);
    return 0;
}

int cmd_rank(const std::string& input, const std::string& format, const std::string& model_path,
             const std::string& output, unsigned threads) {
    auto parsed = parse_database(input, parse_format(format));
    auto loaded = deserialize_model(model_path);

    // Ranking is relative to the model's vocabulary; remap database items.
    SequenceDatabase db;
    db.vocab_size = loaded.vocab.size();
    db.rows.reserve(parsed.db.rows.size());
    for (const auto& row : parsed.db.rows) {
        std::vector<std::string> tokens;
        tokens.reserve(row.size());
        for (Item v : row) tokens.push_back(parsed.vocab.token(v));
        db.rows.push_back(tokens_to_ids(tokens, loaded.vocab));
    }

    auto coverings = e_step(db, loaded.model, threads);
    auto ranked = rank_patterns(loaded.model, coverings, db, threads);
    write_patterns(ranked, loaded.vocab, output);
    return 0;
}

int cmd_generate(const std::string& model_path, std::size_t rows, std::uint64_t seed,
                 const std::string& output, const std::string& format, bool allow_empty,
                 unsigned threads) {
    auto loaded = deserialize_model(model_path);
    RandomSource rng(seed);
    auto db = sample_database(loaded.model, rows, rng, allow_empty, threads);
    write_database(db, loaded.vocab, output, parse_format(format));
    return 0;
}

Vocabulary process_vocab(std::size_t n_processes, std::size_t process_items) {
    Vocabulary vocab;
    for (std::size_t p = 0; p < n_processes; ++p) {
        for (std::size_t k = 0; k < process_items; ++k) {
            std::string token = k < 26 ? std::string(1, static_cast<char>('a' + k))
                                       : "x" + std::to_string(k);
            vocab.intern(token + std::to_string(p + 1));
        }
    }
    return vocab;
}

int cmd_synth_parallel(std::size_t processes, std::size_t process_items, std::size_t total_length,
                       std::size_t row_length, std::uint64_t seed, const std::string& output,
                       const std::string& truth_output) {
    RandomSource rng(seed);
    auto data = parallel_process_db(processes, process_items, total_length, row_length, rng);
    Vocabulary vocab = process_vocab(processes, process_items);
    write_database(data.db, vocab, output);
    if (!truth_output.empty()) {
        SequenceDatabase truth;
        truth.rows.assign(data.generating.begin(), data.generating.end());
        write_database(truth, vocab, truth_output);
    }
    std::fprintf(stderr, "wrote %zu rows of length %zu; %zu generating patterns\n",
                 data.db.size(), row_length, data.generating.size());
    return 0;
}

int cmd_evaluate(const std::string& mined_path, const std::string& generating_path,
                 std::size_t top_k, bool non_singletons, const std::string& output) {
    auto mined_tokens = read_pattern_tokens(mined_path);
    auto generating_tokens = read_pattern_tokens(generating_path);

    Vocabulary vocab;
    std::vector<Sequence> mined;
    for (const auto& tokens : mined_tokens) {
        if (non_singletons && tokens.size() < 2) continue;
        Sequence s;
        for (const auto& t : tokens) s.push_back(vocab.intern(t));
        mined.push_back(std::move(s));
    }
    std::set<Sequence> generating;
    for (const auto& tokens : generating_tokens) {
        Sequence s;
        for (const auto& t : tokens) s.push_back(vocab.intern(t));
        generating.insert(std::move(s));
    }

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!output.empty()) {
        file.open(output);
        if (!file) throw ParseError("cannot write " + output);
        out = &file;
    }

    if (top_k == 0 || top_k > mined.size()) top_k = mined.size();
    if (top_k == 0) throw ParseError(mined_path + ": no mined patterns to evaluate");

    char buf[128];
    *out << "k\tprecision\trecall\n";
    std::vector<PrecisionRecall> curve;
    for (std::size_t k = 1; k <= top_k; ++k) {
        auto pr = precision_recall_at_k(mined, generating, k);
        curve.push_back(pr);
        std::snprintf(buf, sizeof(buf), "%zu\t%.6f\t%.6f\n", k, pr.precision, pr.recall);
        *out << buf;
    }
    auto interp = interpolated_precision_11pt(curve);
    *out << "recall_level\tinterpolated_precision\n";
    for (std::size_t level = 0; level <= 10; ++level) {
        std::snprintf(buf, sizeof(buf), "%.1f\t%.6f\n", static_cast<double>(level) / 10.0,
                      interp[level]);
        *out << buf;
    }
    return 0;
}

int cmd_redundancy(const std::string& patterns_path, std::size_t top_k) {
    auto token_patterns = read_pattern_tokens(patterns_path);
    Vocabulary vocab;
    std::vector<Sequence> patterns;
    for (const auto& tokens : token_patterns) {
        Sequence s;
        for (const auto& t : tokens) s.push_back(vocab.intern(t));
        patterns.push_back(std::move(s));
    }
    auto metrics = redundancy_metrics(patterns, top_k);
    std::printf("isd=%.6f cs=%.6f unique_items=%zu\n", metrics.isd, metrics.cs,
                metrics.unique_items);
    return 0;
}

int cmd_features(const std::string& input, const std::string& format,
                 const std::string& patterns_path, std::size_t top_k, const std::string& labels_path,
                 const std::string& output, unsigned threads) {
    auto parsed = parse_database(input, parse_format(format));
    auto token_patterns = read_pattern_tokens(patterns_path);

    std::vector<Sequence> patterns;
    for (const auto& tokens : token_patterns)
        patterns.push_back(tokens_to_ids(tokens, parsed.vocab));
    if (top_k == 0 || top_k > patterns.size()) top_k = patterns.size();

    std::vector<std::string> labels;
    if (!labels_path.empty()) {
        labels = read_labels(labels_path);
        if (labels.size() != parsed.db.size())
            throw ParseError(labels_path + ": " + std::to_string(labels.size()) +
                             " labels for " + std::to_string(parsed.db.size()) + " rows");
    }

    auto matrix = feature_matrix(parsed.db, patterns, top_k, threads);
    patterns.resize(top_k);

    // Column headers use the original tokens, including ones outside the
    // database vocabulary.
    Vocabulary header_vocab = parsed.vocab;
    std::vector<Sequence> header_patterns;
    for (std::size_t j = 0; j < top_k; ++j) {
        Sequence s;
        for (const auto& t : token_patterns[j]) s.push_back(header_vocab.intern(t));
        header_patterns.push_back(std::move(s));
    }
    write_feature_matrix(matrix, header_patterns, header_vocab, labels, output);
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"seqmine: probabilistic mining of interleaved sequential patterns"};
    app.require_subcommand(1);

    MineArgs mine_args;
    auto* mine_cmd = app.add_subcommand("mine", "Mine a pattern model from a sequence database");
    mine_cmd->add_option("--input", mine_args.input, "input database")->required();
    mine_cmd->add_option("--format", mine_args.format, "plain or spmf");
    mine_cmd->add_option("--output-patterns", mine_args.output_patterns, "ranked pattern TSV");
    mine_cmd->add_option("--output-model", mine_args.output_model, "model file");
    mine_cmd->add_option("--iterations", mine_args.cfg.structural_iterations,
                         "structural iterations");
    mine_cmd->add_option("--queue-size", mine_args.cfg.queue_capacity, "candidate queue capacity");
    mine_cmd->add_option("--tolerance", mine_args.cfg.tolerance, "hard-EM convergence tolerance");
    mine_cmd->add_option("--em-interval", mine_args.cfg.em_interval,
                         "accepted candidates between hard-EM runs");
    mine_cmd->add_option("--max-em-iterations", mine_args.cfg.max_em_iterations,
                         "hard-EM iteration cap");
    mine_cmd->add_option("--threads", mine_args.cfg.threads, "worker threads");
    mine_cmd->add_option("--seed", mine_args.seed, "reserved; mining is deterministic");
    mine_cmd->add_flag("--quiet", mine_args.quiet, "suppress per-iteration progress");

    std::string rank_input, rank_format = "plain", rank_model, rank_output;
    unsigned rank_threads = 1;
    auto* rank_cmd = app.add_subcommand("rank", "Rank an existing model against a database");
    rank_cmd->add_option("--input", rank_input, "input database")->required();
    rank_cmd->add_option("--format", rank_format, "plain or spmf");
    rank_cmd->add_option("--model", rank_model, "model file")->required();
    rank_cmd->add_option("--output", rank_output, "ranked pattern TSV")->required();
    rank_cmd->add_option("--threads", rank_threads, "worker threads");

    std::string gen_model, gen_output, gen_format = "plain";
    std::size_t gen_rows = 0;
    std::uint64_t gen_seed = 0;
    bool gen_allow_empty = false;
    unsigned gen_threads = 1;
    auto* gen_cmd = app.add_subcommand("generate", "Sample a database from a model");
    gen_cmd->add_option("--model", gen_model, "model file")->required();
    gen_cmd->add_option("--rows", gen_rows, "rows to sample")->required();
    gen_cmd->add_option("--seed", gen_seed, "random seed");
    gen_cmd->add_option("--output", gen_output, "output database")->required();
    gen_cmd->add_option("--format", gen_format, "plain or spmf");
    gen_cmd->add_flag("--allow-empty", gen_allow_empty, "permit sampling zero rows");
    gen_cmd->add_option("--threads", gen_threads, "worker threads");

    std::size_t sp_processes = 5, sp_items = 5, sp_total = 1000000, sp_row = 100;
    std::uint64_t sp_seed = 0;
    std::string sp_output, sp_truth;
    auto* sp_cmd = app.add_subcommand("synth-parallel",
                                      "Generate the interleaved parallel-process benchmark");
    sp_cmd->add_option("--processes", sp_processes, "independent processes");
    sp_cmd->add_option("--process-items", sp_items, "items per process cycle");
    sp_cmd->add_option("--total-length", sp_total, "total items generated");
    sp_cmd->add_option("--row-length", sp_row, "items per row");
    sp_cmd->add_option("--seed", sp_seed, "random seed");
    sp_cmd->add_option("--output", sp_output, "output database")->required();
    sp_cmd->add_option("--output-patterns", sp_truth, "generating pattern list");

    std::string ev_mined, ev_generating, ev_output;
    std::size_t ev_top_k = 0;
    bool ev_nonsingleton = false;
    auto* ev_cmd = app.add_subcommand("evaluate", "Precision/recall of mined vs generating patterns");
    ev_cmd->add_option("--mined", ev_mined, "mined pattern file")->required();
    ev_cmd->add_option("--generating", ev_generating, "generating pattern file")->required();
    ev_cmd->add_option("--top-k", ev_top_k, "truncate mined list (default: all)");
    ev_cmd->add_flag("--non-singletons", ev_nonsingleton, "drop singleton mined patterns");
    ev_cmd->add_option("--output", ev_output, "write tables here instead of stdout");

    std::string rd_patterns;
    std::size_t rd_top_k = 50;
    auto* rd_cmd = app.add_subcommand("redundancy", "ISD/CS/unique-items of a pattern set");
    rd_cmd->add_option("--patterns", rd_patterns, "pattern file")->required();
    rd_cmd->add_option("--top-k", rd_top_k, "non-singleton prefix size");

    std::string ft_input, ft_format = "plain", ft_patterns, ft_labels, ft_output;
    std::size_t ft_top_k = 0;
    unsigned ft_threads = 1;
    auto* ft_cmd = app.add_subcommand("features", "Export a binary pattern-occurrence matrix");
    ft_cmd->add_option("--input", ft_input, "input database")->required();
    ft_cmd->add_option("--format", ft_format, "plain or spmf");
    ft_cmd->add_option("--patterns", ft_patterns, "pattern file")->required();
    ft_cmd->add_option("--top-k", ft_top_k, "columns to keep (default: all)");
    ft_cmd->add_option("--labels", ft_labels, "label file, one per row");
    ft_cmd->add_option("--output", ft_output, "output matrix")->required();
    ft_cmd->add_option("--threads", ft_threads, "worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << '\n' << "run with --help for usage\n";
        return 1;
    }

    try {
        if (mine_cmd->parsed()) {
            mine_args.cfg.validate();
            return cmd_mine(mine_args);
        }
        if (rank_cmd->parsed())
            return cmd_rank(rank_input, rank_format, rank_model, rank_output, rank_threads);
        if (gen_cmd->parsed())
            return cmd_generate(gen_model, gen_rows, gen_seed, gen_output, gen_format,
                                gen_allow_empty, gen_threads);
        if (sp_cmd->parsed())
            return cmd_synth_parallel(sp_processes, sp_items, sp_total, sp_row, sp_seed, sp_output,
                                      sp_truth);
        if (ev_cmd->parsed())
            return cmd_evaluate(ev_mined, ev_generating, ev_top_k, ev_nonsingleton, ev_output);
        if (rd_cmd->parsed()) return cmd_redundancy(rd_patterns, rd_top_k);
        if (ft_cmd->parsed())
            return cmd_features(ft_input, ft_format, ft_patterns, ft_top_k, ft_labels, ft_output,
                                ft_threads);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}

}  // namespace seqmine
