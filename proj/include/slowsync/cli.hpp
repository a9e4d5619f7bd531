#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "records.hpp"
#include "verify.hpp"

namespace slowsync {

namespace detail {

inline std::string read_stream_or_file(const std::string& path, std::istream& stdin_stream) {
    if (path == "-") {
        std::ostringstream buf;
        buf << stdin_stream.rdbuf();
        return buf.str();
    }
    std::ifstream in(path);
    if (!in) throw input_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline int default_jobs() {
    if (const char* env = std::getenv("SLOWSYNC_JOBS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    return 1;
}

inline void print_analysis(const Dfa& d, std::ostream& out) {
    out << "states " << d.size() << '\n';
    out << "alphabet " << d.alphabet() << '\n';
    out << "transitive " << (is_transitive(d) ? "yes" : "no") << '\n';
    auto len = sync_length(d);
    if (!len) {
        out << "synchronizing no\n";
        return;
    }
    out << "synchronizing yes\n";
    out << "sync_length " << *len << '\n';
    auto word = shortest_sync_word(d);
    out << "sync_word";
    for (int x : *word) out << ' ' << x;
    out << '\n';
    ClassFlags flags = classify(d);
    out << "minimal " << (flags.minimal ? "yes" : "no") << '\n';
    out << "semi_minimal " << (flags.semi_minimal ? "yes" : "no") << '\n';
    out << "maximal " << (flags.maximal ? "yes" : "no") << '\n';
}

inline SearchFilters parse_filters(const std::vector<std::string>& names) {
    SearchFilters f;
    for (const auto& name : names) {
        if (name == "transitive") f.transitive = true;
        else if (name == "minimal") f.minimal = true;
        else if (name == "semi-minimal" || name == "semi_minimal") f.semi_minimal = true;
        else if (name == "maximal") f.maximal = true;
        else throw input_error("unknown filter " + name);
    }
    return f;
}

inline Dfa construct_family(const std::string& family, int n, std::optional<int> k,
                            std::optional<int> m, std::optional<int> target) {
    if (family == "cerny") return cerny(n);
    if (family == "star-semi-minimal") return star_semi_minimal(n);
    if (family == "maximum-3n5") return maximum_3n5(n);
    if (family == "merge-chain") {
        if (!target) throw input_error("merge-chain needs --target-length");
        return merge_chain(n, *target);
    }
    if (family == "star-interchange") {
        if (!k) throw input_error("star-interchange needs --k");
        return star_interchange(n, *k);
    }
    if (family == "nontransitive-extremal") {
        if (!m) throw input_error("nontransitive-extremal needs --m");
        return nontransitive_extremal(n, *m);
    }
    throw input_error("unknown family " + family);
}

inline void run_enumerate(const SearchConfig& cfg, const std::string& out_path,
                          std::ostream& out) {
    Corpus corpus;
    corpus.header = CorpusHeader::from_config(cfg);

    std::ofstream file;
    std::ofstream ckpt;
    std::set<size_t> done_roots;
    SearchProgress progress;
    if (!out_path.empty()) {
        std::string ckpt_path = out_path + ".ckpt";
        if (std::ifstream old{ckpt_path}) {
            size_t r;
            while (old >> r) done_roots.insert(r);
        }
        bool resuming = !done_roots.empty() && static_cast<bool>(std::ifstream{out_path});
        file.open(out_path, resuming ? std::ios::app : std::ios::trunc);
        if (!file) throw input_error("cannot open " + out_path);
        if (!resuming) file << corpus.header.format() << '\n';
        ckpt.open(ckpt_path, std::ios::app);
        progress.skip_root = [&done_roots](size_t r) { return done_roots.count(r) > 0; };
        progress.root_done = [&ckpt](size_t r) { ckpt << r << '\n' << std::flush; };
    }

    enumerate(cfg, [&](const SearchRecord& r) {
        corpus.records.push_back(r);
        if (file.is_open()) file << format_record(r) << '\n';
    }, progress);

    std::sort(corpus.records.begin(), corpus.records.end());
    out << count(corpus.records).render();
    out << "classes " << corpus.records.size() << '\n';
}

inline void print_ranges(const std::vector<SearchRecord>& records, std::ostream& out) {
    RangeTable t = alphabet_ranges(records);
    out << t.render();
    for (const auto& [len, cols] : t.rows) {
        nlohmann::json j;
        j["length"] = len;
        static const char* names[RangeTable::kColumns] = {"all",      "min",     "smin",
                                                          "max",      "max_min", "max_smin"};
        for (int c = 0; c < RangeTable::kColumns; ++c)
            j[names[c]] = std::vector<int>(cols[c].begin(), cols[c].end());
        out << j.dump() << '\n';
    }
}

}  // namespace detail

/// Command line driver; returns the process exit code.
inline int cli_run(std::vector<std::string> args, std::istream& in, std::ostream& out,
                   std::ostream& err) {
    CLI::App app{"synchronization analytics for deterministic finite automata"};
    app.require_subcommand(1);

    std::string file, out_path, family, table, budget = "quick", variant = "Lpp";
    std::vector<std::string> files, filter_names;
    int states = 0, min_length = 1, size = 2, n = 0;
    std::optional<int> k, m, target, max_alphabet;
    int shards = 1, shard = 0, jobs = detail::default_jobs();
    bool improved = true, no_prune = false;

    auto* analyze = app.add_subcommand("analyze", "length, word and class flags of one DFA");
    analyze->add_option("file", file, "DFA file or - for stdin")->required();

    auto* subset = app.add_subcommand("subset", "worst-case subset synchronization length");
    subset->add_option("file", file)->required();
    subset->add_option("--size", size, "subset size")->required();

    auto* bounds_cmd = app.add_subcommand("bounds", "extension length bounds");
    bounds_cmd->add_option("file", file)->required();
    bounds_cmd->add_option("--variant", variant)->check(CLI::IsMember({"L", "Lp", "Lpp"}));
    bounds_cmd->add_flag("--improved,!--no-improved", improved);

    auto* enum_cmd = app.add_subcommand("enumerate", "search classes above a length threshold");
    enum_cmd->add_option("--states", states)->required();
    enum_cmd->add_option("--min-length", min_length)->required();
    enum_cmd->add_option("--filter", filter_names)->delimiter(',');
    enum_cmd->add_option("--subset-size", size);
    bool subset_mode = false;
    enum_cmd->add_flag("--subset", subset_mode, "target subset synchronization");
    enum_cmd->add_option("--max-alphabet", max_alphabet);
    enum_cmd->add_option("--shards", shards);
    enum_cmd->add_option("--shard", shard);
    enum_cmd->add_option("--out", out_path);
    enum_cmd->add_option("--jobs", jobs);
    enum_cmd->add_option("--variant", variant)->check(CLI::IsMember({"L", "Lp", "Lpp"}));
    enum_cmd->add_flag("--improved,!--no-improved", improved);
    enum_cmd->add_flag("--no-prune", no_prune);

    auto* merge_cmd = app.add_subcommand("merge", "merge shard outputs");
    merge_cmd->add_option("files", files)->required();
    merge_cmd->add_option("--out", out_path);

    auto* classify_cmd = app.add_subcommand("classify", "class flags of DFAs");
    classify_cmd->add_option("files", files)->required();

    auto* ranges_cmd = app.add_subcommand("ranges", "alphabet range table from corpora");
    ranges_cmd->add_option("files", files)->required();

    auto* construct_cmd = app.add_subcommand("construct", "generate a named family");
    construct_cmd->add_option("family", family)->required();
    construct_cmd->add_option("--n", n)->required();
    construct_cmd->add_option("--k", k);
    construct_cmd->add_option("--m", m);
    construct_cmd->add_option("--target-length", target);

    auto* verify_cmd = app.add_subcommand("verify", "reproduce bundled reference tables");
    verify_cmd->add_option("--table", table);
    verify_cmd->add_option("--budget", budget)->check(CLI::IsMember({"quick", "full"}));
    verify_cmd->add_option("--jobs", jobs);

    try {
        std::vector<const char*> argv;
        argv.push_back("slowsync");
        for (const auto& a : args) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());

        if (*analyze) {
            detail::print_analysis(parse_dfa(detail::read_stream_or_file(file, in)), out);
        } else if (*subset) {
            Dfa d = parse_dfa(detail::read_stream_or_file(file, in));
            if (size < 1 || size > d.size()) throw input_error("subset size out of range");
            std::vector<uint8_t> dist = collapse_distances(d);
            int worst = -1;
            uint32_t worst_set = 0;
            for (uint32_t S = 1; S < (1u << d.size()); ++S) {
                if (std::popcount(S) != size) continue;
                int v = dist[S] == kDistInf ? -2 : dist[S];
                if (v == -2) { worst = -2; worst_set = S; break; }
                if (v > worst) { worst = v; worst_set = S; }
            }
            out << "subset_size " << size << '\n';
            if (worst < 0) out << "subset_sync_length none\n";
            else out << "subset_sync_length " << worst << '\n';
            out << "worst_subset " << StateSet(worst_set).to_string() << '\n';
        } else if (*bounds_cmd) {
            Dfa d = parse_dfa(detail::read_stream_or_file(file, in));
            BoundsReport r = compute_bounds(d);
            out << "sizeS " << r.sizeS << "\nm " << r.m << "\nM " << r.M << "\nc " << r.c << '\n';
            if (variant == "L") out << "L " << (improved ? r.L_improved : r.L) << '\n';
            else if (variant == "Lp") out << "Lp " << (improved ? r.Lp_improved : r.Lp) << '\n';
            else if (!bounds_cmd->count("--variant")) {
                out << "L " << r.L << "\nLp " << r.Lp << "\nLpp " << r.Lpp << '\n';
                out << "L_improved " << r.L_improved << "\nLp_improved " << r.Lp_improved
                    << "\nLpp_improved " << r.Lpp_improved << '\n';
            } else {
                out << "Lpp " << (improved ? r.Lpp_improved : r.Lpp) << '\n';
            }
        } else if (*enum_cmd) {
            SearchConfig cfg;
            cfg.n = states;
            cfg.min_sync_length = min_length;
            cfg.filters = detail::parse_filters(filter_names);
            cfg.max_alphabet = max_alphabet;
            cfg.shard_count = shards;
            cfg.shard_index = shard;
            cfg.jobs = jobs;
            cfg.subset_size = subset_mode ? size : 0;
            cfg.improved_bounds = improved;
            if (no_prune) cfg.prune = PruneMode::off;
            if (variant == "L") cfg.bound_variant = BoundVariant::L;
            else if (variant == "Lp") cfg.bound_variant = BoundVariant::Lp;
            detail::run_enumerate(cfg, out_path, out);
        } else if (*merge_cmd) {
            std::vector<Corpus> parts;
            for (const auto& f : files) parts.push_back(read_corpus_file(f));
            Corpus merged = merge_corpora(parts);
            if (!out_path.empty()) {
                std::ofstream f(out_path);
                if (!f) throw input_error("cannot open " + out_path);
                write_corpus(f, merged);
            }
            out << count(merged.records).render();
            out << "classes " << merged.records.size() << '\n';
        } else if (*classify_cmd) {
            for (const auto& f : files) {
                Dfa d = parse_dfa(detail::read_stream_or_file(f, in));
                out << f << ":\n";
                detail::print_analysis(d, out);
            }
        } else if (*ranges_cmd) {
            std::vector<SearchRecord> records;
            for (const auto& f : files) {
                Corpus c = read_corpus_file(f);
                records.insert(records.end(), c.records.begin(), c.records.end());
            }
            detail::print_ranges(records, out);
        } else if (*construct_cmd) {
            out << format_dfa(detail::construct_family(family, n, k, m, target));
        } else if (*verify_cmd) {
            bool full = budget == "full";
            std::vector<std::string> names =
                table.empty() ? verify_table_names(full) : std::vector<std::string>{table};
            bool all_ok = true;
            for (const auto& name : names) {
                out << "table " << name << ":\n";
                bool ok = verify_table(name, out, jobs);
                out << (ok ? "  OK" : "  FAILED") << '\n';
                all_ok = all_ok && ok;
            }
            if (!all_ok) return 1;
        }
        return 0;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const capacity_error& e) {
        err << "capacity error: " << e.what() << '\n';
        return 3;
    } catch (const input_error& e) {
        err << "input error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace slowsync
