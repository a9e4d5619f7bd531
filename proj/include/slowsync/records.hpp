#pragma once

#include <fstream>
#include <sstream>

#include "search_types.hpp"
#include "text_io.hpp"

namespace slowsync {

// Record line: "n alphabet sync_length flags [s<k>:<len>] images..."
// Flags: transitive/minimal/semi-minimal/maximal as T/M/S/X (upper = true,
// lower = false, '?' = not computed).  Images are hex digit strings, one
// per symbol, most significant digit = state 0.

namespace detail {

inline char flag_char(const std::optional<bool>& f, char upper, char lower) {
    if (!f.has_value()) return '?';
    return *f ? upper : lower;
}

inline std::optional<bool> parse_flag(char c, char upper, char lower) {
    if (c == upper) return true;
    if (c == lower) return false;
    if (c == '?') return std::nullopt;
    throw input_error("record: bad flag character");
}

inline int hex_val(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    throw input_error("record: bad state digit");
}

inline char hex_chr(int v) { return v < 10 ? static_cast<char>('0' + v) : static_cast<char>('a' + v - 10); }

}  // namespace detail

inline std::string format_record(const SearchRecord& r) {
    std::ostringstream out;
    out << r.dfa.size() << ' ' << r.dfa.alphabet() << ' ' << r.sync_length << ' ';
    out << detail::flag_char(r.transitive, 'T', 't') << detail::flag_char(r.minimal, 'M', 'm')
        << detail::flag_char(r.semi_minimal, 'S', 's') << detail::flag_char(r.maximal, 'X', 'x');
    if (r.subset_size) out << " s" << r.subset_size << ':' << r.subset_length;
    for (const auto& t : r.dfa.symbols()) {
        out << ' ';
        for (int q = 0; q < r.dfa.size(); ++q) out << detail::hex_chr(t[q]);
    }
    return out.str();
}

inline SearchRecord parse_record(const std::string& line) {
    std::istringstream in(line);
    int n, m, len;
    std::string flags;
    if (!(in >> n >> m >> len >> flags) || flags.size() != 4)
        throw input_error("record: malformed line");
    SearchRecord r;
    r.sync_length = len;
    r.transitive = detail::parse_flag(flags[0], 'T', 't');
    r.minimal = detail::parse_flag(flags[1], 'M', 'm');
    r.semi_minimal = detail::parse_flag(flags[2], 'S', 's');
    r.maximal = detail::parse_flag(flags[3], 'X', 'x');
    std::vector<std::string> tokens;
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
    size_t first_sym = 0;
    if (!tokens.empty() && tokens[0].size() > 1 && tokens[0][0] == 's' &&
        tokens[0].find(':') != std::string::npos) {
        auto colon = tokens[0].find(':');
        r.subset_size = std::stoi(tokens[0].substr(1, colon - 1));
        r.subset_length = std::stoi(tokens[0].substr(colon + 1));
        first_sym = 1;
    }
    if (static_cast<int>(tokens.size() - first_sym) != m)
        throw input_error("record: wrong symbol count");
    std::vector<Transformation> syms;
    for (size_t i = first_sym; i < tokens.size(); ++i) {
        if (static_cast<int>(tokens[i].size()) != n) throw input_error("record: bad symbol length");
        std::vector<int> img(n);
        for (int q = 0; q < n; ++q) img[q] = detail::hex_val(tokens[i][q]);
        syms.emplace_back(n, img);
    }
    r.dfa = Dfa(n, std::move(syms));
    return r;
}

/// Search parameters stamped on every corpus file; shard-mates must agree
/// on everything except the shard fields.
struct CorpusHeader {
    int n = 0;
    int min_sync_length = 1;
    int subset_size = 0;
    std::string filters;  // subset of "TMSX"
    int shard_count = 1;
    int shard_index = 0;

    static CorpusHeader from_config(const SearchConfig& cfg) {
        CorpusHeader h;
        h.n = cfg.n;
        h.min_sync_length = cfg.min_sync_length;
        h.subset_size = cfg.subset_size;
        if (cfg.filters.transitive) h.filters += 'T';
        if (cfg.filters.minimal) h.filters += 'M';
        if (cfg.filters.semi_minimal) h.filters += 'S';
        if (cfg.filters.maximal) h.filters += 'X';
        h.shard_count = cfg.shard_count;
        h.shard_index = cfg.shard_index;
        return h;
    }

    bool compatible(const CorpusHeader& o) const {
        return n == o.n && min_sync_length == o.min_sync_length && subset_size == o.subset_size &&
               filters == o.filters;
    }

    std::string format() const {
        std::ostringstream out;
        out << "#corpus v1 n=" << n << " min_len=" << min_sync_length
            << " subset=" << subset_size << " filters=" << (filters.empty() ? "-" : filters)
            << " shards=" << shard_count << " shard=" << shard_index;
        return out.str();
    }

    static CorpusHeader parse(const std::string& line) {
        CorpusHeader h;
        std::istringstream in(line);
        std::string tag, ver, kv;
        in >> tag >> ver;
        if (tag != "#corpus" || ver != "v1") throw input_error("corpus: bad header");
        while (in >> kv) {
            auto eq = kv.find('=');
            if (eq == std::string::npos) throw input_error("corpus: bad header field");
            std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
            if (key == "n") h.n = std::stoi(val);
            else if (key == "min_len") h.min_sync_length = std::stoi(val);
            else if (key == "subset") h.subset_size = std::stoi(val);
            else if (key == "filters") h.filters = val == "-" ? "" : val;
            else if (key == "shards") h.shard_count = std::stoi(val);
            else if (key == "shard") h.shard_index = std::stoi(val);
            else throw input_error("corpus: unknown header field " + key);
        }
        return h;
    }
};

struct Corpus {
    CorpusHeader header;
    std::vector<SearchRecord> records;
};

inline void write_corpus(std::ostream& out, const Corpus& c) {
    out << c.header.format() << '\n';
    for (const auto& r : c.records) out << format_record(r) << '\n';
}

inline Corpus read_corpus(std::istream& in) {
    Corpus c;
    std::string line;
    if (!std::getline(in, line)) throw input_error("corpus: empty file");
    c.header = CorpusHeader::parse(line);
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        c.records.push_back(parse_record(line));
    }
    return c;
}

inline Corpus read_corpus_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open " + path);
    return read_corpus(in);
}

/// Deduplicate (canonical forms compare equal), sort, merge shard outputs.
inline Corpus merge_corpora(const std::vector<Corpus>& parts) {
    if (parts.empty()) throw input_error("merge: no inputs");
    Corpus out;
    out.header = parts[0].header;
    out.header.shard_count = 1;
    out.header.shard_index = 0;
    for (const auto& p : parts) {
        if (!p.header.compatible(out.header)) throw input_error("merge: incompatible corpus headers");
        out.records.insert(out.records.end(), p.records.begin(), p.records.end());
    }
    std::sort(out.records.begin(), out.records.end());
    out.records.erase(std::unique(out.records.begin(), out.records.end()), out.records.end());
    return out;
}

}  // namespace slowsync
