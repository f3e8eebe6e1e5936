#include "seqmine/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace seqmine {

namespace {

std::string prob_repr(double p) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", p);
    return buf;
}

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    return out;
}

}  // namespace

Item Vocabulary::intern(const std::string& token) {
    auto it = token_to_id_.find(token);
    if (it != token_to_id_.end()) return it->second;
    Item id = static_cast<Item>(id_to_token_.size());
    token_to_id_.emplace(token, id);
    id_to_token_.push_back(token);
    return id;
}

std::optional<Item> Vocabulary::find(const std::string& token) const {
    auto it = token_to_id_.find(token);
    if (it == token_to_id_.end()) return std::nullopt;
    return it->second;
}

const std::string& Vocabulary::token(Item id) const {
    if (id >= id_to_token_.size()) throw std::out_of_range("item id outside vocabulary");
    return id_to_token_[id];
}

DataFormat parse_format(const std::string& name) {
    if (name == "plain") return DataFormat::Plain;
    if (name == "spmf") return DataFormat::Spmf;
    throw ParseError("unknown format '" + name + "' (expected plain or spmf)");
}

ParsedDatabase parse_database_stream(std::istream& in, DataFormat format,
                                     const std::string& origin) {
    ParsedDatabase out;
    std::string line;
    std::size_t line_no = 0;

    while (std::getline(in, line)) {
        ++line_no;
        auto tokens = split_ws(line);

        if (format == DataFormat::Plain) {
            Sequence row;
            row.reserve(tokens.size());
            for (const auto& tok : tokens) row.push_back(out.vocab.intern(tok));
            out.db.rows.push_back(std::move(row));
            continue;
        }

        if (tokens.empty()) continue;  // blank SPMF lines carry no record
        Sequence row;
        std::size_t itemset_size = 0;
        bool terminated = false;
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            const std::string& tok = tokens[i];
            if (tok == "-2") {
                if (i + 1 != tokens.size())
                    throw ParseError(origin + ":" + std::to_string(line_no) +
                                     ": content after sequence terminator");
                terminated = true;
            } else if (tok == "-1") {
                if (itemset_size == 0)
                    throw ParseError(origin + ":" + std::to_string(line_no) +
                                     ": empty itemset before -1");
                itemset_size = 0;
            } else {
                if (++itemset_size > 1)
                    throw ParseError(origin + ":" + std::to_string(line_no) +
                                     ": itemsets with more than one item are not supported");
                row.push_back(out.vocab.intern(tok));
            }
        }
        if (!terminated)
            throw ParseError(origin + ":" + std::to_string(line_no) +
                             ": missing -2 sequence terminator");
        out.db.rows.push_back(std::move(row));
    }

    if (out.db.rows.empty()) throw ParseError(origin + ": empty input");
    out.db.vocab_size = out.vocab.size();
    return out;
}

ParsedDatabase parse_database(const std::string& path, DataFormat format) {
    auto in = open_input(path);
    return parse_database_stream(in, format, path);
}

void write_database(const SequenceDatabase& db, const Vocabulary& vocab, const std::string& path,
                    DataFormat format) {
    auto out = open_output(path);
    for (const Sequence& row : db.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ' ';
            out << vocab.token(row[i]);
            if (format == DataFormat::Spmf) out << " -1";
        }
        if (format == DataFormat::Spmf) out << (row.empty() ? "-2" : " -2");
        out << '\n';
    }
}

void write_patterns(const std::vector<RankedPattern>& ranked, const Vocabulary& vocab,
                    const std::string& path) {
    auto out = open_output(path);
    out << "pattern\tinterestingness\tinclusion_probability\tsupport\texplained_rows\n";
    char buf[64];
    for (const auto& r : ranked) {
        for (std::size_t i = 0; i < r.pattern.size(); ++i) {
            if (i) out << ' ';
            out << vocab.token(r.pattern[i]);
        }
        std::snprintf(buf, sizeof(buf), "%.6f", r.interestingness);
        out << '\t' << buf;
        std::snprintf(buf, sizeof(buf), "%.6f", r.inclusion_probability);
        out << '\t' << buf << '\t' << r.support << '\t' << r.explained_rows << '\n';
    }
}

std::vector<std::vector<std::string>> read_pattern_tokens(const std::string& path) {
    auto in = open_input(path);
    std::vector<std::vector<std::string>> out;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (first) {
            first = false;
            if (line.rfind("pattern\t", 0) == 0) continue;  // ranking header
        }
        std::string head = line.substr(0, line.find('\t'));
        auto tokens = split_ws(head);
        if (!tokens.empty()) out.push_back(std::move(tokens));
    }
    return out;
}

Sequence tokens_to_ids(const std::vector<std::string>& tokens, const Vocabulary& vocab) {
    Sequence out;
    out.reserve(tokens.size());
    Item unknown = static_cast<Item>(vocab.size());
    for (const auto& tok : tokens) {
        auto id = vocab.find(tok);
        out.push_back(id ? *id : unknown++);
    }
    return out;
}

void serialize_model(const Model& model, const Vocabulary& vocab, const std::string& path) {
    auto out = open_output(path);
    out << "seqmine-model v1\n";
    out << "vocab " << vocab.size() << '\n';
    for (Item id = 0; id < vocab.size(); ++id) out << vocab.token(id) << '\n';
    out << "patterns " << model.size() << '\n';
    for (std::size_t p = 0; p < model.size(); ++p) {
        const Sequence& pattern = model.pattern(p);
        out << pattern.size();
        for (Item v : pattern) out << ' ' << v;
        out << " :";
        for (double prob : model.dist(p).probs()) out << ' ' << prob_repr(prob);
        out << '\n';
    }
}

LoadedModel deserialize_model(const std::string& path) {
    auto in = open_input(path);
    std::string line;

    if (!std::getline(in, line) || line != "seqmine-model v1")
        throw ParseError(path + ": unsupported model version tag '" + line + "'");

    std::size_t vocab_count = 0, pattern_count = 0;
    std::string keyword;
    in >> keyword >> vocab_count;
    if (!in || keyword != "vocab") throw ParseError(path + ": expected vocab section");
    std::getline(in, line);

    LoadedModel out;
    for (std::size_t i = 0; i < vocab_count; ++i) {
        if (!std::getline(in, line) || line.empty())
            throw ParseError(path + ": truncated vocabulary");
        out.vocab.intern(line);
    }
    if (out.vocab.size() != vocab_count)
        throw ParseError(path + ": duplicate vocabulary tokens");

    in >> keyword >> pattern_count;
    if (!in || keyword != "patterns") throw ParseError(path + ": expected patterns section");
    std::getline(in, line);

    out.model.set_vocab_size(vocab_count);
    for (std::size_t p = 0; p < pattern_count; ++p) {
        if (!std::getline(in, line)) throw ParseError(path + ": truncated pattern list");
        std::istringstream ss(line);
        std::size_t len = 0;
        if (!(ss >> len) || len == 0)
            throw ParseError(path + ": pattern " + std::to_string(p) + " is empty or malformed");
        Sequence pattern(len);
        for (std::size_t i = 0; i < len; ++i) {
            std::uint64_t id;
            if (!(ss >> id) || id >= vocab_count)
                throw ParseError(path + ": pattern " + std::to_string(p) +
                                 " has an item outside the vocabulary");
            pattern[i] = static_cast<Item>(id);
        }
        std::string sep;
        if (!(ss >> sep) || sep != ":")
            throw ParseError(path + ": pattern " + std::to_string(p) + " missing ':' separator");
        std::vector<double> probs;
        double v;
        while (ss >> v) probs.push_back(v);

        MultiplicityDistribution dist(std::move(probs));
        try {
            dist.validate();
        } catch (const std::invalid_argument& e) {
            throw ParseError(path + ": pattern " + std::to_string(p) + ": " + e.what());
        }
        try {
            out.model.add(std::move(pattern), std::move(dist));
        } catch (const std::invalid_argument& e) {
            throw ParseError(path + ": pattern " + std::to_string(p) + ": " + e.what());
        }
    }
    return out;
}

void write_feature_matrix(const std::vector<std::vector<std::uint8_t>>& matrix,
                          const std::vector<Sequence>& patterns, const Vocabulary& vocab,
                          const std::vector<std::string>& labels, const std::string& path) {
    auto out = open_output(path);
    std::size_t k = matrix.empty() ? patterns.size() : matrix.front().size();

    if (!labels.empty()) out << "label\t";
    for (std::size_t j = 0; j < k; ++j) {
        if (j) out << '\t';
        for (std::size_t i = 0; i < patterns[j].size(); ++i) {
            if (i) out << ' ';
            out << vocab.token(patterns[j][i]);
        }
    }
    out << '\n';

    for (std::size_t i = 0; i < matrix.size(); ++i) {
        if (!labels.empty()) out << labels[i] << '\t';
        for (std::size_t j = 0; j < matrix[i].size(); ++j) {
            if (j) out << '\t';
            out << static_cast<int>(matrix[i][j]);
        }
        out << '\n';
    }
}

std::vector<std::string> read_labels(const std::string& path) {
    auto in = open_input(path);
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) out.push_back(line);
    return out;
}

}  // namespace seqmine
