#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "seqmine/evaluate.hpp"
#include "seqmine/model.hpp"
#include "seqmine/types.hpp"

namespace seqmine {

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bijection between input tokens and dense item ids, in first-appearance
/// order.
class Vocabulary {
public:
    Item intern(const std::string& token);
    std::optional<Item> find(const std::string& token) const;
    const std::string& token(Item id) const;
    std::size_t size() const { return id_to_token_.size(); }

private:
    std::unordered_map<std::string, Item> token_to_id_;
    std::vector<std::string> id_to_token_;
};

enum class DataFormat { Plain, Spmf };

/// "plain" or "spmf"; anything else raises ParseError.
DataFormat parse_format(const std::string& name);

struct ParsedDatabase {
    SequenceDatabase db;
    Vocabulary vocab;
};

/// Plain: one sequence per line, whitespace-separated tokens (an empty line
/// is an empty row). SPMF: items separated by -1, sequence ended by -2;
/// itemsets of more than one item are rejected. Errors carry the line
/// number.
ParsedDatabase parse_database(const std::string& path, DataFormat format);
ParsedDatabase parse_database_stream(std::istream& in, DataFormat format,
                                     const std::string& origin);

void write_database(const SequenceDatabase& db, const Vocabulary& vocab, const std::string& path,
                    DataFormat format = DataFormat::Plain);

/// Tab-separated ranking: pattern tokens, interestingness, inclusion
/// probability, support, explained rows.
void write_patterns(const std::vector<RankedPattern>& ranked, const Vocabulary& vocab,
                    const std::string& path);

/// Token sequences from a pattern file: either the write_patterns format
/// (header detected, first column used) or plain one-pattern-per-line.
std::vector<std::vector<std::string>> read_pattern_tokens(const std::string& path);

/// Token sequence -> item ids under an existing vocabulary. Unknown tokens
/// map to ids beyond the vocabulary so the pattern simply never matches.
Sequence tokens_to_ids(const std::vector<std::string>& tokens, const Vocabulary& vocab);

/// Versioned text format; probabilities are written with 17 significant
/// digits so a round trip reproduces the model exactly. Loading validates
/// the version tag, pattern well-formedness and distribution sums.
void serialize_model(const Model& model, const Vocabulary& vocab, const std::string& path);

struct LoadedModel {
    Model model;
    Vocabulary vocab;
};
LoadedModel deserialize_model(const std::string& path);

/// Feature export: header names the pattern columns; one 0/1 row per
/// database sequence; optional label column passed through first.
void write_feature_matrix(const std::vector<std::vector<std::uint8_t>>& matrix,
                          const std::vector<Sequence>& patterns, const Vocabulary& vocab,
                          const std::vector<std::string>& labels, const std::string& path);

/// One label per line; must match the database row count (checked by the
/// caller against the db).
std::vector<std::string> read_labels(const std::string& path);

}  // namespace seqmine
