#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "coranking/corank.hpp"
#include "coranking/knapsack.hpp"

namespace coranking::io {

/// Malformed input document; the message names the offending list and
/// position where that is known.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Instance files: one JSON array of arrays of integers, one inner array
// per sorted list.
Instance<std::int64_t> parse_instance(const std::string& text);
Instance<std::int64_t> read_instance(const std::string& path);
void write_instance(const Instance<std::int64_t>& inst, std::ostream& out);
void write_instance_file(const Instance<std::int64_t>& inst, const std::string& path);

// Shard files: one JSON array of shards, each an array of
// [density, weight] pairs with density non-increasing.
std::vector<KnapsackShard<double>> parse_shards(const std::string& text);
std::vector<KnapsackShard<double>> read_shards(const std::string& path);

/// Compact bracketed form, e.g. "[2,1]".
std::string format_cut(const CutVector& cut);

/// Comma-separated integers ("2,1") into a cut of the given rank.
CutVector parse_cut(const std::string& text, std::int64_t rank);

} // namespace coranking::io
