#include "coranking/io.hpp"

#include <cstdint>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace coranking::io {

namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded())
        throw ParseError("invalid JSON document");
    return doc;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string at(std::size_t list, std::size_t pos) {
    return "list " + std::to_string(list) + ", position " + std::to_string(pos);
}

} // namespace

Instance<std::int64_t> parse_instance(const std::string& text) {
    const json doc = parse_json(text);
    if (!doc.is_array())
        throw ParseError("instance document must be an array of lists");
    if (doc.empty())
        throw ParseError("instance has no lists");
    std::vector<std::vector<std::int64_t>> lists;
    lists.reserve(doc.size());
    for (std::size_t t = 0; t < doc.size(); ++t) {
        const json& entry = doc[t];
        if (!entry.is_array())
            throw ParseError("list " + std::to_string(t) + " is not an array");
        std::vector<std::int64_t> list;
        list.reserve(entry.size());
        for (std::size_t j = 0; j < entry.size(); ++j) {
            const json& cell = entry[j];
            if (!cell.is_number_integer())
                throw ParseError(at(t, j) + ": not an integer");
            if (cell.is_number_unsigned() &&
                cell.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX))
                throw ParseError(at(t, j) + ": key exceeds the signed 64-bit range");
            const auto value = cell.get<std::int64_t>();
            if (!list.empty() && value < list.back())
                throw ParseError(at(t, j) + ": out of order (" + std::to_string(value) +
                                 " after " + std::to_string(list.back()) + ")");
            list.push_back(value);
        }
        lists.push_back(std::move(list));
    }
    return make_instance(std::move(lists));
}

Instance<std::int64_t> read_instance(const std::string& path) {
    return parse_instance(read_file(path));
}

void write_instance(const Instance<std::int64_t>& inst, std::ostream& out) {
    out << "[\n";
    for (std::size_t t = 0; t < inst.lists.size(); ++t) {
        out << '[';
        for (std::size_t j = 0; j < inst.lists[t].size(); ++j) {
            if (j > 0) out << ',';
            out << inst.lists[t][j];
        }
        out << (t + 1 < inst.lists.size() ? "],\n" : "]\n");
    }
    out << "]\n";
}

void write_instance_file(const Instance<std::int64_t>& inst, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    write_instance(inst, out);
    out.flush();
    if (!out)
        throw std::runtime_error("failed writing " + path);
}

std::vector<KnapsackShard<double>> parse_shards(const std::string& text) {
    const json doc = parse_json(text);
    if (!doc.is_array() || doc.empty())
        throw ParseError("shard document must be a non-empty array of shards");
    std::vector<KnapsackShard<double>> shards;
    shards.reserve(doc.size());
    for (std::size_t t = 0; t < doc.size(); ++t) {
        const json& entry = doc[t];
        if (!entry.is_array())
            throw ParseError("shard " + std::to_string(t) + " is not an array");
        std::vector<double> density, weight;
        for (std::size_t j = 0; j < entry.size(); ++j) {
            const json& item = entry[j];
            if (!item.is_array() || item.size() != 2 || !item[0].is_number() || !item[1].is_number())
                throw ParseError("shard " + std::to_string(t) + ", item " + std::to_string(j) +
                                 ": expected [density, weight]");
            density.push_back(item[0].get<double>());
            weight.push_back(item[1].get<double>());
        }
        try {
            shards.push_back(make_shard(std::move(density), std::move(weight)));
        } catch (const std::invalid_argument& e) {
            throw ParseError("shard " + std::to_string(t) + ": " + e.what());
        }
    }
    return shards;
}

std::vector<KnapsackShard<double>> read_shards(const std::string& path) {
    return parse_shards(read_file(path));
}

std::string format_cut(const CutVector& cut) {
    std::string out = "[";
    for (std::size_t t = 0; t < cut.index.size(); ++t) {
        if (t > 0) out += ',';
        out += std::to_string(cut.index[t]);
    }
    out += ']';
    return out;
}

CutVector parse_cut(const std::string& text, std::int64_t rank) {
    CutVector cut{{}, rank};
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::string field =
            text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        std::size_t used = 0;
        std::int64_t value = 0;
        try {
            value = std::stoll(field, &used);
        } catch (const std::exception&) {
            throw ParseError("cut entry '" + field + "' is not an integer");
        }
        if (used != field.size())
            throw ParseError("cut entry '" + field + "' is not an integer");
        cut.index.push_back(value);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return cut;
}

} // namespace coranking::io
