#include "cwsearch/jsonio.hpp"

#include <limits>

#include "cwsearch/error.hpp"

namespace cwsearch {

nlohmann::json big_to_json(const BigInt& value) {
    if (value >= 0 && value <= std::numeric_limits<std::uint64_t>::max()) {
        return static_cast<std::uint64_t>(value);
    }
    return value.str();
}

BigInt big_from_json(const nlohmann::json& j) {
    if (j.is_number_unsigned()) return BigInt(j.get<std::uint64_t>());
    if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
    if (j.is_string()) {
        try {
            return BigInt(j.get<std::string>());
        } catch (const std::exception&) {
        }
    }
    throw error(errc::parse, "expected an integer, got " + j.dump());
}

nlohmann::json seq_to_json(std::span<const int> seq) {
    return nlohmann::json(std::vector<int>(seq.begin(), seq.end()));
}

std::vector<int> seq_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw error(errc::parse, "expected a JSON array of integers");
    std::vector<int> out;
    out.reserve(j.size());
    for (const auto& e : j) {
        if (!e.is_number_integer()) throw error(errc::parse, "non-integer entry " + e.dump());
        out.push_back(e.get<int>());
    }
    return out;
}

std::vector<int> parse_seq_line(const std::string& line) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
        throw error(errc::parse, e.what());
    }
    return seq_from_json(j);
}

}  // namespace cwsearch
