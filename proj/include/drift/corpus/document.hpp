#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace drift::corpus {

struct RawDocument {
    std::string id;
    std::string url;
    std::string submitted;  // calendar date, "YYYY-MM-DD" or any string with a leading year
    std::string title;
    std::vector<std::string> authors;
    std::string abstract;
};

// Leading 4-digit year of a date string; nullopt when the field does not start with one.
inline std::optional<int> leading_year(std::string_view date) {
    std::size_t i = 0;
    while (i < date.size() && std::isspace(static_cast<unsigned char>(date[i])))
        ++i;
    if (date.size() < i + 4)
        return std::nullopt;
    int year = 0;
    for (std::size_t k = i; k < i + 4; ++k) {
        if (!std::isdigit(static_cast<unsigned char>(date[k])))
            return std::nullopt;
        year = year * 10 + (date[k] - '0');
    }
    if (date.size() > i + 4 && std::isdigit(static_cast<unsigned char>(date[i + 4])))
        return std::nullopt;
    return year;
}

}  // namespace drift::corpus
