#include "cocite/types.hpp"

#include <algorithm>
#include <cctype>

namespace cocite {

std::optional<Method> parse_method(std::string_view name)
{
    std::string key;
    for (char c : name) {
        if (c != '_' && c != '-' && c != ' ') {
            key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        }
    }
    if (key == "cn" || key == "commonneighbors" || key == "commonneighbours") {
        return Method::CN;
    }
    if (key == "aa" || key == "adamicadar") {
        return Method::AA;
    }
    if (key == "degree" || key == "dg") {
        return Method::Degree;
    }
    if (key == "random") {
        return Method::Random;
    }
    if (key == "bm25") {
        return Method::BM25;
    }
    return std::nullopt;
}

} // namespace cocite
