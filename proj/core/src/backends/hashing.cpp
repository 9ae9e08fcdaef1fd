#include "lmgraph/backends/hashing.hpp"

#include <cctype>

#include "lmgraph/seeding.hpp"

namespace lmgraph::backends {

HashingEmbedder::HashingEmbedder(int dimension) : dimension_(dimension) {
    if (dimension < 1) throw ConfigError("hashing embedder dimension must be >= 1");
}

EmbeddingVector HashingEmbedder::embed(const std::string& text) {
    EmbeddingVector v(static_cast<std::size_t>(dimension_), 0.0);
    std::string token;
    bool any_token = false;
    auto flush = [&] {
        if (token.empty()) return;
        any_token = true;
        v[fnv1a64(token) % static_cast<std::uint64_t>(dimension_)] += 1.0;
        token.clear();
    };
    for (unsigned char c : text) {
        if (std::isalnum(c))
            token.push_back(static_cast<char>(std::tolower(c)));
        else
            flush();
    }
    flush();

    if (!any_token) {
        v[0] = 1.0;
        return v;
    }
    normalize_in_place(v);
    return v;
}

} // namespace lmgraph::backends
