#pragma once

#include "lmgraph/backends/chat.hpp"

namespace lmgraph::backends {

// Feature-hashing embedder: lowercased alphanumeric tokens are counted into d
// buckets and the counts L2-normalized. Order-insensitive by construction.
// Text with no tokens maps to the first basis vector.
class HashingEmbedder : public Embedder {
public:
    explicit HashingEmbedder(int dimension);

    EmbeddingVector embed(const std::string& text) override;
    int dimension() const override { return dimension_; }

private:
    int dimension_;
};

} // namespace lmgraph::backends
