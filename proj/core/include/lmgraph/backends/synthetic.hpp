#pragma once

#include <optional>

#include "lmgraph/backends/chat.hpp"

namespace lmgraph::backends {

// A latent specialization for a test agent: a unit topic vector the agent is
// drawn toward (inertia alpha), a complementary pull toward its partner's
// last utterance (1 - alpha), and seeded Gaussian noise.
struct SyntheticSpecialistSpec {
    EmbeddingVector topic_vector;
    double inertia = 1.0;     // alpha in [0,1]
    double noise_scale = 0.0; // sigma >= 0

    double coupling() const { return 1.0 - inertia; }
    void validate() const;
};

// normalize(alpha*theta + (1-alpha)*p + sigma*eps), p = partner (or theta when
// absent), eps seeded standard normal. A zero mix retries with seed+1.
EmbeddingVector synthetic_next_state(const SyntheticSpecialistSpec& spec,
                                     const std::optional<EmbeddingVector>& partner_vector,
                                     std::uint64_t seed);

// Text codec: "SV1:" + base64 of the raw little-endian float64 scalars, so a
// decoding embedder can invert it exactly.
std::string encode_state_text(const EmbeddingVector& state);
std::optional<EmbeddingVector> decode_state_text(const std::string& text);

// Emits its next state encoded as text. Stateless between calls: the next
// state depends only on the spec and the partner's last utterance.
class SyntheticChatBackend : public ChatBackend {
public:
    explicit SyntheticChatBackend(SyntheticSpecialistSpec spec);

    std::string generate(const std::string& system_prompt,
                         const std::vector<ChatMessage>& history,
                         const GenerationParams& params) override;

private:
    SyntheticSpecialistSpec spec_;
};

// Inverts the synthetic text codec. Text that does not carry an encoded state
// of the right dimension maps to the first basis vector, which scenario
// generation keeps orthogonal to every topic vector.
class DecodingEmbedder : public Embedder {
public:
    explicit DecodingEmbedder(int dimension);

    EmbeddingVector embed(const std::string& text) override;
    int dimension() const override { return dimension_; }

private:
    int dimension_;
};

} // namespace lmgraph::backends
