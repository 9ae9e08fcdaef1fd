#include "lmgraph/backends/synthetic.hpp"

#include <cmath>
#include <cstring>

#include "lmgraph/seeding.hpp"

namespace lmgraph::backends {

namespace {

constexpr char kCodecPrefix[] = "SV1:";
constexpr const char* kBase64Alphabet =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

std::string base64_encode(const unsigned char* data, std::size_t size) {
    std::string out;
    out.reserve((size + 2) / 3 * 4);
    for (std::size_t k = 0; k < size; k += 3) {
        unsigned v = static_cast<unsigned>(data[k]) << 16;
        if (k + 1 < size) v |= static_cast<unsigned>(data[k + 1]) << 8;
        if (k + 2 < size) v |= static_cast<unsigned>(data[k + 2]);
        out.push_back(kBase64Alphabet[(v >> 18) & 0x3f]);
        out.push_back(kBase64Alphabet[(v >> 12) & 0x3f]);
        out.push_back(k + 1 < size ? kBase64Alphabet[(v >> 6) & 0x3f] : '=');
        out.push_back(k + 2 < size ? kBase64Alphabet[v & 0x3f] : '=');
    }
    return out;
}

int base64_value(char c) {
    if (c >= 'A' && c <= 'Z') return c - 'A';
    if (c >= 'a' && c <= 'z') return c - 'a' + 26;
    if (c >= '0' && c <= '9') return c - '0' + 52;
    if (c == '+') return 62;
    if (c == '/') return 63;
    return -1;
}

std::optional<std::vector<unsigned char>> base64_decode(std::string_view text) {
    if (text.size() % 4 != 0 || text.empty()) return std::nullopt;
    std::vector<unsigned char> out;
    out.reserve(text.size() / 4 * 3);
    for (std::size_t k = 0; k < text.size(); k += 4) {
        int pad = 0;
        unsigned v = 0;
        for (int b = 0; b < 4; ++b) {
            char c = text[k + b];
            if (c == '=' && k + 4 == text.size() && b >= 2) {
                ++pad;
                v <<= 6;
                continue;
            }
            int value = base64_value(c);
            if (value < 0 || pad > 0) return std::nullopt;
            v = (v << 6) | static_cast<unsigned>(value);
        }
        out.push_back(static_cast<unsigned char>((v >> 16) & 0xff));
        if (pad < 2) out.push_back(static_cast<unsigned char>((v >> 8) & 0xff));
        if (pad < 1) out.push_back(static_cast<unsigned char>(v & 0xff));
    }
    return out;
}

} // namespace

void SyntheticSpecialistSpec::validate() const {
    if (topic_vector.empty()) throw ConfigError("synthetic spec: topic vector is empty");
    double norm = l2_norm(topic_vector);
    if (std::fabs(norm - 1.0) > 1e-9)
        throw ConfigError("synthetic spec: topic vector must be unit norm, got " +
                          std::to_string(norm));
    if (inertia < 0.0 || inertia > 1.0) throw ConfigError("synthetic spec: inertia not in [0,1]");
    if (noise_scale < 0.0) throw ConfigError("synthetic spec: noise must be >= 0");
}

EmbeddingVector synthetic_next_state(const SyntheticSpecialistSpec& spec,
                                     const std::optional<EmbeddingVector>& partner_vector,
                                     std::uint64_t seed) {
    const EmbeddingVector& theta = spec.topic_vector;
    const EmbeddingVector& p = partner_vector ? *partner_vector : theta;
    if (p.size() != theta.size())
        throw DomainError("partner vector dimension " + std::to_string(p.size()) +
                          " does not match topic dimension " + std::to_string(theta.size()));

    double alpha = spec.inertia;
    double beta = spec.coupling();
    std::uint64_t attempt_seed = seed;
    for (int attempt = 0; attempt < 64; ++attempt, ++attempt_seed) {
        EmbeddingVector state(theta.size());
        SplitMix64 rng(attempt_seed);
        for (std::size_t k = 0; k < state.size(); ++k) {
            double noise = spec.noise_scale > 0.0 ? spec.noise_scale * rng.next_gaussian() : 0.0;
            state[k] = alpha * theta[k] + beta * p[k] + noise;
        }
        if (l2_norm(state) > 1e-12) {
            normalize_in_place(state);
            return state;
        }
    }
    throw DomainError("synthetic state mix is persistently zero");
}

std::string encode_state_text(const EmbeddingVector& state) {
    std::vector<unsigned char> bytes(state.size() * sizeof(double));
    for (std::size_t k = 0; k < state.size(); ++k) {
        std::uint64_t raw;
        static_assert(sizeof(raw) == sizeof(double));
        std::memcpy(&raw, &state[k], sizeof(raw));
        for (int b = 0; b < 8; ++b)
            bytes[k * 8 + static_cast<std::size_t>(b)] =
                static_cast<unsigned char>(raw >> (8 * b));
    }
    return kCodecPrefix + base64_encode(bytes.data(), bytes.size());
}

std::optional<EmbeddingVector> decode_state_text(const std::string& text) {
    std::string_view view(text);
    std::string_view prefix(kCodecPrefix);
    if (view.substr(0, prefix.size()) != prefix) return std::nullopt;
    auto bytes = base64_decode(view.substr(prefix.size()));
    if (!bytes || bytes->empty() || bytes->size() % sizeof(double) != 0) return std::nullopt;
    EmbeddingVector state(bytes->size() / sizeof(double));
    for (std::size_t k = 0; k < state.size(); ++k) {
        std::uint64_t raw = 0;
        for (int b = 7; b >= 0; --b)
            raw = (raw << 8) | (*bytes)[k * 8 + static_cast<std::size_t>(b)];
        std::memcpy(&state[k], &raw, sizeof(double));
        if (!std::isfinite(state[k])) return std::nullopt;
    }
    return state;
}

SyntheticChatBackend::SyntheticChatBackend(SyntheticSpecialistSpec spec)
    : spec_(std::move(spec)) {
    spec_.validate();
}

std::string SyntheticChatBackend::generate(const std::string& /*system_prompt*/,
                                           const std::vector<ChatMessage>& history,
                                           const GenerationParams& params) {
    require_chat_history(history);
    // The partner's last utterance is the trailing user message; plain text
    // (the conversation primer) decodes to nothing and leaves the agent on
    // its own topic.
    std::optional<EmbeddingVector> partner = decode_state_text(history.back().content);
    if (partner && partner->size() != spec_.topic_vector.size()) partner.reset();
    return encode_state_text(synthetic_next_state(spec_, partner, params.seed));
}

DecodingEmbedder::DecodingEmbedder(int dimension) : dimension_(dimension) {
    if (dimension < 1) throw ConfigError("decoding embedder dimension must be >= 1");
}

EmbeddingVector DecodingEmbedder::embed(const std::string& text) {
    auto decoded = decode_state_text(text);
    if (decoded && decoded->size() == static_cast<std::size_t>(dimension_) &&
        l2_norm(*decoded) > 1e-12) {
        normalize_in_place(*decoded);
        return *decoded;
    }
    EmbeddingVector fallback(static_cast<std::size_t>(dimension_), 0.0);
    fallback[0] = 1.0;
    return fallback;
}

} // namespace lmgraph::backends
