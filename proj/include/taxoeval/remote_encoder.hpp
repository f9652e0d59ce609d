#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "taxoeval/embedding.hpp"

namespace taxoeval {

struct RemoteEncoderOptions {
    /// Base URL, e.g. "http://127.0.0.1:8080". Requests go to <endpoint>/embed.
    std::string endpoint;
    std::string model;
    int timeout_ms = 30000;
    /// Extra attempts after a transport failure.
    int retries = 2;
    std::size_t max_batch = 256;
};

/// Client for the embedding service:
///   POST /embed {"model": str, "texts": [str...]} -> {"dimension": int, "vectors": [[float...]...]}
/// Unreachable service or non-200 status raises TransportError; a malformed reply
/// raises ProtocolError.
class RemoteEncoder : public Encoder {
public:
    explicit RemoteEncoder(RemoteEncoderOptions options);
    ~RemoteEncoder() override;

    std::string identity() const override;
    /// Learned from the first reply; probes the service if nothing was encoded yet.
    std::size_t dimension() const override;
    std::vector<EmbeddingVector> encode(const std::vector<std::string>& texts) const override;

    const RemoteEncoderOptions& options() const { return options_; }

private:
    std::vector<EmbeddingVector> post_batch(const std::vector<std::string>& texts) const;

    RemoteEncoderOptions options_;
    mutable std::mutex mutex_;
    mutable std::size_t dimension_ = 0;
};

/// Environment fallback for the endpoint flag.
inline constexpr const char* kEndpointEnvVar = "TAXOEVAL_EMBED_ENDPOINT";

} // namespace taxoeval
