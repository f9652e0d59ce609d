#include "taxoeval/remote_encoder.hpp"

#include <chrono>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "taxoeval/error.hpp"

namespace taxoeval {

using nlohmann::json;

namespace {

struct Endpoint {
    std::string origin;  // scheme://host[:port]
    std::string prefix;  // path without trailing slash
};

Endpoint split_endpoint(const std::string& url) {
    const auto scheme = url.find("://");
    if (scheme == std::string::npos) throw ValidationError("endpoint must look like http://host:port: " + url);
    if (url.compare(0, scheme, "http") != 0) throw ValidationError("only http endpoints are supported: " + url);
    const auto slash = url.find('/', scheme + 3);
    Endpoint e;
    e.origin = url.substr(0, slash);
    if (slash != std::string::npos) e.prefix = url.substr(slash);
    while (!e.prefix.empty() && e.prefix.back() == '/') e.prefix.pop_back();
    return e;
}

} // namespace

RemoteEncoder::RemoteEncoder(RemoteEncoderOptions options) : options_(std::move(options)) {
    if (options_.endpoint.empty()) throw ValidationError("remote encoder needs an endpoint");
    if (options_.model.empty()) throw ValidationError("remote encoder needs a model id");
    if (options_.max_batch == 0) throw ValidationError("max_batch must be positive");
    split_endpoint(options_.endpoint);
}

RemoteEncoder::~RemoteEncoder() = default;

std::string RemoteEncoder::identity() const { return "remote:" + options_.model; }

std::size_t RemoteEncoder::dimension() const {
    {
        std::lock_guard lock(mutex_);
        if (dimension_ != 0) return dimension_;
    }
    post_batch({"dimension probe"});
    std::lock_guard lock(mutex_);
    return dimension_;
}

std::vector<EmbeddingVector> RemoteEncoder::encode(const std::vector<std::string>& texts) const {
    std::vector<EmbeddingVector> out;
    out.reserve(texts.size());
    for (std::size_t start = 0; start < texts.size(); start += options_.max_batch) {
        const std::size_t stop = std::min(texts.size(), start + options_.max_batch);
        auto part = post_batch(std::vector<std::string>(texts.begin() + static_cast<std::ptrdiff_t>(start),
                                                        texts.begin() + static_cast<std::ptrdiff_t>(stop)));
        for (auto& v : part) out.push_back(std::move(v));
    }
    return out;
}

std::vector<EmbeddingVector> RemoteEncoder::post_batch(const std::vector<std::string>& texts) const {
    const Endpoint ep = split_endpoint(options_.endpoint);
    httplib::Client client(ep.origin);
    const auto timeout = std::chrono::milliseconds(options_.timeout_ms);
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);

    const std::string body = json{{"model", options_.model}, {"texts", texts}}.dump();

    httplib::Result res;
    std::string failure;
    for (int attempt = 0; attempt <= options_.retries; ++attempt) {
        if (attempt > 0) std::this_thread::sleep_for(std::chrono::milliseconds(100 * attempt));
        res = client.Post(ep.prefix + "/embed", body, "application/json");
        if (!res) {
            failure = httplib::to_string(res.error());
            continue;
        }
        // 503 means the model is still loading; worth another try.
        if (res->status == 503) {
            failure = "HTTP 503";
            continue;
        }
        break;
    }
    if (!res) throw TransportError("embedding service unreachable at " + options_.endpoint + ": " + failure);
    if (res->status != 200)
        throw TransportError("embedding service returned HTTP " + std::to_string(res->status) + ": " + res->body);

    json reply;
    try {
        reply = json::parse(res->body);
    } catch (const json::parse_error& e) {
        throw ProtocolError(std::string("embedding reply is not JSON: ") + e.what());
    }
    if (!reply.is_object() || !reply.contains("dimension") || !reply.contains("vectors") ||
        !reply["dimension"].is_number_integer() || !reply["vectors"].is_array())
        throw ProtocolError("embedding reply lacks \"dimension\" or \"vectors\"");

    const long dim = reply["dimension"].get<long>();
    const auto& rows = reply["vectors"];
    if (dim <= 0) throw ProtocolError("embedding reply has non-positive dimension");
    if (rows.size() != texts.size())
        throw ProtocolError("embedding reply has " + std::to_string(rows.size()) + " vectors for " +
                            std::to_string(texts.size()) + " texts");

    std::vector<EmbeddingVector> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
        if (!row.is_array() || static_cast<long>(row.size()) != dim)
            throw ProtocolError("embedding vector length does not match dimension");
        EmbeddingVector v(dim);
        for (long i = 0; i < dim; ++i) {
            if (!row[i].is_number()) throw ProtocolError("embedding vector has a non-numeric entry");
            v(i) = row[i].get<float>();
        }
        if (!v.allFinite()) throw ProtocolError("embedding vector is not finite");
        out.push_back(std::move(v));
    }

    std::lock_guard lock(mutex_);
    if (dimension_ != 0 && dimension_ != static_cast<std::size_t>(dim))
        throw ProtocolError("embedding dimension changed between calls");
    dimension_ = static_cast<std::size_t>(dim);
    return out;
}

} // namespace taxoeval
