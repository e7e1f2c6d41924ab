#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <string>

#include "mqga/ga/genome.hpp"

namespace mqga::runtime {

// One fitness evaluation to perform. The genome travels inline; workers
// resolve problem_id against their local registry.
struct EvalRequest {
    std::string run_id;
    std::uint32_t generation = 0;
    std::uint32_t index = 0; // individual id within the generation
    ga::Genome genome;
    std::string problem_id;
    std::map<std::string, double> problem_params;
    std::uint32_t attempt = 1; // bumped on every republish

    bool operator==(const EvalRequest&) const = default;
};

struct EvalResponse {
    std::string run_id;
    std::uint32_t generation = 0;
    std::uint32_t index = 0;
    double fitness = 0.0;
    std::string worker_id;
    std::chrono::microseconds eval_duration{0};
    std::uint32_t attempt = 1;

    bool operator==(const EvalResponse&) const = default;
};

// JSON text bodies. decode_* throw ProtocolError ("bad_request" /
// "bad_response") on anything malformed; decode(encode(x)) == x.
std::string encode_request(const EvalRequest& req);
EvalRequest decode_request(const std::string& text);
std::string encode_response(const EvalResponse& resp);
EvalResponse decode_response(const std::string& text);

// Queue naming; one pair per run so concurrent runs share a broker.
std::string request_queue(const std::string& run_id);
std::string response_queue(const std::string& run_id);

struct Correlation {
    std::string run_id; // must not contain ':'
    std::uint32_t generation = 0;
    std::uint32_t index = 0;

    bool operator==(const Correlation&) const = default;
};

// "run_id:generation:index". parse(format(x)) == x; parse throws
// ProtocolError("bad_correlation") on malformed input.
std::string make_correlation(const std::string& run_id, std::uint32_t generation,
                             std::uint32_t index);
Correlation parse_correlation(const std::string& s);

} // namespace mqga::runtime
