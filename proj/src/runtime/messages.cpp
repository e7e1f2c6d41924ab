#include "mqga/runtime/messages.hpp"

#include <charconv>
#include <cmath>
#include <limits>

#include "json.hpp"

#include "mqga/errors.hpp"

namespace mqga::runtime {

namespace {

using nlohmann::json;

json genome_to_json(const ga::Genome& g) {
    json j = json::object();
    if (g.kind == ga::GenomeKind::Bitstring) {
        j["kind"] = "bitstring";
        std::string bits(g.bits.size(), '0');
        for (std::size_t i = 0; i < g.bits.size(); ++i)
            if (g.bits[i])
                bits[i] = '1';
        j["bits"] = std::move(bits);
    } else {
        j["kind"] = "real_vector";
        j["reals"] = g.reals;
    }
    return j;
}

// Field access that maps every shape mismatch onto one error code so a
// malformed message never surfaces as a json exception.
struct Reader {
    const json& j;
    const char* code;

    [[noreturn]] void fail(const std::string& why) const {
        throw ProtocolError(code, why);
    }

    const json& at(const char* key) const {
        const auto it = j.find(key);
        if (it == j.end())
            fail(std::string("missing field \"") + key + "\"");
        return *it;
    }

    std::string str(const char* key) const {
        const json& v = at(key);
        if (!v.is_string())
            fail(std::string("field \"") + key + "\" must be a string");
        return v.get<std::string>();
    }

    std::uint32_t u32(const char* key) const {
        const json& v = at(key);
        if (!v.is_number_unsigned() ||
            v.get<std::uint64_t>() > std::numeric_limits<std::uint32_t>::max())
            fail(std::string("field \"") + key + "\" must be a u32");
        return static_cast<std::uint32_t>(v.get<std::uint64_t>());
    }

    std::uint64_t u64(const char* key) const {
        const json& v = at(key);
        if (!v.is_number_unsigned())
            fail(std::string("field \"") + key + "\" must be a u64");
        return v.get<std::uint64_t>();
    }

    double finite(const char* key) const {
        const json& v = at(key);
        if (!v.is_number())
            fail(std::string("field \"") + key + "\" must be a number");
        const double x = v.get<double>();
        if (!std::isfinite(x))
            fail(std::string("field \"") + key + "\" must be finite");
        return x;
    }
};

ga::Genome genome_from_json(const Reader& parent, const json& j, const char* code) {
    if (!j.is_object())
        parent.fail("genome must be an object");
    const Reader r{j, code};
    ga::Genome g;
    const std::string kind = r.str("kind");
    if (kind == "bitstring") {
        g.kind = ga::GenomeKind::Bitstring;
        const std::string bits = r.str("bits");
        if (bits.empty())
            r.fail("genome is empty");
        g.bits.reserve(bits.size());
        for (const char c : bits) {
            if (c != '0' && c != '1')
                r.fail("bits must contain only 0 and 1");
            g.bits.push_back(c == '1');
        }
    } else if (kind == "real_vector") {
        g.kind = ga::GenomeKind::RealVector;
        const json& reals = r.at("reals");
        if (!reals.is_array() || reals.empty())
            r.fail("reals must be a non-empty array");
        g.reals.reserve(reals.size());
        for (const auto& v : reals) {
            if (!v.is_number())
                r.fail("reals must contain numbers");
            const double x = v.get<double>();
            if (!std::isfinite(x))
                r.fail("reals must be finite");
            g.reals.push_back(x);
        }
    } else {
        r.fail("unknown genome kind \"" + kind + "\"");
    }
    return g;
}

json parse_or(const std::string& text, const char* code) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded())
        throw ProtocolError(code, "body is not valid JSON");
    if (!j.is_object())
        throw ProtocolError(code, "body must be a JSON object");
    return j;
}

} // namespace

std::string encode_request(const EvalRequest& req) {
    json j = json::object();
    j["type"] = "eval_request";
    j["run_id"] = req.run_id;
    j["generation"] = req.generation;
    j["index"] = req.index;
    j["genome"] = genome_to_json(req.genome);
    j["problem_id"] = req.problem_id;
    j["problem_params"] = req.problem_params;
    j["attempt"] = req.attempt;
    return j.dump();
}

EvalRequest decode_request(const std::string& text) {
    constexpr const char* code = "bad_request";
    const json j = parse_or(text, code);
    const Reader r{j, code};
    if (r.str("type") != "eval_request")
        r.fail("type must be \"eval_request\"");
    EvalRequest req;
    req.run_id = r.str("run_id");
    req.generation = r.u32("generation");
    req.index = r.u32("index");
    req.genome = genome_from_json(r, r.at("genome"), code);
    req.problem_id = r.str("problem_id");
    const json& params = r.at("problem_params");
    if (!params.is_object())
        r.fail("problem_params must be an object");
    for (const auto& [key, value] : params.items()) {
        if (!value.is_number())
            r.fail("problem_params values must be numbers");
        req.problem_params[key] = value.get<double>();
    }
    req.attempt = r.u32("attempt");
    if (req.attempt < 1)
        r.fail("attempt must be >= 1");
    return req;
}

std::string encode_response(const EvalResponse& resp) {
    json j = json::object();
    j["type"] = "eval_response";
    j["run_id"] = resp.run_id;
    j["generation"] = resp.generation;
    j["index"] = resp.index;
    j["fitness"] = resp.fitness;
    j["worker_id"] = resp.worker_id;
    j["eval_us"] = static_cast<std::uint64_t>(resp.eval_duration.count());
    j["attempt"] = resp.attempt;
    return j.dump();
}

EvalResponse decode_response(const std::string& text) {
    constexpr const char* code = "bad_response";
    const json j = parse_or(text, code);
    const Reader r{j, code};
    if (r.str("type") != "eval_response")
        r.fail("type must be \"eval_response\"");
    EvalResponse resp;
    resp.run_id = r.str("run_id");
    resp.generation = r.u32("generation");
    resp.index = r.u32("index");
    resp.fitness = r.finite("fitness");
    resp.worker_id = r.str("worker_id");
    resp.eval_duration = std::chrono::microseconds(r.u64("eval_us"));
    resp.attempt = r.u32("attempt");
    if (resp.attempt < 1)
        r.fail("attempt must be >= 1");
    return resp;
}

std::string request_queue(const std::string& run_id) {
    return "ga.request." + run_id;
}

std::string response_queue(const std::string& run_id) {
    return "ga.response." + run_id;
}

std::string make_correlation(const std::string& run_id, std::uint32_t generation,
                             std::uint32_t index) {
    if (run_id.find(':') != std::string::npos)
        throw ConfigError("run_id must not contain ':'");
    return run_id + ':' + std::to_string(generation) + ':' + std::to_string(index);
}

namespace {

std::uint32_t parse_u32_field(std::string_view s) {
    std::uint32_t value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ProtocolError("bad_correlation", "correlation id needs numeric fields");
    return value;
}

} // namespace

Correlation parse_correlation(const std::string& s) {
    const auto first = s.find(':');
    const auto second = first == std::string::npos ? std::string::npos : s.find(':', first + 1);
    if (second == std::string::npos || s.find(':', second + 1) != std::string::npos)
        throw ProtocolError("bad_correlation",
                            "expected \"run_id:generation:index\", got \"" + s + "\"");
    Correlation c;
    c.run_id = s.substr(0, first);
    c.generation = parse_u32_field(std::string_view(s).substr(first + 1, second - first - 1));
    c.index = parse_u32_field(std::string_view(s).substr(second + 1));
    return c;
}

} // namespace mqga::runtime
