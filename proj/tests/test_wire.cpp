#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include "mqga/errors.hpp"
#include "mqga/wire/base64.hpp"
#include "mqga/wire/command.hpp"
#include "mqga/wire/frame.hpp"

using namespace mqga;
using namespace mqga::wire;

TEST(Base64, Rfc4648Vectors) {
    EXPECT_EQ(base64_encode(""), "");
    EXPECT_EQ(base64_encode("f"), "Zg==");
    EXPECT_EQ(base64_encode("fo"), "Zm8=");
    EXPECT_EQ(base64_encode("foo"), "Zm9v");
    EXPECT_EQ(base64_encode("foob"), "Zm9vYg==");
    EXPECT_EQ(base64_encode("fooba"), "Zm9vYmE=");
    EXPECT_EQ(base64_encode("foobar"), "Zm9vYmFy");
}

TEST(Base64, BinaryRoundTrip) {
    std::string bytes;
    for (int i = 0; i < 256; ++i)
        bytes.push_back(static_cast<char>(i));
    EXPECT_EQ(base64_decode(base64_encode(bytes)), bytes);
}

TEST(Base64, RandomRoundTrip) {
    std::mt19937 gen(1234);
    for (int round = 0; round < 200; ++round) {
        std::string bytes(gen() % 100, '\0');
        for (auto& c : bytes)
            c = static_cast<char>(gen() & 0xff);
        EXPECT_EQ(base64_decode(base64_encode(bytes)), bytes);
    }
}

TEST(Base64, RejectsBadInput) {
    EXPECT_THROW(base64_decode("A"), ProtocolError);    // bad length
    EXPECT_THROW(base64_decode("A==="), ProtocolError); // bad padding
    EXPECT_THROW(base64_decode("Zg=a"), ProtocolError); // data after padding
    EXPECT_THROW(base64_decode("Z!=="), ProtocolError); // outside alphabet
    try {
        base64_decode("####");
        FAIL() << "expected ProtocolError";
    } catch (const ProtocolError& e) {
        EXPECT_EQ(e.code(), "bad_base64");
    }
}

TEST(Command, OpNamesRoundTrip) {
    for (const Op op : {Op::Hello, Op::Declare, Op::Publish, Op::Subscribe, Op::Ack, Op::Deliver,
                        Op::Ok, Op::Err, Op::Stats, Op::StatsReply, Op::Close}) {
        const auto back = op_from_name(op_name(op));
        ASSERT_TRUE(back.has_value());
        EXPECT_EQ(*back, op);
    }
    EXPECT_FALSE(op_from_name("NOPE").has_value());
}

TEST(Command, DefaultsAreOmitted) {
    Command ok;
    ok.op = Op::Ok;
    EXPECT_EQ(encode_payload(ok), R"({"op":"OK"})");
}

TEST(Command, PublishRoundTripWithBinaryBody) {
    Command cmd;
    cmd.op = Op::Publish;
    cmd.queue = "ga.request.r1";
    cmd.body = std::string("\x00\x01\xffhello", 8);
    cmd.correlation_id = "r1:3:7";
    cmd.reply_to = "ga.response.r1";
    const Command back = decode_payload(encode_payload(cmd));
    EXPECT_EQ(back, cmd);
}

TEST(Command, HelloCarriesVersion) {
    Command hello;
    hello.op = Op::Hello;
    hello.role = "worker";
    hello.protocol_version = kProtocolVersion;
    const Command back = decode_payload(encode_payload(hello));
    EXPECT_EQ(back.protocol_version, 1u);
    EXPECT_EQ(back.role, "worker");
}

TEST(Command, DecodeRejectsMalformed) {
    const auto code_of = [](const std::string& text) {
        try {
            decode_payload(text);
            return std::string("(no error)");
        } catch (const ProtocolError& e) {
            return e.code();
        }
    };
    EXPECT_EQ(code_of("not json"), "bad_payload");
    EXPECT_EQ(code_of("[1,2,3]"), "bad_payload");
    EXPECT_EQ(code_of("{}"), "bad_payload");                      // missing op
    EXPECT_EQ(code_of(R"({"op":"FROBNICATE"})"), "bad_op");       // unknown op
    EXPECT_EQ(code_of(R"({"op":42})"), "bad_payload");            // wrong type
    EXPECT_EQ(code_of(R"({"op":"PUBLISH","queue":7})"), "bad_payload");
    EXPECT_EQ(code_of(R"({"op":"PUBLISH","body":"@@@"})"), "bad_base64");
}

TEST(Command, ParseErrorNamesByteOffset) {
    try {
        decode_payload(R"({"op": )");
        FAIL() << "expected ProtocolError";
    } catch (const ProtocolError& e) {
        EXPECT_NE(std::string(e.what()).find("byte"), std::string::npos);
    }
}

TEST(Frame, LengthPrefixIsBigEndian) {
    Command ok;
    ok.op = Op::Ok;
    const std::string frame = encode_frame(ok);
    const std::string payload = encode_payload(ok);
    ASSERT_EQ(frame.size(), payload.size() + 4);
    const auto b = [&](int i) { return static_cast<unsigned char>(frame[i]); };
    const std::size_t n = (std::size_t(b(0)) << 24) | (std::size_t(b(1)) << 16) |
                          (std::size_t(b(2)) << 8) | std::size_t(b(3));
    EXPECT_EQ(n, payload.size());
    EXPECT_EQ(frame.substr(4), payload);
}

TEST(Frame, DecoderHandlesByteByByteDelivery) {
    Command cmd;
    cmd.op = Op::Deliver;
    cmd.queue = "q";
    cmd.consumer_id = "c1";
    cmd.delivery_tag = 99;
    cmd.body = "payload";
    const std::string frame = encode_frame(cmd);

    FrameDecoder dec;
    for (std::size_t i = 0; i + 1 < frame.size(); ++i) {
        dec.feed(frame.substr(i, 1));
        EXPECT_FALSE(dec.next().has_value());
    }
    dec.feed(frame.substr(frame.size() - 1));
    const auto got = dec.next();
    ASSERT_TRUE(got.has_value());
    EXPECT_EQ(*got, cmd);
    EXPECT_EQ(dec.buffered(), 0u);
}

TEST(Frame, DecoderHandlesCoalescedFrames) {
    Command a;
    a.op = Op::Declare;
    a.queue = "one";
    Command b;
    b.op = Op::Ack;
    b.delivery_tag = 7;
    FrameDecoder dec;
    dec.feed(encode_frame(a) + encode_frame(b));
    auto first = dec.next();
    auto second = dec.next();
    ASSERT_TRUE(first && second);
    EXPECT_EQ(*first, a);
    EXPECT_EQ(*second, b);
    EXPECT_FALSE(dec.next().has_value());
}

TEST(Frame, OversizedLengthRejectedFromPrefixAlone) {
    FrameDecoder dec;
    dec.feed(std::string("\xff\xff\xff\xff", 4));
    try {
        dec.next();
        FAIL() << "expected ProtocolError";
    } catch (const ProtocolError& e) {
        EXPECT_EQ(e.code(), "frame_too_large");
    }
}

TEST(Frame, EncodeRejectsOversizedBody) {
    Command cmd;
    cmd.op = Op::Publish;
    cmd.queue = "q";
    cmd.body.assign(kMaxFrameBytes, 'x'); // base64 expansion pushes it over
    EXPECT_THROW(encode_frame(cmd), ProtocolError);
}

namespace {

std::string random_string(std::mt19937& gen, std::size_t max_len, bool binary) {
    std::string s(gen() % max_len, '\0');
    const std::string alphabet = "abcdefghijklmnopqrstuvwxyz0123456789._-";
    for (auto& c : s)
        c = binary ? static_cast<char>(gen() & 0xff) : alphabet[gen() % alphabet.size()];
    return s;
}

Command random_command(std::mt19937& gen) {
    static const Op ops[] = {Op::Hello, Op::Declare, Op::Publish, Op::Subscribe, Op::Ack,
                             Op::Deliver, Op::Ok, Op::Err, Op::Stats, Op::StatsReply, Op::Close};
    Command cmd;
    cmd.op = ops[gen() % std::size(ops)];
    switch (cmd.op) {
    case Op::Hello:
        cmd.role = random_string(gen, 12, false);
        cmd.protocol_version = gen() % 3;
        break;
    case Op::Declare:
    case Op::Stats:
        cmd.queue = random_string(gen, 40, false);
        break;
    case Op::Publish:
        cmd.queue = random_string(gen, 40, false);
        cmd.body = random_string(gen, 2000, true);
        cmd.correlation_id = random_string(gen, 30, false);
        cmd.reply_to = random_string(gen, 30, false);
        break;
    case Op::Subscribe:
        cmd.queue = random_string(gen, 40, false);
        cmd.consumer_id = random_string(gen, 20, false);
        cmd.prefetch = 1 + gen() % 64;
        break;
    case Op::Ack:
        cmd.delivery_tag = gen();
        break;
    case Op::Deliver:
        cmd.queue = random_string(gen, 40, false);
        cmd.consumer_id = random_string(gen, 20, false);
        cmd.delivery_tag = gen();
        cmd.body = random_string(gen, 2000, true);
        cmd.correlation_id = random_string(gen, 30, false);
        cmd.reply_to = random_string(gen, 30, false);
        break;
    case Op::Err:
        cmd.code = random_string(gen, 16, false);
        cmd.message = random_string(gen, 60, false);
        break;
    case Op::StatsReply:
        cmd.queue = random_string(gen, 40, false);
        cmd.depth = gen();
        cmd.consumer_count = gen() % 100;
        cmd.in_flight = gen() % 1000;
        break;
    case Op::Ok:
    case Op::Close:
        break;
    }
    return cmd;
}

} // namespace

// Streams of random commands survive arbitrary chunk partitioning unchanged.
TEST(Frame, RandomizedRoundTripUnderChunking) {
    std::mt19937 gen(99);
    for (int round = 0; round < 50; ++round) {
        std::vector<Command> sent;
        std::string stream;
        const int count = 1 + gen() % 20;
        for (int i = 0; i < count; ++i) {
            sent.push_back(random_command(gen));
            stream += encode_frame(sent.back());
        }

        FrameDecoder dec;
        std::vector<Command> got;
        std::size_t pos = 0;
        while (pos < stream.size()) {
            const std::size_t chunk = 1 + gen() % 97;
            dec.feed(stream.substr(pos, chunk));
            pos += chunk;
            while (auto cmd = dec.next())
                got.push_back(std::move(*cmd));
        }
        ASSERT_EQ(got.size(), sent.size());
        for (std::size_t i = 0; i < sent.size(); ++i)
            EXPECT_EQ(got[i], sent[i]) << "round " << round << " command " << i;
        EXPECT_EQ(dec.buffered(), 0u);
    }
}
