#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <vector>

namespace mqga::broker {

using ConnectionId = std::uint64_t;

struct Delivery {
    std::string queue;
    std::string consumer_id;
    std::uint64_t delivery_tag = 0;
    std::string body;
    std::string correlation_id;
    std::string reply_to;
};

struct QueueStats {
    std::uint64_t depth = 0;
    std::uint32_t consumer_count = 0;
    std::uint64_t in_flight_total = 0;
};

// Called with the broker lock held: must be quick and must not call back
// into the Core. Server sessions use it to enqueue an outbound DELIVER.
using DeliverFn = std::function<void(const Delivery&)>;

// In-memory queue engine: named FIFO queues, round-robin dispatch across
// consumers bounded by per-consumer prefetch, explicit acks, and requeue of
// unacked messages to the FRONT of the queue when a connection goes away.
//
// A message is always in exactly one place: pending, in flight with a single
// consumer, or gone after its ack. All operations are serialized by one lock,
// so per-queue mutation order is a total order.
class Core {
  public:
    ConnectionId attach(DeliverFn deliver);

    // Removes the connection's consumers from every queue and requeues their
    // unacked messages at the front of pending, in delivery-tag order.
    // Unknown or already-detached ids are ignored.
    void detach(ConnectionId conn);

    // Idempotent. Name must be non-empty and at most 255 bytes, otherwise
    // ProtocolError("bad_queue").
    void declare_queue(const std::string& name);

    // Appends to pending and dispatches immediately. Auto-declares.
    void publish(const std::string& queue, std::string body, std::string correlation_id,
                 std::string reply_to);

    // Adds the consumer to the queue's ring and starts backlog dispatch.
    // Auto-declares. prefetch must be >= 1 (ProtocolError "bad_prefetch");
    // consumer_id must be unique on the queue (ProtocolError "duplicate_consumer").
    void subscribe(ConnectionId conn, const std::string& queue, const std::string& consumer_id,
                   std::uint32_t prefetch);

    // Discards the message permanently and frees the consumer slot.
    // Unknown tags are a connection fault: ProtocolError("unknown_tag").
    void ack(ConnectionId conn, std::uint64_t delivery_tag);

    // Throws ProtocolError("not_found", fatal=false) for unknown queues.
    QueueStats stats(const std::string& queue) const;

  private:
    struct Message {
        std::string body;
        std::string correlation_id;
        std::string reply_to;
    };

    struct Consumer {
        ConnectionId conn = 0;
        std::string id;
        std::uint32_t prefetch = 1;
        std::map<std::uint64_t, Message> in_flight; // delivery_tag → message
    };

    struct Queue {
        std::deque<Message> pending;
        std::vector<Consumer> consumers; // dispatch ring, subscription order
        std::size_t cursor = 0;          // next ring index to try
    };

    struct Connection {
        DeliverFn deliver;
        std::uint64_t next_tag = 1;
        std::map<std::uint64_t, std::string> tag_to_queue;
    };

    Queue& queue_or_declare(const std::string& name);
    void dispatch(const std::string& name, Queue& q);

    mutable std::mutex mu_;
    std::map<std::string, Queue> queues_;
    std::map<ConnectionId, Connection> connections_;
    ConnectionId next_conn_ = 1;
};

} // namespace mqga::broker
