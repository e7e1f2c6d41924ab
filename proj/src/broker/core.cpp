#include "mqga/broker/core.hpp"

#include <algorithm>

#include "mqga/errors.hpp"

namespace mqga::broker {

namespace {

void check_queue_name(const std::string& name) {
    if (name.empty() || name.size() > 255)
        throw ProtocolError("bad_queue", "queue name must be 1..255 bytes");
}

} // namespace

ConnectionId Core::attach(DeliverFn deliver) {
    std::lock_guard lock(mu_);
    const ConnectionId id = next_conn_++;
    connections_[id].deliver = std::move(deliver);
    return id;
}

void Core::detach(ConnectionId conn) {
    std::lock_guard lock(mu_);
    const auto conn_it = connections_.find(conn);
    if (conn_it == connections_.end())
        return;
    for (auto& [name, q] : queues_) {
        // Collect the dying connection's unacked messages, keyed by delivery
        // tag so requeue order matches delivery order.
        std::map<std::uint64_t, Message> orphaned;
        for (std::size_t i = q.consumers.size(); i-- > 0;) {
            if (q.consumers[i].conn != conn)
                continue;
            orphaned.merge(q.consumers[i].in_flight);
            q.consumers.erase(q.consumers.begin() + static_cast<std::ptrdiff_t>(i));
            if (i < q.cursor)
                --q.cursor;
        }
        if (!q.consumers.empty())
            q.cursor %= q.consumers.size();
        else
            q.cursor = 0;
        // Requeue at the front, preserving tag order: walk tags high→low,
        // pushing each at the head, so the lowest tag ends up frontmost.
        for (auto it = orphaned.rbegin(); it != orphaned.rend(); ++it)
            q.pending.push_front(std::move(it->second));
        if (!orphaned.empty())
            dispatch(name, q);
    }
    connections_.erase(conn_it);
}

void Core::declare_queue(const std::string& name) {
    std::lock_guard lock(mu_);
    check_queue_name(name);
    queues_[name];
}

Core::Queue& Core::queue_or_declare(const std::string& name) {
    check_queue_name(name);
    return queues_[name];
}

void Core::publish(const std::string& queue, std::string body, std::string correlation_id,
                   std::string reply_to) {
    std::lock_guard lock(mu_);
    Queue& q = queue_or_declare(queue);
    q.pending.push_back(Message{std::move(body), std::move(correlation_id), std::move(reply_to)});
    dispatch(queue, q);
}

void Core::subscribe(ConnectionId conn, const std::string& queue, const std::string& consumer_id,
                     std::uint32_t prefetch) {
    std::lock_guard lock(mu_);
    if (connections_.find(conn) == connections_.end())
        throw ProtocolError("bad_connection", "subscribe on unknown connection");
    if (prefetch < 1)
        throw ProtocolError("bad_prefetch", "prefetch must be >= 1");
    if (consumer_id.empty())
        throw ProtocolError("bad_consumer", "consumer_id must be non-empty");
    Queue& q = queue_or_declare(queue);
    const bool taken = std::any_of(q.consumers.begin(), q.consumers.end(),
                                   [&](const Consumer& c) { return c.id == consumer_id; });
    if (taken)
        throw ProtocolError("duplicate_consumer",
                            "consumer '" + consumer_id + "' already subscribed to '" + queue + "'");
    q.consumers.push_back(Consumer{conn, consumer_id, prefetch, {}});
    dispatch(queue, q);
}

void Core::ack(ConnectionId conn, std::uint64_t delivery_tag) {
    std::lock_guard lock(mu_);
    const auto conn_it = connections_.find(conn);
    if (conn_it == connections_.end())
        throw ProtocolError("bad_connection", "ack on unknown connection");
    const auto tag_it = conn_it->second.tag_to_queue.find(delivery_tag);
    if (tag_it == conn_it->second.tag_to_queue.end())
        throw ProtocolError("unknown_tag",
                            "delivery tag " + std::to_string(delivery_tag) + " is not in flight");
    const std::string queue_name = tag_it->second;
    conn_it->second.tag_to_queue.erase(tag_it);

    const auto q_it = queues_.find(queue_name);
    if (q_it != queues_.end()) {
        for (Consumer& c : q_it->second.consumers) {
            if (c.conn == conn && c.in_flight.erase(delivery_tag) > 0) {
                dispatch(queue_name, q_it->second);
                return;
            }
        }
    }
    throw ProtocolError("unknown_tag",
                        "delivery tag " + std::to_string(delivery_tag) + " has no owner");
}

QueueStats Core::stats(const std::string& queue) const {
    std::lock_guard lock(mu_);
    const auto it = queues_.find(queue);
    if (it == queues_.end())
        throw ProtocolError("not_found", "queue '" + queue + "' does not exist", /*fatal=*/false);
    QueueStats s;
    s.depth = it->second.pending.size();
    s.consumer_count = static_cast<std::uint32_t>(it->second.consumers.size());
    for (const Consumer& c : it->second.consumers)
        s.in_flight_total += c.in_flight.size();
    return s;
}

void Core::dispatch(const std::string& name, Queue& q) {
    while (!q.pending.empty() && !q.consumers.empty()) {
        // Round-robin: first consumer with spare capacity, starting at the cursor.
        const std::size_t n = q.consumers.size();
        std::size_t chosen = n;
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t idx = (q.cursor + k) % n;
            if (q.consumers[idx].in_flight.size() < q.consumers[idx].prefetch) {
                chosen = idx;
                break;
            }
        }
        if (chosen == n)
            return; // everyone at capacity: message stays pending
        Consumer& consumer = q.consumers[chosen];
        Connection& conn = connections_.at(consumer.conn);

        Message msg = std::move(q.pending.front());
        q.pending.pop_front();
        const std::uint64_t tag = conn.next_tag++;
        consumer.in_flight.emplace(tag, msg);
        conn.tag_to_queue.emplace(tag, name);
        q.cursor = (chosen + 1) % n;

        if (conn.deliver)
            conn.deliver(Delivery{name, consumer.id, tag, std::move(msg.body),
                                  std::move(msg.correlation_id), std::move(msg.reply_to)});
    }
}

} // namespace mqga::broker
