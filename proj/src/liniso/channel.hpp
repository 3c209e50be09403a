#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "liniso/bits.hpp"

namespace liniso {

enum class Party { Alice, Bob };
enum class Direction { AliceToBob, BobToAlice };

inline Party peer(Party p) { return p == Party::Alice ? Party::Bob : Party::Alice; }
const char* to_string(Party p);
const char* to_string(Direction d);  // "A->B" / "B->A"

struct Message {
  Direction dir;
  BitString bits;
  friend bool operator==(const Message&, const Message&) = default;
};

struct TransportCounters {
  std::uint64_t payload_bits_sent = 0;
  std::uint64_t payload_bits_received = 0;
  std::uint64_t framing_bits_sent = 0;  // headers and byte padding, never in the protocol tally
  std::uint64_t wire_bits_sent = 0;     // what actually left this endpoint
  std::uint64_t messages_sent = 0;
  std::uint64_t messages_received = 0;
};

// One party's end of a two-party bit channel. Every message is logged and
// counted exactly once on each side.
class Endpoint {
 public:
  explicit Endpoint(Party self) : self_(self) {}
  virtual ~Endpoint() = default;
  Endpoint(const Endpoint&) = delete;
  Endpoint& operator=(const Endpoint&) = delete;

  void send(const BitString& bits);
  BitString recv();  // throws ProtocolFault if the peer hung up
  virtual void close() = 0;

  Party self() const { return self_; }
  const std::vector<Message>& log() const { return log_; }
  const TransportCounters& counters() const { return counters_; }

 protected:
  // Returns the framing overhead in bits for this frame.
  virtual std::uint64_t write_frame(const BitString& bits) = 0;
  virtual BitString read_frame() = 0;

 private:
  Party self_;
  std::vector<Message> log_;
  TransportCounters counters_;
};

using EndpointPair = std::pair<std::unique_ptr<Endpoint>, std::unique_ptr<Endpoint>>;

// Queue pair inside one process; no framing overhead.
EndpointPair make_memory_channel();

// Frames are a 32-bit big-endian bit length followed by the payload packed
// MSB-first into bytes with zero pad bits.
class TcpEndpoint : public Endpoint {
 public:
  ~TcpEndpoint() override;
  void close() override;

  // Blocks until one peer connects.
  static std::unique_ptr<TcpEndpoint> listen(const std::string& host, std::uint16_t port,
                                             Party self);
  static std::unique_ptr<TcpEndpoint> connect(const std::string& host, std::uint16_t port,
                                              Party self);

  static constexpr std::uint32_t kMaxFrameBits = 1u << 30;

 protected:
  std::uint64_t write_frame(const BitString& bits) override;
  BitString read_frame() override;

 private:
  TcpEndpoint(int fd, Party self) : Endpoint(self), fd_(fd) {}
  friend EndpointPair make_loopback_tcp_channel();

  int fd_;
};

// Alice listens on an ephemeral loopback port and Bob connects to it.
EndpointPair make_loopback_tcp_channel();

// "host:port"
std::pair<std::string, std::uint16_t> parse_host_port(const std::string& text);

}  // namespace liniso
