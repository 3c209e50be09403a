#include "liniso/channel.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <array>
#include <cerrno>
#include <condition_variable>
#include <cstring>
#include <deque>
#include <mutex>
#include <thread>

#include "liniso/errors.hpp"

namespace liniso {

const char* to_string(Party p) { return p == Party::Alice ? "alice" : "bob"; }
const char* to_string(Direction d) { return d == Direction::AliceToBob ? "A->B" : "B->A"; }

namespace {

Direction outgoing(Party p) {
  return p == Party::Alice ? Direction::AliceToBob : Direction::BobToAlice;
}

struct SharedQueues {
  std::mutex mu;
  std::condition_variable cv;
  std::array<std::deque<BitString>, 2> inbox;  // indexed by receiving party
  std::array<bool, 2> closed{false, false};
};

int index(Party p) { return p == Party::Alice ? 0 : 1; }

class MemoryEndpoint : public Endpoint {
 public:
  MemoryEndpoint(Party self, std::shared_ptr<SharedQueues> q) : Endpoint(self), q_(std::move(q)) {}
  ~MemoryEndpoint() override { close(); }

  void close() override {
    std::lock_guard lock(q_->mu);
    q_->closed[index(self())] = true;
    q_->cv.notify_all();
  }

 protected:
  std::uint64_t write_frame(const BitString& bits) override {
    std::lock_guard lock(q_->mu);
    if (q_->closed[index(peer(self()))]) throw ProtocolFault("peer closed the channel");
    q_->inbox[index(peer(self()))].push_back(bits);
    q_->cv.notify_all();
    return 0;
  }

  BitString read_frame() override {
    std::unique_lock lock(q_->mu);
    auto& box = q_->inbox[index(self())];
    q_->cv.wait(lock, [&] { return !box.empty() || q_->closed[index(peer(self()))]; });
    if (box.empty()) throw ProtocolFault("peer closed the channel");
    BitString b = std::move(box.front());
    box.pop_front();
    return b;
  }

 private:
  std::shared_ptr<SharedQueues> q_;
};

void write_all(int fd, const std::uint8_t* data, std::size_t len) {
  while (len) {
    ssize_t k = ::send(fd, data, len, MSG_NOSIGNAL);
    if (k < 0) {
      if (errno == EINTR) continue;
      throw ProtocolFault(std::string("socket send failed: ") + std::strerror(errno));
    }
    data += k;
    len -= static_cast<std::size_t>(k);
  }
}

void read_all(int fd, std::uint8_t* data, std::size_t len) {
  while (len) {
    ssize_t k = ::recv(fd, data, len, 0);
    if (k == 0) throw ProtocolFault("peer closed the connection");
    if (k < 0) {
      if (errno == EINTR) continue;
      throw ProtocolFault(std::string("socket recv failed: ") + std::strerror(errno));
    }
    data += k;
    len -= static_cast<std::size_t>(k);
  }
}

addrinfo* resolve(const std::string& host, std::uint16_t port, bool passive) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  if (passive) hints.ai_flags = AI_PASSIVE;
  addrinfo* res = nullptr;
  std::string service = std::to_string(port);
  int rc = ::getaddrinfo(host.empty() ? nullptr : host.c_str(), service.c_str(), &hints, &res);
  if (rc != 0) throw ProtocolFault("cannot resolve " + host + ": " + ::gai_strerror(rc));
  return res;
}

void set_nodelay(int fd) {
  int one = 1;
  ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
}

int bind_listener(const std::string& host, std::uint16_t port) {
  addrinfo* res = resolve(host, port, true);
  int fd = -1;
  for (addrinfo* p = res; p; p = p->ai_next) {
    fd = ::socket(p->ai_family, p->ai_socktype, p->ai_protocol);
    if (fd < 0) continue;
    int one = 1;
    ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
    if (::bind(fd, p->ai_addr, p->ai_addrlen) == 0 && ::listen(fd, 1) == 0) break;
    ::close(fd);
    fd = -1;
  }
  ::freeaddrinfo(res);
  if (fd < 0) throw ProtocolFault("cannot listen on " + host + ":" + std::to_string(port));
  return fd;
}

int accept_one(int listener) {
  int fd;
  do {
    fd = ::accept(listener, nullptr, nullptr);
  } while (fd < 0 && errno == EINTR);
  if (fd < 0) throw ProtocolFault(std::string("accept failed: ") + std::strerror(errno));
  set_nodelay(fd);
  return fd;
}

int connect_to(const std::string& host, std::uint16_t port) {
  addrinfo* res = resolve(host, port, false);
  int fd = -1;
  for (addrinfo* p = res; p; p = p->ai_next) {
    fd = ::socket(p->ai_family, p->ai_socktype, p->ai_protocol);
    if (fd < 0) continue;
    if (::connect(fd, p->ai_addr, p->ai_addrlen) == 0) break;
    ::close(fd);
    fd = -1;
  }
  ::freeaddrinfo(res);
  if (fd < 0) throw ProtocolFault("cannot connect to " + host + ":" + std::to_string(port));
  set_nodelay(fd);
  return fd;
}

std::uint16_t bound_port(int fd) {
  sockaddr_storage addr{};
  socklen_t len = sizeof addr;
  ::getsockname(fd, reinterpret_cast<sockaddr*>(&addr), &len);
  if (addr.ss_family == AF_INET6) return ntohs(reinterpret_cast<sockaddr_in6*>(&addr)->sin6_port);
  return ntohs(reinterpret_cast<sockaddr_in*>(&addr)->sin_port);
}

}  // namespace

void Endpoint::send(const BitString& bits) {
  std::uint64_t framing = write_frame(bits);
  counters_.payload_bits_sent += bits.size();
  counters_.framing_bits_sent += framing;
  counters_.wire_bits_sent += bits.size() + framing;
  ++counters_.messages_sent;
  log_.push_back({outgoing(self_), bits});
}

BitString Endpoint::recv() {
  BitString bits = read_frame();
  counters_.payload_bits_received += bits.size();
  ++counters_.messages_received;
  log_.push_back({outgoing(peer(self_)), bits});
  return bits;
}

EndpointPair make_memory_channel() {
  auto q = std::make_shared<SharedQueues>();
  return {std::make_unique<MemoryEndpoint>(Party::Alice, q),
          std::make_unique<MemoryEndpoint>(Party::Bob, q)};
}

TcpEndpoint::~TcpEndpoint() { close(); }

void TcpEndpoint::close() {
  if (fd_ >= 0) {
    ::shutdown(fd_, SHUT_RDWR);
    ::close(fd_);
    fd_ = -1;
  }
}

std::unique_ptr<TcpEndpoint> TcpEndpoint::listen(const std::string& host, std::uint16_t port,
                                                 Party self) {
  int listener = bind_listener(host, port);
  int fd;
  try {
    fd = accept_one(listener);
  } catch (...) {
    ::close(listener);
    throw;
  }
  ::close(listener);
  return std::unique_ptr<TcpEndpoint>(new TcpEndpoint(fd, self));
}

std::unique_ptr<TcpEndpoint> TcpEndpoint::connect(const std::string& host, std::uint16_t port,
                                                  Party self) {
  return std::unique_ptr<TcpEndpoint>(new TcpEndpoint(connect_to(host, port), self));
}

std::uint64_t TcpEndpoint::write_frame(const BitString& bits) {
  if (fd_ < 0) throw ProtocolFault("socket is closed");
  if (bits.size() > kMaxFrameBits) throw ProtocolFault("frame too large");
  std::uint32_t len = static_cast<std::uint32_t>(bits.size());
  std::vector<std::uint8_t> frame = {static_cast<std::uint8_t>(len >> 24),
                                     static_cast<std::uint8_t>(len >> 16),
                                     static_cast<std::uint8_t>(len >> 8),
                                     static_cast<std::uint8_t>(len)};
  auto payload = bits.to_bytes();
  frame.insert(frame.end(), payload.begin(), payload.end());
  write_all(fd_, frame.data(), frame.size());
  return 8 * frame.size() - bits.size();
}

BitString TcpEndpoint::read_frame() {
  if (fd_ < 0) throw ProtocolFault("socket is closed");
  std::array<std::uint8_t, 4> header{};
  read_all(fd_, header.data(), header.size());
  std::uint32_t len = (std::uint32_t{header[0]} << 24) | (std::uint32_t{header[1]} << 16) |
                      (std::uint32_t{header[2]} << 8) | std::uint32_t{header[3]};
  if (len > kMaxFrameBits) throw ProtocolFault("incoming frame length exceeds limit");
  std::vector<std::uint8_t> payload((len + 7) / 8);
  read_all(fd_, payload.data(), payload.size());
  if (len % 8 && (payload.back() & (0xffu >> (len % 8))))
    throw ProtocolFault("nonzero pad bits in frame");
  return BitString::from_bytes(payload, len);
}

EndpointPair make_loopback_tcp_channel() {
  int listener = bind_listener("127.0.0.1", 0);
  std::uint16_t port = bound_port(listener);
  int client = -1;
  std::exception_ptr error;
  std::thread connector([&] {
    try {
      client = connect_to("127.0.0.1", port);
    } catch (...) {
      error = std::current_exception();
    }
  });
  int server = -1;
  try {
    server = accept_one(listener);
  } catch (...) {
    connector.join();
    ::close(listener);
    throw;
  }
  connector.join();
  ::close(listener);
  if (error) {
    ::close(server);
    std::rethrow_exception(error);
  }
  return {std::unique_ptr<Endpoint>(new TcpEndpoint(server, Party::Alice)),
          std::unique_ptr<Endpoint>(new TcpEndpoint(client, Party::Bob))};
}

std::pair<std::string, std::uint16_t> parse_host_port(const std::string& text) {
  auto colon = text.rfind(':');
  if (colon == std::string::npos || colon + 1 == text.size())
    throw ContractViolation("expected host:port, got '" + text + "'");
  std::string host = text.substr(0, colon);
  if (host.size() >= 2 && host.front() == '[' && host.back() == ']') host = host.substr(1, host.size() - 2);
  unsigned long port = 0;
  try {
    std::size_t used = 0;
    port = std::stoul(text.substr(colon + 1), &used);
    if (used != text.size() - colon - 1) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw ContractViolation("bad port in '" + text + "'");
  }
  if (port > 65535) throw ContractViolation("port out of range in '" + text + "'");
  return {host, static_cast<std::uint16_t>(port)};
}

}  // namespace liniso
