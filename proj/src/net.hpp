#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "result.hpp"

namespace qcss::net {

struct Endpoint {
  std::uint32_t addr = 0;  // host byte order
  std::uint16_t port = 0;

  bool operator==(const Endpoint&) const = default;
  bool operator<(const Endpoint& o) const {
    return addr != o.addr ? addr < o.addr : port < o.port;
  }
  std::string to_string() const;
};

Result<Endpoint, std::string> parse_endpoint(const std::string& host, std::uint16_t port);

// Thin RAII wrapper over a non-blocking UDP socket.
class UdpSocket {
 public:
  UdpSocket() = default;
  UdpSocket(UdpSocket&& other) noexcept : fd_(std::exchange(other.fd_, -1)) {}
  UdpSocket& operator=(UdpSocket&& other) noexcept;
  UdpSocket(const UdpSocket&) = delete;
  UdpSocket& operator=(const UdpSocket&) = delete;
  ~UdpSocket();

  // Binds to 127.0.0.1:port; port 0 picks an ephemeral one.
  static Result<UdpSocket, std::string> open(std::uint16_t port);

  std::uint16_t local_port() const;
  bool valid() const { return fd_ >= 0; }

  bool send_to(const Endpoint& to, std::span<const std::uint8_t> bytes);

  // Waits up to `timeout` for one datagram. nullopt = nothing arrived.
  std::optional<std::pair<Endpoint, std::vector<std::uint8_t>>> recv_from(
      std::chrono::microseconds timeout);

 private:
  explicit UdpSocket(int fd) : fd_(fd) {}
  int fd_ = -1;
};

}  // namespace qcss::net
