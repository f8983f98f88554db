#include "net.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

namespace qcss::net {

std::string Endpoint::to_string() const {
  in_addr a{};
  a.s_addr = htonl(addr);
  char buf[INET_ADDRSTRLEN] = {};
  inet_ntop(AF_INET, &a, buf, sizeof(buf));
  return std::string(buf) + ":" + std::to_string(port);
}

Result<Endpoint, std::string> parse_endpoint(const std::string& host, std::uint16_t port) {
  in_addr a{};
  if (inet_pton(AF_INET, host.c_str(), &a) != 1) {
    return std::string("not an IPv4 address: ") + host;
  }
  return Endpoint{ntohl(a.s_addr), port};
}

UdpSocket& UdpSocket::operator=(UdpSocket&& other) noexcept {
  if (this != &other) {
    if (fd_ >= 0) ::close(fd_);
    fd_ = std::exchange(other.fd_, -1);
  }
  return *this;
}

UdpSocket::~UdpSocket() {
  if (fd_ >= 0) ::close(fd_);
}

Result<UdpSocket, std::string> UdpSocket::open(std::uint16_t port) {
  const int fd = ::socket(AF_INET, SOCK_DGRAM | SOCK_CLOEXEC, 0);
  if (fd < 0) return std::string("socket(): ") + std::strerror(errno);

  const int rcvbuf = 1 << 20;
  ::setsockopt(fd, SOL_SOCKET, SO_RCVBUF, &rcvbuf, sizeof(rcvbuf));

  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  addr.sin_port = htons(port);
  if (::bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
    const std::string err = std::string("bind(): ") + std::strerror(errno);
    ::close(fd);
    return err;
  }
  return UdpSocket(fd);
}

std::uint16_t UdpSocket::local_port() const {
  sockaddr_in addr{};
  socklen_t len = sizeof(addr);
  if (::getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &len) != 0) return 0;
  return ntohs(addr.sin_port);
}

bool UdpSocket::send_to(const Endpoint& to, std::span<const std::uint8_t> bytes) {
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(to.addr);
  addr.sin_port = htons(to.port);
  const ssize_t n = ::sendto(fd_, bytes.data(), bytes.size(), 0,
                             reinterpret_cast<sockaddr*>(&addr), sizeof(addr));
  return n == static_cast<ssize_t>(bytes.size());
}

std::optional<std::pair<Endpoint, std::vector<std::uint8_t>>> UdpSocket::recv_from(
    std::chrono::microseconds timeout) {
  pollfd pfd{fd_, POLLIN, 0};
  const int timeout_ms =
      static_cast<int>((timeout.count() + 999) / 1000);  // round up so 1us waits
  const int ready = ::poll(&pfd, 1, timeout_ms < 0 ? 0 : timeout_ms);
  if (ready <= 0 || !(pfd.revents & POLLIN)) return std::nullopt;

  std::vector<std::uint8_t> buf(2048);
  sockaddr_in from{};
  socklen_t fromlen = sizeof(from);
  const ssize_t n = ::recvfrom(fd_, buf.data(), buf.size(), 0,
                               reinterpret_cast<sockaddr*>(&from), &fromlen);
  if (n < 0) return std::nullopt;
  buf.resize(static_cast<std::size_t>(n));
  return std::make_pair(Endpoint{ntohl(from.sin_addr.s_addr), ntohs(from.sin_port)},
                        std::move(buf));
}

}  // namespace qcss::net
