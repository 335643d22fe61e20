/* Copyright 2026 The xdac Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "xdac/ctrl/transport.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cstring>

namespace xdac::ctrl {

namespace {
constexpr size_t kMaxDatagram = 65536;
}

Result<uint16_t, std::string> UdpMapServer::start(uint16_t port) {
    fd_ = ::socket(AF_INET, SOCK_DGRAM, 0);
    if (fd_ < 0) return std::string("socket() failed");

    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    addr.sin_port = htons(port);
    if (::bind(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
        ::close(fd_);
        return std::string("bind() failed on port ") + std::to_string(port);
    }
    socklen_t len = sizeof(addr);
    ::getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &len);
    port_ = ntohs(addr.sin_port);

    timeval tv{0, 200 * 1000};  // wake periodically to notice stop()
    ::setsockopt(fd_, SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof(tv));

    running_ = true;
    thread_ = std::thread([this] { serve_loop(); });
    return port_;
}

void UdpMapServer::serve_loop() {
    std::vector<uint8_t> buf(kMaxDatagram);
    while (running_) {
        sockaddr_in peer{};
        socklen_t peer_len = sizeof(peer);
        ssize_t n = ::recvfrom(fd_, buf.data(), buf.size(), 0,
                               reinterpret_cast<sockaddr*>(&peer), &peer_len);
        if (n < 0) continue;  // timeout or shutdown
        Bytes frame(buf.begin(), buf.begin() + n);
        auto reply = service_->handle_frame(frame);
        if (reply)
            ::sendto(fd_, reply->data(), reply->size(), 0, reinterpret_cast<sockaddr*>(&peer),
                     peer_len);
    }
}

void UdpMapServer::stop() {
    if (!running_.exchange(false)) return;
    if (thread_.joinable()) thread_.join();
    if (fd_ >= 0) ::close(fd_);
    fd_ = -1;
}

std::optional<Bytes> udp_exchange(const std::string& host, uint16_t port, const Bytes& frame,
                                  int timeout_ms) {
    int fd = ::socket(AF_INET, SOCK_DGRAM, 0);
    if (fd < 0) return std::nullopt;
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(port);
    if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
        ::close(fd);
        return std::nullopt;
    }
    timeval tv{timeout_ms / 1000, (timeout_ms % 1000) * 1000};
    ::setsockopt(fd, SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof(tv));

    if (::sendto(fd, frame.data(), frame.size(), 0, reinterpret_cast<sockaddr*>(&addr),
                 sizeof(addr)) < 0) {
        ::close(fd);
        return std::nullopt;
    }
    std::vector<uint8_t> buf(kMaxDatagram);
    ssize_t n = ::recv(fd, buf.data(), buf.size(), 0);
    ::close(fd);
    if (n <= 0) return std::nullopt;
    return Bytes(buf.begin(), buf.begin() + n);
}

}  // namespace xdac::ctrl
