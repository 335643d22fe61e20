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

#pragma once

#include <atomic>
#include <string>
#include <thread>

#include "xdac/ctrl/map_server.hpp"

namespace xdac::ctrl {

/// Deterministic in-process endpoint for tests: one frame in, at most one
/// frame out. Counts every byte that would hit the wire, which is how the
/// deny-by-silence property is asserted.
class InProcEndpoint {
public:
    explicit InProcEndpoint(MapService* service) : service_(service) {}

    std::optional<Bytes> process(const Bytes& frame) {
        frames_in_++;
        auto reply = service_->handle_frame(frame);
        if (reply) {
            replies_out_++;
            bytes_out_ += reply->size();
        }
        return reply;
    }

    uint64_t frames_in() const { return frames_in_; }
    uint64_t replies_out() const { return replies_out_; }
    uint64_t bytes_out() const { return bytes_out_; }

private:
    MapService* service_;
    std::atomic<uint64_t> frames_in_{0};
    std::atomic<uint64_t> replies_out_{0};
    std::atomic<uint64_t> bytes_out_{0};
};

/// Datagram server on the map-resolution control port (default 4342).
/// Denied requests send nothing back; the client sees only a timeout.
class UdpMapServer {
public:
    explicit UdpMapServer(MapService* service) : service_(service) {}
    ~UdpMapServer() { stop(); }

    /// Binds 127.0.0.1:port (0 = ephemeral) and serves until stop().
    Result<uint16_t, std::string> start(uint16_t port);
    void stop();
    uint16_t port() const { return port_; }

    static constexpr uint16_t kDefaultPort = 4342;

private:
    void serve_loop();

    MapService* service_;
    int fd_ = -1;
    uint16_t port_ = 0;
    std::atomic<bool> running_{false};
    std::thread thread_;
};

/// One datagram exchange: sends the frame and waits for a reply.
/// nullopt on timeout — silence is indistinguishable from loss by design.
std::optional<Bytes> udp_exchange(const std::string& host, uint16_t port, const Bytes& frame,
                                  int timeout_ms);

}  // namespace xdac::ctrl
