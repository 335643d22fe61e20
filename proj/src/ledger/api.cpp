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

#include "xdac/ledger/api.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cstring>

#include "xdac/common/wire.hpp"

namespace xdac::ledger {

namespace {

// Record ops, one byte each (docs/ledger-api.md).
enum : uint8_t {
    kOpGetPolicy = 1,
    kOpGetUserPubkey = 2,
    kOpExportPolicySnapshot = 3,
    kOpExportAuthorizedPairs = 4,
    kOpExportUserKeys = 5,
    kOpCheckAccess = 6,
    kOpGetState = 7,
};

bool write_all(int fd, const uint8_t* data, size_t len) {
    while (len > 0) {
        ssize_t n = ::send(fd, data, len, MSG_NOSIGNAL);
        if (n <= 0) return false;
        data += n;
        len -= static_cast<size_t>(n);
    }
    return true;
}

bool read_exact(int fd, uint8_t* data, size_t len) {
    while (len > 0) {
        ssize_t n = ::recv(fd, data, len, 0);
        if (n <= 0) return false;
        data += n;
        len -= static_cast<size_t>(n);
    }
    return true;
}

bool write_record(int fd, const Bytes& body) {
    uint8_t len_buf[4];
    uint32_t len = static_cast<uint32_t>(body.size());
    len_buf[0] = static_cast<uint8_t>(len >> 24);
    len_buf[1] = static_cast<uint8_t>(len >> 16);
    len_buf[2] = static_cast<uint8_t>(len >> 8);
    len_buf[3] = static_cast<uint8_t>(len);
    return write_all(fd, len_buf, 4) && write_all(fd, body.data(), body.size());
}

std::optional<Bytes> read_record(int fd) {
    uint8_t len_buf[4];
    if (!read_exact(fd, len_buf, 4)) return std::nullopt;
    uint32_t len = (static_cast<uint32_t>(len_buf[0]) << 24) |
                   (static_cast<uint32_t>(len_buf[1]) << 16) |
                   (static_cast<uint32_t>(len_buf[2]) << 8) | len_buf[3];
    if (len > (1u << 26)) return std::nullopt;  // 64 MiB guard
    Bytes body(len);
    if (!read_exact(fd, body.data(), len)) return std::nullopt;
    return body;
}

void put_opt_u64(wire::Writer& w, const std::optional<uint64_t>& v) {
    w.u8(v ? 1 : 0);
    if (v) w.u64(*v);
}

std::optional<uint64_t> get_opt_u64(wire::Reader& r) {
    if (r.u8() == 0) return std::nullopt;
    return r.u64();
}

Bytes handle_request(InProcessLedgerQuery& q, const Bytes& req) {
    wire::Reader r(req);
    uint8_t op = r.u8();
    wire::Writer w;
    switch (op) {
        case kOpGetPolicy: {
            std::string src = r.str(), dst = r.str();
            if (!r.ok() || !r.at_end()) break;
            w.u8(0);
            auto p = q.get_policy(src, dst);
            w.u8(p ? 1 : 0);
            if (p) {
                w.str(p->rule_name);
                w.str(p->src_ref);
                w.str(p->dst_ref);
                w.u8(static_cast<uint8_t>(p->action));
                w.u64(p->created_ms);
                put_opt_u64(w, p->expiry_ms);
            }
            return w.take();
        }
        case kOpGetUserPubkey: {
            std::string ref = r.str();
            if (!r.ok() || !r.at_end()) break;
            w.u8(0);
            auto pk = q.get_user_pubkey(ref);
            w.u8(pk ? 1 : 0);
            if (pk) w.fixed(*pk);
            return w.take();
        }
        case kOpExportPolicySnapshot: {
            if (!r.at_end()) break;
            auto pairs = q.export_policy_snapshot();
            w.u8(0);
            w.u32(static_cast<uint32_t>(pairs.size()));
            for (const auto& p : pairs) {
                w.str(p.src_ref);
                w.str(p.dst_ref);
            }
            return w.take();
        }
        case kOpExportAuthorizedPairs: {
            if (!r.at_end()) break;
            auto pairs = q.export_authorized_pairs();
            w.u8(0);
            w.u32(static_cast<uint32_t>(pairs.size()));
            for (const auto& p : pairs) {
                w.u32(p.src_eid);
                w.u32(p.dst_eid);
                put_opt_u64(w, p.expiry_ms);
            }
            return w.take();
        }
        case kOpExportUserKeys: {
            if (!r.at_end()) break;
            auto users = q.export_user_keys();
            w.u8(0);
            w.u32(static_cast<uint32_t>(users.size()));
            for (const auto& u : users) {
                w.str(u.user_ref);
                w.fixed(u.pubkey);
                w.u32(u.eid);
            }
            return w.take();
        }
        case kOpCheckAccess: {
            std::string ref = r.str();
            uint32_t src = r.u32(), dst = r.u32();
            if (!r.ok() || !r.at_end()) break;
            w.u8(0);
            w.u8(static_cast<uint8_t>(q.check_access(ref, src, dst)));
            return w.take();
        }
        default:
            break;
    }
    wire::Writer err;
    err.u8(1);  // bad request
    return err.take();
}

}  // namespace

Result<uint16_t, std::string> LedgerApiServer::start(uint16_t port) {
    listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    if (listen_fd_ < 0) return std::string("socket() failed");
    int one = 1;
    ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));

    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    addr.sin_port = htons(port);
    if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
        ::close(listen_fd_);
        return std::string("bind() failed");
    }
    socklen_t len = sizeof(addr);
    ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
    port_ = ntohs(addr.sin_port);
    if (::listen(listen_fd_, 16) != 0) {
        ::close(listen_fd_);
        return std::string("listen() failed");
    }
    running_ = true;
    accept_thread_ = std::thread([this] { accept_loop(); });
    return port_;
}

void LedgerApiServer::accept_loop() {
    while (running_) {
        int fd = ::accept(listen_fd_, nullptr, nullptr);
        if (fd < 0) break;
        std::lock_guard lock(conns_mu_);
        conn_fds_.push_back(fd);
        conn_threads_.emplace_back([this, fd] { serve_connection(fd); });
    }
}

void LedgerApiServer::serve_connection(int fd) {
    while (running_) {
        auto req = read_record(fd);
        if (!req) break;
        if (!write_record(fd, handle_request(query_, *req))) break;
    }
    ::close(fd);
}

void LedgerApiServer::stop() {
    if (!running_.exchange(false)) return;
    ::shutdown(listen_fd_, SHUT_RDWR);
    ::close(listen_fd_);
    if (accept_thread_.joinable()) accept_thread_.join();
    {
        std::lock_guard lock(conns_mu_);
        for (int fd : conn_fds_) ::shutdown(fd, SHUT_RDWR);
    }
    for (auto& t : conn_threads_)
        if (t.joinable()) t.join();
    conn_threads_.clear();
    conn_fds_.clear();
}

Result<std::unique_ptr<LedgerApiClient>, std::string> LedgerApiClient::connect(
    const std::string& host, uint16_t port) {
    int fd = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd < 0) return std::string("socket() failed");
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(port);
    if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
        ::close(fd);
        return std::string("bad host: ") + host;
    }
    if (::connect(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
        ::close(fd);
        return std::string("connect() failed: ") + host + ":" + std::to_string(port);
    }
    return std::unique_ptr<LedgerApiClient>(new LedgerApiClient(fd));
}

LedgerApiClient::~LedgerApiClient() {
    if (fd_ >= 0) ::close(fd_);
}

std::optional<Bytes> LedgerApiClient::round_trip(const Bytes& request) {
    std::lock_guard lock(mu_);
    if (!write_record(fd_, request)) return std::nullopt;
    auto resp = read_record(fd_);
    if (!resp || resp->empty() || (*resp)[0] != 0) return std::nullopt;
    return resp;
}

std::optional<PolicyBody> LedgerApiClient::get_policy(const std::string& src,
                                                      const std::string& dst) {
    wire::Writer w;
    w.u8(kOpGetPolicy);
    w.str(src);
    w.str(dst);
    auto resp = round_trip(w.take());
    if (!resp) return std::nullopt;
    wire::Reader r(*resp);
    r.u8();  // status
    if (r.u8() == 0) return std::nullopt;
    PolicyBody p;
    p.rule_name = r.str();
    p.src_ref = r.str();
    p.dst_ref = r.str();
    p.action = static_cast<Action>(r.u8());
    p.created_ms = r.u64();
    p.expiry_ms = get_opt_u64(r);
    if (!r.ok()) return std::nullopt;
    return p;
}

std::optional<crypto::PublicKey> LedgerApiClient::get_user_pubkey(const std::string& user_ref) {
    wire::Writer w;
    w.u8(kOpGetUserPubkey);
    w.str(user_ref);
    auto resp = round_trip(w.take());
    if (!resp) return std::nullopt;
    wire::Reader r(*resp);
    r.u8();
    if (r.u8() == 0) return std::nullopt;
    auto pk = r.fixed<crypto::kPublicKeySize>();
    if (!r.ok()) return std::nullopt;
    return pk;
}

std::vector<PolicyPair> LedgerApiClient::export_policy_snapshot() {
    wire::Writer w;
    w.u8(kOpExportPolicySnapshot);
    auto resp = round_trip(w.take());
    std::vector<PolicyPair> out;
    if (!resp) return out;
    wire::Reader r(*resp);
    r.u8();
    uint32_t n = r.u32();
    for (uint32_t i = 0; i < n && r.ok(); i++) {
        PolicyPair p;
        p.src_ref = r.str();
        p.dst_ref = r.str();
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<AuthorizedPair> LedgerApiClient::export_authorized_pairs() {
    wire::Writer w;
    w.u8(kOpExportAuthorizedPairs);
    auto resp = round_trip(w.take());
    std::vector<AuthorizedPair> out;
    if (!resp) return out;
    wire::Reader r(*resp);
    r.u8();
    uint32_t n = r.u32();
    for (uint32_t i = 0; i < n && r.ok(); i++) {
        AuthorizedPair p;
        p.src_eid = r.u32();
        p.dst_eid = r.u32();
        p.expiry_ms = get_opt_u64(r);
        out.push_back(p);
    }
    return out;
}

std::vector<UserKeyRecord> LedgerApiClient::export_user_keys() {
    wire::Writer w;
    w.u8(kOpExportUserKeys);
    auto resp = round_trip(w.take());
    std::vector<UserKeyRecord> out;
    if (!resp) return out;
    wire::Reader r(*resp);
    r.u8();
    uint32_t n = r.u32();
    for (uint32_t i = 0; i < n && r.ok(); i++) {
        UserKeyRecord u;
        u.user_ref = r.str();
        u.pubkey = r.fixed<crypto::kPublicKeySize>();
        u.eid = r.u32();
        out.push_back(std::move(u));
    }
    return out;
}

EidAccess LedgerApiClient::check_access(const std::string& user_ref, uint32_t src, uint32_t dst) {
    wire::Writer w;
    w.u8(kOpCheckAccess);
    w.str(user_ref);
    w.u32(src);
    w.u32(dst);
    auto resp = round_trip(w.take());
    if (!resp) return EidAccess::NoPolicy;
    wire::Reader r(*resp);
    r.u8();
    uint8_t v = r.u8();
    if (!r.ok() || v > 2) return EidAccess::NoPolicy;
    return static_cast<EidAccess>(v);
}

}  // namespace xdac::ledger
