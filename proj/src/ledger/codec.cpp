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

#include "xdac/ledger/codec.hpp"

#include "xdac/common/wire.hpp"

namespace xdac::ledger {

std::string user_key(const std::string& ref) { return "user:" + ref; }
std::string dept_key(const std::string& ref) { return "dept:" + ref; }
std::string resource_key(const std::string& ref) { return "res:" + ref; }

std::string policy_key(const std::string& src_ref, const std::string& dst_ref) {
    return "policy:" + src_ref + "|" + dst_ref;
}

std::string asset_key(AssetKind kind, const std::string& ref) {
    switch (kind) {
        case AssetKind::User: return user_key(ref);
        case AssetKind::Department: return dept_key(ref);
        case AssetKind::Resource: return resource_key(ref);
        case AssetKind::Policy: return "policy:" + ref;
    }
    return ref;
}

const char* cut_reason_name(CutReason r) {
    switch (r) {
        case CutReason::Genesis: return "Genesis";
        case CutReason::Timeout: return "Timeout";
        case CutReason::MaxCount: return "MaxCount";
    }
    return "?";
}

const char* ledger_error_name(LedgerErrorCode c) {
    switch (c) {
        case LedgerErrorCode::DuplicateOrg: return "DuplicateOrg";
        case LedgerErrorCode::InvalidKey: return "InvalidKey";
        case LedgerErrorCode::UnknownOrg: return "UnknownOrg";
        case LedgerErrorCode::OwnershipViolation: return "OwnershipViolation";
        case LedgerErrorCode::KeyExists: return "KeyExists";
        case LedgerErrorCode::KeyAbsent: return "KeyAbsent";
        case LedgerErrorCode::BadAsset: return "BadAsset";
        case LedgerErrorCode::SimulationMismatch: return "SimulationMismatch";
        case LedgerErrorCode::ChaincodeRejection: return "ChaincodeRejection";
        case LedgerErrorCode::PolicyUnsatisfied: return "PolicyUnsatisfied";
        case LedgerErrorCode::BrokenChain: return "BrokenChain";
        case LedgerErrorCode::Io: return "Io";
    }
    return "?";
}

crypto::Digest TransactionProposal::id() const { return crypto::sha256(codec::encode_proposal(*this)); }

crypto::Digest RwSet::digest() const { return crypto::sha256(codec::encode_rwset(*this)); }

crypto::Digest endorsement_digest(const crypto::Digest& proposal_id,
                                  const crypto::Digest& rwset_digest) {
    Bytes joined;
    joined.reserve(proposal_id.size() + rwset_digest.size());
    joined.insert(joined.end(), proposal_id.begin(), proposal_id.end());
    joined.insert(joined.end(), rwset_digest.begin(), rwset_digest.end());
    return crypto::sha256(joined);
}

crypto::Digest Block::digest() const { return crypto::sha256(codec::encode_block(*this, false)); }

namespace codec {

namespace {

void put_opt_u64(wire::Writer& w, const std::optional<uint64_t>& v) {
    w.u8(v ? 1 : 0);
    if (v) w.u64(*v);
}

std::optional<uint64_t> get_opt_u64(wire::Reader& r) {
    if (r.u8() == 0) return std::nullopt;
    return r.u64();
}

void put_write(wire::Writer& w, const WriteOp& op) {
    w.u8(static_cast<uint8_t>(op.kind));
    w.str(op.key);
    w.blob(op.value);
}

std::optional<WriteOp> get_write(wire::Reader& r) {
    WriteOp op;
    uint8_t k = r.u8();
    if (k > 2) return std::nullopt;
    op.kind = static_cast<WriteKind>(k);
    op.key = r.str();
    op.value = r.blob();
    if (!r.ok()) return std::nullopt;
    return op;
}

void put_proposal(wire::Writer& w, const TransactionProposal& p) {
    w.str(p.issuer);
    w.u64(p.timestamp_ms);
    w.u32(static_cast<uint32_t>(p.writes.size()));
    for (const auto& op : p.writes) put_write(w, op);
}

std::optional<TransactionProposal> get_proposal(wire::Reader& r) {
    TransactionProposal p;
    p.issuer = r.str();
    p.timestamp_ms = r.u64();
    uint32_t n = r.u32();
    if (!r.ok() || n > r.remaining()) return std::nullopt;
    for (uint32_t i = 0; i < n; i++) {
        auto op = get_write(r);
        if (!op) return std::nullopt;
        p.writes.push_back(std::move(*op));
    }
    return p;
}

void put_rwset(wire::Writer& w, const RwSet& rw) {
    w.u32(static_cast<uint32_t>(rw.reads.size()));
    for (const auto& rec : rw.reads) {
        w.str(rec.key);
        w.u8(rec.version ? 1 : 0);
        if (rec.version) {
            w.u64(rec.version->block_height);
            w.u32(rec.version->tx_index);
        }
    }
    w.u32(static_cast<uint32_t>(rw.writes.size()));
    for (const auto& op : rw.writes) put_write(w, op);
}

std::optional<RwSet> get_rwset(wire::Reader& r) {
    RwSet rw;
    uint32_t nr = r.u32();
    if (!r.ok() || nr > r.remaining()) return std::nullopt;
    for (uint32_t i = 0; i < nr; i++) {
        ReadRecord rec;
        rec.key = r.str();
        if (r.u8()) {
            Version v;
            v.block_height = r.u64();
            v.tx_index = r.u32();
            rec.version = v;
        }
        if (!r.ok()) return std::nullopt;
        rw.reads.push_back(std::move(rec));
    }
    uint32_t nw = r.u32();
    if (!r.ok() || nw > r.remaining()) return std::nullopt;
    for (uint32_t i = 0; i < nw; i++) {
        auto op = get_write(r);
        if (!op) return std::nullopt;
        rw.writes.push_back(std::move(*op));
    }
    return rw;
}

void put_tx(wire::Writer& w, const EndorsedTransaction& tx) {
    put_proposal(w, tx.proposal);
    put_rwset(w, tx.rwset);
    w.u32(static_cast<uint32_t>(tx.endorsements.size()));
    for (const auto& e : tx.endorsements) {
        w.str(e.endorser);
        w.fixed(e.signature);
    }
}

std::optional<EndorsedTransaction> get_tx(wire::Reader& r) {
    EndorsedTransaction tx;
    auto p = get_proposal(r);
    if (!p) return std::nullopt;
    tx.proposal = std::move(*p);
    auto rw = get_rwset(r);
    if (!rw) return std::nullopt;
    tx.rwset = std::move(*rw);
    uint32_t n = r.u32();
    if (!r.ok() || n > r.remaining()) return std::nullopt;
    for (uint32_t i = 0; i < n; i++) {
        Endorsement e;
        e.endorser = r.str();
        e.signature = r.fixed<crypto::kSignatureSize>();
        if (!r.ok()) return std::nullopt;
        tx.endorsements.push_back(std::move(e));
    }
    return tx;
}

}  // namespace

Bytes encode_asset(const Asset& a) {
    wire::Writer w;
    w.u8(static_cast<uint8_t>(a.kind));
    w.str(a.owner);
    switch (a.kind) {
        case AssetKind::User: {
            const auto& u = std::get<UserBody>(a.body);
            w.str(u.name);
            w.str(u.org);
            w.str(u.department);
            w.u8(u.has_pubkey ? 1 : 0);
            w.fixed(u.pubkey);
            w.u32(u.ip);
            break;
        }
        case AssetKind::Department: {
            const auto& d = std::get<DepartmentBody>(a.body);
            w.str(d.name);
            w.str(d.org);
            w.u32(static_cast<uint32_t>(d.members.size()));
            for (const auto& m : d.members) {
                w.str(m.user_ref);
                put_opt_u64(w, m.expiry_ms);
            }
            break;
        }
        case AssetKind::Resource: {
            const auto& res = std::get<ResourceBody>(a.body);
            w.str(res.name);
            w.str(res.org);
            w.u32(res.ip);
            break;
        }
        case AssetKind::Policy: {
            const auto& p = std::get<PolicyBody>(a.body);
            w.str(p.rule_name);
            w.str(p.src_ref);
            w.str(p.dst_ref);
            w.u8(static_cast<uint8_t>(p.action));
            w.u64(p.created_ms);
            put_opt_u64(w, p.expiry_ms);
            break;
        }
    }
    return w.take();
}

std::optional<Asset> decode_asset(const Bytes& b) {
    wire::Reader r(b);
    Asset a;
    uint8_t kind = r.u8();
    if (kind > 3) return std::nullopt;
    a.kind = static_cast<AssetKind>(kind);
    a.owner = r.str();
    switch (a.kind) {
        case AssetKind::User: {
            UserBody u;
            u.name = r.str();
            u.org = r.str();
            u.department = r.str();
            u.has_pubkey = r.u8() != 0;
            u.pubkey = r.fixed<crypto::kPublicKeySize>();
            u.ip = r.u32();
            a.body = std::move(u);
            break;
        }
        case AssetKind::Department: {
            DepartmentBody d;
            d.name = r.str();
            d.org = r.str();
            uint32_t n = r.u32();
            if (!r.ok() || n > r.remaining()) return std::nullopt;
            for (uint32_t i = 0; i < n; i++) {
                GroupMember m;
                m.user_ref = r.str();
                m.expiry_ms = get_opt_u64(r);
                d.members.push_back(std::move(m));
            }
            a.body = std::move(d);
            break;
        }
        case AssetKind::Resource: {
            ResourceBody res;
            res.name = r.str();
            res.org = r.str();
            res.ip = r.u32();
            a.body = std::move(res);
            break;
        }
        case AssetKind::Policy: {
            PolicyBody p;
            p.rule_name = r.str();
            p.src_ref = r.str();
            p.dst_ref = r.str();
            uint8_t act = r.u8();
            if (act > 1) return std::nullopt;
            p.action = static_cast<Action>(act);
            p.created_ms = r.u64();
            p.expiry_ms = get_opt_u64(r);
            a.body = std::move(p);
            break;
        }
    }
    if (!r.ok() || !r.at_end()) return std::nullopt;
    return a;
}

Bytes encode_proposal(const TransactionProposal& p) {
    wire::Writer w;
    put_proposal(w, p);
    return w.take();
}

std::optional<TransactionProposal> decode_proposal(const Bytes& b) {
    wire::Reader r(b);
    auto p = get_proposal(r);
    if (!p || !r.ok() || !r.at_end()) return std::nullopt;
    return p;
}

Bytes encode_rwset(const RwSet& rw) {
    wire::Writer w;
    put_rwset(w, rw);
    return w.take();
}

Bytes encode_transaction(const EndorsedTransaction& tx) {
    wire::Writer w;
    put_tx(w, tx);
    return w.take();
}

Bytes encode_block(const Block& b, bool with_validity) {
    wire::Writer w;
    w.u64(b.height);
    w.fixed(b.prev_digest);
    w.u8(static_cast<uint8_t>(b.cut_reason));
    w.u64(b.cut_time_ms);
    w.u32(static_cast<uint32_t>(b.transactions.size()));
    for (const auto& tx : b.transactions) put_tx(w, tx);
    if (with_validity) {
        w.u8(1);
        for (uint8_t f : b.validity) w.u8(f);
    } else {
        w.u8(0);
    }
    return w.take();
}

std::optional<Block> decode_block(const Bytes& b) {
    wire::Reader r(b);
    Block out;
    out.height = r.u64();
    out.prev_digest = r.fixed<crypto::kDigestSize>();
    uint8_t reason = r.u8();
    if (reason > 2) return std::nullopt;
    out.cut_reason = static_cast<CutReason>(reason);
    out.cut_time_ms = r.u64();
    uint32_t n = r.u32();
    if (!r.ok() || n > r.remaining()) return std::nullopt;
    for (uint32_t i = 0; i < n; i++) {
        auto tx = get_tx(r);
        if (!tx) return std::nullopt;
        out.transactions.push_back(std::move(*tx));
    }
    if (r.u8()) {
        for (uint32_t i = 0; i < n; i++) out.validity.push_back(r.u8());
    }
    if (!r.ok() || !r.at_end()) return std::nullopt;
    return out;
}

}  // namespace codec
}  // namespace xdac::ledger
