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

#include "xdac/ledger/chaincode.hpp"

#include <set>

#include "xdac/ledger/codec.hpp"

namespace xdac::ledger {

namespace {

struct Sim {
    const TransactionProposal& proposal;
    const StateStore& state;
    RwSet rw;
    std::set<std::string> read_keys;

    std::optional<StateStore::Entry> lookup(const std::string& key) {
        auto e = state.get(key);
        if (read_keys.insert(key).second)
            rw.reads.push_back({key, e ? std::optional<Version>(e->version) : std::nullopt});
        return e;
    }

    std::optional<LedgerError> require_ref(const std::string& primary_key,
                                           const std::string& fallback_key,
                                           const std::string& what) {
        if (lookup(primary_key)) return std::nullopt;
        if (lookup(fallback_key)) return std::nullopt;
        return LedgerError{LedgerErrorCode::KeyAbsent, what + " not found: " + primary_key};
    }

    // Structural checks for an asset being written, plus existence of
    // everything it references.
    std::optional<LedgerError> check_asset(const Asset& asset, const std::string& key) {
        if (asset.owner != proposal.issuer)
            return LedgerError{LedgerErrorCode::OwnershipViolation,
                               "asset owner '" + asset.owner + "' is not issuer '" +
                                   proposal.issuer + "'"};
        switch (asset.kind) {
            case AssetKind::User: {
                const auto& u = std::get<UserBody>(asset.body);
                if (u.org != proposal.issuer)
                    return LedgerError{LedgerErrorCode::OwnershipViolation,
                                       "user org differs from issuer"};
                if (key != user_key(u.org + "." + u.name))
                    return LedgerError{LedgerErrorCode::BadAsset, "user key mismatch: " + key};
                if (u.has_pubkey && !crypto::valid_public_key(u.pubkey))
                    return LedgerError{LedgerErrorCode::InvalidKey, "user public key invalid"};
                break;
            }
            case AssetKind::Department: {
                const auto& d = std::get<DepartmentBody>(asset.body);
                if (d.org != proposal.issuer)
                    return LedgerError{LedgerErrorCode::OwnershipViolation,
                                       "department org differs from issuer"};
                if (key != dept_key(d.org + "." + d.name))
                    return LedgerError{LedgerErrorCode::BadAsset, "dept key mismatch: " + key};
                for (const auto& m : d.members) {
                    if (!lookup(user_key(m.user_ref)))
                        return LedgerError{LedgerErrorCode::KeyAbsent,
                                           "group member not found: " + m.user_ref};
                }
                break;
            }
            case AssetKind::Resource: {
                const auto& res = std::get<ResourceBody>(asset.body);
                if (res.org != proposal.issuer)
                    return LedgerError{LedgerErrorCode::OwnershipViolation,
                                       "resource org differs from issuer"};
                if (key != resource_key(res.org + "." + res.name))
                    return LedgerError{LedgerErrorCode::BadAsset, "resource key mismatch: " + key};
                break;
            }
            case AssetKind::Policy: {
                const auto& p = std::get<PolicyBody>(asset.body);
                if (key != policy_key(p.src_ref, p.dst_ref))
                    return LedgerError{LedgerErrorCode::BadAsset, "policy key mismatch: " + key};
                if (p.expiry_ms && *p.expiry_ms <= p.created_ms)
                    return LedgerError{LedgerErrorCode::BadAsset,
                                       "policy expiry not after creation"};
                // src is a department or user endpoint, dst a resource or user
                if (auto e = require_ref(dept_key(p.src_ref), user_key(p.src_ref), "policy source"))
                    return e;
                if (auto e = require_ref(resource_key(p.dst_ref), user_key(p.dst_ref),
                                         "policy destination"))
                    return e;
                break;
            }
        }
        return std::nullopt;
    }
};

}  // namespace

Result<RwSet, LedgerError> simulate_chaincode(const TransactionProposal& proposal,
                                              const StateStore& state) {
    if (proposal.writes.empty())
        return LedgerError{LedgerErrorCode::BadAsset, "proposal has empty write-set"};

    Sim sim{proposal, state, {}, {}};
    std::set<std::string> write_keys;

    for (const auto& op : proposal.writes) {
        if (!write_keys.insert(op.key).second)
            return LedgerError{LedgerErrorCode::BadAsset,
                               "write-set repeats key: " + op.key};

        auto existing = sim.lookup(op.key);
        if (op.kind == WriteKind::Create) {
            if (existing) return LedgerError{LedgerErrorCode::KeyExists, op.key};
            auto asset = codec::decode_asset(op.value);
            if (!asset)
                return LedgerError{LedgerErrorCode::BadAsset, "undecodable asset: " + op.key};
            if (auto e = sim.check_asset(*asset, op.key)) return *e;
        } else {
            if (!existing) return LedgerError{LedgerErrorCode::KeyAbsent, op.key};
            auto stored = codec::decode_asset(existing->value);
            if (!stored)
                return LedgerError{LedgerErrorCode::BadAsset, "corrupt stored asset: " + op.key};
            if (stored->owner != proposal.issuer)
                return LedgerError{LedgerErrorCode::OwnershipViolation,
                                   "'" + proposal.issuer + "' cannot alter asset of '" +
                                       stored->owner + "' at " + op.key};
            if (op.kind == WriteKind::Update) {
                auto asset = codec::decode_asset(op.value);
                if (!asset)
                    return LedgerError{LedgerErrorCode::BadAsset, "undecodable asset: " + op.key};
                if (asset->kind != stored->kind)
                    return LedgerError{LedgerErrorCode::BadAsset, "update changes asset kind"};
                if (auto e = sim.check_asset(*asset, op.key)) return *e;
            }
        }
    }

    sim.rw.writes = proposal.writes;
    return std::move(sim.rw);
}

}  // namespace xdac::ledger
