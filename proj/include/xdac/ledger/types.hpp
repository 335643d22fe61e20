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

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "xdac/common/crypto.hpp"
#include "xdac/policy/intent.hpp"

namespace xdac::ledger {

using policy::Action;
using policy::AssetKind;

using OrgId = std::string;

/// An organization's signing identity. The ledger registry itself only
/// keeps public halves; secret keys stay with whoever endorses.
struct OrgIdentity {
    OrgId org_id;
    crypto::PublicKey public_key{};
    crypto::SecretKey secret_key{};
    bool endorser = true;
    bool orderer_client = true;
};

/// State version: the block and intra-block position of the last write.
struct Version {
    uint64_t block_height = 0;
    uint32_t tx_index = 0;

    bool operator==(const Version&) const = default;
    auto operator<=>(const Version&) const = default;
};

// ---------------------------------------------------------------------------
// Assets

struct UserBody {
    std::string name;
    std::string org;
    std::string department;  // may be empty
    bool has_pubkey = false;
    crypto::PublicKey pubkey{};
    uint32_t ip = 0;  // 0 = unset
    bool operator==(const UserBody&) const = default;
};

struct GroupMember {
    std::string user_ref;  // qualified org.user
    std::optional<uint64_t> expiry_ms;
    bool operator==(const GroupMember&) const = default;
};

struct DepartmentBody {
    std::string name;
    std::string org;
    std::vector<GroupMember> members;
    bool operator==(const DepartmentBody&) const = default;
};

struct ResourceBody {
    std::string name;
    std::string org;
    uint32_t ip = 0;
    bool operator==(const ResourceBody&) const = default;
};

struct PolicyBody {
    std::string rule_name;
    std::string src_ref;  // qualified, kind resolved at query time
    std::string dst_ref;
    Action action = Action::Allow;
    uint64_t created_ms = 0;
    std::optional<uint64_t> expiry_ms;
    bool operator==(const PolicyBody&) const = default;
};

struct Asset {
    AssetKind kind = AssetKind::User;
    OrgId owner;
    std::variant<UserBody, DepartmentBody, ResourceBody, PolicyBody> body;

    bool operator==(const Asset&) const = default;
};

/// State key scheme: "user:org.name", "dept:org.name", "res:org.name",
/// "policy:<src>|<dst>".
std::string user_key(const std::string& ref);
std::string dept_key(const std::string& ref);
std::string resource_key(const std::string& ref);
std::string policy_key(const std::string& src_ref, const std::string& dst_ref);
std::string asset_key(AssetKind kind, const std::string& ref);

// ---------------------------------------------------------------------------
// Transactions

enum class WriteKind : uint8_t { Create, Update, Delete };

struct WriteOp {
    WriteKind kind = WriteKind::Create;
    std::string key;
    Bytes value;  // empty for Delete

    bool operator==(const WriteOp&) const = default;
};

struct TransactionProposal {
    OrgId issuer;
    uint64_t timestamp_ms = 0;
    std::vector<WriteOp> writes;  // non-empty, distinct keys

    /// Digest of the canonical serialization (codec.hpp).
    crypto::Digest id() const;

    bool operator==(const TransactionProposal&) const = default;
};

/// One consulted key: the version seen during simulation, or nullopt if
/// the key was absent. Checked again at commit time.
struct ReadRecord {
    std::string key;
    std::optional<Version> version;

    bool operator==(const ReadRecord&) const = default;
};

struct RwSet {
    std::vector<ReadRecord> reads;
    std::vector<WriteOp> writes;

    crypto::Digest digest() const;
    bool operator==(const RwSet&) const = default;
};

struct Endorsement {
    OrgId endorser;
    crypto::Signature signature{};  // over sha256(proposal_id || rwset_digest)

    bool operator==(const Endorsement&) const = default;
};

crypto::Digest endorsement_digest(const crypto::Digest& proposal_id,
                                  const crypto::Digest& rwset_digest);

struct EndorsedTransaction {
    TransactionProposal proposal;
    RwSet rwset;
    std::vector<Endorsement> endorsements;

    bool operator==(const EndorsedTransaction&) const = default;
};

// ---------------------------------------------------------------------------
// Blocks

enum class CutReason : uint8_t { Genesis, Timeout, MaxCount };

const char* cut_reason_name(CutReason r);

struct Block {
    uint64_t height = 0;
    crypto::Digest prev_digest{};
    CutReason cut_reason = CutReason::Timeout;
    uint64_t cut_time_ms = 0;
    std::vector<EndorsedTransaction> transactions;
    std::vector<uint8_t> validity;  // parallel to transactions; 1 = committed

    /// Digest over header and transactions (validity flags excluded; they
    /// are derived metadata recomputed on replay).
    crypto::Digest digest() const;
};

// ---------------------------------------------------------------------------
// Errors

enum class LedgerErrorCode : uint8_t {
    DuplicateOrg,
    InvalidKey,
    UnknownOrg,
    OwnershipViolation,
    KeyExists,
    KeyAbsent,
    BadAsset,
    SimulationMismatch,
    ChaincodeRejection,
    PolicyUnsatisfied,
    BrokenChain,
    Io,
};

struct LedgerError {
    LedgerErrorCode code;
    std::string detail;
};

const char* ledger_error_name(LedgerErrorCode c);

}  // namespace xdac::ledger
