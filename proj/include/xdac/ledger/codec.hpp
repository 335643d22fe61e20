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

#include <optional>

#include "xdac/ledger/types.hpp"

namespace xdac::ledger::codec {

// Canonical serialization: length-prefixed fields in fixed order, big
// endian. Decoders return nullopt on truncated or trailing bytes, so a
// decoded value re-encodes to the identical byte string.

Bytes encode_asset(const Asset& a);
std::optional<Asset> decode_asset(const Bytes& b);

Bytes encode_proposal(const TransactionProposal& p);
std::optional<TransactionProposal> decode_proposal(const Bytes& b);

Bytes encode_rwset(const RwSet& rw);

Bytes encode_transaction(const EndorsedTransaction& tx);

/// Block bytes as persisted in the chain log. `with_validity` embeds the
/// commit flags; the block digest is always computed without them.
Bytes encode_block(const Block& b, bool with_validity);
std::optional<Block> decode_block(const Bytes& b);

}  // namespace xdac::ledger::codec
