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

#include "xdac/common/result.hpp"
#include "xdac/ledger/state_store.hpp"
#include "xdac/ledger/types.hpp"

namespace xdac::ledger {

/// Validates a proposal against current state and produces its read-write
/// set. Global constraint: only the organization that created an asset may
/// alter its state. Checks per write:
///   Create: key absent, asset well-formed, body org == issuer.
///   Update/Delete: key present, stored owner == issuer.
/// Referenced assets (group members, policy endpoints) must exist; every
/// consulted key lands in the read set with the version seen.
Result<RwSet, LedgerError> simulate_chaincode(const TransactionProposal& proposal,
                                              const StateStore& state);

}  // namespace xdac::ledger
