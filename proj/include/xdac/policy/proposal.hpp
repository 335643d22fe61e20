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
#include "xdac/ledger/types.hpp"
#include "xdac/policy/intent.hpp"

namespace xdac::policy {

enum class RenderErrorCode : uint8_t {
    UnresolvableReference,
    NotTransactional,  // Query intents never become proposals
};

struct RenderError {
    RenderErrorCode code;
    std::string detail;
};

const char* render_error_name(RenderErrorCode c);

/// Read view over committed assets, used to resolve names in options.
class AssetView {
public:
    virtual ~AssetView() = default;
    virtual bool exists(const std::string& key) const = 0;
};

/// Resolves a src/dst/subject reference to a qualified name. Bare names
/// qualify against the issuer org. The referenced asset must exist under
/// one of the candidate kinds, in the order given.
Result<std::string, RenderError> resolve_endpoint_ref(const std::string& ref,
                                                      const ledger::OrgId& issuer,
                                                      const AssetView& view,
                                                      std::initializer_list<AssetKind> kinds);

/// Turns a validated Intent into a transaction proposal whose write-set
/// keys follow the ledger key scheme; the issuer becomes the asset owner.
Result<ledger::TransactionProposal, RenderError> render_proposal(const Intent& intent,
                                                                 const ledger::OrgId& issuer,
                                                                 const AssetView& view,
                                                                 uint64_t now_ms);

}  // namespace xdac::policy
