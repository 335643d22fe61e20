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

#include <functional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "xdac/common/result.hpp"
#include "xdac/ledger/types.hpp"

namespace xdac::ledger {

class EndorsementPolicyExpr;

struct ExprOrg {
    OrgId org;
};
struct ExprAnd {
    std::vector<EndorsementPolicyExpr> children;
};
struct ExprOr {
    std::vector<EndorsementPolicyExpr> children;
};
struct ExprKOfN {
    uint32_t k = 1;
    std::vector<OrgId> orgs;
};
/// 2f+1 valid signatures out of n endorsers, n > 3f.
struct ExprTwoFPlusOne {
    uint32_t f = 0;
    std::vector<OrgId> orgs;
};

/// Boolean/threshold expression over organization signatures. Evaluation is
/// a total function over sets of endorsing orgs; duplicate endorsements from
/// one org count once because the input is a set.
class EndorsementPolicyExpr {
public:
    using Node = std::variant<ExprOrg, ExprAnd, ExprOr, ExprKOfN, ExprTwoFPlusOne>;

    EndorsementPolicyExpr() : node_(ExprOrg{}) {}
    EndorsementPolicyExpr(Node node) : node_(std::move(node)) {}

    static EndorsementPolicyExpr org(OrgId id);
    static EndorsementPolicyExpr all_of(std::vector<EndorsementPolicyExpr> children);
    static EndorsementPolicyExpr any_of(std::vector<EndorsementPolicyExpr> children);
    static EndorsementPolicyExpr k_of_n(uint32_t k, std::vector<OrgId> orgs);
    static EndorsementPolicyExpr two_f_plus_one(uint32_t f, std::vector<OrgId> orgs);

    const Node& node() const { return node_; }

    /// Checks structural invariants: KOfN has 1 <= k <= |orgs|, TwoFPlusOne
    /// has |orgs| > 3f, org lists carry no duplicates, And/Or are non-empty.
    Result<std::monostate, std::string> validate() const;

    bool evaluate(const std::set<OrgId>& endorsed) const;

    /// Every org id mentioned anywhere in the expression.
    std::set<OrgId> referenced_orgs() const;

    std::string to_string() const;
    static Result<EndorsementPolicyExpr, std::string> parse(const std::string& text);

private:
    Node node_;
};

/// Keeps only endorsements whose signature verifies under the registered key
/// of a known org; the set of surviving org ids feeds evaluate().
std::set<OrgId> valid_endorser_set(
    const std::vector<Endorsement>& endorsements, const crypto::Digest& signed_digest,
    const std::function<std::optional<crypto::PublicKey>(const OrgId&)>& key_of,
    uint64_t* verify_counter);

}  // namespace xdac::ledger
