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

#include "xdac/policy/proposal.hpp"

#include "xdac/ledger/codec.hpp"

namespace xdac::policy {

using ledger::Asset;
using ledger::TransactionProposal;
using ledger::WriteKind;
using ledger::WriteOp;

const char* render_error_name(RenderErrorCode c) {
    switch (c) {
        case RenderErrorCode::UnresolvableReference: return "UnresolvableReference";
        case RenderErrorCode::NotTransactional: return "NotTransactional";
    }
    return "?";
}

namespace {

std::string qualify(const std::string& ref, const ledger::OrgId& issuer) {
    return parse_qualified(ref) ? ref : issuer + "." + ref;
}

RenderError unresolvable(const std::string& what, const std::string& ref) {
    return RenderError{RenderErrorCode::UnresolvableReference, what + ": " + ref};
}

}  // namespace

Result<std::string, RenderError> resolve_endpoint_ref(const std::string& ref,
                                                      const ledger::OrgId& issuer,
                                                      const AssetView& view,
                                                      std::initializer_list<AssetKind> kinds) {
    std::string qualified = qualify(ref, issuer);
    for (AssetKind k : kinds)
        if (view.exists(ledger::asset_key(k, qualified))) return qualified;
    return unresolvable("unknown endpoint", ref);
}

Result<TransactionProposal, RenderError> render_proposal(const Intent& intent,
                                                         const ledger::OrgId& issuer,
                                                         const AssetView& view,
                                                         uint64_t now_ms) {
    TransactionProposal p;
    p.issuer = issuer;
    p.timestamp_ms = now_ms;

    auto expiry_from_timeout = [&]() -> std::optional<uint64_t> {
        if (!intent.options.timeout_s) return std::nullopt;
        return now_ms + *intent.options.timeout_s * 1000;
    };

    switch (intent.verb) {
        case Verb::Query:
            return RenderError{RenderErrorCode::NotTransactional, "show is read-only"};

        case Verb::CreateMember: {
            std::string ref = qualify(intent.subject, issuer);
            auto q = *parse_qualified(ref);
            ledger::UserBody body;
            body.name = q.name;
            body.org = q.org;
            body.department = intent.options.dept.value_or("");
            if (intent.options.pubkey) {
                body.has_pubkey = true;
                body.pubkey = *intent.options.pubkey;
            }
            body.ip = intent.options.ip.value_or(0);
            Asset asset{AssetKind::User, issuer, std::move(body)};
            p.writes.push_back(
                {WriteKind::Create, ledger::user_key(ref), ledger::codec::encode_asset(asset)});
            break;
        }

        case Verb::CreateGroup: {
            std::string ref = qualify(intent.subject, issuer);
            auto q = *parse_qualified(ref);
            ledger::DepartmentBody body;
            body.name = q.name;
            body.org = q.org;
            for (const auto& member : intent.options.add_members) {
                if (!view.exists(ledger::user_key(member)))
                    return unresolvable("unknown member", member);
                body.members.push_back({member, expiry_from_timeout()});
            }
            Asset asset{AssetKind::Department, issuer, std::move(body)};
            p.writes.push_back(
                {WriteKind::Create, ledger::dept_key(ref), ledger::codec::encode_asset(asset)});
            break;
        }

        case Verb::CreateResource: {
            std::string ref = qualify(intent.subject, issuer);
            auto q = *parse_qualified(ref);
            ledger::ResourceBody body;
            body.name = q.name;
            body.org = q.org;
            body.ip = intent.options.ip.value_or(0);
            Asset asset{AssetKind::Resource, issuer, std::move(body)};
            p.writes.push_back({WriteKind::Create, ledger::resource_key(ref),
                                ledger::codec::encode_asset(asset)});
            break;
        }

        case Verb::CreatePolicyRule: {
            auto src = resolve_endpoint_ref(*intent.options.src, issuer, view,
                                            {AssetKind::Department, AssetKind::User});
            if (!src) return src.error();
            auto dst = resolve_endpoint_ref(*intent.options.dst, issuer, view,
                                            {AssetKind::Resource, AssetKind::User});
            if (!dst) return dst.error();
            std::string key = ledger::policy_key(src.value(), dst.value());
            ledger::PolicyBody body;
            body.rule_name = intent.subject;
            body.src_ref = std::move(src).value();
            body.dst_ref = std::move(dst).value();
            body.action = intent.options.actions.value_or(Action::Allow);
            body.created_ms = now_ms;
            body.expiry_ms = expiry_from_timeout();
            Asset asset{AssetKind::Policy, issuer, std::move(body)};
            p.writes.push_back({WriteKind::Create, key, ledger::codec::encode_asset(asset)});
            break;
        }

        case Verb::Delete: {
            AssetKind kind = intent.target_kind.value_or(AssetKind::User);
            std::string key;
            if (kind == AssetKind::Policy) {
                auto src = resolve_endpoint_ref(*intent.options.src, issuer, view,
                                                {AssetKind::Department, AssetKind::User});
                if (!src) return src.error();
                auto dst = resolve_endpoint_ref(*intent.options.dst, issuer, view,
                                                {AssetKind::Resource, AssetKind::User});
                if (!dst) return dst.error();
                key = ledger::policy_key(src.value(), dst.value());
            } else {
                key = ledger::asset_key(kind, qualify(intent.subject, issuer));
            }
            if (!view.exists(key)) return unresolvable("nothing to delete", key);
            p.writes.push_back({WriteKind::Delete, key, {}});
            break;
        }
    }

    return p;
}

}  // namespace xdac::policy
