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
#include <vector>

#include "xdac/common/crypto.hpp"

namespace xdac::policy {

enum class Verb : uint8_t {
    CreateMember,
    CreateGroup,
    CreateResource,
    CreatePolicyRule,
    Delete,
    Query,
};

enum class AssetKind : uint8_t {
    User,
    Department,
    Resource,
    Policy,
};

enum class Action : uint8_t {
    Allow,
    Deny,
};

const char* verb_name(Verb v);
const char* kind_name(AssetKind k);
const char* action_name(Action a);

/// `<org>.<name>`, both segments non-empty. Split happens at the first dot.
struct QualifiedName {
    std::string org;
    std::string name;

    std::string str() const { return org + "." + name; }
    bool operator==(const QualifiedName&) const = default;
};

/// Parses "org.name"; nullopt when either segment is empty or there is no dot.
std::optional<QualifiedName> parse_qualified(const std::string& ref);

/// Duration literal such as "1w" or "90m". Canonical value is seconds.
struct DurationLiteral {
    uint64_t magnitude = 0;
    char unit = 's';  // one of s m h d w

    uint64_t seconds() const;
    bool operator==(const DurationLiteral&) const = default;
};

struct OptionSet {
    std::vector<std::string> add_members;  // qualified refs (org.user)
    std::optional<std::string> src;        // qualified or bare group/user name
    std::optional<std::string> dst;        // qualified or bare resource/user name
    std::optional<Action> actions;
    std::optional<uint64_t> timeout_s;     // strictly positive when present
    std::optional<uint32_t> ip;            // endpoint address, host byte order
    std::optional<crypto::PublicKey> pubkey;
    std::optional<std::string> dept;

    bool empty() const {
        return add_members.empty() && !src && !dst && !actions && !timeout_s && !ip && !pubkey &&
               !dept;
    }
    bool operator==(const OptionSet&) const = default;
};

/// A parsed, validated administrative command. No partially-valid Intent is
/// ever constructed: the parser returns either this or a typed error.
struct Intent {
    Verb verb = Verb::Query;
    // Asset kind the verb operates on. Implied by the command word for
    // creates and deletes; unset for `show`.
    std::optional<AssetKind> target_kind;
    std::string subject;
    OptionSet options;

    bool operator==(const Intent&) const = default;
};

}  // namespace xdac::policy
