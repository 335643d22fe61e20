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

#include "xdac/policy/parser.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "xdac/common/bytes.hpp"

namespace xdac::policy {

const char* verb_name(Verb v) {
    switch (v) {
        case Verb::CreateMember: return "CreateMember";
        case Verb::CreateGroup: return "CreateGroup";
        case Verb::CreateResource: return "CreateResource";
        case Verb::CreatePolicyRule: return "CreatePolicyRule";
        case Verb::Delete: return "Delete";
        case Verb::Query: return "Query";
    }
    return "?";
}

const char* kind_name(AssetKind k) {
    switch (k) {
        case AssetKind::User: return "user";
        case AssetKind::Department: return "dept";
        case AssetKind::Resource: return "res";
        case AssetKind::Policy: return "policy";
    }
    return "?";
}

const char* action_name(Action a) { return a == Action::Allow ? "allow" : "deny"; }

const char* parse_error_name(ParseErrorCode c) {
    switch (c) {
        case ParseErrorCode::UnknownVerb: return "UnknownVerb";
        case ParseErrorCode::MalformedOption: return "MalformedOption";
        case ParseErrorCode::IllegalOption: return "IllegalOption";
        case ParseErrorCode::MissingRequired: return "MissingRequired";
        case ParseErrorCode::MalformedDuration: return "MalformedDuration";
    }
    return "?";
}

std::optional<QualifiedName> parse_qualified(const std::string& ref) {
    auto dot = ref.find('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 == ref.size()) return std::nullopt;
    return QualifiedName{ref.substr(0, dot), ref.substr(dot + 1)};
}

uint64_t DurationLiteral::seconds() const {
    uint64_t factor = 1;
    switch (unit) {
        case 's': factor = 1; break;
        case 'm': factor = 60; break;
        case 'h': factor = 3600; break;
        case 'd': factor = 86400; break;
        case 'w': factor = 604800; break;
    }
    return magnitude * factor;
}

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

// Names appear in state keys, so the accepted alphabet is restricted to
// characters that cannot collide with the key scheme separators.
bool valid_name(const std::string& s) {
    if (s.empty()) return false;
    for (unsigned char c : s) {
        bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '.' || c == '_' ||
                  c == '-';
        if (!ok) return false;
    }
    return true;
}

bool valid_qualified(const std::string& s) {
    auto q = parse_qualified(s);
    return q && valid_name(q->org) && valid_name(q->name);
}

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

struct VerbInfo {
    const char* word;
    Verb verb;
    std::optional<AssetKind> kind;
};

constexpr VerbInfo kVerbs[] = {
    {"member-create", Verb::CreateMember, AssetKind::User},
    {"group-create", Verb::CreateGroup, AssetKind::Department},
    {"resource-create", Verb::CreateResource, AssetKind::Resource},
    {"policy-rule-create", Verb::CreatePolicyRule, AssetKind::Policy},
    {"member-delete", Verb::Delete, AssetKind::User},
    {"group-delete", Verb::Delete, AssetKind::Department},
    {"resource-delete", Verb::Delete, AssetKind::Resource},
    {"policy-rule-delete", Verb::Delete, AssetKind::Policy},
    {"show", Verb::Query, std::nullopt},
};

enum class Opt { Add, Src, Dst, Actions, Timeout, Ip, Pubkey, Dept };

std::optional<Opt> opt_by_name(const std::string& name) {
    if (name == "add") return Opt::Add;
    if (name == "src") return Opt::Src;
    if (name == "dst") return Opt::Dst;
    if (name == "actions") return Opt::Actions;
    if (name == "timeout") return Opt::Timeout;
    if (name == "ip") return Opt::Ip;
    if (name == "pubkey") return Opt::Pubkey;
    if (name == "dept") return Opt::Dept;
    return std::nullopt;
}

bool opt_legal(Verb v, Opt o) {
    switch (v) {
        case Verb::CreateMember:
            return o == Opt::Ip || o == Opt::Pubkey || o == Opt::Dept;
        case Verb::CreateGroup:
            return o == Opt::Add || o == Opt::Timeout;
        case Verb::CreateResource:
            return o == Opt::Ip;
        case Verb::CreatePolicyRule:
            return o == Opt::Src || o == Opt::Dst || o == Opt::Actions || o == Opt::Timeout;
        case Verb::Delete:
            // policy-rule-delete addresses the rule by its composite key.
            return o == Opt::Src || o == Opt::Dst;
        case Verb::Query:
            return o == Opt::Src || o == Opt::Dst;
    }
    return false;
}

std::optional<uint32_t> parse_dotted_quad(const std::string& s) {
    uint32_t parts[4];
    size_t idx = 0, start = 0;
    for (size_t i = 0; i <= s.size(); i++) {
        if (i == s.size() || s[i] == '.') {
            if (i == start || idx >= 4) return std::nullopt;
            uint32_t v = 0;
            for (size_t j = start; j < i; j++) {
                if (s[j] < '0' || s[j] > '9') return std::nullopt;
                v = v * 10 + static_cast<uint32_t>(s[j] - '0');
                if (v > 255) return std::nullopt;
            }
            if (i - start > 3) return std::nullopt;
            parts[idx++] = v;
            start = i + 1;
        }
    }
    if (idx != 4) return std::nullopt;
    return (parts[0] << 24) | (parts[1] << 16) | (parts[2] << 8) | parts[3];
}

ParseError err(ParseErrorCode c, std::string detail) { return ParseError{c, std::move(detail)}; }

}  // namespace

Result<DurationLiteral, ParseError> parse_duration(const std::string& text) {
    std::string s = lower(text);
    size_t i = 0;
    uint64_t mag = 0;
    bool any = false;
    for (; i < s.size() && s[i] >= '0' && s[i] <= '9'; i++) {
        if (mag > (UINT64_MAX - 9) / 10)
            return err(ParseErrorCode::MalformedDuration, "magnitude overflow: " + text);
        mag = mag * 10 + static_cast<uint64_t>(s[i] - '0');
        any = true;
    }
    if (!any) return err(ParseErrorCode::MalformedDuration, "no digits: " + text);
    if (mag == 0) return err(ParseErrorCode::MalformedDuration, "zero magnitude: " + text);
    if (i + 1 != s.size())
        return err(ParseErrorCode::MalformedDuration, "missing or trailing unit: " + text);
    char unit = s[i];
    uint64_t factor;
    switch (unit) {
        case 's': factor = 1; break;
        case 'm': factor = 60; break;
        case 'h': factor = 3600; break;
        case 'd': factor = 86400; break;
        case 'w': factor = 604800; break;
        default:
            return err(ParseErrorCode::MalformedDuration, std::string("unknown unit: ") + unit);
    }
    if (mag > UINT64_MAX / factor)
        return err(ParseErrorCode::MalformedDuration, "overflow: " + text);
    return DurationLiteral{mag, unit};
}

Result<Intent, ParseError> parse_command(const std::string& line) {
    auto tokens = tokenize(line);
    if (tokens.empty()) return err(ParseErrorCode::UnknownVerb, "empty command");
    if (lower(tokens[0]) != "gbp")
        return err(ParseErrorCode::UnknownVerb, "expected 'gbp', got '" + tokens[0] + "'");
    if (tokens.size() < 2) return err(ParseErrorCode::UnknownVerb, "missing verb");

    std::string verb_word = lower(tokens[1]);
    const VerbInfo* info = nullptr;
    for (const auto& v : kVerbs)
        if (verb_word == v.word) {
            info = &v;
            break;
        }
    if (!info) return err(ParseErrorCode::UnknownVerb, "unknown verb '" + verb_word + "'");

    Intent intent;
    intent.verb = info->verb;
    intent.target_kind = info->kind;

    size_t i = 2;
    if (i >= tokens.size() || tokens[i].rfind("--", 0) == 0)
        return err(ParseErrorCode::MissingRequired, "missing subject name");
    intent.subject = lower(tokens[i++]);
    if (!valid_name(intent.subject) && !valid_qualified(intent.subject))
        return err(ParseErrorCode::MalformedOption,
                   "subject contains invalid characters: " + intent.subject);

    bool seen[8] = {};
    for (; i < tokens.size(); i++) {
        const std::string& tok = tokens[i];
        if (tok.rfind("--", 0) != 0)
            return err(ParseErrorCode::MalformedOption, "unexpected argument '" + tok + "'");

        // --key:value and --key value are both accepted
        std::string key, value;
        auto colon = tok.find(':');
        if (colon != std::string::npos) {
            key = lower(tok.substr(2, colon - 2));
            value = tok.substr(colon + 1);
        } else {
            key = lower(tok.substr(2));
            if (i + 1 >= tokens.size() || tokens[i + 1].rfind("--", 0) == 0)
                return err(ParseErrorCode::MalformedOption, "option --" + key + " needs a value");
            value = tokens[++i];
        }
        value = lower(value);

        auto opt = opt_by_name(key);
        if (!opt) return err(ParseErrorCode::IllegalOption, "unknown option --" + key);
        if (!opt_legal(intent.verb, *opt))
            return err(ParseErrorCode::IllegalOption,
                       "option --" + key + " not allowed for " + verb_word);
        if (seen[static_cast<size_t>(*opt)])
            return err(ParseErrorCode::MalformedOption, "duplicate option --" + key);
        seen[static_cast<size_t>(*opt)] = true;
        if (value.empty())
            return err(ParseErrorCode::MalformedOption, "option --" + key + " has empty value");

        switch (*opt) {
            case Opt::Add: {
                std::stringstream ss(value);
                std::string item;
                while (std::getline(ss, item, ',')) {
                    if (!valid_qualified(item))
                        return err(ParseErrorCode::MalformedOption,
                                   "--add expects org.user, got '" + item + "'");
                    if (std::find(intent.options.add_members.begin(),
                                  intent.options.add_members.end(),
                                  item) != intent.options.add_members.end())
                        return err(ParseErrorCode::MalformedOption,
                                   "--add lists '" + item + "' twice");
                    intent.options.add_members.push_back(item);
                }
                if (intent.options.add_members.empty())
                    return err(ParseErrorCode::MalformedOption, "--add has no members");
                break;
            }
            case Opt::Src:
            case Opt::Dst: {
                if (!valid_name(value) && !valid_qualified(value))
                    return err(ParseErrorCode::MalformedOption,
                               "--" + key + " has invalid name '" + value + "'");
                (*opt == Opt::Src ? intent.options.src : intent.options.dst) = value;
                break;
            }
            case Opt::Actions: {
                if (value == "allow")
                    intent.options.actions = Action::Allow;
                else if (value == "deny")
                    intent.options.actions = Action::Deny;
                else
                    return err(ParseErrorCode::MalformedOption,
                               "--actions expects allow|deny, got '" + value + "'");
                break;
            }
            case Opt::Timeout: {
                auto d = parse_duration(value);
                if (!d) return d.error();
                intent.options.timeout_s = d.value().seconds();
                break;
            }
            case Opt::Ip: {
                auto ip = parse_dotted_quad(value);
                if (!ip || *ip == 0)
                    return err(ParseErrorCode::MalformedOption,
                               "--ip expects a non-zero dotted quad, got '" + value + "'");
                intent.options.ip = *ip;
                break;
            }
            case Opt::Pubkey: {
                auto raw = from_hex(value);
                if (!raw || raw->size() != crypto::kPublicKeySize)
                    return err(ParseErrorCode::MalformedOption,
                               "--pubkey expects 64 hex chars");
                crypto::PublicKey pk{};
                std::copy(raw->begin(), raw->end(), pk.begin());
                intent.options.pubkey = pk;
                break;
            }
            case Opt::Dept: {
                if (!valid_name(value))
                    return err(ParseErrorCode::MalformedOption,
                               "--dept has invalid name '" + value + "'");
                intent.options.dept = value;
                break;
            }
        }
    }

    if (intent.verb == Verb::CreatePolicyRule && (!intent.options.src || !intent.options.dst))
        return err(ParseErrorCode::MissingRequired, "policy-rule-create needs --src and --dst");
    if (intent.verb == Verb::Delete && intent.target_kind == AssetKind::Policy &&
        (!intent.options.src || !intent.options.dst))
        return err(ParseErrorCode::MissingRequired, "policy-rule-delete needs --src and --dst");

    return intent;
}

namespace {

std::string verb_word_of(const Intent& intent) {
    switch (intent.verb) {
        case Verb::CreateMember: return "member-create";
        case Verb::CreateGroup: return "group-create";
        case Verb::CreateResource: return "resource-create";
        case Verb::CreatePolicyRule: return "policy-rule-create";
        case Verb::Query: return "show";
        case Verb::Delete:
            switch (intent.target_kind.value_or(AssetKind::User)) {
                case AssetKind::User: return "member-delete";
                case AssetKind::Department: return "group-delete";
                case AssetKind::Resource: return "resource-delete";
                case AssetKind::Policy: return "policy-rule-delete";
            }
    }
    return "?";
}

std::string dotted_quad(uint32_t ip) {
    std::ostringstream os;
    os << ((ip >> 24) & 0xff) << '.' << ((ip >> 16) & 0xff) << '.' << ((ip >> 8) & 0xff) << '.'
       << (ip & 0xff);
    return os.str();
}

}  // namespace

std::string print_command(const Intent& intent) {
    std::ostringstream os;
    os << "gbp " << verb_word_of(intent) << ' ' << intent.subject;
    const OptionSet& o = intent.options;
    if (!o.add_members.empty()) {
        os << " --add ";
        for (size_t i = 0; i < o.add_members.size(); i++) {
            if (i) os << ',';
            os << o.add_members[i];
        }
    }
    if (o.src) os << " --src " << *o.src;
    if (o.dst) os << " --dst " << *o.dst;
    if (o.actions) os << " --actions " << action_name(*o.actions);
    if (o.timeout_s) os << " --timeout " << *o.timeout_s << 's';
    if (o.ip) os << " --ip " << dotted_quad(*o.ip);
    if (o.pubkey) os << " --pubkey " << to_hex(*o.pubkey);
    if (o.dept) os << " --dept " << *o.dept;
    return os.str();
}

}  // namespace xdac::policy
