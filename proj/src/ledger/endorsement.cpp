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

#include "xdac/ledger/endorsement.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace xdac::ledger {

EndorsementPolicyExpr EndorsementPolicyExpr::org(OrgId id) {
    return EndorsementPolicyExpr(ExprOrg{std::move(id)});
}

EndorsementPolicyExpr EndorsementPolicyExpr::all_of(std::vector<EndorsementPolicyExpr> children) {
    return EndorsementPolicyExpr(ExprAnd{std::move(children)});
}

EndorsementPolicyExpr EndorsementPolicyExpr::any_of(std::vector<EndorsementPolicyExpr> children) {
    return EndorsementPolicyExpr(ExprOr{std::move(children)});
}

EndorsementPolicyExpr EndorsementPolicyExpr::k_of_n(uint32_t k, std::vector<OrgId> orgs) {
    return EndorsementPolicyExpr(ExprKOfN{k, std::move(orgs)});
}

EndorsementPolicyExpr EndorsementPolicyExpr::two_f_plus_one(uint32_t f, std::vector<OrgId> orgs) {
    return EndorsementPolicyExpr(ExprTwoFPlusOne{f, std::move(orgs)});
}

namespace {

bool has_duplicates(const std::vector<OrgId>& orgs) {
    std::set<OrgId> seen(orgs.begin(), orgs.end());
    return seen.size() != orgs.size();
}

size_t count_present(const std::vector<OrgId>& orgs, const std::set<OrgId>& endorsed) {
    size_t n = 0;
    for (const auto& o : orgs) n += endorsed.count(o);
    return n;
}

}  // namespace

Result<std::monostate, std::string> EndorsementPolicyExpr::validate() const {
    struct V {
        Result<std::monostate, std::string> operator()(const ExprOrg& e) const {
            if (e.org.empty()) return std::string("empty org id");
            return std::monostate{};
        }
        Result<std::monostate, std::string> operator()(const ExprAnd& e) const {
            if (e.children.empty()) return std::string("AND with no children");
            for (const auto& c : e.children) {
                auto r = c.validate();
                if (!r) return r;
            }
            return std::monostate{};
        }
        Result<std::monostate, std::string> operator()(const ExprOr& e) const {
            if (e.children.empty()) return std::string("OR with no children");
            for (const auto& c : e.children) {
                auto r = c.validate();
                if (!r) return r;
            }
            return std::monostate{};
        }
        Result<std::monostate, std::string> operator()(const ExprKOfN& e) const {
            if (e.k < 1 || e.k > e.orgs.size()) return std::string("KOFN requires 1 <= k <= n");
            if (has_duplicates(e.orgs)) return std::string("KOFN org list has duplicates");
            return std::monostate{};
        }
        Result<std::monostate, std::string> operator()(const ExprTwoFPlusOne& e) const {
            if (e.orgs.size() <= static_cast<size_t>(3) * e.f)
                return std::string("TWOFPLUSONE requires n > 3f");
            if (has_duplicates(e.orgs)) return std::string("TWOFPLUSONE org list has duplicates");
            return std::monostate{};
        }
    };
    return std::visit(V{}, node_);
}

bool EndorsementPolicyExpr::evaluate(const std::set<OrgId>& endorsed) const {
    struct V {
        const std::set<OrgId>& endorsed;
        bool operator()(const ExprOrg& e) const { return endorsed.count(e.org) > 0; }
        bool operator()(const ExprAnd& e) const {
            return std::all_of(e.children.begin(), e.children.end(),
                               [&](const auto& c) { return c.evaluate(endorsed); });
        }
        bool operator()(const ExprOr& e) const {
            return std::any_of(e.children.begin(), e.children.end(),
                               [&](const auto& c) { return c.evaluate(endorsed); });
        }
        bool operator()(const ExprKOfN& e) const {
            return count_present(e.orgs, endorsed) >= e.k;
        }
        bool operator()(const ExprTwoFPlusOne& e) const {
            return count_present(e.orgs, endorsed) >= static_cast<size_t>(2) * e.f + 1;
        }
    };
    return std::visit(V{endorsed}, node_);
}

std::set<OrgId> EndorsementPolicyExpr::referenced_orgs() const {
    std::set<OrgId> out;
    struct V {
        std::set<OrgId>& out;
        void operator()(const ExprOrg& e) const { out.insert(e.org); }
        void operator()(const ExprAnd& e) const {
            for (const auto& c : e.children) std::visit(V{out}, c.node());
        }
        void operator()(const ExprOr& e) const {
            for (const auto& c : e.children) std::visit(V{out}, c.node());
        }
        void operator()(const ExprKOfN& e) const { out.insert(e.orgs.begin(), e.orgs.end()); }
        void operator()(const ExprTwoFPlusOne& e) const {
            out.insert(e.orgs.begin(), e.orgs.end());
        }
    };
    std::visit(V{out}, node_);
    return out;
}

std::string EndorsementPolicyExpr::to_string() const {
    struct V {
        std::string operator()(const ExprOrg& e) const { return e.org; }
        std::string operator()(const ExprAnd& e) const { return list("AND", e.children); }
        std::string operator()(const ExprOr& e) const { return list("OR", e.children); }
        std::string operator()(const ExprKOfN& e) const {
            return threshold("KOFN", e.k, e.orgs);
        }
        std::string operator()(const ExprTwoFPlusOne& e) const {
            return threshold("TWOFPLUSONE", e.f, e.orgs);
        }
        static std::string list(const char* name, const std::vector<EndorsementPolicyExpr>& cs) {
            std::ostringstream os;
            os << name << '(';
            for (size_t i = 0; i < cs.size(); i++) {
                if (i) os << ',';
                os << cs[i].to_string();
            }
            os << ')';
            return os.str();
        }
        static std::string threshold(const char* name, uint32_t n, const std::vector<OrgId>& orgs) {
            std::ostringstream os;
            os << name << '(' << n << ';';
            for (size_t i = 0; i < orgs.size(); i++) {
                if (i) os << ',';
                os << orgs[i];
            }
            os << ')';
            return os.str();
        }
    };
    return std::visit(V{}, node_);
}

namespace {

// Recursive-descent parser for the textual policy syntax:
//   expr  := NAME | AND(expr,...) | OR(expr,...)
//          | KOFN(k;org,...) | TWOFPLUSONE(f;org,...)
struct PolicyParser {
    const std::string& s;
    size_t pos = 0;
    std::string error;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) pos++;
    }

    std::string ident() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_' ||
                s[pos] == '-' || s[pos] == '.'))
            pos++;
        return s.substr(start, pos - start);
    }

    bool expect(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            pos++;
            return true;
        }
        error = std::string("expected '") + c + "' at offset " + std::to_string(pos);
        return false;
    }

    std::optional<EndorsementPolicyExpr> expr() {
        std::string name = ident();
        if (name.empty()) {
            error = "expected name at offset " + std::to_string(pos);
            return std::nullopt;
        }
        std::string upper = name;
        std::transform(upper.begin(), upper.end(), upper.begin(),
                       [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
        skip_ws();
        bool call = pos < s.size() && s[pos] == '(';
        if (!call) return EndorsementPolicyExpr::org(name);

        if (upper == "AND" || upper == "OR") {
            pos++;  // consume '('
            std::vector<EndorsementPolicyExpr> children;
            while (true) {
                auto c = expr();
                if (!c) return std::nullopt;
                children.push_back(std::move(*c));
                skip_ws();
                if (pos < s.size() && s[pos] == ',') {
                    pos++;
                    continue;
                }
                break;
            }
            if (!expect(')')) return std::nullopt;
            return upper == "AND" ? EndorsementPolicyExpr::all_of(std::move(children))
                                  : EndorsementPolicyExpr::any_of(std::move(children));
        }
        if (upper == "KOFN" || upper == "TWOFPLUSONE") {
            pos++;
            skip_ws();
            size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) pos++;
            if (pos == start) {
                error = "expected count at offset " + std::to_string(pos);
                return std::nullopt;
            }
            uint32_t n = static_cast<uint32_t>(std::stoul(s.substr(start, pos - start)));
            if (!expect(';')) return std::nullopt;
            std::vector<OrgId> orgs;
            while (true) {
                std::string o = ident();
                if (o.empty()) {
                    error = "expected org at offset " + std::to_string(pos);
                    return std::nullopt;
                }
                orgs.push_back(std::move(o));
                skip_ws();
                if (pos < s.size() && s[pos] == ',') {
                    pos++;
                    continue;
                }
                break;
            }
            if (!expect(')')) return std::nullopt;
            return upper == "KOFN" ? EndorsementPolicyExpr::k_of_n(n, std::move(orgs))
                                   : EndorsementPolicyExpr::two_f_plus_one(n, std::move(orgs));
        }
        error = "unknown combinator '" + name + "'";
        return std::nullopt;
    }
};

}  // namespace

Result<EndorsementPolicyExpr, std::string> EndorsementPolicyExpr::parse(const std::string& text) {
    PolicyParser p{text};
    auto e = p.expr();
    if (!e) return p.error;
    p.skip_ws();
    if (p.pos != text.size()) return std::string("trailing input at offset ") + std::to_string(p.pos);
    auto v = e->validate();
    if (!v) return v.error();
    return *e;
}

std::set<OrgId> valid_endorser_set(
    const std::vector<Endorsement>& endorsements, const crypto::Digest& signed_digest,
    const std::function<std::optional<crypto::PublicKey>(const OrgId&)>& key_of,
    uint64_t* verify_counter) {
    std::set<OrgId> valid;
    for (const auto& e : endorsements) {
        auto pk = key_of(e.endorser);
        if (!pk) continue;
        if (verify_counter) (*verify_counter)++;
        if (crypto::verify_digest(*pk, signed_digest, e.signature)) valid.insert(e.endorser);
    }
    return valid;
}

}  // namespace xdac::ledger
