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

#include <string>

#include "xdac/common/result.hpp"
#include "xdac/policy/intent.hpp"

namespace xdac::policy {

enum class ParseErrorCode : uint8_t {
    UnknownVerb,
    MalformedOption,   // option name recognized, value invalid (or bad argument shape)
    IllegalOption,     // option not allowed for this verb
    MissingRequired,
    MalformedDuration,
};

struct ParseError {
    ParseErrorCode code;
    std::string detail;
};

const char* parse_error_name(ParseErrorCode c);

/// Parses one command line of the administrative grammar (docs/grammar.md).
/// Total over arbitrary byte strings: returns an Intent or a typed error,
/// never throws on malformed input. Names are normalized to lowercase.
Result<Intent, ParseError> parse_command(const std::string& line);

/// Parses a duration literal such as "1w". Zero magnitude, missing digits,
/// unknown unit suffixes and overflow are MalformedDuration.
Result<DurationLiteral, ParseError> parse_duration(const std::string& text);

/// Canonical single-line rendering. parse_command(print_command(i)) == i
/// for every Intent the parser produces.
std::string print_command(const Intent& intent);

}  // namespace xdac::policy
