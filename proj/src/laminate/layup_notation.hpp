// Copyright 2026 the maxent-nn authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string_view>
#include <vector>

namespace maxent::laminate {

/// Expands stacking-sequence notation into ply angles (degrees, top to
/// bottom). Grammar, with no whitespace allowed:
///
///   layup  := '[' ply ('/' ply)* ']' suffix?
///   ply    := angle ('_' count)?
///   angle  := ('+' | '-')? digit+ ('.' digit+)?
///   suffix := '_' count 'S'? | '_' 'S' | 'S'
///   count  := digit+            (value >= 1)
///
/// `90_2` repeats a ply, the count in the suffix repeats the whole group and
/// a trailing `S` appends the mirror image. "[90_2/45/-45]_2S" expands to 16
/// plies.
///
/// Throws ParseError carrying the 0-based offset of the offending character.
std::vector<double> parse_layup_notation(std::string_view text);

}  // namespace maxent::laminate
