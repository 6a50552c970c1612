#pragma once

#include <string>
#include <string_view>

#include "mcas/model.hpp"

namespace mcas {

/// Parses the line-oriented model format:
///
///   agents: n
///   states: |S|
///   actions: k1 ... kn
///   observations: m1 ... mn
///   discount: g
///   start: p1 ... p|S|                  (optional, default uniform)
///   T: <joint-a> : <s> : <s'> <prob>    (omitted entries are 0)
///   Z: <joint-a> : <s'> : <joint-o> <prob>
///   R: <s> : <joint-a> <value>
///
/// `#` starts a comment. Indices are 0-based flat joint indices. Header lines
/// may appear in any order. Throws SyntaxError (with line/column) for
/// malformed input and SemanticError for dangling indices, agent-count
/// mismatches and non-stochastic rows.
DecModel parse_model(std::string_view text);

/// Inverse of parse_model. Only nonzero T/Z/R entries are written; every real
/// is printed with 17 significant digits so the round trip is exact.
/// `header_comment` lines are emitted as `#` comments at the top.
std::string emit_model(const DecModel& dec, std::string_view header_comment = {});

/// Shortest-roundtrip-safe formatting used by every text format in the
/// project (17 significant digits).
std::string format_real(double value);

DecModel load_model_file(const std::string& path);
void save_text_file(const std::string& path, std::string_view contents);
std::string read_text_file(const std::string& path);

}  // namespace mcas
