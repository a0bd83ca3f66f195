#pragma once

#include <string_view>

#include "tsa/grid/types.hpp"

namespace tsa::grid {

/// Parses the sectioned case-file format:
///
///   # comment
///   [SYSTEM]
///   mva_base=100.0
///   [BUS]
///   id kind p_load q_load g_shunt b_shunt v_setpoint   (kind: SLACK|PV|PQ)
///   [BRANCH]
///   from to r x b_charging status                      (status: 1|0)
///   [GEN]
///   bus p_gen v_setpoint h d xd_prime mva_base
///
/// Branch order is preserved exactly as listed. Throws ParseError with the
/// offending line number for malformed rows and ValidationError for invariant
/// violations (duplicate ids, missing slack, dangling endpoints).
GridCase parse_case(std::string_view text);

/// Reads a case file from disk and parses it.
GridCase load_case_file(const std::string& path);

}  // namespace tsa::grid
