#pragma once

#include <compare>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mcas/model.hpp"

namespace mcas {

enum class Problem { DecTiger, Broadcast, Meet2x2, Meet3x3, BoxPush };

/// UI uniform start, WP wall/send penalties, DP 3-agent buffer fill rates,
/// SS same-row start (Meet 2x2), AG reward for meeting anywhere (Meet 3x3).
enum class Qualifier { UI, WP, DP, SS, AG };

std::string_view to_string(Problem p);
std::string_view to_string(Qualifier q);
/// Accepts dec-tiger, broadcast, meet-2x2, meet-3x3, box-push. Throws UnsupportedSpec.
Problem parse_problem(std::string_view name);
Qualifier parse_qualifier(std::string_view name);
/// Comma-separated list, e.g. "UI,WP"; empty string or "-" for none.
std::set<Qualifier> parse_qualifiers(std::string_view list);

struct BenchmarkSpec {
  Problem problem = Problem::DecTiger;
  std::size_t num_agents = 2;
  std::set<Qualifier> qualifiers;

  /// Qualifiers joined by sep in enum order, "-" when none.
  std::string qualifier_string(char sep = ',') const;
  /// e.g. "meet-3x3_2_AG-UI-WP", usable as a file stem.
  std::string key() const;

  auto operator<=>(const BenchmarkSpec&) const = default;
};

/// Throws UnsupportedSpec for combinations outside the supported table.
void validate(const BenchmarkSpec& spec);

DecModel build_benchmark(const BenchmarkSpec& spec);

struct BenchmarkInstance {
  BenchmarkSpec spec;
  DecModel model;
};

BenchmarkInstance make_instance(const BenchmarkSpec& spec);

/// Adds q to the instance's qualifier set and regenerates. Applying a
/// qualifier that is already present returns the instance unchanged.
BenchmarkInstance apply_qualifier(const BenchmarkInstance& inst, Qualifier q);

/// Source notes written as the header comment of emitted model files.
std::string provenance(const BenchmarkSpec& spec);

/// The in-scope rows of the published results table.
std::vector<BenchmarkSpec> table1_specs();

inline constexpr double kDiscount = 0.9;
inline constexpr double kListenAccuracy = 0.85;
inline constexpr double kMoveSuccess = 0.6;
inline constexpr double kBoxActionSuccess = 0.9;
inline constexpr double kWallPenalty = 0.1;
inline constexpr double kSendPenalty = 0.1;

}  // namespace mcas
