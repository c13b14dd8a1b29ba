#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gpd/models.hpp"

namespace gpd::suite {

struct Config {
  std::uint64_t seed = 17;
  /// Replaces pradines-1 in every criterion (mutation checks).
  std::optional<QuotientBundleModel> pradines_1;
};

struct Result {
  int id = 0;
  std::string title;
  bool pass = false;
  nlohmann::json detail;
};

inline constexpr int kCriteria = 10;

Result run_criterion(int id, const Config& cfg);
std::vector<Result> run_all(const Config& cfg);
nlohmann::json to_json(const Result& r);

/// Single-fault model mutations and the axiom (0-based) each must break.
struct Mutation {
  std::string name;
  Model model;
  int axiom = 0;
};
std::vector<Mutation> axiom_mutations();

}  // namespace gpd::suite
