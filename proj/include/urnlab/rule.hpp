#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace urnlab {

// Protocol rule (k, E): draw k balls; if the number of black balls drawn is
// in E, recolor all k black, otherwise all white. Immutable once built.
struct Rule {
  int k = 1;
  std::vector<int> black_counts;  // the set E, sorted, deduplicated, in [0, k]

  bool recolors_black(int draws) const;
  Rule dual() const;  // (k, E*) with i in E* iff k - i not in E
  std::string to_string() const;
};

bool operator==(const Rule& a, const Rule& b);

// Validates and canonicalizes. Throws ValidationError for k < 1 or an
// element of E outside [0, k].
Rule make_rule(int k, std::vector<int> black_counts);

// Accepts "k:i1,i2,..." ("k:" for the empty set) or a named rule alias
// ("ehrenfest" = 1:0).
Rule parse_rule(const std::string& text);

void to_json(nlohmann::json& j, const Rule& r);
void from_json(const nlohmann::json& j, Rule& r);
void to_json(nlohmann::ordered_json& j, const Rule& r);

}  // namespace urnlab
