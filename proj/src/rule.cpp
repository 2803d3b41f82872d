#include "urnlab/rule.hpp"

#include <algorithm>
#include <sstream>

#include "urnlab/errors.hpp"

namespace urnlab {

bool Rule::recolors_black(int draws) const {
  return std::binary_search(black_counts.begin(), black_counts.end(), draws);
}

Rule Rule::dual() const {
  std::vector<int> star;
  for (int i = 0; i <= k; ++i)
    if (!recolors_black(k - i)) star.push_back(i);
  return make_rule(k, std::move(star));
}

std::string Rule::to_string() const {
  std::ostringstream out;
  out << k << ":";
  for (size_t i = 0; i < black_counts.size(); ++i) {
    if (i) out << ",";
    out << black_counts[i];
  }
  return out.str();
}

bool operator==(const Rule& a, const Rule& b) {
  return a.k == b.k && a.black_counts == b.black_counts;
}

Rule make_rule(int k, std::vector<int> black_counts) {
  if (k < 1) throw ValidationError("rule requires k >= 1, got k = " + std::to_string(k));
  std::sort(black_counts.begin(), black_counts.end());
  black_counts.erase(std::unique(black_counts.begin(), black_counts.end()),
                     black_counts.end());
  for (int i : black_counts) {
    if (i < 0 || i > k)
      throw ValidationError("rule element " + std::to_string(i) +
                            " outside the valid draw counts [0, " + std::to_string(k) + "]");
  }
  Rule r;
  r.k = k;
  r.black_counts = std::move(black_counts);
  return r;
}

Rule parse_rule(const std::string& text) {
  if (text == "ehrenfest") return make_rule(1, {0});
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw ValidationError("unknown rule syntax: \"" + text +
                          "\" (expected \"k:i1,i2,...\" or a named rule)");
  auto parse_int = [&](const std::string& s) {
    try {
      size_t used = 0;
      int v = std::stoi(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw ValidationError("unknown rule syntax: \"" + text + "\" (bad integer \"" + s + "\")");
    }
  };
  int k = parse_int(text.substr(0, colon));
  std::vector<int> e;
  std::string rest = text.substr(colon + 1);
  if (!rest.empty()) {
    std::istringstream in(rest);
    std::string item;
    while (std::getline(in, item, ',')) e.push_back(parse_int(item));
    if (!rest.empty() && rest.back() == ',')
      throw ValidationError("unknown rule syntax: \"" + text + "\" (trailing comma)");
  }
  return make_rule(k, std::move(e));
}

void to_json(nlohmann::json& j, const Rule& r) {
  j = nlohmann::json{{"k", r.k}, {"E", r.black_counts}};
}

void to_json(nlohmann::ordered_json& j, const Rule& r) {
  j = nlohmann::ordered_json{{"k", r.k}, {"E", r.black_counts}};
}

void from_json(const nlohmann::json& j, Rule& r) {
  r = make_rule(j.at("k").get<int>(), j.at("E").get<std::vector<int>>());
}

}  // namespace urnlab
