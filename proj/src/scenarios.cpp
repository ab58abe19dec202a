#include "sharpfw/scenarios.hpp"

#include "sharpfw/core.hpp"

#include <algorithm>
#include <map>

namespace sharpfw {
namespace {

using nlohmann::json;

// Minimizers on a boundary sit at the origin where possible: near a
// coordinate of size 1 the late steps fall below one ulp and the iterate
// freezes.
const std::map<std::string, json>& registry() {
  static const std::map<std::string, json> table = [] {
    std::map<std::string, json> t;
    t["stadium-fig1"] = {
        {"name", "stadium-fig1"},
        {"set", {{"kind", "stadium"}, {"half_length", 1.0}}},
        {"objective", {{"kind", "stadium_psi"}, {"c", 2.0}}},
        {"rules", {"ss", "ls", "ol:2"}},
        {"x0", {0.0, 1.0}},
        {"t_max", 100000},
        {"analysis", {{"h_from", 1000}, {"h_to", 100000}, {"slope_max", -1.05}}},
    };
    t["openloop-family"] = {
        {"name", "openloop-family"},
        {"set", {{"kind", "stadium"}, {"half_length", 1.0}}},
        {"objective", {{"kind", "stadium_psi"}, {"c", 2.0}}},
        {"rules", {"ol:2", "ol:3", "ol:4"}},
        {"x0", {0.0, 1.0}},
        {"t_max", 100000},
    };
    t["simplex-negative-control"] = {
        {"name", "simplex-negative-control"},
        {"set", {{"kind", "simplex"}, {"dim", 50}}},
        {"objective", {{"kind", "quadratic"}, {"identity", 1.0}}},
        {"rules", {"ss"}},
        {"x0", [] {
           std::vector<double> e1(50, 0.0);
           e1[0] = 1.0;
           return e1;
         }()},
        {"t_max", 100000},
        {"analysis", {{"slope_min", -1.15}, {"slope_max", -0.9}}},
    };
    // gradient bounded away from zero on the set: ||grad|| >= 2 dist(z, C) = 2
    t["lp4-lbg"] = {
        {"name", "lp4-lbg"},
        {"set", {{"kind", "lp_ball"}, {"center", {1.0, 0.0}}, {"radius", 1.0}, {"p", 4.0}}},
        {"objective", {{"kind", "distance_power"}, {"center", {-2.0, 0.0}}, {"r", 2.0}}},
        {"rules", {"ss"}},
        {"x0", {1.0, 1.0}},
        {"t_max", 1000000},
        {"analysis", {{"slope_max", -1.8}}},
    };
    t["lp4-linear"] = {
        {"name", "lp4-linear"},
        {"set", {{"kind", "lp_ball"}, {"center", {1.0, 0.0}}, {"radius", 1.0}, {"p", 4.0}}},
        {"objective", {{"kind", "linear"}, {"c", {1.0, 0.0}}}},
        {"rules", {"ss"}},
        {"x0", {1.0, 1.0}},
        {"t_max", 10000},
    };
    t["heb-r2-ball"] = {
        {"name", "heb-r2-ball"},
        {"set", {{"kind", "l2_ball"}, {"center", {0.0, 1.0}}, {"radius", 1.0}}},
        {"objective", {{"kind", "distance_power"}, {"center", {0.0, 0.0}}, {"r", 2.0}}},
        {"rules", {"ss", "ls", "ol:2"}},
        {"x0", {1.0, 1.0}},
        {"t_max", 1000000},
        {"analysis", {{"slope_max", -1.8}}},
    };
    t["lbg-linear-ball"] = {
        {"name", "lbg-linear-ball"},
        {"set", {{"kind", "l2_ball"}, {"center", {0.0, 0.0}}, {"radius", 1.0}}},
        {"objective", {{"kind", "linear"}, {"c", {0.6, 0.8}}, {"L", 1.0}}},
        {"rules", {"ss"}},
        {"x0", {1.0, 0.0}},
        {"t_max", 200},
    };
    t["lbg-exterior-ball"] = {
        {"name", "lbg-exterior-ball"},
        {"set", {{"kind", "l2_ball"}, {"center", {0.0, 0.0}}, {"radius", 1.0}}},
        {"objective", {{"kind", "distance_power"}, {"center", {0.0, -3.0}}, {"r", 2.0}}},
        {"rules", {"ss"}},
        {"x0", {1.0, 0.0}},
        {"t_max", 1000},
    };
    return t;
  }();
  return table;
}

}  // namespace

std::vector<std::string> scenario_names() {
  std::vector<std::string> names;
  for (const auto& [name, doc] : registry()) names.push_back(name);
  return names;
}

json scenario_config(const std::string& name) {
  const auto& table = registry();
  const auto it = table.find(name);
  if (it == table.end()) throw InvalidArgument("unknown scenario '" + name + "'");
  return it->second;
}

}  // namespace sharpfw
