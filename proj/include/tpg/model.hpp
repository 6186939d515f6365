#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tpg/fed.hpp"
#include "tpg/guard.hpp"

namespace tpg {

// Clock ids are model-level: 0 is reserved for the special clock z, user
// clocks are 1..n (which is also their DBM index).
constexpr int kClockZ = 0;

struct Location {
    int id = 0;
    std::string name;
    int color = 0;
    Guard inv = Guard::tt();
    Guard urg0 = Guard::ff();
    Guard urg1 = Guard::ff();
    Fed inv_fed = Fed(1);
    Fed urg0_fed = Fed(1);
    Fed urg1_fed = Fed(1);
};

struct ActionInfo {
    std::string name;
    int owner = 0;  // 0 Controller, 1 Environment
};

struct Edge {
    int src = 0;
    int action = 0;
    Guard guard = Guard::tt();
    Fed guard_fed = Fed(1);
    std::vector<int> resets;  // user clock ids
    int dst = 0;
};

struct TGA {
    std::vector<std::string> clock_names;  // user clocks only
    std::vector<ActionInfo> actions;
    std::vector<Location> locations;
    std::vector<Edge> edges;
    int max_color = 0;

    int nclocks() const { return (int)clock_names.size(); }
    int dim() const { return nclocks() + 1; }  // DBM dimension without z

    std::optional<int> location_id(const std::string& name) const;
    std::optional<int> action_id(const std::string& name) const;
    int action_owner(int a) const { return actions[a].owner; }
    const std::string& action_name(int a) const { return actions[a].name; }
    std::vector<int> edges_from(int loc) const;
};

TGA parse_arena(const std::string& text);
std::string serialize_arena(const TGA& g);

// Largest constant per clock over all guards of the arena; indexed by model
// clock id (entry 0 carries the bound 1 used for z by the augmentation).
std::map<int, int> max_constants(const TGA& g);
// Same data as DBM caps for dimension nclocks+1 (user clocks only).
std::vector<int> clock_caps(const TGA& g);

enum class BenchmarkVariant { depicted, inv_lt_1, inv_lt_n };
TGA gen_benchmark(int n, BenchmarkVariant variant);
std::optional<BenchmarkVariant> benchmark_variant_of(const std::string& name);
std::string benchmark_variant_name(BenchmarkVariant v);

// Empty iff the arena is well-formed and deadlock-free (checked region-wise).
std::vector<std::string> validate_arena(const TGA& g);

}  // namespace tpg
