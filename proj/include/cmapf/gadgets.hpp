#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include "cmapf/cmis.hpp"
#include "cmapf/planner.hpp"

namespace cmapf {

struct Literal {
  std::uint32_t variable = 1;  // 1-based
  bool positive = true;

  friend bool operator==(const Literal&, const Literal&) = default;
};

using Clause = std::vector<Literal>;

struct CnfFormula {
  std::uint32_t variable_count = 0;
  std::vector<Clause> clauses;

  // Clauses hold 1 to 3 literals over variables 1..variable_count.
  void validate() const;
  // assignment[i] is the value of variable i + 1.
  bool evaluate(const std::vector<bool>& assignment) const;

  friend bool operator==(const CnfFormula&, const CnfFormula&) = default;
};

// DIMACS subset: optional `c` comment lines, one `p cnf n m` header, clauses
// terminated by 0. Errors carry the line number.
CnfFormula parse_dimacs(std::istream& in);
CnfFormula parse_dimacs_string(const std::string& text);

// Node ids of a generated gadget: s = 0, d1 = 1, clause nodes in literal
// order, t, then (o_i, x_i, not x_i) per variable.
struct SatLayout {
  VertexId s = 0;
  VertexId d1 = 1;
  VertexId t = 0;
  std::vector<std::vector<VertexId>> clause_nodes;
  std::vector<VertexId> obstacle;  // o_i, indexed by variable - 1
  std::vector<VertexId> positive;  // x_i
  std::vector<VertexId> negative;  // not x_i
};

inline constexpr PebbleId kMarkedPebble = 0;

struct SatGadget {
  CmapfInstance instance;  // C-MP mode: pebble 0 marked, obstacle i at o_i
  SatLayout layout;
};

SatGadget sat_to_cmp(const CnfFormula& f);

// Reads the obstacle positions of a final configuration back into a truth
// assignment. Throws "gadget contract violated" if an obstacle never left o_i.
std::vector<bool> decode_assignment(const SatGadget& gadget, const Configuration& final_cfg);

struct MisInstance {
  Digraph graph;  // symmetric edge set

  void validate() const;
};

// G' = G plus a hub bidirected to every vertex; one unit pair per edge of G
// and a knapsack over all of V' with hub weight 2 and the given capacity.
CmisInstance mis_to_cmis(const MisInstance& m, Weight capacity);

// Id of the hub added by mis_to_cmis.
VertexId mis_hub(const MisInstance& m);

}  // namespace cmapf
