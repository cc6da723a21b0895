#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <string>

#include "cmapf/planner.hpp"

namespace cmapf {

// Parse failure with the 1-based line it refers to (0 when not line-bound).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Line-oriented instance format, '#' starts a comment:
//   nodes 1 2 3        (repeatable)      grid 5
//   edge u v                             undirected
//   constraint k: v1 v2 ... [weights w1 w2 ...]
//   adjacency-constraints                (one unit pair per adjacency)
//   pebble id src [dst]                  marked id
CmapfInstance parse_instance(std::istream& in);
CmapfInstance parse_instance_string(const std::string& text);
CmapfInstance load_instance(const std::string& path);

// Canonical form: nodes, directed edges, constraints, pebbles, marked.
void write_instance(std::ostream& out, const CmapfInstance& inst);
std::string instance_to_string(const CmapfInstance& inst);

struct PlanFile {
  std::optional<Status> status;
  Plan plan;
};

void write_plan(std::ostream& out, Status status, const Plan& plan);
PlanFile parse_plan(std::istream& in);
PlanFile load_plan(const std::string& path);

}  // namespace cmapf
