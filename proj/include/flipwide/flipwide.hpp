#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "flipwide/errors.hpp"
#include "flipwide/graph.hpp"
#include "flipwide/indiscernibles.hpp"
#include "flipwide/sampleset.hpp"

namespace flipwide {

struct FlipWideRequest {
  Graph graph;
  Sequence a_set;
  std::size_t radius = 1;
  std::size_t target_size = 1;
  SampleBudget budget;
  ExtractionConfig extraction;
};

enum class LevelCase { Base, Even, Odd };

const char* to_string(LevelCase c);

struct LevelTrace {
  std::size_t level = 0;
  Sequence surviving;
  std::vector<Flip> flips;
  LevelCase parity = LevelCase::Base;
  std::vector<Vertex> samples;
  /// The surviving sequence was already independent at this level; no work done.
  bool shortcut = false;
};

struct FlipWideResult {
  Sequence b_set;
  FlipSet flip_set;
  std::vector<LevelTrace> trace;
};

/// |B| ended below the requested size. The carried result is complete and
/// verified for the achieved size.
class FlipWideShortfall : public BudgetError {
 public:
  FlipWideShortfall(FlipWideResult result, std::size_t target);
  const FlipWideResult& result() const { return result_; }
  std::size_t target() const { return target_; }

 private:
  FlipWideResult result_;
  std::size_t target_;
};

FlipWideResult flip_widen(const FlipWideRequest& req);

struct FlipWideVerdict {
  bool ok = true;
  std::optional<Edge> violation;
  std::string detail;
  explicit operator bool() const { return ok; }
};

/// Applies the flips pair by pair on a plain adjacency matrix and checks every
/// pair of B by BFS. Shares no code with the construction.
FlipWideVerdict verify_flip_wide(const Graph& g, const FlipWideResult& res, std::size_t radius);

}  // namespace flipwide
