#pragma once

#include "qcaembed/circuit.hpp"
#include "qcaembed/rng.hpp"

#include <cstdint>

namespace qcaembed {

struct GenConfig {
  int majority_min = 1;
  int majority_max = 1;
  int inverter_min = 0;
  int inverter_max = 0;
  int driver_min = 0;
  int driver_max = 1 << 20;
  int wire_min = 3;      // cells per wire segment; 0 joins terminals directly
  int wire_max = 12;
  int max_branch = 3;    // largest degree of a wire node
  double feed_from_gate = 0.5;  // chance a later input is fed by a gate instead of a driver
  AdjacencyMode adjacency = AdjacencyMode::limited;
  int max_attempts = 100;

  void validate() const;
};

/// Random circuit from majority gates and inverters. Components form a
/// random DAG; every input is fed either by a driver (a single wire whose
/// first cell carries the driver bias +-1) or by an earlier component's
/// output. All inputs fed by one output share a wire tree grown by
/// sequential random attachment from that output. Throws
/// std::invalid_argument when the driver bounds cannot be met.
ConnectivityGraph generate(const GenConfig& config, Rng& rng, const std::string& name = "generated");

} // namespace qcaembed
