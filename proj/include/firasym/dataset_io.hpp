#pragma once

#include <cstdint>
#include <string>

#include "firasym/signal.hpp"

namespace firasym {

// CSV layout:
//   # n=<n> theta0=<comma list> seed=<seed>
//   # warmup=<comma list>          (u(1-n)..u(-1); omitted when n = 1)
//   t,u,y
//   <t>,<u(t-1)>,<y(t)>            for t = 1..N
// Values are printed with enough digits to round-trip doubles exactly.
// The disturbance v is not persisted; it is recovered as y - Phi theta0.
void write_dataset_csv(const std::string& path, const Dataset& d, std::uint64_t seed);

Dataset read_dataset_csv(const std::string& path);

// Optional sidecar with the unobservable truth (v and theta0) for fixtures.
void write_truth_sidecar(const std::string& path, const Dataset& d);

}  // namespace firasym
