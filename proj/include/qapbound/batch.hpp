#pragma once

#include <map>
#include <string>
#include <vector>

#include "qapbound/bound_solver.hpp"
#include "qapbound/results.hpp"

namespace qapbound {

/// Environment variable read for the worker count when the manifest does
/// not set one.
inline constexpr const char* kWorkersEnv = "QAPBOUND_WORKERS";

enum class InstanceFormat { dd, qaplib };

struct BatchInstance {
  std::string path;  // absolute, or relative to the manifest directory
  std::string group = "default";
  InstanceFormat format = InstanceFormat::dd;
  bool augment = false;
  double time_limit = 0.0;  // overrides the group limit when > 0
};

struct BatchManifest {
  std::vector<Method> methods{Method::bca, Method::hung, Method::hung_ri};
  int max_iterations = 0;
  double time_limit = 0.0;  // default when neither instance nor group sets one
  int workers = 0;          // 0 = environment or hardware default
  double dummy_cost = 0.0;
  std::vector<BatchInstance> instances;
  std::map<std::string, double> group_time_limits;
};

/// JSON manifest:
///   {"methods": ["bca", "hung", "hung-ri"], "max_iterations": 50, "time_limit": 10,
///    "workers": 2, "dummy_cost": 0,
///    "groups": {"<name>": {"time_limit": 60}},
///    "instances": [{"path": "a.dd", "group": "<name>", "format": "dd" | "qaplib",
///                   "augment": false, "time_limit": 5}]}
/// Relative paths are resolved against base_dir. Throws InstanceError on
/// malformed manifests.
BatchManifest parse_manifest(const std::string& text, const std::string& base_dir);
BatchManifest load_manifest(const std::string& path);

/// Time limit used for one instance.
double effective_time_limit(const BatchManifest& manifest, const BatchInstance& inst);

/// Runs every method on every instance, each run in its own solver state,
/// with up to `workers` runs in flight. Rows are ordered by instance, then by
/// method, independently of scheduling. Best-bound flags are set.
ResultTable run_batch(const BatchManifest& manifest, int workers = 0);

/// Worker count from the argument, then the manifest, then the environment,
/// then the hardware.
int resolve_workers(const BatchManifest& manifest, int requested);

}  // namespace qapbound
