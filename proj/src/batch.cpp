#include "qapbound/batch.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <mutex>
#include <thread>

#include <nlohmann/json.hpp>

#include "qapbound/io.hpp"

namespace qapbound {

using nlohmann::json;

namespace {

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InstanceError(std::string("manifest field '") + key + "': " + e.what());
  }
}

struct Loaded {
  IqapInstance instance;
  double offset = 0.0;
};

Loaded load_instance(const BatchManifest& manifest, const BatchInstance& spec) {
  const auto text = read_file(spec.path);
  Loaded out;
  if (spec.format == InstanceFormat::qaplib) {
    auto conv = convert_qaplib_to_iqap(parse_qaplib(text));
    out.instance = std::move(conv.instance);
    out.offset = conv.offset;
  } else {
    out.instance = parse_dd(text, manifest.dummy_cost);
  }
  if (spec.augment) out.instance = augment_instance(out.instance);
  return out;
}

}  // namespace

BatchManifest parse_manifest(const std::string& text, const std::string& base_dir) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InstanceError(std::string("manifest is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InstanceError("manifest must be a JSON object");

  BatchManifest m;
  if (j.contains("methods")) {
    m.methods.clear();
    for (const auto& name : j.at("methods")) {
      if (!name.is_string()) throw InstanceError("manifest methods must be strings");
      try {
        m.methods.push_back(parse_method(name.get<std::string>()));
      } catch (const std::invalid_argument& e) {
        throw InstanceError(e.what());
      }
    }
    if (m.methods.empty()) throw InstanceError("manifest lists no methods");
  }
  m.max_iterations = get_or(j, "max_iterations", 0);
  m.time_limit = get_or(j, "time_limit", 0.0);
  m.workers = get_or(j, "workers", 0);
  m.dummy_cost = get_or(j, "dummy_cost", 0.0);
  if (m.max_iterations < 0 || m.time_limit < 0 || m.workers < 0)
    throw InstanceError("manifest limits must be nonnegative");

  if (j.contains("groups")) {
    if (!j.at("groups").is_object()) throw InstanceError("manifest groups must be an object");
    for (const auto& [name, g] : j.at("groups").items()) {
      const double limit = get_or(g, "time_limit", 0.0);
      if (limit < 0) throw InstanceError("negative time limit for group '" + name + "'");
      m.group_time_limits[name] = limit;
    }
  }
  if (!j.contains("instances") || !j.at("instances").is_array())
    throw InstanceError("manifest needs an 'instances' array");
  for (const auto& item : j.at("instances")) {
    BatchInstance inst;
    if (item.is_string()) {
      inst.path = item.get<std::string>();
    } else {
      inst.path = get_or<std::string>(item, "path", "");
      inst.group = get_or<std::string>(item, "group", "default");
      const auto format = get_or<std::string>(item, "format", "dd");
      if (format == "dd")
        inst.format = InstanceFormat::dd;
      else if (format == "qaplib")
        inst.format = InstanceFormat::qaplib;
      else
        throw InstanceError("unknown instance format '" + format + "'");
      inst.augment = get_or(item, "augment", false);
      inst.time_limit = get_or(item, "time_limit", 0.0);
      if (inst.time_limit < 0) throw InstanceError("negative instance time limit");
    }
    if (inst.path.empty()) throw InstanceError("manifest instance without a path");
    std::filesystem::path p(inst.path);
    if (p.is_relative()) inst.path = (std::filesystem::path(base_dir) / p).lexically_normal().string();
    m.instances.push_back(std::move(inst));
  }
  for (const auto& inst : m.instances)
    if (m.max_iterations == 0 && effective_time_limit(m, inst) == 0)
      throw InstanceError("instance '" + inst.path + "' has neither a time limit nor an iteration cap");
  return m;
}

BatchManifest load_manifest(const std::string& path) {
  const auto dir = std::filesystem::path(path).parent_path().string();
  return parse_manifest(read_file(path), dir.empty() ? "." : dir);
}

double effective_time_limit(const BatchManifest& manifest, const BatchInstance& inst) {
  if (inst.time_limit > 0) return inst.time_limit;
  auto it = manifest.group_time_limits.find(inst.group);
  if (it != manifest.group_time_limits.end() && it->second > 0) return it->second;
  return manifest.time_limit;
}

int resolve_workers(const BatchManifest& manifest, int requested) {
  if (requested > 0) return requested;
  if (manifest.workers > 0) return manifest.workers;
  if (const char* env = std::getenv(kWorkersEnv)) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

ResultTable run_batch(const BatchManifest& manifest, int workers) {
  // Parse everything first so input errors surface before any solving.
  std::vector<Loaded> loaded;
  loaded.reserve(manifest.instances.size());
  for (const auto& spec : manifest.instances) loaded.push_back(load_instance(manifest, spec));

  const std::size_t num_methods = manifest.methods.size();
  const std::size_t jobs = loaded.size() * num_methods;
  std::vector<ResultRow> rows(jobs);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    while (true) {
      const std::size_t job = next.fetch_add(1);
      if (job >= jobs) return;
      const std::size_t i = job / num_methods;
      const auto& spec = manifest.instances[i];
      try {
        SolverConfig config;
        config.method = manifest.methods[job % num_methods];
        config.max_iterations = manifest.max_iterations;
        config.time_limit = effective_time_limit(manifest, spec);
        const auto report = compute_lower_bound(loaded[i].instance, config, spec.path);
        auto& row = rows[job];
        row.instance = spec.path;
        row.group = spec.group;
        row.method = config.method;
        row.final_bound = report.final_bound;
        row.offset = loaded[i].offset;
        row.iterations = report.iterations;
        row.wall_time = report.wall_time;
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  const int n = std::min<int>(resolve_workers(manifest, workers), static_cast<int>(std::max<std::size_t>(jobs, 1)));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  ResultTable table;
  for (auto& r : rows) table.add(std::move(r));
  table.mark_best();
  return table;
}

}  // namespace qapbound
