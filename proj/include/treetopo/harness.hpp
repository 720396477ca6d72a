#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "treetopo/metric.hpp"
#include "treetopo/region.hpp"

namespace treetopo {

// Deterministic pseudo-random stream (splitmix64); identical on every
// platform for a given seed, unlike the standard distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  std::uint64_t below(std::uint64_t n);                  // uniform in [0, n)
  std::int64_t range(std::int64_t lo, std::int64_t hi);  // inclusive
  bool chance(std::uint64_t num, std::uint64_t den);

 private:
  std::uint64_t state_;
};

struct GeneratorConfig {
  std::uint64_t seed = 1;
  int min_vertices = 4;
  int max_vertices = 12;
  Rat min_edge_length = Rat(1, 4);
  Rat max_edge_length = Rat(4);
  int max_denominator = 16;  // bound for edge lengths and sampled offsets
  int samples = 1000;
};

// Raised for truncated or corrupted record lines, as opposed to a replayed
// case that genuinely fails its check.
struct RecordError : std::runtime_error {
  explicit RecordError(const std::string& what) : std::runtime_error(what) {}
};

// Random attachment: vertex i joins a uniformly chosen earlier vertex, edge
// lengths are uniform bounded-denominator rationals, and the root is a
// uniformly chosen vertex. Deterministic in config.seed / the given stream.
std::shared_ptr<const TreeSkeleton> generate_skeleton(const GeneratorConfig& config);
std::shared_ptr<const TreeSkeleton> generate_skeleton(const GeneratorConfig& config, Rng& rng);

Point random_point(const TreeSkeleton& skel, Rng& rng, int max_denominator);

// One executed case: the property, its index in the run, the verdict, and
// every input replay needs, as ordered key=value fields. Values never contain
// spaces, so a record is one whitespace-separated line.
struct CaseRecord {
  std::string property;
  std::uint64_t index = 0;
  bool pass = true;
  std::vector<std::pair<std::string, std::string>> fields;

  std::string to_line() const;
  static CaseRecord parse(std::string_view line);
};

struct PropertyReport {
  std::string property;
  std::uint64_t cases_run = 0;
  std::uint64_t vacuous_cases = 0;  // cases with nothing to sample (tiny trees)
  std::vector<CaseRecord> failures;
  double elapsed_seconds = 0.0;

  bool ok() const { return failures.empty(); }

  // Summary line plus one record line per failure; parse() round-trips.
  std::string to_text() const;
  static PropertyReport parse(std::string_view text);
};

const std::vector<std::string>& property_names();
bool has_property(std::string_view name);

// Runs config.samples generated cases of one property. Throws
// std::invalid_argument for an unknown property name.
PropertyReport run_property(std::string_view name, const GeneratorConfig& config);

// Re-runs exactly the case captured in a record line (ignoring its recorded
// verdict). Throws on unknown properties and truncated or corrupted lines.
PropertyReport replay(std::string_view record_line);

// Renders case #index of a property as a replayable record line.
std::string render_case(std::string_view name, const GeneratorConfig& config, std::uint64_t index);

// Chains along every base-to-extremal-vertex path through the region's cut
// points: attained chains (supremum = last element) of each short run and
// pair, plus, for every non-base breakpoint L on the path, unattained chains
// ending at the cut immediately below L with limit L. With those limit chains
// present, is_inaccessible_by_directed_joins agrees exactly with
// is_scott_open's convergence check. `budget` truncates only the attained
// extras, never the limit chains.
std::vector<DirectedChain> chain_family(const Region& region, const OrderView& view,
                                        int max_points = 6, std::size_t budget = 2000);

}  // namespace treetopo
