#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rrdq/cli/json_io.hpp"
#include "rrdq/random.hpp"
#include "rrdq/rees.hpp"
#include "rrdq/weyl.hpp"

namespace rrdq::cli {

inline constexpr std::uint64_t kDefaultSeed = 20240531;

/// Command-line settings shared by every subcommand. Unset optionals take
/// the command's own default.
struct Settings {
  std::uint64_t seed = kDefaultSeed;
  std::optional<int> trunc_t;
  std::optional<int> trunc_u;
  std::optional<int> dim;
  std::optional<int> max_deg;
  std::optional<int> fiber_trunc;
  std::string scale = "small";
  std::string cls = "todd";
  std::string basis = "chern";
  std::vector<std::string> checks;
  std::vector<int> criteria;  // suite subset, empty for all
  bool mutate_moyal_sign = false;
  std::optional<Json> input;

  [[nodiscard]] weyl::StarOptions star_options() const {
    weyl::StarOptions o;
    o.mutate_first_order_sign = mutate_moyal_sign;
    return o;
  }
};

struct Check {
  std::string id;
  bool passed = false;
  std::string detail;
  Json lhs;  // counterexample sides, null when passed
  Json rhs;
};

struct Report {
  std::string command;
  std::uint64_t seed = kDefaultSeed;
  Json precision = Json::object();
  std::vector<Check> checks;
  Json result;
  std::string error;

  /// "error" when an error was recorded, else "verified" iff every check passed.
  [[nodiscard]] std::string status() const;
  /// 0 verified, 1 violated, 2 error.
  [[nodiscard]] int exit_code() const;
  /// Sorts checks by identifier.
  void canonicalize();
};

Json to_json(const Report& r);
/// One line per check plus a status line.
std::string summary(const Report& r);

/// Runs one subcommand. Throws InputError for malformed input.
Report run_task(const std::string& command, const Settings& s);

/// One acceptance criterion.
struct Criterion {
  int number;
  std::string id;
  std::function<Check(const Settings&)> run;
};

const std::vector<Criterion>& criteria();

/// Runs the selected criteria (all by default) and merges them in
/// identifier order.
Report run_suite(const Settings& s);

/// z_d dz_1 (x) E_11 on the chart z1..zd.
fedosov::GlConnection default_connection(int d);
/// Identity plus z_d E_1d (d >= 2), or the constant 2 for d = 1.
fedosov::PolyMatrix default_transition(int d);

using ReesPairs = std::vector<std::pair<rees::ReesElement, rees::ReesElement>>;

/// Pairs of random Rees elements; dimensions alternate 1, 2 unless fixed.
ReesPairs random_rees_pairs(Rng& rng, int count, std::optional<int> dim);
/// sigma(ab) = sigma(a) sigma(b).
Check rees_sigma_check(const ReesPairs& pairs);
/// iota multiplicative and injective, exact round trip, order bounds of products.
Check rees_iota_check(const ReesPairs& pairs);
/// rees_to_weyl multiplicative and compatible with sigma at t = 0.
Check rees_to_weyl_check(const ReesPairs& pairs, const weyl::StarOptions& opts);
/// rees_to_weyl(iota^-1(phi_E(d))) = phi_A(d).
Check rees_phi_check(const std::vector<int>& dims, const weyl::StarOptions& opts);

/// Corpus size for the scale: `small` as given, `full` four times larger.
int corpus(const Settings& s, int small);

}  // namespace rrdq::cli
