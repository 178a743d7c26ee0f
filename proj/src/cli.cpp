#include "topodyn/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <vector>

#include "topodyn/claims.hpp"
#include "topodyn/suite.hpp"
#include "topodyn/system_doc.hpp"
#include "topodyn/zoo.hpp"

namespace topodyn {

namespace {

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) return std::nullopt;
  std::ostringstream content;
  content << file.rdbuf();
  return content.str();
}

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\n") == std::string::npos) return value;
  std::string quoted = "\"";
  for (char c : value) {
    if (c == '"') quoted += "\"\"";
    else quoted += c;
  }
  quoted += '"';
  return quoted;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string result;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) result += sep;
    result += parts[i];
  }
  return result;
}

std::string points_field(const std::vector<std::string>& names) {
  return join(names, ";");
}

std::string opens_field(const std::vector<std::string>& names,
                        const FiniteTopology& topo) {
  std::vector<std::string> sets;
  for (SubsetMask open : topo.opens()) {
    sets.push_back(format_subset(names, open));
  }
  return join(sets, ";");
}

std::string map_field(const std::vector<std::string>& names,
                      const SelfMap& map) {
  std::vector<std::string> entries;
  for (int x = 0; x < map.point_count(); ++x) {
    entries.push_back(names[static_cast<std::size_t>(x)] + ":" +
                      names[static_cast<std::size_t>(map.apply(x))]);
  }
  return join(entries, ";");
}

std::string property_header_name(Property p) {
  std::string name;
  for (char c : property_name(p)) name += (c == '-') ? '_' : c;
  return name;
}

nlohmann::ordered_json subset_names(const std::vector<std::string>& names,
                                    SubsetMask s) {
  auto list = nlohmann::ordered_json::array();
  s.for_each_point(
      [&](int x) { list.push_back(names[static_cast<std::size_t>(x)]); });
  return list;
}

nlohmann::ordered_json system_json(const NamedSystem& named) {
  nlohmann::ordered_json doc;
  doc["points"] = named.point_names;
  auto opens = nlohmann::ordered_json::array();
  for (SubsetMask open : named.system.topology().opens()) {
    opens.push_back(subset_names(named.point_names, open));
  }
  doc["opens"] = opens;
  auto map = nlohmann::ordered_json::object();
  for (int x = 0; x < named.system.point_count(); ++x) {
    map[named.point_names[static_cast<std::size_t>(x)]] =
        named.point_names[static_cast<std::size_t>(named.system.map().apply(x))];
  }
  doc["map"] = map;
  return doc;
}

nlohmann::ordered_json properties_json(const PropertyProfile& profile) {
  auto out = nlohmann::ordered_json::object();
  for (Property p : kPropertyOrder) {
    out[std::string(property_name(p))] = profile.get(p);
  }
  return out;
}

// ---------------------------------------------------------------- validate

int cmd_validate(const std::string& path, std::ostream& out,
                 std::ostream& err) {
  const auto text = read_file(path);
  if (!text) {
    err << "error: cannot open file: " << path << "\n";
    return 1;
  }
  const NamedSystem named = parse_system_document(*text);

  // The parse succeeded, so a raw reparse cannot fail; it tells us whether
  // canonicalization had to restore the empty set or the full space.
  const auto raw = nlohmann::json::parse(*text);
  std::set<std::string> all_names(named.point_names.begin(),
                                  named.point_names.end());
  bool had_empty = false;
  bool had_full = false;
  for (const auto& open : raw.at("opens")) {
    std::set<std::string> members;
    for (const auto& name : open) members.insert(name.get<std::string>());
    if (members.empty()) had_empty = true;
    if (members == all_names) had_full = true;
  }
  if (!had_empty) err << "note: added the empty set to opens\n";
  if (!had_full) err << "note: added the full space to opens\n";

  out << serialize_system_document(named, /*pretty=*/true) << "\n";
  return 0;
}

// ---------------------------------------------------------------- classify

void classify_text(const NamedSystem& named, const PropertyProfile& profile,
                   std::ostream& out) {
  const auto& names = named.point_names;
  const FiniteTopology& topo = named.system.topology();

  out << "points: " << join(names, ", ") << "\n";
  std::vector<std::string> open_sets;
  for (SubsetMask open : topo.opens()) {
    open_sets.push_back(format_subset(names, open));
  }
  out << "opens: " << join(open_sets, "; ") << "\n";
  std::vector<std::string> arrows;
  for (int x = 0; x < named.system.point_count(); ++x) {
    arrows.push_back(names[static_cast<std::size_t>(x)] + "->" +
                     names[static_cast<std::size_t>(
                         named.system.map().apply(x))]);
  }
  out << "map: " << join(arrows, ", ") << "\n";

  for (Property p : kPropertyOrder) {
    out << property_name(p) << ": " << (profile.get(p) ? "true" : "false");
    switch (p) {
      case Property::hypercyclic:
        if (profile.hypercyclic) {
          out << " (points " << format_subset(names, profile.hypercyclic_points)
              << ")";
        }
        break;
      case Property::topologically_transitive:
        if (profile.transitivity_failure) {
          out << " (witness U=" << format_subset(names,
                                                 profile.transitivity_failure->u)
              << ", V=" << format_subset(names, profile.transitivity_failure->v)
              << ")";
        }
        break;
      case Property::strongly_topologically_transitive:
        if (profile.strong_transitivity_failure) {
          out << " (witness "
              << format_subset(names, *profile.strong_transitivity_failure)
              << ")";
        }
        break;
      case Property::strongly_transitive_finite:
        if (profile.strong_transitivity_bound) {
          out << " (bound " << *profile.strong_transitivity_bound << ")";
        }
        break;
      case Property::mixing:
        if (profile.mixing_failure) {
          out << " (witness U=" << format_subset(names, profile.mixing_failure->u)
              << ", V=" << format_subset(names, profile.mixing_failure->v)
              << ")";
        }
        break;
      case Property::supermixing:
        if (profile.supermixing_failure) {
          out << " (witness "
              << format_subset(names, *profile.supermixing_failure) << ")";
        }
        break;
      case Property::hypermixing:
        if (profile.hypermixing_failure) {
          out << " (witness "
              << format_subset(names, *profile.hypermixing_failure) << ")";
        }
        break;
      case Property::has_closed_invariant_subset:
        if (profile.invariant_closed_set) {
          out << " (witness "
              << format_subset(names, *profile.invariant_closed_set) << ")";
        }
        break;
      default:
        break;
    }
    out << "\n";
  }
}

void classify_json(const NamedSystem& named, const PropertyProfile& profile,
                   std::ostream& out) {
  const auto& names = named.point_names;
  nlohmann::ordered_json doc = system_json(named);
  doc["properties"] = properties_json(profile);
  doc["hypercyclic_points"] = subset_names(names, profile.hypercyclic_points);
  if (profile.strong_transitivity_bound) {
    doc["strong_transitivity_bound"] = *profile.strong_transitivity_bound;
  }
  auto witnesses = nlohmann::ordered_json::object();
  if (profile.transitivity_failure) {
    witnesses["transitivity_failure"] = {
        {"u", subset_names(names, profile.transitivity_failure->u)},
        {"v", subset_names(names, profile.transitivity_failure->v)}};
  }
  if (profile.strong_transitivity_failure) {
    witnesses["strong_transitivity_failure"] =
        subset_names(names, *profile.strong_transitivity_failure);
  }
  if (profile.mixing_failure) {
    witnesses["mixing_failure"] = {
        {"u", subset_names(names, profile.mixing_failure->u)},
        {"v", subset_names(names, profile.mixing_failure->v)}};
  }
  if (profile.supermixing_failure) {
    witnesses["supermixing_failure"] =
        subset_names(names, *profile.supermixing_failure);
  }
  if (profile.hypermixing_failure) {
    witnesses["hypermixing_failure"] =
        subset_names(names, *profile.hypermixing_failure);
  }
  if (profile.invariant_closed_set) {
    witnesses["invariant_closed_set"] =
        subset_names(names, *profile.invariant_closed_set);
  }
  doc["witnesses"] = witnesses;
  out << doc.dump(2) << "\n";
}

void classify_csv(const NamedSystem& named, const PropertyProfile& profile,
                  std::ostream& out) {
  const auto& names = named.point_names;
  out << "points,opens,map";
  for (Property p : kPropertyOrder) out << ',' << property_header_name(p);
  out << ",hypercyclic_points,strong_transitivity_bound"
      << ",transitivity_failure_u,transitivity_failure_v"
      << ",strong_transitivity_failure,mixing_failure_u,mixing_failure_v"
      << ",supermixing_failure,hypermixing_failure,invariant_closed_set\n";

  out << csv_field(points_field(names)) << ','
      << csv_field(opens_field(names, named.system.topology())) << ','
      << csv_field(map_field(names, named.system.map()));
  for (Property p : kPropertyOrder) out << ',' << (profile.get(p) ? 1 : 0);
  auto set_field = [&](const std::optional<SubsetMask>& s) {
    out << ',' << (s ? csv_field(format_subset(names, *s)) : std::string());
  };
  out << ',' << csv_field(format_subset(names, profile.hypercyclic_points));
  out << ',';
  if (profile.strong_transitivity_bound) {
    out << *profile.strong_transitivity_bound;
  }
  set_field(profile.transitivity_failure
                ? std::optional<SubsetMask>(profile.transitivity_failure->u)
                : std::nullopt);
  set_field(profile.transitivity_failure
                ? std::optional<SubsetMask>(profile.transitivity_failure->v)
                : std::nullopt);
  set_field(profile.strong_transitivity_failure);
  set_field(profile.mixing_failure
                ? std::optional<SubsetMask>(profile.mixing_failure->u)
                : std::nullopt);
  set_field(profile.mixing_failure
                ? std::optional<SubsetMask>(profile.mixing_failure->v)
                : std::nullopt);
  set_field(profile.supermixing_failure);
  set_field(profile.hypermixing_failure);
  set_field(profile.invariant_closed_set);
  out << "\n";
}

int cmd_classify(const std::string& path, const std::string& format,
                 std::ostream& out, std::ostream& err) {
  const auto text = read_file(path);
  if (!text) {
    err << "error: cannot open file: " << path << "\n";
    return 1;
  }
  const NamedSystem named = parse_system_document(*text);
  const PropertyProfile profile = classify(named.system);
  if (format == "json") {
    classify_json(named, profile, out);
  } else if (format == "csv") {
    classify_csv(named, profile, out);
  } else {
    classify_text(named, profile, out);
  }
  return 0;
}

// -------------------------------------------------------------------- jmix

int cmd_jmix(const std::string& path, const std::string& point_name, bool all,
             std::ostream& out, std::ostream& err) {
  if (all == !point_name.empty()) {
    err << "error: pass exactly one of --point NAME or --all\n";
    return 2;
  }
  const auto text = read_file(path);
  if (!text) {
    err << "error: cannot open file: " << path << "\n";
    return 1;
  }
  const NamedSystem named = parse_system_document(*text);
  const auto& names = named.point_names;
  if (all) {
    for (int x = 0; x < named.system.point_count(); ++x) {
      out << names[static_cast<std::size_t>(x)] << ": "
          << format_subset(names, jmix(named.system, x)) << "\n";
    }
    out << "X: "
        << format_subset(names, jmix_of_set(named.system,
                                            named.system.topology().universe()))
        << "\n";
    return 0;
  }
  const auto found = std::find(names.begin(), names.end(), point_name);
  if (found == names.end()) {
    err << "error: unknown point name: " << point_name << "\n";
    return 2;
  }
  const int x = static_cast<int>(found - names.begin());
  out << format_subset(names, jmix(named.system, x)) << "\n";
  return 0;
}

// --------------------------------------------------------------- enumerate

void atlas_csv_header(std::ostream& out) {
  out << "points,opens,map,key";
  for (Property p : kPropertyOrder) out << ',' << property_header_name(p);
  out << "\n";
}

void atlas_csv_row(const AtlasRecord& record,
                   const std::vector<std::string>& names, std::ostream& out) {
  out << csv_field(points_field(names)) << ','
      << csv_field(opens_field(names, *record.topology)) << ','
      << csv_field(map_field(names, record.map)) << ','
      << record.key.to_string();
  for (Property p : kPropertyOrder) {
    out << ',' << (record.profile.get(p) ? 1 : 0);
  }
  out << "\n";
}

void atlas_jsonl_row(const AtlasRecord& record,
                     const std::vector<std::string>& names,
                     std::ostream& out) {
  const NamedSystem named{names, DynSystem(record.topology, record.map)};
  nlohmann::ordered_json doc = system_json(named);
  doc["key"] = record.key.to_string();
  doc["properties"] = properties_json(record.profile);
  out << doc.dump() << "\n";
}

int cmd_enumerate(int points, bool dedup, const std::string& out_path,
                  const std::string& format, std::ostream& out,
                  std::ostream& err) {
  std::ofstream file;
  std::ostream* sink = &out;
  if (!out_path.empty()) {
    file.open(out_path, std::ios::binary);
    if (!file) {
      err << "error: cannot write file: " << out_path << "\n";
      return 1;
    }
    sink = &file;
  }
  const std::vector<std::string> names = default_point_names(points);
  if (format == "csv") atlas_csv_header(*sink);
  const AtlasCounts counts =
      build_atlas(points, dedup, [&](const AtlasRecord& record) {
        if (format == "csv") {
          atlas_csv_row(record, names, *sink);
        } else {
          atlas_jsonl_row(record, names, *sink);
        }
      });
  err << "enumerated " << counts.systems << " systems, emitted "
      << counts.emitted << " rows\n";
  return 0;
}

// ------------------------------------------------------------------ search

std::vector<std::string> split_names(const std::vector<std::string>& values) {
  std::vector<std::string> names;
  for (const std::string& value : values) {
    std::string current;
    for (char c : value) {
      if (c == ',') {
        if (!current.empty()) names.push_back(current);
        current.clear();
      } else {
        current += c;
      }
    }
    if (!current.empty()) names.push_back(current);
  }
  return names;
}

int cmd_search(int points, const std::vector<std::string>& require,
               const std::vector<std::string>& forbid,
               const std::vector<std::string>& filters, std::uint64_t limit,
               bool dedup, std::ostream& out, std::ostream& err) {
  SearchQuery query;
  query.n = points;
  query.dedup = dedup;
  if (limit > 0) query.limit = limit;
  for (const std::string& name : split_names(require)) {
    const auto property = property_from_name(name);
    if (!property) {
      err << "error: unknown property: " << name << "\n";
      return 2;
    }
    query.required.add(*property);
  }
  for (const std::string& name : split_names(forbid)) {
    const auto property = property_from_name(name);
    if (!property) {
      err << "error: unknown property: " << name << "\n";
      return 2;
    }
    query.forbidden.add(*property);
  }
  for (const std::string& name : split_names(filters)) {
    if (name == "continuous") {
      query.filter_continuous = true;
    } else if (name == "no-isolated-points") {
      query.filter_no_isolated = true;
    } else if (name == "hausdorff") {
      query.filter_hausdorff = true;
    } else if (name == "nontrivial-topology") {
      query.filter_nontrivial = true;
    } else {
      err << "error: unknown filter: " << name
          << " (choices: continuous, no-isolated-points, hausdorff, "
             "nontrivial-topology)\n";
      return 2;
    }
  }
  const std::vector<AtlasRecord> results = search(query);
  const std::vector<std::string> names = default_point_names(points);
  for (const AtlasRecord& record : results) {
    out << serialize_system_document(
               NamedSystem{names, DynSystem(record.topology, record.map)})
        << "\n";
  }
  err << "found " << results.size() << " witnesses\n";
  return results.empty() ? 1 : 0;
}

// ------------------------------------------------------------ verify-paper

int cmd_verify_paper(int max_points, std::uint64_t sample_budget,
                     std::uint64_t seed, std::ostream& out) {
  int passed = 0;
  int failed = 0;
  int skipped = 0;
  auto pass_line = [&](const std::string& text) {
    out << "PASS " << text << "\n";
    ++passed;
  };
  auto fail_line = [&](const std::string& text) {
    out << "FAIL " << text << "\n";
    ++failed;
  };
  auto skip_line = [&](const std::string& text) {
    out << "SKIP " << text << "\n";
    ++skipped;
  };

  for (const ReferenceClaim& claim : reference_claims()) {
    if (!claim.checkable()) {
      skip_line("fixture " + claim.id + ": " + claim.skip_reason);
      continue;
    }
    const ClaimResult result = check_claim(claim);
    if (result.passed()) {
      pass_line("fixture " + claim.id + " (" + claim.summary + ")");
    } else {
      fail_line("fixture " + claim.id + " (" + join(result.mismatches, "; ") +
                ")");
    }
  }

  const int sweep_max = std::min(max_points, 4);
  if (sweep_max >= 2) {
    const HypermixingSweepReport sweep = sweep_hypermixing_absence(2, sweep_max);
    std::ostringstream line;
    line << "sweep no-hypermixing-on-nontrivial-topologies (n=2.." << sweep_max
         << ", " << sweep.systems_scanned << " systems, "
         << sweep.nontrivial_checked << " on nontrivial topologies)";
    if (sweep.passed()) {
      pass_line(line.str());
    } else {
      const std::string& first = sweep.violations.empty()
                                     ? sweep.coincidence_violations.front()
                                     : sweep.violations.front();
      fail_line(line.str() + "; first violation: " + first);
    }
  } else {
    skip_line(
        "sweep no-hypermixing-on-nontrivial-topologies: needs at least 2 "
        "points");
  }

  const IndiscreteCoincidenceReport coincidence =
      check_indiscrete_hypermixing(std::min(max_points, 5));
  {
    std::ostringstream line;
    line << "check indiscrete-hypermixing-equals-surjectivity (n<="
         << coincidence.n_max << ", " << coincidence.maps_checked << " maps)";
    if (coincidence.passed()) {
      pass_line(line.str());
    } else {
      fail_line(line.str() +
                "; first violation: " + coincidence.violations.front());
    }
  }

  InvariantSuiteConfig config;
  config.exhaustive_max = std::min(max_points, 3);
  config.sample_points.clear();
  for (int n : {4, 5}) {
    if (n <= max_points) config.sample_points.push_back(n);
  }
  config.sample_budget = sample_budget;
  config.seed = seed;
  const InvariantSuiteReport suite = run_invariant_suite(config);

  out << "INFO suite coverage: seed=" << config.seed
      << " budget=" << config.sample_budget;
  for (const auto& [n, systems] : suite.coverage) {
    out << " n=" << n << ":" << systems;
  }
  out << "\n";

  for (const InvariantOutcome& row : suite.invariants) {
    std::ostringstream line;
    line << "invariant " << row.name << " (tested " << row.tested
         << ", skipped " << row.skipped << ")";
    if (row.passed()) {
      pass_line(line.str());
    } else {
      fail_line(line.str() + "; violations " +
                std::to_string(row.violations.size()) +
                "; first: " + row.violations.front());
    }
  }

  out << "RESULT: " << passed << " passed, " << failed << " failed, "
      << skipped << " skipped\n";
  return failed > 0 ? 1 : 0;
}

}  // namespace

int run_cli(std::span<const std::string> args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{
      "Exact decision engine for dynamical properties of self-maps on "
      "finite topological spaces"};
  app.name("topodyn");
  app.require_subcommand(1);

  std::string validate_path;
  auto* validate_cmd = app.add_subcommand(
      "validate", "Check a system document and print its canonical form");
  validate_cmd->add_option("path", validate_path, "system document (JSON)")
      ->required();

  std::string classify_path;
  std::string classify_format = "text";
  auto* classify_cmd = app.add_subcommand(
      "classify", "Decide every property of one system, with witnesses");
  classify_cmd->add_option("path", classify_path, "system document (JSON)")
      ->required();
  classify_cmd
      ->add_option("--format", classify_format, "output format (default text)")
      ->check(CLI::IsMember({"text", "json", "csv"}));

  std::string jmix_path;
  std::string jmix_point;
  bool jmix_all = false;
  auto* jmix_cmd = app.add_subcommand(
      "jmix", "Print mixing limit sets of a system");
  jmix_cmd->add_option("path", jmix_path, "system document (JSON)")
      ->required();
  jmix_cmd->add_option("--point", jmix_point, "point to evaluate");
  jmix_cmd->add_flag("--all", jmix_all,
                     "print the full table plus the whole-space limit set");

  int enum_points = 0;
  bool enum_dedup = false;
  std::string enum_out;
  std::string enum_format = "csv";
  auto* enum_cmd = app.add_subcommand(
      "enumerate", "Write the classified atlas of every system on n points");
  enum_cmd->add_option("--points", enum_points, "number of points (1..6)")
      ->required();
  enum_cmd->add_flag("--dedup", enum_dedup,
                     "emit one representative per relabeling class");
  enum_cmd->add_option("--out", enum_out, "output file (default stdout)");
  enum_cmd->add_option("--format", enum_format, "output format (default csv)")
      ->check(CLI::IsMember({"csv", "jsonl"}));

  int search_points = 3;
  std::vector<std::string> search_require;
  std::vector<std::string> search_forbid;
  std::vector<std::string> search_filters;
  std::uint64_t search_limit = 10;
  bool search_dedup = false;
  auto* search_cmd = app.add_subcommand(
      "search", "Find systems matching a property pattern");
  search_cmd->add_option("--points", search_points,
                         "number of points (default 3)");
  search_cmd->add_option("--require", search_require,
                         "properties that must hold (comma-separated)");
  search_cmd->add_option("--forbid", search_forbid,
                         "properties that must fail (comma-separated)");
  search_cmd->add_option(
      "--filter", search_filters,
      "system filters: continuous, no-isolated-points, hausdorff, "
      "nontrivial-topology");
  search_cmd->add_option("--limit", search_limit,
                         "stop after this many witnesses (0 = no limit, "
                         "default 10)");
  search_cmd->add_flag("--dedup", search_dedup,
                       "emit one representative per relabeling class");

  int verify_max_points = 5;
  std::uint64_t verify_budget = 12000;
  std::uint64_t verify_seed = kDefaultSeed;
  auto* verify_cmd = app.add_subcommand(
      "verify-paper",
      "Re-check every recorded claim: fixtures, sweeps, and invariants");
  verify_cmd->add_option("--max-points", verify_max_points,
                         "largest point count covered (default 5)");
  verify_cmd->add_option("--sample-budget", verify_budget,
                         "sampled systems beyond the exhaustive range "
                         "(default 12000)");
  verify_cmd->add_option("--seed", verify_seed,
                         "seed for the sampled passes");

  std::vector<std::string> reversed(args.begin(), args.end());
  std::reverse(reversed.begin(), reversed.end());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& error) {
    err << "error: " << error.what() << "\n";
    return 2;
  }

  try {
    if (app.got_subcommand(validate_cmd)) {
      return cmd_validate(validate_path, out, err);
    }
    if (app.got_subcommand(classify_cmd)) {
      return cmd_classify(classify_path, classify_format, out, err);
    }
    if (app.got_subcommand(jmix_cmd)) {
      return cmd_jmix(jmix_path, jmix_point, jmix_all, out, err);
    }
    if (app.got_subcommand(enum_cmd)) {
      return cmd_enumerate(enum_points, enum_dedup, enum_out, enum_format, out,
                           err);
    }
    if (app.got_subcommand(search_cmd)) {
      return cmd_search(search_points, search_require, search_forbid,
                        search_filters, search_limit, search_dedup, out, err);
    }
    if (app.got_subcommand(verify_cmd)) {
      return cmd_verify_paper(verify_max_points, verify_budget, verify_seed,
                              out);
    }
  } catch (const TopologyError& error) {
    err << "error: " << error.what() << "\n";
    return 2;
  } catch (const DocumentError& error) {
    err << "error: " << error.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& error) {
    err << "error: invalid JSON: " << error.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& error) {
    // Covers CapExceeded, UnsatisfiableQuery, and malformed map tables.
    err << "error: " << error.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace topodyn
