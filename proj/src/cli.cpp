#include "fewdist/cli.hpp"

#include <cmath>
#include <ostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "fewdist/error.hpp"
#include "fewdist/kernels.hpp"
#include "fewdist/lattice.hpp"
#include "fewdist/quad_verifier.hpp"
#include "fewdist/table.hpp"

namespace fewdist::cli {
namespace {

const std::map<std::string, Command> kCommands{
    {"box", Command::box},       {"distances", Command::distances},
    {"sieve", Command::sieve},   {"ratio", Command::ratio},
    {"verify", Command::verify}, {"census", Command::census},
    {"scaling", Command::scaling}};

// "A:B" with A <= B.
template <class T>
std::pair<T, T> parse_range(const std::string& text, const char* flag) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw CLI::ValidationError(flag, "expected A:B, got '" + text + "'");
  }
  try {
    std::size_t used_a = 0, used_b = 0;
    const std::string a_text = text.substr(0, colon), b_text = text.substr(colon + 1);
    const long long a = std::stoll(a_text, &used_a);
    const long long b = std::stoll(b_text, &used_b);
    if (used_a != a_text.size() || used_b != b_text.size()) throw std::invalid_argument(text);
    if (a > b) throw CLI::ValidationError(flag, "range start exceeds end in '" + text + "'");
    return {static_cast<T>(a), static_cast<T>(b)};
  } catch (const std::logic_error&) {
    throw CLI::ValidationError(flag, "expected integers A:B, got '" + text + "'");
  }
}

QuadraticForm parse_form(const std::string& text) {
  std::istringstream in(text);
  QuadraticForm f;
  char c1 = 0, c2 = 0;
  if (!(in >> f.a >> c1 >> f.b >> c2 >> f.c) || c1 != ',' || c2 != ',' || !in.eof()) {
    throw CLI::ValidationError("--form", "expected a,b,c, got '" + text + "'");
  }
  return f;
}

std::uint64_t pow10(int e) {
  std::uint64_t v = 1;
  for (int i = 0; i < e; ++i) v *= 10;
  return v;
}

std::uint64_t ceil_sqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while (r * r < n) ++r;
  return r;
}

QuadraticForm distance_form(const RunConfig& config) {
  return config.form.value_or(QuadraticForm{1, 0, config.k});
}

std::vector<std::int64_t> side_values(const RunConfig& config) {
  if (config.m_range) {
    std::vector<std::int64_t> out;
    for (std::int64_t m = config.m_range->first; m <= config.m_range->second; ++m) out.push_back(m);
    return out;
  }
  require(config.m.has_value(), "this command needs --m or --m-range");
  return {*config.m};
}

// --n selects the n-point prefix of the ceil(sqrt n)-box; --m the full box.
PointSet scan_points(const RunConfig& config) {
  const LatticeModel model(config.k);
  if (config.n) {
    require(*config.n <= static_cast<std::uint64_t>(kMaxBoxSide) * kMaxBoxSide,
            "--n is too large");
    const auto m = static_cast<std::int64_t>(ceil_sqrt(*config.n));
    return take_prefix_subset(build_box(model, m, config.limits), *config.n);
  }
  require(config.m.has_value(), "this command needs --n or --m");
  return build_box(model, *config.m, config.limits);
}

std::string join_points(const Quad& q) {
  std::string out;
  for (const LatticePoint& p : q.points()) {
    if (!out.empty()) out += ';';
    out += std::to_string(p.x) + ":" + std::to_string(p.y);
  }
  return out;
}

std::string join_distances(const Quad& q) {
  std::string out;
  for (SquaredDistance d : q.distances()) {
    if (!out.empty()) out += ';';
    out += std::to_string(d);
  }
  return out;
}

std::string class_label(const TwoDistanceClass& c) {
  std::string out(to_string(c.tag));
  if (c.split) {
    out += ":" + std::to_string(c.split->short_edges) + ":" + std::to_string(c.split->long_edges);
  }
  return out;
}

Table box_table(const RunConfig& config) {
  require(config.m.has_value(), "box needs --m");
  const PointSet box = build_box(LatticeModel(config.k), *config.m, config.limits);
  Table t{{"index", "x", "y"}, {}};
  for (std::size_t i = 0; i < box.size(); ++i) {
    t.add_row({std::uint64_t{i}, box[i].x, box[i].y});
  }
  return t;
}

Table distances_table(const RunConfig& config, std::ostream& err) {
  const LatticeModel model(config.k);
  const std::vector<std::int64_t> sides = side_values(config);
  for (std::int64_t m : sides) {
    require(m >= 2 && m <= kMaxBoxSide, "distances needs 2 <= m <= 2^30");
  }

  std::optional<RepresentedSet> represented;
  const std::int64_t largest = sides.back();
  try {
    const auto x_max = static_cast<std::uint64_t>(3) * largest * largest;
    represented = sieve_represented(distance_form(config), x_max, config.limits);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::budget) throw;
    err << "note: represented column left empty: " << e.what() << "\n";
  }

  Table t{{"m", "n", "distinct", "represented_3m2", "normalized"}, {}};
  for (std::int64_t m : sides) {
    const std::uint64_t distinct = distinct_count_via_value_grid(model, m, config.limits);
    const auto n = static_cast<std::uint64_t>(m * m);
    Cell rep = std::string{};
    if (represented) rep = represented->count_represented(3 * n);
    t.add_row({m, n, distinct, rep, Ratio{density_ratio(distinct, n)}});
  }
  return t;
}

Table scaling_table(const RunConfig& config) {
  const LatticeModel model(config.k);
  Table t{{"m", "n", "distinct", "normalized"}, {}};
  for (std::int64_t m : side_values(config)) {
    require(m >= 2, "scaling needs m >= 2");
    const std::uint64_t distinct = distinct_count_via_value_grid(model, m, config.limits);
    const auto n = static_cast<std::uint64_t>(m * m);
    t.add_row({m, n, distinct, Ratio{density_ratio(distinct, n)}});
  }
  return t;
}

Table sieve_table(const RunConfig& config) {
  require(config.xs.size() == 1, "sieve needs exactly one --x");
  const RepresentedSet set = sieve_represented(distance_form(config), config.xs[0], config.limits);
  Table t{{"n"}, {}};
  for (std::uint64_t v : set.members()) t.add_row({v});
  return t;
}

Table ratio_table(const RunConfig& config) {
  std::vector<std::uint64_t> xs = config.xs;
  if (config.decades) {
    require(xs.empty(), "ratio takes either --x or --decades, not both");
    require(config.decades->first >= 0 && config.decades->second <= 18,
            "--decades must lie within 0:18");
    for (int e = config.decades->first; e <= config.decades->second; ++e) xs.push_back(pow10(e));
  }
  const auto samples = bernays_ratio_table(distance_form(config), xs, config.limits);
  Table t{{"x", "count", "ratio"}, {}};
  for (const RatioSample& s : samples) t.add_row({s.x, s.count, Ratio{s.ratio}});
  return t;
}

Table verification_table(const VerificationReport& report) {
  Table t{{"verdict", "scanned", "witness_points", "witness_distances", "witness_class"}, {}};
  std::string points, distances, label;
  if (report.witness) {
    points = join_points(*report.witness);
    distances = join_distances(*report.witness);
  }
  if (report.witness_class) label = class_label(*report.witness_class);
  t.add_row({std::string(to_string(report.verdict)), report.scanned, points, distances, label});
  return t;
}

Table census_table(const ShapeCensus& c) {
  Table t{{"points", "triples", "quads", "equilateral_triples", "two_distance_quads", "squares",
           "pentagon_trapezoids", "equilateral_bearing", "complete"},
          {}};
  t.add_row({c.points, c.triples_examined, c.quads_examined, c.equilateral_triples,
             c.two_distance_quads, c.squares, c.pentagon_trapezoids, c.equilateral_bearing,
             std::string(c.complete ? "true" : "false")});
  return t;
}

void emit(const Table& t, const RunConfig& config, std::ostream& out, bool single_record = false) {
  out << (config.format == Format::csv ? to_csv(t) : to_json(t, single_record));
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument:
    case ErrorKind::overflow:
      return kExitUsage;
    case ErrorKind::budget:
      return kExitBudget;
    case ErrorKind::integrity:
      return kExitInternal;
  }
  return kExitInternal;
}

}  // namespace

ParseOutcome parse_command_line(int argc, const char* const* argv, std::ostream& out,
                                std::ostream& err) {
  RunConfig config;
  CLI::App app{"Distinct-distance experiments on the lattice Z x sqrt(k)Z", "few-distances"};
  app.get_formatter()->column_width(34);

  std::string command, format = "csv", m_range, decades, form;
  app.add_option("command", command, "box | distances | sieve | ratio | verify | census | scaling")
      ->required()
      ->check(CLI::IsMember({"box", "distances", "sieve", "ratio", "verify", "census", "scaling"}));
  app.add_option("--k", config.k, "Anisotropy: points are (x, sqrt(k) y)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--m", config.m, "Box side length");
  app.add_option("--n", config.n, "Point count: prefix of the ceil(sqrt n) box");
  app.add_option("--m-range", m_range, "Inclusive side range A:B");
  app.add_option("--x", config.xs, "Sample point(s) for sieve/ratio")->delimiter(',');
  app.add_option("--decades", decades, "Ratio samples 10^A..10^B");
  app.add_option("--form", form, "Form a,b,c for sieve/ratio/distances (default 1,0,k)");
  app.add_option("--format", format, "Output format")
      ->capture_default_str()
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--workers", config.limits.workers, "Worker threads (0 = all hardware threads)")
      ->capture_default_str();
  app.add_option("--max-quad-visits", config.limits.max_quad_visits,
                 "Cap on 4-point subsets per scan")
      ->capture_default_str();
  app.add_option("--max-sieve-bytes", config.limits.max_table_bytes,
                 "Cap on membership table bytes")
      ->capture_default_str();
  app.add_option("--max-points", config.limits.max_points, "Cap on materialized box points")
      ->capture_default_str();
  bool no_early_exit = false;
  app.add_flag("--no-early-exit", no_early_exit, "Scan every subset even after a witness");
  app.add_option("--kernel", config.kernel, "SIMD variant: auto | scalar | avx2 | avx512")
      ->capture_default_str()
      ->check(CLI::IsMember({"auto", "scalar", "avx2", "avx512"}));

  try {
    app.parse(argc, argv);
    config.command = kCommands.at(command);
    config.format = format == "json" ? Format::json : Format::csv;
    config.early_exit = !no_early_exit;
    if (!m_range.empty()) config.m_range = parse_range<std::int64_t>(m_range, "--m-range");
    if (!decades.empty()) config.decades = parse_range<int>(decades, "--decades");
    if (!form.empty()) config.form = parse_form(form);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return {std::nullopt, code == 0 ? kExitOk : kExitUsage};
  }
  return {config, kExitOk};
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.kernel != "auto") {
      const auto isa = simd::parse_isa(config.kernel);
      require(isa.has_value(), "unknown kernel '" + config.kernel + "'");
      simd::select_isa(*isa);
    }
    switch (config.command) {
      case Command::box:
        emit(box_table(config), config, out);
        return kExitOk;
      case Command::distances:
        emit(distances_table(config, err), config, out);
        return kExitOk;
      case Command::scaling:
        emit(scaling_table(config), config, out);
        return kExitOk;
      case Command::sieve:
        emit(sieve_table(config), config, out);
        return kExitOk;
      case Command::ratio:
        emit(ratio_table(config), config, out);
        return kExitOk;
      case Command::verify: {
        const VerificationReport report = verify_local_constraint(
            scan_points(config), config.limits, ScanOptions{config.early_exit});
        emit(verification_table(report), config, out, true);
        return report.verdict == Verdict::pass ? kExitOk : kExitVerificationFailed;
      }
      case Command::census: {
        const ShapeCensus census = scan_shapes(scan_points(config), config.limits);
        emit(census_table(census), config, out, true);
        if (!census.complete) {
          err << "error: census stopped by --max-quad-visits=" << config.limits.max_quad_visits
              << "; counts are partial (first point index < " << census.first_index_limit
              << ")\n";
          return kExitBudget;
        }
        return kExitOk;
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  }
  return kExitInternal;
}

}  // namespace fewdist::cli
