#include "fuzzint/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "fuzzint/scenario.hpp"
#include "fuzzint/verify.hpp"

namespace fuzzint::cli {
namespace {

constexpr std::size_t kPlotResolution = 101;

struct Options {
  std::string scenario;
  std::string set = "all";
  std::string direction;
  std::optional<std::size_t> grid;
  std::optional<double> tol;
  std::optional<std::string> out;
  bool with_oracle = false;
  std::vector<double> tail;
  std::uint64_t seed = 0;
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join(std::span<const double> xs) {
  std::string s;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (k) s += ',';
    s += num(xs[k]);
  }
  return s;
}

std::string coord_header(const char* prefix, std::size_t dims) {
  std::string s;
  for (std::size_t k = 0; k < dims; ++k) s += std::string(",") + prefix + std::to_string(k + 1);
  return s;
}

class Sink {
 public:
  Sink(std::optional<std::string> stem, std::ostream& out) : stem_(std::move(stem)), out_(out) {}

  // With a stem the block goes to "<stem><suffix>", otherwise to stdout
  // under a "# <name>" marker.
  void emit(const std::string& name, const std::string& suffix, const std::string& body) {
    if (!stem_) {
      out_ << "# " << name << "\n" << body;
      return;
    }
    const std::string path = *stem_ + suffix;
    std::ofstream f(path, std::ios::binary);
    if (!(f << body) || !f.flush()) throw Error(ErrorCode::IoError, "cannot write '" + path + "'");
  }

 private:
  std::optional<std::string> stem_;
  std::ostream& out_;
};

Scenario load(const Options& opt) {
  Scenario sc = load_scenario(opt.scenario);
  if (opt.grid) sc.grid_size = *opt.grid;
  if (opt.tol) {
    if (!(*opt.tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "--tol must be positive");
    sc.tol.support = *opt.tol;
  }
  return sc;
}

MeasurableSet parse_set(const std::string& text, const FiniteMeasureSpace& space) {
  if (text == "all") return MeasurableSet::all(space);
  std::vector<std::size_t> idx;
  std::stringstream ss(text);
  std::string id;
  while (std::getline(ss, id, ',')) {
    if (id.empty()) continue;
    try {
      idx.push_back(space.index_of(id));
    } catch (const Error& e) {
      throw Error(e.code(), "--set: unknown atom '" + id + "'");
    }
  }
  return MeasurableSet(std::move(idx));
}

std::string levels_csv(const FuzzyNumber& u) {
  std::string s = "level,vertex" + coord_header("x", u.dims()) + "\n";
  for (std::size_t l = 0; l < u.level_count(); ++l) {
    const ConvexBody& b = u.bodies()[l];
    for (std::size_t i = 0; i < b.size(); ++i) {
      s += num(u.levels()[l]) + "," + std::to_string(i) + "," + join(b.vertex(i)) + "\n";
    }
  }
  return s;
}

int cmd_integrate(const Options& opt, std::ostream& out) {
  const Scenario sc = load(opt);
  const MeasurableSet a = parse_set(opt.set, sc.mapping.space());
  const DirectionGrid grid = sc.grid();
  const IntegralResult res = fuzzy_pettis_integral(sc.mapping, a, grid, sc.tol);

  std::string residuals = "level,direction" + coord_header("u", grid.dims()) + ",residual\n";
  for (const LevelResidual& lr : res.residual_report) {
    for (std::size_t j = 0; j < lr.residuals.size(); ++j) {
      residuals += num(lr.level) + "," + std::to_string(j) + "," + join(grid[j].span()) + "," +
                   num(lr.residuals[j]) + "\n";
    }
  }
  Sink sink(opt.out, out);
  sink.emit("levels", ".levels.csv", levels_csv(res.value));
  sink.emit("residuals", ".residuals.csv", residuals);
  sink.emit("scenario", ".scenario.json",
            dump_scenario(single_atom_scenario("integral", res.value, sc.grid_size, sc.tol)));
  return res.max_residual() <= sc.tol.support ? kOk : kCheckFailed;
}

int cmd_decompose(const Options& opt, std::ostream& out, std::ostream& err) {
  const Scenario sc = load(opt);
  const std::size_t d = sc.mapping.dims();
  const Direction u = opt.direction.empty() ? Direction::axis(d, 0)
                                            : Direction(parse_direction(opt.direction, err));
  if (u.dims() != d) {
    throw Error(ErrorCode::DimensionMismatch, "--direction has " + std::to_string(u.dims()) +
                                                  " coordinates, scenario has dims " + std::to_string(d));
  }
  const DirectionGrid grid = sc.grid();
  const Selection f = canonical_mapping_selection(sc.mapping, u);
  const DecompositionResult split = decompose(sc.mapping, f, grid, sc.tol);
  const double split_gap =
      integral_additivity_check(sc.mapping, split, MeasurableSet::all(sc.mapping.space()), grid, sc.tol);

  const auto& space = sc.mapping.space();
  std::string selection = "atom" + coord_header("x", d) + "\n";
  for (std::size_t i = 0; i < f.size(); ++i) selection += space.id(i) + "," + join(f.at(i)) + "\n";

  std::string levels = "atom,level,vertex" + coord_header("x", d) + "\n";
  for (std::size_t i = 0; i < split.g.size(); ++i) {
    const FuzzyNumber& g = split.g.value(i);
    for (std::size_t l = 0; l < g.level_count(); ++l) {
      const ConvexBody& b = g.bodies()[l];
      for (std::size_t v = 0; v < b.size(); ++v) {
        levels += space.id(i) + "," + num(g.levels()[l]) + "," + std::to_string(v) + "," + join(b.vertex(v)) + "\n";
      }
    }
  }

  std::string checks = "atom,level,zero_member,min_support,reconstruction_residual\n";
  for (const AtomLevelCheck& c : split.level_checks) {
    checks += space.id(c.atom) + "," + num(c.level) + "," + (c.zero_member ? "1" : "0") + "," +
              num(c.min_support) + "," + num(split.reconstruction_residuals[c.atom]) + "\n";
  }
  checks += "all,integral_split,,," + num(split_gap) + "\n";

  Sink sink(opt.out, out);
  sink.emit("selection", ".selection.csv", selection);
  sink.emit("levels", ".levels.csv", levels);
  sink.emit("checks", ".checks.csv", checks);
  return split.passed(sc.tol) && split_gap <= sc.tol.support ? kOk : kCheckFailed;
}

int cmd_verify(const Options& opt, std::ostream& out, std::ostream& err) {
  const Scenario sc = load(opt);
  VerifyOptions vo;
  vo.with_oracle = opt.with_oracle;
  vo.seed = opt.seed;
  if (!opt.tail.empty()) {
    const double n = opt.tail[1];
    if (!(n >= 1.0) || n != std::floor(n)) throw Error(ErrorCode::InvalidArgument, "--tail: n must be a positive integer");
    vo.tail_ratio = opt.tail[0];
    vo.tail_count = static_cast<std::size_t>(n);
  }
  if (!opt.direction.empty()) vo.direction = Direction(parse_direction(opt.direction, err));
  const VerifyReport report = run_verify(sc, vo);
  const std::string text = report.format();
  if (opt.out) {
    std::ofstream f(*opt.out, std::ios::binary);
    if (!(f << text) || !f.flush()) throw Error(ErrorCode::IoError, "cannot write '" + *opt.out + "'");
  } else {
    out << text;
  }
  return report.all_pass() ? kOk : kCheckFailed;
}

int cmd_plot_data(const Options& opt, std::ostream& out) {
  const Scenario sc = load(opt);
  if (sc.mapping.dims() != 2) {
    throw Error(ErrorCode::UnsupportedDimension,
                "plot-data needs dims 2, scenario has dims " + std::to_string(sc.mapping.dims()));
  }
  const MeasurableSet a = parse_set(opt.set, sc.mapping.space());
  const FuzzyNumber w = fuzzy_pettis_integral(sc.mapping, a, sc.grid(), sc.tol).value;

  std::string polygons = "level,vertex,x,y\n";
  for (std::size_t l = 0; l < w.level_count(); ++l) {
    const std::vector<Point> hull = planar_hull(w.bodies()[l]);
    for (std::size_t i = 0; i < hull.size(); ++i) {
      polygons += num(w.levels()[l]) + "," + std::to_string(i) + "," + join(hull[i]) + "\n";
    }
  }

  const ConvexBody& base = w.bodies().front();
  double lo[2] = {base.vertex(0)[0], base.vertex(0)[1]};
  double hi[2] = {lo[0], lo[1]};
  for (std::size_t i = 1; i < base.size(); ++i) {
    for (int k = 0; k < 2; ++k) {
      lo[k] = std::min(lo[k], base.vertex(i)[k]);
      hi[k] = std::max(hi[k], base.vertex(i)[k]);
    }
  }
  std::size_t counts[2];
  for (int k = 0; k < 2; ++k) counts[k] = hi[k] > lo[k] ? kPlotResolution : 1;
  std::string grid = "x,y,grade\n";
  for (std::size_t j = 0; j < counts[1]; ++j) {
    for (std::size_t i = 0; i < counts[0]; ++i) {
      const double x = counts[0] == 1 ? lo[0] : lo[0] + (hi[0] - lo[0]) * static_cast<double>(i) / (counts[0] - 1);
      const double y = counts[1] == 1 ? lo[1] : lo[1] + (hi[1] - lo[1]) * static_cast<double>(j) / (counts[1] - 1);
      const Point p{x, y};
      grid += num(x) + "," + num(y) + "," + num(membership(w, p, sc.tol.distance).value()) + "\n";
    }
  }
  Sink sink(opt.out, out);
  sink.emit("levels", ".levels.csv", polygons);
  sink.emit("membership", ".membership.csv", grid);
  return kOk;
}

}  // namespace

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::IoError: return kIo;
    case ErrorCode::NonConvergence: return kCheckFailed;
    default: return kValidation;
  }
}

Point parse_direction(const std::string& text, std::ostream& warn) {
  Point coords;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    while (used < part.size() && std::isspace(static_cast<unsigned char>(part[used]))) ++used;
    if (part.empty() || used != part.size() || !std::isfinite(v)) {
      throw Error(ErrorCode::ParseError, "--direction: cannot parse '" + part + "'");
    }
    coords.push_back(v);
  }
  if (coords.empty()) throw Error(ErrorCode::ParseError, "--direction: empty");
  const double n = norm(coords);
  if (!(n > 0.0)) throw Error(ErrorCode::InvalidArgument, "--direction: zero vector");
  if (std::abs(n - 1.0) > 1e-6) {
    warn << "warning: --direction has norm " << num(n) << "; normalized\n";
  }
  for (double& c : coords) c /= n;
  return coords;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fuzzy Pettis integrals of simple fuzzy mappings", "fuzzint"};
  app.set_config("--config", "", "TOML/INI file with default option values");
  app.require_subcommand(1);
  Options opt;

  auto common = [&](CLI::App* sub) {
    sub->add_option("scenario", opt.scenario, "Scenario JSON file")->required();
    sub->add_option("--grid", opt.grid, "Number of probing directions");
    sub->add_option("--tol", opt.tol, "Bound on integral support residuals");
  };
  CLI::App* integrate = app.add_subcommand("integrate", "Integral over a set of atoms");
  common(integrate);
  integrate->add_option("--set", opt.set, "Comma-separated atom ids or 'all'");
  integrate->add_option("--out", opt.out, "Output stem");

  CLI::App* decomp = app.add_subcommand("decompose", "Split into a selection plus a zero-containing part");
  common(decomp);
  decomp->add_option("--direction", opt.direction, "Selection direction, e.g. 1,0");
  decomp->add_option("--out", opt.out, "Output stem");

  CLI::App* verify = app.add_subcommand("verify", "Run the verification suite");
  common(verify);
  verify->add_flag("--with-oracle", opt.with_oracle, "Include brute-force oracle cross-checks");
  verify->add_option("--tail", opt.tail, "Geometric tail family: ratio q and count n")->expected(2);
  verify->add_option("--seed", opt.seed, "Seed for random partitions and probes");
  verify->add_option("--direction", opt.direction, "Selection direction");
  verify->add_option("--out", opt.out, "Report file");

  CLI::App* plot = app.add_subcommand("plot-data", "Level polygons and membership grid (dims 2)");
  common(plot);
  plot->add_option("--set", opt.set, "Comma-separated atom ids or 'all'");
  plot->add_option("--out", opt.out, "Output stem");

  std::vector<const char*> argv{"fuzzint"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidation;
  }

  try {
    if (integrate->parsed()) return cmd_integrate(opt, out);
    if (decomp->parsed()) return cmd_decompose(opt, out, err);
    if (verify->parsed()) return cmd_verify(opt, out, err);
    return cmd_plot_data(opt, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
}

}  // namespace fuzzint::cli
