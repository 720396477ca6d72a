// Command-line front end: loads a tree description and answers order, metric
// and topology queries about its realization.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "treetopo/dot.hpp"
#include "treetopo/harness.hpp"
#include "treetopo/metric.hpp"
#include "treetopo/region.hpp"

namespace {

using namespace treetopo;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::shared_ptr<const TreeSkeleton> load_tree(const std::string& path) { return parse_tree(slurp(path)); }

OrderView view_for(std::shared_ptr<const TreeSkeleton> skel, const std::string& base) {
  if (base.empty()) return root_view(std::move(skel));
  Point p = skel->parse_point(base);
  return reroot(std::move(skel), p);
}

std::string pretty(const Rat& value) { return format_rational(value) + " (~" + format_decimal4(value) + ")"; }

// ---- subcommand bodies (return the process exit code) ----

int run_meet(const std::string& tree, const std::string& base, const std::string& a, const std::string& b) {
  auto skel = load_tree(tree);
  OrderView view = view_for(skel, base);
  Point m = meet(view, skel->parse_point(a), skel->parse_point(b));
  std::cout << skel->point_name(m) << "\n";
  return 0;
}

int run_inf(const std::string& tree, const std::string& base, const std::vector<std::string>& points) {
  auto skel = load_tree(tree);
  OrderView view = view_for(skel, base);
  std::vector<Point> pts;
  for (const std::string& text : points) pts.push_back(skel->parse_point(text));
  std::cout << skel->point_name(infimum(view, pts)) << "\n";
  return 0;
}

int run_segment(const std::string& tree, const std::string& a, const std::string& b) {
  auto skel = load_tree(tree);
  PathRepr path = path_between(*skel, skel->parse_point(a), skel->parse_point(b));
  std::cout << "length " << format_rational(path.length()) << "\n";
  for (const PathArc& arc : path.arcs()) {
    const EdgeRec& e = skel->edge(arc.edge);
    std::cout << "arc " << skel->vertex_name(e.upper) << "-" << skel->vertex_name(e.lower) << " "
              << format_rational(arc.from) << " -> " << format_rational(arc.to) << "\n";
  }
  std::cout << "vertices ";
  const auto& vs = path.vertices();
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) std::cout << ",";
    std::cout << skel->vertex_name(vs[i]);
  }
  std::cout << "\n";
  return 0;
}

int run_dist(const std::string& tree, const std::string& base, const std::string& a, const std::string& b) {
  auto skel = load_tree(tree);
  Parametrization par(view_for(skel, base));
  std::cout << pretty(par.distance(skel->parse_point(a), skel->parse_point(b))) << "\n";
  return 0;
}

void print_class(const TreeSkeleton& skel, const TangentClassAtom& atom) {
  const EdgeRec& e = skel.edge(atom.direction().edge);
  std::cout << "direction " << skel.vertex_name(e.upper) << "-" << skel.vertex_name(e.lower) << " toward "
            << skel.vertex_name(atom.direction().toward) << ", representative "
            << skel.point_name(atom.representative()) << "\n";
}

int run_tangent(const std::string& tree, const std::string& at, const std::string& of) {
  auto skel = load_tree(tree);
  Point t = skel->parse_point(at);
  if (!of.empty()) {
    print_class(*skel, tangent_class(*skel, skel->parse_point(of), t));
    return 0;
  }
  TangentSpace space = tangent_space(*skel, t);
  std::cout << "classes " << space.classes.size() << "\n";
  for (const TangentClassAtom& atom : space.classes) print_class(*skel, atom);
  return 0;
}

int run_reroot_check(const std::string& tree, const std::string& base) {
  auto skel = load_tree(tree);
  OrderView view = view_for(skel, base);
  std::vector<Point> cuts = canonical_cut_points(*skel, {view.base});

  for (const Point& x : cuts) {
    if (!leq(view, view.base, x)) {
      std::cout << "violation: base does not precede " << skel->point_name(x) << "\n";
      return 1;
    }
  }
  std::size_t pairs = 0;
  for (const Point& x : cuts) {
    for (const Point& y : cuts) {
      ++pairs;
      Point m = meet(view, x, y);
      if (!leq(view, m, x) || !leq(view, m, y)) {
        std::cout << "violation: meet of " << skel->point_name(x) << " and " << skel->point_name(y)
                  << " is not a lower bound\n";
        return 1;
      }
      for (const Point& c : cuts) {
        if (leq(view, c, x) && leq(view, c, y) && !leq(view, c, m)) {
          std::cout << "violation: " << skel->point_name(c) << " is a lower bound of "
                    << skel->point_name(x) << "," << skel->point_name(y) << " beyond their meet\n";
          return 1;
        }
      }
      PathRepr path = path_between(*skel, x, y);
      for (const Point& c : cuts) {
        bool by_order = leq(view, m, c) && (leq(view, c, x) || leq(view, c, y));
        if (by_order != point_on_segment(*skel, c, path)) {
          std::cout << "violation: segment " << skel->point_name(x) << ".." << skel->point_name(y)
                    << " disagrees with the order at " << skel->point_name(c) << "\n";
          return 1;
        }
      }
    }
  }
  std::cout << "ok base=" << skel->point_name(view.base) << " points=" << cuts.size() << " pairs=" << pairs
            << "\n";
  return 0;
}

int run_region(const std::string& tree, const std::string& base, const std::string& expr,
               const std::string& check, const std::string& point) {
  auto skel = load_tree(tree);
  OrderView view = view_for(skel, base);
  Region region = parse_region(view, expr);

  if (check == "member") {
    if (point.empty()) throw CLI::ValidationError("--check member needs --point");
    std::cout << (region.contains(skel->parse_point(point)) ? "true" : "false") << "\n";
    return 0;
  }
  if (check == "cut-points") {
    for (const Point& c : cut_points(region)) std::cout << skel->point_name(c) << "\n";
    return 0;
  }
  if (check == "upper-set") {
    UpperSetWitness w;
    if (is_upper_set(region, view, &w)) {
      std::cout << "true\n";
    } else {
      std::cout << "false\n";
      std::cout << "witness: " << skel->point_name(w.member) << " precedes " << skel->point_name(w.above_nonmember)
                << "; " << skel->point_name(w.member) << " in the region, " << skel->point_name(w.above_nonmember)
                << " outside\n";
    }
    return 0;
  }
  if (check == "inaccessible") {
    std::vector<DirectedChain> chains = chain_family(region, view);
    InaccessibilityWitness w;
    if (is_inaccessible_by_directed_joins(region, view, chains, &w)) {
      std::cout << "true\n";
      return 0;
    }
    std::cout << "false\n";
    std::cout << "witness chain:";
    for (const Point& p : w.chain.elements) std::cout << " " << skel->point_name(p);
    if (w.chain.limit) std::cout << " -> " << skel->point_name(*w.chain.limit);
    std::cout << "\n";
    return 0;
  }
  if (check == "scott-open") {
    ScottWitness w;
    if (is_scott_open(region, view, &w)) {
      std::cout << "true\n";
      return 0;
    }
    std::cout << "false\n";
    if (w.kind == ScottWitness::Kind::NotUpper) {
      std::cout << "witness: " << skel->point_name(w.member) << " precedes " << skel->point_name(w.other) << "; "
                << skel->point_name(w.member) << " in the region, " << skel->point_name(w.other) << " outside\n";
    } else {
      std::cout << "witness: the points just below " << skel->point_name(w.member) << " (sampled at "
                << skel->point_name(w.other) << ") lie outside the region\n";
    }
    return 0;
  }
  if (check == "weak-witness") {
    if (point.empty()) throw CLI::ValidationError("--check weak-witness needs --point");
    Point t = weak_open_witness(region, skel->parse_point(point), view);
    std::cout << skel->point_name(t) << "\n";
    return 0;
  }
  throw CLI::ValidationError("unknown --check '" + check + "'");
}

int run_verify(GeneratorConfig cfg, std::vector<std::string> props, bool list, const std::string& replay_line,
               std::size_t max_failures_shown) {
  if (list) {
    for (const std::string& name : property_names()) std::cout << name << "\n";
    return 0;
  }
  if (!replay_line.empty()) {
    PropertyReport rep = replay(replay_line);
    const CaseRecord* failed = rep.ok() ? nullptr : &rep.failures.front();
    std::cout << (rep.ok() ? "PASS " : "FAIL ") << rep.property << " cases=1\n";
    if (failed) std::cout << failed->to_line() << "\n";
    return rep.ok() ? 0 : 1;
  }

  if (props.empty()) props = property_names();
  bool all_ok = true;
  std::uint64_t total_failures = 0;
  for (const std::string& name : props) {
    PropertyReport rep = run_property(name, cfg);
    total_failures += rep.failures.size();
    if (rep.ok()) {
      std::cout << "PASS " << name << " cases=" << rep.cases_run << " vacuous=" << rep.vacuous_cases << "\n";
      continue;
    }
    all_ok = false;
    std::cout << "FAIL " << name << " cases=" << rep.cases_run << " vacuous=" << rep.vacuous_cases
              << " failures=" << rep.failures.size() << "\n";
    for (std::size_t i = 0; i < rep.failures.size() && i < max_failures_shown; ++i)
      std::cout << "  " << rep.failures[i].to_line() << "\n";
    if (rep.failures.size() > max_failures_shown)
      std::cout << "  ... " << (rep.failures.size() - max_failures_shown) << " more\n";
  }
  std::cout << "summary: " << props.size() << " properties, " << total_failures << " failing cases\n";
  return all_ok ? 0 : 1;
}

int run_dot(const std::string& tree, const std::vector<std::string>& marks, const std::string& output) {
  auto skel = load_tree(tree);
  std::vector<Point> pts;
  for (const std::string& text : marks) pts.push_back(skel->parse_point(text));
  std::string rendered = to_dot(*skel, pts);
  if (output.empty()) {
    std::cout << rendered;
    return 0;
  }
  std::ofstream out(output, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + output + "'");
  out << rendered;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rooted-tree order, tangent and topology queries"};
  app.require_subcommand(1);

  std::string tree, base, a, b, at, of, expr, check, point, output, replay_line;
  std::vector<std::string> points, marks, props;

  auto* meet_cmd = app.add_subcommand("meet", "greatest lower bound of two points");
  meet_cmd->add_option("--tree", tree, "tree description file")->required();
  meet_cmd->add_option("--base", base, "base point (default: the root)");
  meet_cmd->add_option("a", a, "first point")->required();
  meet_cmd->add_option("b", b, "second point")->required();

  auto* inf_cmd = app.add_subcommand("inf", "greatest lower bound of several points");
  inf_cmd->add_option("--tree", tree, "tree description file")->required();
  inf_cmd->add_option("--base", base, "base point (default: the root)");
  inf_cmd->add_option("points", points, "two or more points")->required()->expected(-2);

  auto* seg_cmd = app.add_subcommand("segment", "arc decomposition of the path between two points");
  seg_cmd->add_option("--tree", tree, "tree description file")->required();
  seg_cmd->add_option("a", a, "first endpoint")->required();
  seg_cmd->add_option("b", b, "second endpoint")->required();

  auto* dist_cmd = app.add_subcommand("dist", "parametrized distance between two points");
  dist_cmd->add_option("--tree", tree, "tree description file")->required();
  dist_cmd->add_option("--base", base, "base point of the parametrization (default: the root)");
  dist_cmd->add_option("a", a, "first point")->required();
  dist_cmd->add_option("b", b, "second point")->required();

  auto* tan_cmd = app.add_subcommand("tangent", "classes at an anchor point");
  tan_cmd->add_option("--tree", tree, "tree description file")->required();
  tan_cmd->add_option("--at", at, "anchor point")->required();
  tan_cmd->add_option("--of", of, "report only the class containing this point");

  auto* rr_cmd = app.add_subcommand("reroot-check", "validate the rebased order at a base point");
  rr_cmd->add_option("--tree", tree, "tree description file")->required();
  rr_cmd->add_option("--base", base, "base point to rebase at")->required();

  auto* reg_cmd = app.add_subcommand("region", "evaluate a region expression");
  reg_cmd->add_option("--tree", tree, "tree description file")->required();
  reg_cmd->add_option("--base", base, "base point of the order (default: the root)");
  reg_cmd->add_option("--expr", expr, "region expression")->required();
  reg_cmd->add_option("--check", check,
                      "one of: member, cut-points, upper-set, inaccessible, scott-open, weak-witness")
      ->required();
  reg_cmd->add_option("--point", point, "query point (member and weak-witness checks)");

  GeneratorConfig cfg;
  bool list = false;
  std::string min_len, max_len;
  auto* ver_cmd = app.add_subcommand("verify", "run the randomized property suite");
  ver_cmd->add_option("--seed", cfg.seed, "64-bit generator seed (default: TREETOPO_SEED or 0)");
  ver_cmd->add_option("--samples", cfg.samples, "random cases per property");
  ver_cmd->add_option("--min-vertices", cfg.min_vertices, "smallest generated tree");
  ver_cmd->add_option("--max-vertices", cfg.max_vertices, "largest generated tree");
  ver_cmd->add_option("--max-denominator", cfg.max_denominator, "denominator bound for random offsets");
  ver_cmd->add_option("--min-length", min_len, "shortest generated edge (rational)");
  ver_cmd->add_option("--max-length", max_len, "longest generated edge (rational)");
  ver_cmd->add_option("--property", props, "run only the named properties");
  ver_cmd->add_flag("--list", list, "list property names and exit");
  ver_cmd->add_option("--replay", replay_line, "re-run a single recorded case");

  auto* dot_cmd = app.add_subcommand("dot", "Graphviz rendering of the skeleton");
  dot_cmd->add_option("--tree", tree, "tree description file")->required();
  dot_cmd->add_option("--mark", marks, "points to annotate in the drawing");
  dot_cmd->add_option("--output", output, "write to this file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? 2 : 0;  // CLI11 prints its own message; --help exits 0
  }

  try {
    if (*meet_cmd) return run_meet(tree, base, a, b);
    if (*inf_cmd) return run_inf(tree, base, points);
    if (*seg_cmd) return run_segment(tree, a, b);
    if (*dist_cmd) return run_dist(tree, base, a, b);
    if (*tan_cmd) return run_tangent(tree, at, of);
    if (*rr_cmd) return run_reroot_check(tree, base);
    if (*reg_cmd) return run_region(tree, base, expr, check, point);
    if (*ver_cmd) {
      if (ver_cmd->count("--seed") == 0) {
        if (const char* env = std::getenv("TREETOPO_SEED")) cfg.seed = std::strtoull(env, nullptr, 10);
      }
      if (!min_len.empty()) cfg.min_edge_length = parse_rational(min_len);
      if (!max_len.empty()) cfg.max_edge_length = parse_rational(max_len);
      return run_verify(cfg, props, list, replay_line, 5);
    }
    if (*dot_cmd) return run_dot(tree, marks, output);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const treetopo::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const treetopo::RecordError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
