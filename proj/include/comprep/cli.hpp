#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "comprep/backtrack.hpp"
#include "comprep/core.hpp"
#include "comprep/io.hpp"
#include "comprep/mfl.hpp"
#include "comprep/reduce.hpp"
#include "comprep/special.hpp"

namespace comprep {

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

inline GridPoint parse_xy(const std::string& word) {
  auto comma = word.find(',');
  if (comma == std::string::npos) throw std::runtime_error("expected 'x,y', got '" + word + "'");
  auto x = parse_int(word.substr(0, comma));
  auto y = parse_int(word.substr(comma + 1));
  if (!x || !y) throw std::runtime_error("expected 'x,y', got '" + word + "'");
  return {*x, *y};
}

inline void print_assignment(std::ostream& out, const Instance& inst, const Assignment& asg) {
  for (int j = 0; j < inst.slot_count(); ++j)
    out << "x " << j + 1 << ' ' << inst.domains[j][asg.choices[j]] << "\n";
}

inline void print_mfl_solution(std::ostream& out, const MflInstance& inst, const MflSolution& sol) {
  for (int j = 0; j < inst.size(); ++j) {
    auto d = direction_between(inst.points[j], sol.centers[j]);
    out << j + 1 << ' ' << direction_code(*d) << "\n";
  }
}

}  // namespace detail

// Exit codes: 0 solved/success, 1 proven unsolvable, 2 usage/format error.
inline int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"compatible representatives toolkit", "comprep"};
  app.require_subcommand(1);

  auto* compat = app.add_subcommand("compat", "finite compatibility instances");
  compat->require_subcommand(1);

  auto* csolve = compat->add_subcommand("solve", "solve or enumerate an instance file");
  std::string csolve_file;
  bool csolve_enum = false;
  long long csolve_limit = 1000;
  std::string method = "auto";
  csolve->add_option("file", csolve_file, "instance file")->required();
  csolve->add_flag("--enumerate", csolve_enum, "list all solutions up to --limit");
  csolve->add_option("--limit", csolve_limit, "solution cap for --enumerate")->check(CLI::PositiveNumber);
  csolve->add_option("--method", method, "auto|backtrack|transitive|2sat|matching")
      ->check(CLI::IsMember({"auto", "backtrack", "transitive", "2sat", "matching"}));

  auto* creduce = compat->add_subcommand("reduce", "emit a CNF or independence-graph reduction");
  std::string creduce_file, creduce_to, creduce_out;
  creduce->add_option("file", creduce_file, "instance file")->required();
  creduce->add_option("--to", creduce_to, "cnf|graph")->required()->check(CLI::IsMember({"cnf", "graph"}));
  creduce->add_option("-o,--output", creduce_out, "output file")->required();

  auto* mfl = app.add_subcommand("mfl", "grid label placement");
  mfl->require_subcommand(1);

  auto* msolve = mfl->add_subcommand("solve", "solve or enumerate a points file");
  std::string msolve_file, msolve_svg;
  bool msolve_enum = false;
  long long msolve_limit = 1000;
  msolve->add_option("file", msolve_file, "points file")->required();
  msolve->add_flag("--enumerate", msolve_enum, "list all solutions up to --limit");
  msolve->add_option("--limit", msolve_limit, "solution cap for --enumerate")->check(CLI::PositiveNumber);
  msolve->add_option("--svg", msolve_svg, "write an SVG rendering here");

  auto* gadget = mfl->add_subcommand("gadget", "emit gadget point sets");
  gadget->require_subcommand(1);

  auto* gcluster = gadget->add_subcommand("cluster", "four-point cluster");
  std::string gcluster_origin = "0,0", gcluster_out;
  gcluster->add_option("--origin", gcluster_origin, "lower-left point x,y");
  gcluster->add_option("-o,--output", gcluster_out)->required();

  auto* gchain = gadget->add_subcommand("chain", "chain of clusters at diagonal offsets");
  std::vector<std::string> gchain_origins;
  std::string gchain_out;
  gchain->add_option("--origin", gchain_origins, "cluster origin x,y (repeatable)")->required();
  gchain->add_option("-o,--output", gchain_out)->required();

  auto* gcomb = gadget->add_subcommand("comb", "clause comb");
  int gcomb_l = 0, gcomb_m = 1;
  std::string gcomb_anchor = "0,0", gcomb_out;
  gcomb->add_option("--left", gcomb_l, "left arm parameter l (6l+4 dots)");
  gcomb->add_option("--right", gcomb_m, "right arm parameter m (6m+4 dots)");
  gcomb->add_option("--anchor", gcomb_anchor, "translation x,y");
  gcomb->add_option("-o,--output", gcomb_out)->required();

  auto* gjunction = gadget->add_subcommand("junction", "polarity junction");
  bool gjunction_neg = false;
  std::string gjunction_anchor = "0,0", gjunction_out;
  gjunction->add_flag("--negated", gjunction_neg, "negated-literal variant");
  gjunction->add_option("--anchor", gjunction_anchor, "translation x,y");
  gjunction->add_option("-o,--output", gjunction_out)->required();

  auto* mcompile = mfl->add_subcommand("compile3sat", "compile a planar 3SAT formula");
  std::string mcompile_file, mcompile_out, mcompile_dec;
  mcompile->add_option("file", mcompile_file, "p3sat file")->required();
  mcompile->add_option("-o,--output", mcompile_out, "points output")->required();
  mcompile->add_option("--decoder", mcompile_dec, "decoder output")->required();

  try {
    std::vector<std::string> reversed(argv.rbegin(), argv.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (csolve->parsed()) {
      Instance inst = parse_instance(detail::read_file(csolve_file));
      if (csolve_enum) {
        if (method != "auto" && method != "backtrack") {
          err << "error: --enumerate requires --method auto or backtrack\n";
          return 2;
        }
        SearchOptions opts;
        opts.cap = csolve_limit;
        EnumerateResult res = enumerate(inst, opts);
        for (size_t i = 0; i < res.solutions.size(); ++i) {
          out << "solution " << i + 1 << "\n";
          detail::print_assignment(out, inst, res.solutions[i]);
        }
        if (res.solutions.empty()) {
          err << "unsolvable\n";
          return 1;
        }
        return 0;
      }
      std::string chosen = method;
      if (chosen == "auto") {
        bool small = true;
        for (int j = 0; j < inst.slot_count(); ++j)
          if (inst.domain_size(j) > 2) small = false;
        if (small) chosen = "2sat";
        else if (incompatibility_classes(inst)) chosen = "matching";
        else if (is_transitive(inst)) chosen = "transitive";
        else chosen = "backtrack";
      }
      std::optional<Assignment> solution;
      if (chosen == "2sat") {
        for (int j = 0; j < inst.slot_count(); ++j)
          if (inst.domain_size(j) > 2) {
            err << "error: --method 2sat requires every domain size <= 2\n";
            return 2;
          }
        solution = solve_2sat(inst);
      } else if (chosen == "matching") {
        if (!incompatibility_classes(inst)) {
          err << "error: --method matching requires incompatibility to be an equivalence\n";
          return 2;
        }
        solution = solve_equivalence(inst);
      } else if (chosen == "transitive") {
        if (!is_transitive(inst)) {
          err << "error: --method transitive requires a transitive relation\n";
          return 2;
        }
        solution = solve_transitive(inst).solution;
      } else {
        solution = solve(inst).solution;
      }
      if (!solution) {
        err << "unsolvable\n";
        return 1;
      }
      detail::print_assignment(out, inst, *solution);
      return 0;
    }

    if (creduce->parsed()) {
      Instance inst = parse_instance(detail::read_file(creduce_file));
      if (creduce_to == "cnf") {
        detail::write_file(creduce_out, emit_dimacs(to_cnf(inst)));
      } else {
        IndependenceGraph g = to_independence_graph(inst);
        std::ostringstream text;
        for (size_t v = 0; v < g.vertex_table.size(); ++v)
          text << "c (" << g.vertex_table[v].first + 1 << ',' << g.vertex_table[v].second + 1
               << ") -> " << v + 1 << "\n";
        text << "p edge " << g.graph.vertex_count() << ' ' << g.graph.edges().size() << "\n";
        for (auto [u, v] : g.graph.edges()) text << "e " << u + 1 << ' ' << v + 1 << "\n";
        detail::write_file(creduce_out, text.str());
      }
      return 0;
    }

    if (msolve->parsed()) {
      MflInstance inst = parse_points(detail::read_file(msolve_file));
      if (msolve_enum) {
        std::vector<MflSolution> sols = enumerate_mfl(inst, msolve_limit);
        for (size_t i = 0; i < sols.size(); ++i) {
          out << "solution " << i + 1 << "\n";
          detail::print_mfl_solution(out, inst, sols[i]);
        }
        if (!msolve_svg.empty())
          detail::write_file(msolve_svg, emit_svg(inst, sols.empty() ? nullptr : &sols.front()));
        if (sols.empty()) {
          err << "unsolvable\n";
          return 1;
        }
        return 0;
      }
      std::optional<MflSolution> sol = solve_mfl(inst);
      if (!msolve_svg.empty()) detail::write_file(msolve_svg, emit_svg(inst, sol ? &*sol : nullptr));
      if (!sol) {
        err << "unsolvable\n";
        return 1;
      }
      detail::print_mfl_solution(out, inst, *sol);
      return 0;
    }

    if (gcluster->parsed()) {
      detail::write_file(gcluster_out, render_points(gadget_cluster(detail::parse_xy(gcluster_origin))));
      return 0;
    }
    if (gchain->parsed()) {
      std::vector<GridPoint> origins;
      for (const std::string& word : gchain_origins) origins.push_back(detail::parse_xy(word));
      detail::write_file(gchain_out, render_points(gadget_chain(origins)));
      return 0;
    }
    if (gcomb->parsed()) {
      CombSpec spec;
      spec.left_arm = gcomb_l;
      spec.right_arm = gcomb_m;
      spec.anchor = detail::parse_xy(gcomb_anchor);
      detail::write_file(gcomb_out, render_points(gadget_comb(spec)));
      return 0;
    }
    if (gjunction->parsed()) {
      detail::write_file(gjunction_out,
                         render_points(gadget_junction(gjunction_neg, detail::parse_xy(gjunction_anchor))));
      return 0;
    }

    if (mcompile->parsed()) {
      Planar3Sat f = parse_p3sat(detail::read_file(mcompile_file));
      CompiledMfl compiled = compile_3sat(f);
      detail::write_file(mcompile_out, render_points(compiled.instance));
      detail::write_file(mcompile_dec, render_decoder(compiled.decoder));
      return 0;
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "error: no command\n";
  return 2;
}

}  // namespace comprep
