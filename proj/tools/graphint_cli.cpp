// graphint: analyses of a finite directed graph from a text or JSON file.
// Exit codes: 0 ok, 1 parse error, 2 bad arguments, 3 oracle mismatch or failed exact check.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "graphint/graphint.hpp"

namespace {

constexpr int kExitParse = 1;
constexpr int kExitArgs = 2;
constexpr int kExitMismatch = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

graphint::Graph load(const std::string& file) {
  std::string text;
  if (file == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(file);
    if (!in) throw UsageError("cannot read '" + file + "'");
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  return graphint::parse_graph(text);
}

void write(const std::string& out, const std::string& content) {
  if (out.empty() || out == "-") {
    std::cout << content;
    return;
  }
  std::ofstream f(out);
  if (!f || !(f << content)) throw UsageError("cannot write '" + out + "'");
}

int finish(const nlohmann::ordered_json& j, const graphint::Report& rep, bool text = false) {
  if (text)
    std::cout << graphint::render_text(j);
  else
    std::cout << j.dump(2) << '\n';
  for (const auto& m : rep.mismatches) std::cerr << "oracle mismatch: " << m << '\n';
  for (const auto& m : rep.failures) std::cerr << "check failed: " << m << '\n';
  return rep.mismatches.empty() && rep.failures.empty() ? 0 : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph interactions, structure verdicts, path dynamics and K-theory of finite directed graphs"};
  app.require_subcommand(1);

  std::string file;
  graphint::ReportOptions opt;
  bool as_text = false, as_json = false;

  auto* analyze = app.add_subcommand("analyze", "full report");
  analyze->add_option("file", file, "graph file (text or JSON, '-' for stdin)")->required();
  auto* fmt = analyze->add_option_group("format");
  fmt->add_flag("--json", as_json, "JSON output (default)");
  fmt->add_flag("--text", as_text, "plain-text summary");
  fmt->require_option(0, 1);
  analyze->add_option("--max-power", opt.max_power, "largest power n tested")->check(CLI::Range(1u, 64u));
  analyze->add_option("--level", opt.level, "axiom suite levels 1..N")->check(CLI::Range(1u, 8u));
  analyze->add_option("--depth", opt.depth, "truncated representation depth")->check(CLI::Range(2u, 10u));

  std::size_t levels = 3;
  std::string dot_out;
  bool bratteli_json = false;
  auto* brat = app.add_subcommand("bratteli", "Bratteli diagram of the core as DOT");
  brat->add_option("file", file)->required();
  brat->add_option("--levels", levels, "number of levels")->check(CLI::Range(1u, 64u));
  brat->add_option("--dot", dot_out, "output path ('-' or omitted for stdout)");
  brat->add_flag("--json", bratteli_json, "JSON instead of DOT");

  bool graph_dot = false;
  auto* graph_cmd = app.add_subcommand("graph", "normalized graph as text, JSON or DOT");
  graph_cmd->add_option("file", file)->required();
  graph_cmd->add_flag("--json", as_json);
  graph_cmd->add_flag("--dot", graph_dot);

  auto* powers = app.add_subcommand("powers", "interaction powers with the per-oracle breakdown");
  powers->add_option("file", file)->required();
  powers->add_option("--max-power", opt.max_power)->check(CLI::Range(1u, 64u));

  auto* kth = app.add_subcommand("ktheory", "K0 and K1 with the truncated-presentation cross-check");
  kth->add_option("file", file)->required();

  std::string point;
  auto* dyn = app.add_subcommand("dynamics", "exit-free loops, periodic orbits, optional path-point queries");
  dyn->add_option("file", file)->required();
  dyn->add_option("--point", point, "path point, e.g. 'e1.(e2.e3)*', 'e1!' or '!v'");

  auto* verify = app.add_subcommand("verify", "exact axiom suite and operator oracle");
  verify->add_option("file", file)->required();
  verify->add_option("--level", opt.level)->check(CLI::Range(1u, 8u));
  verify->add_option("--depth", opt.depth)->check(CLI::Range(2u, 10u));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitArgs;
  }

  try {
    graphint::Graph g = load(file);
    graphint::Report rep;

    if (*analyze) {
      rep = graphint::analyze(g, opt);
      return finish(rep.json, rep, as_text);
    }
    if (*brat) {
      auto d = graphint::bratteli(g, levels);
      write(dot_out, bratteli_json ? graphint::to_json(g, d).dump(2) + "\n" : graphint::to_dot(g, d));
      return 0;
    }
    if (*graph_cmd) {
      std::cout << (graph_dot ? graphint::to_dot(g) : as_json ? graphint::to_json(g).dump(2) + "\n" : graphint::to_text(g));
      return 0;
    }
    if (*powers) return finish(graphint::powers_fragment(g, opt.max_power, rep), rep);
    if (*kth) return finish(graphint::ktheory_fragment(g, rep), rep);
    if (*dyn) {
      nlohmann::ordered_json j = graphint::dynamics_fragment(g);
      if (!point.empty()) {
        auto p = graphint::parse_path_point(g, point);
        nlohmann::ordered_json q;
        q["input"] = point;
        q["canonical"] = graphint::to_string(g, p.canonical(g));
        q["class"] = graphint::to_string(g, graphint::QuotientClass::of(g, p).representative());
        if (p.is_lasso() || p.length() > 0) q["shift"] = graphint::to_string(g, graphint::shift(g, p));
        j["point"] = std::move(q);
      }
      return finish(j, rep);
    }
    if (*verify) {
      nlohmann::ordered_json j = graphint::verification_fragment(g, opt.level, opt.depth, rep);
      j["passed"] = rep.failures.empty();
      return finish(j, rep);
    }
  } catch (const graphint::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitArgs;
  } catch (const graphint::OracleMismatch& e) {
    std::cerr << "oracle mismatch: " << e.what() << '\n';
    return kExitMismatch;
  } catch (const graphint::BoundExceeded& e) {
    std::cerr << "size bound exceeded: " << e.what() << '\n';
    return kExitArgs;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kExitArgs;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kExitArgs;
  }
  return 0;
}
