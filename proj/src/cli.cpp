#include "minstate/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "minstate/bench.hpp"
#include "minstate/clique_cover.hpp"
#include "minstate/cssr.hpp"
#include "minstate/error.hpp"
#include "minstate/exact_opt.hpp"

namespace minstate {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw FormatError("cannot write '" + path + "'");
  f << text;
}

std::string fixture_text() {
  const auto seq = gen_fixture();
  std::string text;
  for (Symbol s : seq.tokens) text += seq.alphabet.symbol(s);
  return text;
}

struct InputOptions {
  std::string in;
  std::string mode = "chars";
  std::size_t L = 2;
  double alpha = 0.05;
  std::string test = "chi2";

  SymbolSequence load() const {
    return parse_sequence(read_file(in), mode == "tokens" ? ParseMode::tokens : ParseMode::chars);
  }
  TestConfig test_config() const {
    TestConfig cfg{parse_test_kind(test), alpha};
    cfg.validate();
    return cfg;
  }
};

void add_input_options(CLI::App* cmd, InputOptions& opts) {
  cmd->add_option("--in", opts.in, "Sequence file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--mode", opts.mode, "Symbol per character or whitespace-separated tokens")
      ->check(CLI::IsMember({"chars", "tokens"}));
  cmd->add_option("--L", opts.L, "History length")->check(CLI::PositiveNumber);
  cmd->add_option("--alpha", opts.alpha, "Significance level")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--test", opts.test, "Distribution test")
      ->check(CLI::IsMember({"chi2", "pearson", "ks"}));
}

}  // namespace

int cli_main(int argc, char** argv) { return cli_main(argc, argv, std::cout, std::cerr); }

int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimum-state probabilistic automaton inference", "minstate"};
  app.require_subcommand(1);

  std::string out_path;

  auto* gen = app.add_subcommand("gen-fixture", "Write the 648-symbol CSSR counterexample sequence");
  gen->add_option("--out", out_path, "Output file (default stdout)");

  InputOptions infer_in;
  std::string method = "cssr";
  std::string format = "json";
  std::string lp_path;
  auto* infer = app.add_subcommand("infer", "Infer a machine from a sequence");
  add_input_options(infer, infer_in);
  infer->add_option("--method", method, "Inference method")
      ->check(CLI::IsMember({"cssr", "ip", "clique"}));
  infer->add_option("--format", format, "Output format")->check(CLI::IsMember({"dot", "json"}));
  infer->add_option("--out", out_path, "Output file (default stdout)");
  infer->add_option("--lp", lp_path, "Also write the 0/1 program in LP format (ip method)");

  std::string config_path;
  auto* bench = app.add_subcommand("bench", "Run the runtime comparison and emit CSV");
  bench->add_option("--config", config_path, "key = value config file")
      ->required()
      ->check(CLI::ExistingFile);
  bench->add_option("--out", out_path, "CSV file (default stdout)");

  InputOptions graph_in;
  auto* graph_cmd = app.add_subcommand("graph", "Dump the compatibility graph as an edge list");
  add_input_options(graph_cmd, graph_in);
  graph_cmd->add_option("--out", out_path, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (*gen) {
      write_output(out_path, fixture_text(), out);
    } else if (*infer) {
      const auto seq = infer_in.load();
      const auto test = infer_in.test_config();
      const WindowCounts wc(seq, infer_in.L);
      Pfsa machine;
      if (method == "cssr") {
        machine = cssr(wc, seq.alphabet, CssrConfig{infer_in.L, test});
      } else if (method == "ip") {
        const auto g = compatibility_graph(wc, test);
        const auto succ = successor_table(g.vertices, wc);
        if (!lp_path.empty()) write_output(lp_path, to_lp(build_ip_model(g, succ, true)), out);
        machine = build_machine(solve_msdpfsa(g, succ).partition, wc, seq.alphabet);
      } else {
        machine = clique_pipeline(wc, seq.alphabet, infer_in.L, test).machine;
      }
      write_output(out_path, export_machine(machine, parse_export_format(format)), out);
    } else if (*bench) {
      const auto cfg = parse_bench_config(read_file(config_path));
      write_output(out_path, to_csv(run_bench(cfg), cfg), out);
    } else if (*graph_cmd) {
      const auto seq = graph_in.load();
      const WindowCounts wc(seq, graph_in.L);
      write_output(out_path, to_edge_list(compatibility_graph(wc, graph_in.test_config()), seq.alphabet),
                   out);
    }
  } catch (const InvalidConfig& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace minstate
