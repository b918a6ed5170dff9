#include "resnet/cli.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "resnet/bounds.hpp"
#include "resnet/constructions.hpp"
#include "resnet/edge_list.hpp"
#include "resnet/resistance.hpp"
#include "resnet/rooting.hpp"
#include "resnet/search.hpp"
#include "resnet/verify.hpp"

namespace resnet::cli {

namespace {

using nlohmann::json;

// Writes to --output when given, otherwise to the command's stdout.
class Sink {
public:
  Sink(const RunConfig& cfg, std::ostream& fallback) : out_(&fallback) {
    if (cfg.output_path) {
      file_.open(*cfg.output_path);
      if (!file_) throw std::runtime_error("cannot open output file " + *cfg.output_path);
      out_ = &file_;
    }
  }
  std::ostream& stream() { return *out_; }

private:
  std::ofstream file_;
  std::ostream* out_;
};

std::string num(double v) { return format_number(round15(v)); }

EdgeListFile load(const RunConfig& cfg) {
  if (!cfg.input_path) throw CLI::ValidationError("--input", "an input edge-list file is required");
  return read_edge_list_file(*cfg.input_path);
}

void print_text(std::ostream& out, const json& j, const std::string& prefix = "") {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it->is_object()) {
      print_text(out, *it, prefix + it.key() + ".");
    } else if (it->is_array()) {
      out << prefix << it.key() << ":";
      for (const auto& v : *it) out << ' ' << v.dump();
      out << '\n';
    } else if (it->is_number_float()) {
      out << prefix << it.key() << ": " << num(it->get<double>()) << '\n';
    } else {
      out << prefix << it.key() << ": " << (it->is_string() ? it->get<std::string>() : it->dump()) << '\n';
    }
  }
}

void emit(std::ostream& out, Format format, const json& j) {
  if (format == Format::text) {
    print_text(out, j);
  } else {
    out << j.dump(2) << '\n';
  }
}

struct Theorem64Args {
  std::size_t ell = 0;
  double eps = 0.0;
  std::optional<double> p;
};

Theorem64Args parse_theorem64(const std::vector<std::string>& tokens) {
  Theorem64Args a;
  bool have_ell = false, have_eps = false;
  for (const auto& tok : tokens) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw CLI::ValidationError("--theorem64", "expected key=value, got '" + tok + "'");
    const std::string key = tok.substr(0, eq);
    const std::string value = tok.substr(eq + 1);
    try {
      if (key == "ell" || key == "l" || key == "\xe2\x84\x93") {
        a.ell = std::stoul(value);
        have_ell = true;
      } else if (key == "eps") {
        a.eps = std::stod(value);
        have_eps = true;
      } else if (key == "p") {
        a.p = std::stod(value);
      } else {
        throw CLI::ValidationError("--theorem64", "unknown key '" + key + "'");
      }
    } catch (const std::logic_error&) {
      throw CLI::ValidationError("--theorem64", "bad value in '" + tok + "'");
    }
  }
  if (!have_ell || !have_eps) throw CLI::ValidationError("--theorem64", "needs ell=L and eps=E");
  return a;
}

json theorem64_json(const Theorem64Result& t, const Theorem64Args& a) {
  return json{{"ell", a.ell},
              {"eps", round15(a.eps)},
              {"p", round15(t.p)},
              {"sinks", t.sinks.size()},
              {"sink_edges", t.sink_edges},
              {"repaired", t.repaired.size()},
              {"repair_edges", t.repair_edges},
              {"alpha_input", round15(t.alpha_input)},
              {"alpha_output", round15(t.alpha_output)},
              {"max_ratio", round15(t.max_ratio)},
              {"ball_average", round15(t.ball_average)},
              {"B", round15(t.B)},
              {"certified", t.max_ratio <= 1.0 + a.eps + 1e-12}};
}

json summary_json(const Multigraph& g, std::optional<Vertex> root) {
  json j;
  j["summary"] = finite(resistance_summary(g));
  if (root) {
    const RootedSummary s = finite(rooted_summary(RootedGraph(g, *root)));
    json rj = s;
    rj["root"] = *root;
    j["rooted"] = rj;
  }
  return j;
}

}  // namespace

int cmd_analyze(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const EdgeListFile file = load(cfg);
  Sink sink(cfg, out);
  std::ostream& os = sink.stream();
  if (!cfg.pair.empty()) {
    if (cfg.pair.size() != 2) throw CLI::ValidationError("--pair", "needs two vertices");
    const double r = finite(pair_resistance(file.graph, cfg.pair[0], cfg.pair[1]));
    if (cfg.format == Format::csv)
      os << "x,y,resistance\n" << cfg.pair[0] << ',' << cfg.pair[1] << ',' << num(r) << '\n';
    else
      emit(os, cfg.format, json{{"x", cfg.pair[0]}, {"y", cfg.pair[1]}, {"resistance", round15(r)}});
    return kOk;
  }
  if (cfg.format == Format::csv) {
    write_csv(os, finite(resistance_summary(file.graph)));
    if (file.root) write_csv(os, finite(rooted_summary(file.rooted())));
    return kOk;
  }
  emit(os, cfg.format, summary_json(file.graph, file.root));
  return kOk;
}

int cmd_construct(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::string text;
  for (const auto& t : cfg.spec_tokens) text += (text.empty() ? "" : " ") + t;
  ConstructionSpec spec = parse_construction_spec(text);
  if (!spec.params.count("seed")) spec.params["seed"] = std::to_string(cfg.seed);
  Construction c = build(spec);
  err << "built " << spec.family << ": " << c.graph.num_vertices() << " vertices, " << c.graph.num_edges()
      << " edges\n";

  json report;
  Multigraph graph = std::move(c.graph);
  std::optional<Vertex> root = c.root;
  if (!cfg.theorem64.empty()) {
    if (root) throw CLI::ValidationError("--theorem64", "needs an unrooted construction");
    const Theorem64Args a = parse_theorem64(cfg.theorem64);
    Theorem64Result t = theorem64_rooting(graph, a.ell, a.eps, a.p, cfg.seed + 1);
    report["theorem64"] = theorem64_json(t, a);
    root = t.rooted.root();
    graph = t.rooted.graph();
  }
  if (cfg.analyze) report.update(summary_json(graph, root));

  const bool has_report = !report.is_null();
  if (cfg.output_path || !has_report) {
    Sink sink(cfg, out);
    write_edge_list(sink.stream(), graph, root);
  }
  if (has_report) emit(out, cfg.format == Format::csv ? Format::json : cfg.format, report);
  return kOk;
}

int cmd_root(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const EdgeListFile file = load(cfg);
  if (file.root) throw CLI::ValidationError("--input", "graph already declares a root");
  json report;
  RootedGraph rooted;
  if (cfg.method == "sinks") {
    const SinkSampling s = root_via_sinks(file.graph, cfg.sinks, cfg.trials, cfg.seed);
    report = json{{"method", "sinks"},          {"s", cfg.sinks},
                  {"trials", cfg.trials},       {"best_B", round15(s.best_B)},
                  {"mean_B", round15(s.mean_B)}, {"stderr_B", round15(s.stderr_B)},
                  {"bound", round15(s.bound)}};
    rooted = s.best;
  } else if (cfg.method == "p_rooted") {
    SinkRooting s = p_rooted(file.graph, cfg.p, cfg.seed);
    const auto summary = rooted_summary(s.rooted);
    report = json{{"method", "p_rooted"}, {"p", round15(cfg.p)}, {"sinks", s.sinks.size()}};
    if (is_disconnected(summary))
      report["B"] = nullptr;
    else
      report["B"] = round15(std::get<RootedSummary>(summary).B);
    rooted = std::move(s.rooted);
  } else if (cfg.method == "theorem64") {
    const Theorem64Args a = parse_theorem64(cfg.theorem64);
    const Theorem64Result t = theorem64_rooting(file.graph, a.ell, a.eps, a.p, cfg.seed);
    report = theorem64_json(t, a);
    report["method"] = "theorem64";
    rooted = t.rooted;
  } else {
    throw CLI::ValidationError("--method", "unknown method '" + cfg.method + "'");
  }
  err << "rooted graph: " << rooted.num_nonroot() << " non-root vertices, " << rooted.num_edges() << " edges\n";
  if (cfg.output_path) {
    Sink sink(cfg, out);
    write_edge_list(sink.stream(), rooted);
  }
  emit(out, cfg.format == Format::csv ? Format::json : cfg.format, report);
  return kOk;
}

int cmd_bound_sweep(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  if (!(cfg.alpha_lo >= 2.0 && cfg.alpha_hi > cfg.alpha_lo))
    throw CLI::ValidationError("--lo/--hi", "need 2 <= lo < hi");
  Sink sink(cfg, out);
  write_bound_sweep(sink.stream(), cfg.alpha_lo, cfg.alpha_hi, cfg.step, cfg.envelope_k);
  return kOk;
}

int cmd_search(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Sink sink(cfg, out);
  if (cfg.max_steps > 0) {
    const EdgeListFile file = load(cfg);
    if (!file.root) throw CLI::ValidationError("--input", "local improvement needs a rooted graph");
    const RootedGraph before = file.rooted();
    const RootedGraph after = local_improve(before, cfg.max_steps);
    const RootedSummary b0 = finite(rooted_summary(before));
    const RootedSummary b1 = finite(rooted_summary(after));
    err << "B " << num(b0.B) << " -> " << num(b1.B) << '\n';
    write_edge_list(sink.stream(), after);
    return kOk;
  }
  SearchOptions options;
  options.mult_cap = cfg.mult_cap;
  options.dedupe = !cfg.no_dedupe;
  if (cfg.progress) options.progress = [&err](std::uint64_t k) { err << "explored " << k << " classes\n"; };
  const SearchResult r = enumerate_optimal(parse_objective(cfg.objective), cfg.n, cfg.m, options);
  emit(sink.stream(), cfg.format == Format::csv ? Format::json : cfg.format, json(r));
  return kOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  VerifyOptions options;
  options.filter = cfg.filter;
  options.seed = cfg.seed;
  options.theorem1_n = cfg.theorem1_n;
  const auto results = run_verification(options);
  if (results.empty()) {
    err << "no checks match filter '" << cfg.filter.value_or("") << "'\n";
    return kUsage;
  }
  Sink sink(cfg, out);
  std::ostream& os = sink.stream();
  std::size_t failed = 0;
  if (cfg.format == Format::json) {
    json arr = json::array();
    for (const auto& r : results)
      arr.push_back({{"group", r.group}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    os << json{{"checks", arr}}.dump(2) << '\n';
  } else if (cfg.format == Format::csv) {
    os << "group,name,passed\n";
    for (const auto& r : results) os << r.group << ',' << r.name << ',' << (r.passed ? "PASS" : "FAIL") << '\n';
  } else {
    for (const auto& r : results)
      os << (r.passed ? "PASS " : "FAIL ") << r.name << "  " << r.detail << '\n';
  }
  for (const auto& r : results) {
    err << r.name << " (" << num(r.seconds) << " s)\n";
    if (!r.passed) ++failed;
  }
  if (failed) {
    err << failed << " check(s) failed:\n";
    for (const auto& r : results)
      if (!r.passed) err << "  " << r.name << ": " << r.detail << '\n';
    return kVerifyFailed;
  }
  err << results.size() << " checks passed\n";
  return kOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Effective resistance of unit-resistor multigraphs"};
  app.require_subcommand(1);
  RunConfig cfg;
  const std::map<std::string, Format> formats{{"json", Format::json}, {"csv", Format::csv}, {"text", Format::text}};

  auto common = [&](CLI::App* sub) {
    sub->add_option("--input,-i", cfg.input_path, "Edge-list file");
    sub->add_option("--output,-o", cfg.output_path, "Write machine output here");
    sub->add_option("--format,-f", cfg.format, "json, csv or text")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    sub->add_option("--seed", cfg.seed, "Random seed");
  };

  auto* analyze = app.add_subcommand("analyze", "Resistance summary of an edge-list file");
  common(analyze);
  analyze->add_option("--pair", cfg.pair, "Only the resistance between two vertices")->expected(2);

  auto* construct = app.add_subcommand("construct", "Build a graph family");
  common(construct);
  construct->add_option("spec", cfg.spec_tokens, "family=NAME key=value ...")->required();
  construct->add_flag("--analyze", cfg.analyze, "Print the resistance summary");
  construct->add_option("--theorem64", cfg.theorem64, "ell=L eps=E [p=P]")->expected(2, 3);

  auto* root = app.add_subcommand("root", "Add a root to an unrooted graph");
  common(root);
  root->add_option("--method", cfg.method, "sinks, p_rooted or theorem64");
  root->add_option("--sinks,-s", cfg.sinks, "Sink multiset size");
  root->add_option("--trials", cfg.trials, "Sampled multisets");
  root->add_option("--p", cfg.p, "Sink probability for p_rooted");
  root->add_option("--theorem64", cfg.theorem64, "ell=L eps=E [p=P]")->expected(2, 3);

  auto* sweep = app.add_subcommand("bound-sweep", "CSV of every bound curve over an alpha grid");
  common(sweep);
  sweep->add_option("--lo", cfg.alpha_lo, "Smallest alpha");
  sweep->add_option("--hi", cfg.alpha_hi, "Largest alpha");
  sweep->add_option("--step", cfg.step, "Grid step")->check(CLI::PositiveNumber);
  sweep->add_option("--K", cfg.envelope_k, "Largest regular degree in the envelope");

  auto* search = app.add_subcommand("search", "Exhaustive optimum over small multigraphs");
  common(search);
  search->add_option("--objective", cfg.objective, "A, B or B_queen_bee");
  search->add_option("--n", cfg.n, "Vertices (non-root vertices for B)");
  search->add_option("--m", cfg.m, "Edges");
  search->add_option("--mult-cap", cfg.mult_cap, "Largest multiplicity (0 = m)");
  search->add_flag("--no-dedupe", cfg.no_dedupe, "Evaluate every labelled graph");
  search->add_flag("--progress", cfg.progress, "Report explored classes on stderr");
  search->add_option("--improve", cfg.max_steps, "Run local improvement on --input for this many steps");

  auto* verify = app.add_subcommand("verify", "Run the verification battery");
  common(verify);
  verify->add_option("--filter", cfg.filter, "Group or check name");
  verify->add_option("--n", cfg.theorem1_n, "Vertex count for the desk-scale reproduction");

  cfg.format = Format::json;
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
  if (cfg.command == "verify" && verify->count("--format") == 0) cfg.format = Format::text;
  if (cfg.command == "bound-sweep") cfg.format = Format::csv;

  try {
    if (cfg.command == "analyze") return cmd_analyze(cfg, out, err);
    if (cfg.command == "construct") return cmd_construct(cfg, out, err);
    if (cfg.command == "root") return cmd_root(cfg, out, err);
    if (cfg.command == "bound-sweep") return cmd_bound_sweep(cfg, out, err);
    if (cfg.command == "search") return cmd_search(cfg, out, err);
    if (cfg.command == "verify") return cmd_verify(cfg, out, err);
  } catch (const DisconnectedError& e) {
    err << "error: " << e.what() << '\n';
    return kInfinite;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace resnet::cli
