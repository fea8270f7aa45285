#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "baire/algebra.hpp"
#include "baire/decision.hpp"
#include "baire/errors.hpp"
#include "baire/formula.hpp"
#include "baire/maps.hpp"
#include "baire/quotient.hpp"

namespace baire::cli {

int exit_code(Status s) {
  switch (s) {
    case Status::Ok: return 0;
    case Status::Fail: return 1;
    default: return 2;
  }
}

const char* status_name(Status s) {
  switch (s) {
    case Status::Ok: return "ok";
    case Status::Fail: return "fail";
    default: return "error";
  }
}

namespace {

std::string scalar_text(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "none";
  return j.dump();
}

bool all_scalars(const json& j) {
  for (const auto& e : j)
    if (e.is_structured() && !(e.is_array() && all_scalars(e))) return false;
  return true;
}

std::string inline_array(const json& j) {
  std::string out = "[";
  bool first = true;
  for (const auto& e : j) {
    if (!first) out += ", ";
    first = false;
    out += e.is_array() ? inline_array(e) : scalar_text(e);
  }
  return out + "]";
}

void flatten(const std::string& prefix, const json& j, std::ostringstream& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(prefix.empty() ? k : prefix + "." + k, v, out);
  } else if (j.is_array() && !all_scalars(j)) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(prefix + "." + std::to_string(i), j[i], out);
  } else {
    out << prefix << ": " << (j.is_array() ? inline_array(j) : scalar_text(j)) << "\n";
  }
}

}  // namespace

std::string render_report(const Report& r, Format format) {
  if (format == Format::Json) {
    json doc;
    doc["command"] = r.command;
    doc["status"] = status_name(r.status);
    doc["payload"] = r.payload;
    doc["diagnostics"] = r.diagnostics;
    return doc.dump() + "\n";
  }
  std::ostringstream out;
  out << "command: " << r.command << "\n";
  out << "status: " << status_name(r.status) << "\n";
  flatten("", r.payload, out);
  for (const auto& d : r.diagnostics) out << "diagnostic: " << d << "\n";
  return out.str();
}

namespace {

std::string world_name(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw Error("world names must be strings or integers");
}

}  // namespace

Frame frame_from_json(const json& j, const FrameLimits& limits) {
  if (!j.is_object() || !j.contains("worlds")) throw Error("frame document needs a \"worlds\" list");
  std::vector<std::string> worlds;
  for (const auto& w : j.at("worlds")) worlds.push_back(world_name(w));
  std::vector<std::pair<std::string, std::string>> edges;
  if (j.contains("edges")) {
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw Error("each edge must be a pair [w, v]");
      edges.emplace_back(world_name(e[0]), world_name(e[1]));
    }
  }
  const bool auto_close = j.value("auto_close", true);
  return build_frame(worlds, edges, auto_close, limits);
}

namespace {

struct Budgets {
  int max_worlds = kDefaultMaxWorlds;
  unsigned max_vars = 64;
  std::uint64_t max_assignments = SweepOptions{}.max_assignments;
  std::uint64_t max_models = DecideOptions{}.max_models;
  bool serial = false;

  SweepOptions sweep() const { return {max_assignments, !serial}; }
  DecideOptions decide() const { return {max_models, std::nullopt, std::nullopt}; }
  ParseOptions parse() const { return {max_vars}; }
  FrameLimits frames() const { return {max_worlds}; }
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(path + ": " + e.what());
  }
}

Frame load_frame(const std::string& path, const Budgets& b) {
  try {
    return frame_from_json(read_json_file(path), b.frames());
  } catch (const json::exception& e) {
    throw Error(path + ": " + e.what());
  }
}

json names(const Frame& fr, WorldSet a) {
  json out = json::array();
  for (int w : a.members()) out.push_back(fr.name(w));
  return out;
}

json name_lists(const Frame& fr, const std::vector<WorldSet>& sets) {
  json out = json::array();
  for (auto s : sets) out.push_back(names(fr, s));
  return out;
}

json countermodel_json(const Countermodel& cm, const Frame* fallback) {
  const Frame* fr = cm.frame ? &*cm.frame : fallback;
  json out;
  out["algebra"] = cm.algebra;
  if (!cm.cluster_sizes.empty()) out["cluster_sizes"] = cm.cluster_sizes;
  if (fr) out["worlds"] = names(*fr, cm.top);
  json val = json::object();
  for (const auto& [var, a] : cm.valuation)
    val["p" + std::to_string(var)] = fr ? names(*fr, a) : json(a.bits());
  out["valuation"] = val;
  out["value"] = fr ? names(*fr, cm.value) : json(cm.value.bits());
  return out;
}

void put_verdict(Report& r, const Verdict& v, const Frame* fallback) {
  r.payload["valid"] = v.valid;
  if (v.countermodel) r.payload["countermodel"] = countermodel_json(*v.countermodel, fallback);
  r.status = v.valid ? Status::Ok : Status::Fail;
}

// The algebra named by --frame (Kur) or --quotient-of-frame (Baire).
struct AlgebraSource {
  std::string frame_path;
  std::string quotient_path;

  void attach(CLI::App* sub) {
    auto* a = sub->add_option("--frame", frame_path, "Kur algebra of this frame file");
    auto* b = sub->add_option("--quotient-of-frame", quotient_path, "Baire algebra of this frame file");
    a->excludes(b);
    b->excludes(a);
  }

  struct Loaded {
    Frame space;
    ClosureAlgebra algebra;
  };

  Loaded load(const Budgets& b) const {
    if (frame_path.empty() == quotient_path.empty())
      throw Error("give exactly one of --frame and --quotient-of-frame");
    if (!frame_path.empty()) {
      auto fr = load_frame(frame_path, b);
      auto alg = kur_algebra_from_frame(fr);
      return {std::move(fr), std::move(alg)};
    }
    auto fr = load_frame(quotient_path, b);
    Quotient q(fr);
    return {std::move(fr), q.algebra()};
  }
};

std::string sexpr(const Formula& f) {
  switch (f.op()) {
    case Op::Var: return "p" + std::to_string(f.var_index());
    case Op::And: return "(and " + sexpr(f.left()) + " " + sexpr(f.right()) + ")";
    case Op::Not: return "(not " + sexpr(f.child()) + ")";
    case Op::Diamond: return "(dia " + sexpr(f.child()) + ")";
    case Op::Forall: return "(all " + sexpr(f.child()) + ")";
    default: return "?";
  }
}

json hom_json(const HomomorphismCheck& c) {
  return json{{"meets", c.meets}, {"complements", c.complements}, {"closure", c.closure}, {"injective", c.injective}};
}

PartialMap load_map(const std::string& path, const Budgets& b) {
  const json doc = read_json_file(path);
  try {
    auto side = [&](const char* key) {
      const auto& j = doc.at(key);
      if (!j.is_string()) return frame_from_json(j, b.frames());
      // Relative frame paths are read next to the map file.
      const std::filesystem::path rel = j.get<std::string>();
      return load_frame((rel.is_absolute() ? rel : std::filesystem::path(path).parent_path() / rel).string(), b);
    };
    std::vector<std::pair<std::string, std::string>> graph;
    for (const auto& e : doc.at("graph")) {
      if (!e.is_array() || e.size() != 2) throw Error("each graph entry must be a pair [x, y]");
      graph.emplace_back(world_name(e[0]), world_name(e[1]));
    }
    return partial_map_from_pairs(side("source"), side("target"), graph);
  } catch (const json::exception& e) {
    throw Error(path + ": " + e.what());
  }
}

}  // namespace

Outcome run(const std::vector<std::string>& argv) {
  CLI::App app{"Baire-algebra semantics for S5 on finite frames"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format_name = "human";
  Budgets budgets;
  app.add_option("--format", format_name, "Output format")->check(CLI::IsMember({"human", "json"}));
  app.add_option("--max-worlds", budgets.max_worlds, "Largest frame accepted");
  app.add_option("--max-vars", budgets.max_vars, "Variable indices must be below this");
  app.add_option("--max-assignments", budgets.max_assignments, "Largest valuation sweep");
  app.add_option("--max-models", budgets.max_models, "Most cluster models examined by decide/classify");
  app.add_flag("--serial", budgets.serial, "Sweep valuations on one thread");

  Report report;
  std::function<void()> action;
  auto formula_arg = [](CLI::App* sub, std::string& text) {
    sub->add_option("formula", text, "Formula in the surface syntax")->required();
  };

  // parse
  std::string parse_text;
  auto* parse_cmd = app.add_subcommand("parse", "Parse, desugar and print a formula");
  formula_arg(parse_cmd, parse_text);
  parse_cmd->callback([&] {
    action = [&] {
      const auto f = parse(parse_text, budgets.parse());
      const auto info = subformulas(f);
      report.payload["rendered"] = render(f);
      report.payload["primitive"] = sexpr(f);
      report.payload["size"] = f.size();
      report.payload["diamonds"] = info.diamonds;
      report.payload["foralls"] = info.foralls;
      json vars = json::array();
      for (auto v : info.variables) vars.push_back("p" + std::to_string(v));
      report.payload["variables"] = vars;
    };
  });

  // decide
  std::string decide_text, logic = "s5";
  int decide_n = 0;
  std::optional<int> max_clusters, max_cluster_size;
  auto* decide_cmd = app.add_subcommand("decide", "Decide validity in S5, S5n or S5U");
  decide_cmd->add_option("--logic", logic, "s5, s5n or s5u")->check(CLI::IsMember({"s5", "s5n", "s5u"}));
  decide_cmd->add_option("--n", decide_n, "Cluster size for s5n");
  decide_cmd->add_option("--max-clusters", max_clusters, "Override the S5U cluster-count bound");
  decide_cmd->add_option("--max-cluster-size", max_cluster_size, "Override the S5U cluster-size bound");
  formula_arg(decide_cmd, decide_text);
  decide_cmd->callback([&] {
    action = [&] {
      const auto f = parse(decide_text, budgets.parse());
      const auto info = subformulas(f);
      report.payload["logic"] = logic;
      report.payload["formula"] = render(f);
      auto opts = budgets.decide();
      Verdict v;
      if (logic == "s5") {
        report.payload["cluster_bound"] = info.diamonds + 1;
        v = s5_decide(f, opts);
      } else if (logic == "s5n") {
        if (decide_n < 1) throw Error("--logic s5n needs --n N with N >= 1");
        report.payload["n"] = decide_n;
        v = s5n_decide(f, decide_n, opts);
      } else {
        opts.max_clusters = max_clusters;
        opts.max_cluster_size = max_cluster_size;
        report.payload["cluster_count_bound"] = max_clusters.value_or(info.foralls + 1);
        report.payload["cluster_size_bound"] = max_cluster_size.value_or(info.diamonds + 1);
        v = s5u_decide(f, opts);
      }
      put_verdict(report, v, nullptr);
    };
  });

  // classify
  std::string classify_text;
  int cap = 8;
  auto* classify_cmd = app.add_subcommand("classify", "Place S5 + formula in the chain of extensions of S5");
  classify_cmd->add_option("--cap", cap, "Largest finite cluster size reported");
  formula_arg(classify_cmd, classify_text);
  classify_cmd->callback([&] {
    action = [&] {
      const auto f = parse(classify_text, budgets.parse());
      const auto c = classify_scroggs(f, cap, budgets.decide());
      report.payload["formula"] = render(f);
      switch (c.kind) {
        case ScroggsClass::Inconsistent:
          report.payload["class"] = "inconsistent";
          report.payload["n"] = 0;
          break;
        case ScroggsClass::Finite:
          report.payload["class"] = "s5n";
          report.payload["n"] = c.n;
          break;
        case ScroggsClass::S5:
          report.payload["class"] = "s5";
          report.payload["n"] = nullptr;
          break;
      }
    };
  });

  // valid
  std::string valid_text;
  AlgebraSource valid_src;
  auto* valid_cmd = app.add_subcommand("valid", "Sweep every valuation in a finite algebra");
  valid_src.attach(valid_cmd);
  formula_arg(valid_cmd, valid_text);
  valid_cmd->callback([&] {
    action = [&] {
      const auto f = parse(valid_text, budgets.parse());
      const auto src = valid_src.load(budgets);
      report.payload["algebra"] = src.algebra.name();
      report.payload["atoms"] = src.algebra.atom_count();
      report.payload["formula"] = render(f);
      put_verdict(report, valid_in_algebra(src.algebra, f, budgets.sweep()), &src.space);
    };
  });

  // quotient
  std::string quotient_frame, verify;
  bool show_qmax = false;
  auto* quotient_cmd = app.add_subcommand("quotient", "Build the quotient by the meager ideal");
  quotient_cmd->add_option("--frame", quotient_frame, "Frame file")->required();
  quotient_cmd->add_option("--verify", verify, "Check closure or monadic axioms")
      ->check(CLI::IsMember({"closure", "monadic"}));
  quotient_cmd->add_flag("--show-qmax", show_qmax, "List the quasimaximal worlds");
  quotient_cmd->callback([&] {
    action = [&] {
      const auto fr = load_frame(quotient_frame, budgets);
      const Quotient q(fr);
      report.payload["worlds"] = fr.size();
      report.payload["qmax_size"] = q.qmax().size();
      report.payload["carrier_size"] = std::uint64_t{1} << q.qmax().size();
      report.payload["trivial"] = q.trivial();
      report.payload["largest_meager"] = names(fr, q.ideal().largest_meager);
      if (show_qmax) report.payload["qmax"] = names(fr, q.qmax());
      if (!verify.empty()) {
        const auto v = verify_axioms(q.algebra(), verify == "monadic" ? AxiomKind::Monadic : AxiomKind::Closure);
        json j{{"kind", verify}, {"pass", v.pass}};
        if (!v.pass) {
          j["axiom"] = v.axiom;
          j["a"] = names(fr, v.a);
          j["b"] = names(fr, v.b);
        }
        report.payload["verify"] = j;
        if (!v.pass) report.status = Status::Fail;
      }
    };
  });

  // resolve
  std::string resolve_frame;
  int resolve_k = 0;
  auto* resolve_cmd = app.add_subcommand("resolve", "Search for a Baire k-resolution");
  resolve_cmd->add_option("--frame", resolve_frame, "Frame file")->required();
  resolve_cmd->add_option("--k", resolve_k, "Number of parts")->required()->check(CLI::PositiveNumber);
  resolve_cmd->callback([&] {
    action = [&] {
      const auto fr = load_frame(resolve_frame, budgets);
      const auto res = find_baire_resolution(fr, resolve_k);
      report.payload["k"] = resolve_k;
      report.payload["found"] = res.has_value();
      if (res) {
        report.payload["parts"] = name_lists(fr, res->parts);
      } else {
        int least = fr.size();
        for (auto c : s4_clusters(fr))
          if (c.subset_of(qmax(fr))) least = std::min(least, c.size());
        report.payload["smallest_final_cluster"] = least;
        report.status = Status::Fail;
      }
    };
  });

  // disconnect
  std::string disconnect_frame, disconnect_algebra = "quotient";
  int disconnect_k = 0;
  auto* disconnect_cmd = app.add_subcommand("disconnect", "Find k orthogonal clopens joining to 1");
  disconnect_cmd->add_option("--frame", disconnect_frame, "Frame file")->required();
  disconnect_cmd->add_option("--k", disconnect_k, "Number of pieces")->required()->check(CLI::PositiveNumber);
  disconnect_cmd->add_option("--algebra", disconnect_algebra, "kur or quotient")
      ->check(CLI::IsMember({"kur", "quotient"}));
  disconnect_cmd->callback([&] {
    action = [&] {
      const auto fr = load_frame(disconnect_frame, budgets);
      const auto alg = disconnect_algebra == "kur" ? kur_algebra_from_frame(fr) : Quotient(fr).algebra();
      const auto w = kappa_disconnected(alg, disconnect_k);
      report.payload["algebra"] = alg.name();
      report.payload["k"] = disconnect_k;
      report.payload["found"] = w.has_value();
      if (w) {
        report.payload["pieces"] = name_lists(fr, *w);
      } else {
        report.payload["clopen_atoms"] = name_lists(fr, alg.clopen_atoms());
        report.status = Status::Fail;
      }
    };
  });

  // map-check
  std::string map_path;
  auto* map_cmd = app.add_subcommand("map-check", "Classify the Baire-map properties of a partial map");
  map_cmd->add_option("--map", map_path, "Map file")->required();
  map_cmd->callback([&] {
    action = [&] {
      const auto f = load_map(map_path, budgets);
      const auto p = check_baire_map(f);
      report.payload = json{{"almost_everywhere", p.almost_everywhere}, {"proper", p.proper},
                            {"baire_continuous", p.baire_continuous}, {"baire_open", p.baire_open},
                            {"exact", p.exact}, {"is_baire_map", p.is_baire_map}};
      if (!p.is_baire_map) report.status = Status::Fail;
    };
  });

  // embed
  std::string embed_w, embed_space;
  auto* embed_cmd = app.add_subcommand("embed", "Embed Kur of an S5 frame into the quotient of a space");
  embed_cmd->add_option("--s5-frame", embed_w, "S5 frame file")->required();
  embed_cmd->add_option("--space", embed_space, "Space frame file")->required();
  embed_cmd->callback([&] {
    action = [&] {
      const auto w = load_frame(embed_w, budgets);
      const auto sp = load_frame(embed_space, budgets);
      const auto e = embed_s5_frame(w, sp);
      report.payload["found"] = e.has_value();
      if (!e) {
        report.status = Status::Fail;
        return;
      }
      report.payload["carriers"] = name_lists(sp, e->carriers);
      json graph = json::array();
      for (int x = 0; x < sp.size(); ++x)
        if (auto y = e->map.at(x)) graph.push_back(json::array({sp.name(x), w.name(*y)}));
      report.payload["graph"] = graph;
      const auto check = check_homomorphism(e->hom);
      report.payload["homomorphism"] = hom_json(check);
      if (!check.ok()) report.status = Status::Fail;
    };
  });

  // subalgebra-s5n
  std::string sub_frame;
  int sub_n = 0;
  auto* sub_cmd = app.add_subcommand("subalgebra-s5n", "Build the S5n subalgebra of the quotient");
  sub_cmd->add_option("--frame", sub_frame, "Frame file")->required();
  sub_cmd->add_option("--n", sub_n, "Cluster size")->required()->check(CLI::PositiveNumber);
  sub_cmd->callback([&] {
    action = [&] {
      const auto fr = load_frame(sub_frame, budgets);
      const auto sub = build_s5n_subalgebra(fr, sub_n);
      report.payload["n"] = sub_n;
      report.payload["found"] = sub.has_value();
      if (!sub) {
        report.status = Status::Fail;
        return;
      }
      const Quotient q(fr);
      bool all_clopens = true;
      for (auto c : q.algebra().clopens()) all_clopens = all_clopens && sub->contains(c);
      report.payload["atoms"] = name_lists(fr, sub->atoms());
      report.payload["carrier_size"] = sub->carrier_size();
      report.payload["contains_all_clopens"] = all_clopens;
      report.payload["monadic"] = verify_axioms(*sub, AxiomKind::Monadic).pass;
      const auto bd = valid_in_algebra(*sub, axiom("bd", static_cast<unsigned>(sub_n)), budgets.sweep());
      report.payload["bd_valid"] = bd.valid;
      if (!all_clopens || !bd.valid) report.status = Status::Fail;
    };
  });

  // entails
  std::string entails_text, gamma_path;
  AlgebraSource entails_src;
  auto* entails_cmd = app.add_subcommand("entails", "Global consequence in a finite algebra");
  entails_cmd->add_option("--gamma", gamma_path, "Premises, one formula per line")->required();
  entails_src.attach(entails_cmd);
  formula_arg(entails_cmd, entails_text);
  entails_cmd->callback([&] {
    action = [&] {
      std::ifstream in(gamma_path);
      if (!in) throw Error("cannot open " + gamma_path);
      std::vector<Formula> gamma;
      std::vector<int> lines;
      std::string line;
      for (int no = 1; std::getline(in, line); ++no) {
        const auto start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        try {
          gamma.push_back(parse(line, budgets.parse()));
        } catch (const SyntaxError& e) {
          throw Error(gamma_path + " line " + std::to_string(no) + ": " + e.what());
        }
        lines.push_back(no);
      }
      const auto f = parse(entails_text, budgets.parse());
      const auto src = entails_src.load(budgets);
      const auto e = entails_global(src.algebra, gamma, f, budgets.sweep());
      report.payload["algebra"] = src.algebra.name();
      report.payload["premises"] = gamma.size();
      report.payload["formula"] = render(f);
      report.payload["holds"] = e.holds;
      if (e.failed_premise) {
        report.payload["failed_premise"] = json{{"line", lines[*e.failed_premise]},
                                                {"formula", render(gamma[*e.failed_premise])}};
        report.payload["premise_countermodel"] = countermodel_json(*e.premise_verdict->countermodel, &src.space);
      }
      if (e.conclusion && e.conclusion->countermodel)
        report.payload["countermodel"] = countermodel_json(*e.conclusion->countermodel, &src.space);
      if (!e.holds) report.status = Status::Fail;
    };
  });

  std::vector<const char*> cargv;
  for (const auto& a : argv) cargv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::CallForHelp&) {
    return {app.help(), 0};
  } catch (const CLI::CallForAllHelp&) {
    return {app.help("", CLI::AppFormatMode::All), 0};
  } catch (const CLI::ParseError& e) {
    Report r;
    r.command = app.get_subcommands().empty() ? "" : app.get_subcommands().front()->get_name();
    r.status = Status::Error;
    std::string message = e.what();
    // CLI11 reads an unknown first word as a stray positional.
    if (app.get_subcommands().empty() && !app.remaining().empty())
      message = "unknown subcommand '" + app.remaining().front() + "'";
    r.diagnostics.push_back(message);
    return {render_report(r, format_name == "json" ? Format::Json : Format::Human), 2};
  }

  const Format format = format_name == "json" ? Format::Json : Format::Human;
  report.command = app.get_subcommands().front()->get_name();
  try {
    action();
  } catch (const std::exception& e) {
    report.status = Status::Error;
    report.payload = json::object();
    report.diagnostics.push_back(e.what());
  }
  return {render_report(report, format), exit_code(report.status)};
}

}  // namespace baire::cli
