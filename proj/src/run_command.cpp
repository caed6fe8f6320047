#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "superquot/cli.hpp"
#include "superquot/quotient.hpp"

namespace sq {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Model load_corpus(const std::string& dir, const Field& f) {
  Model m(f);
  std::vector<fs::path> files;
  for (auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".sq") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (auto& p : files) {
    try {
      parse_into(m, slurp(p));
    } catch (const ParseError& e) {
      throw std::runtime_error(p.filename().string() + ": " + e.what());
    }
  }
  return m;
}

Field parse_field(const std::string& s) {
  if (s == "q") return Field::rationals();
  if (s.rfind("p=", 0) == 0) return Field::prime(std::stoul(s.substr(2)));
  throw std::runtime_error("bad --field value '" + s + "' (expected q or p=PRIME)");
}

int default_bound() {
  if (const char* e = std::getenv("SUPERQUOT_BOUND")) return std::atoi(e);
  return 8;
}

std::string default_corpus() {
  if (const char* e = std::getenv("SUPERQUOT_CORPUS")) return e;
  return "corpus";
}

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::Proven: return 0;
    case Verdict::Disproven: return 2;
    default: return 3;
  }
}

// a ResultDocument under construction; serialized deterministically
struct Doc {
  json verdicts = json::object();
  json dimensions = json::object();
  json generators = json::object();
  json witnesses = json::object();

  void verdict(const std::string& name, Verdict v, int bound) {
    verdicts[name] = json{{"verdict", verdict_str(v)}, {"bound", bound}};
  }
  void verdict(const std::string& name, bool ok, int bound) {
    verdict(name, ok ? Verdict::Proven : Verdict::Disproven, bound);
  }
  void dims(const std::string& name, const std::vector<int>& d) { dimensions[name] = d; }
  void gens(const std::string& name, const std::vector<std::string>& g) { generators[name] = g; }
  void wits(const std::string& name, const std::vector<std::string>& w) {
    if (!w.empty()) witnesses[name] = w;
  }
};

std::string render(const json& doc, const std::string& format) {
  if (format == "json") return doc.dump(2) + "\n";
  std::ostringstream os;
  os << "command: " << doc["command"].get<std::string>() << "\n";
  os << "field: " << doc["field"].get<std::string>() << ", bound: " << doc["bound"].get<int>()
     << "\n";
  auto section = [&](const char* key) {
    const json& sec = doc[key];
    if (sec.empty()) return;
    os << key << ":\n";
    for (auto& [k, v] : sec.items()) {
      if (v.is_array() && k.ends_with("_presentation")) {
        os << "  " << k << ":\n";
        for (auto& x : v) os << "    " << x.get<std::string>() << "\n";
        continue;
      }
      os << "  " << k << ": ";
      if (v.is_object()) {
        os << v["verdict"].get<std::string>() << " (bound " << v["bound"].get<int>() << ")";
      } else {
        bool first = true;
        for (auto& x : v) {
          if (!first) os << (x.is_string() ? "; " : " ");
          first = false;
          if (x.is_string())
            os << x.get<std::string>();
          else
            os << x.dump();
        }
      }
      os << "\n";
    }
  };
  section("verdicts");
  section("dimensions");
  section("generators");
  section("witnesses");
  return os.str();
}

std::vector<int> window_profile(const SuperPresentation& P, int bound) {
  std::vector<int> dims(bound + 1, 0);
  for (auto& m : P.truncated_basis(bound)) ++dims[P.weight_of(m)];
  return dims;
}

std::vector<std::string> presentation_lines(const HopfSuperalgebra& H) {
  Model tmp(H.algebra().field());
  tmp.add_hopf(H, !H.has_antipode());
  std::vector<std::string> lines;
  std::istringstream in(print_presentation(tmp));
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  return lines;
}

struct PairRefs {
  const HopfSuperalgebra* parent;
  const Model::Sub* sub;
};

PairRefs resolve_pair(const Model& m, const std::string& parent, const std::string& sub) {
  const HopfSuperalgebra* H = m.find_hopf(parent);
  if (!H) throw std::runtime_error("unknown hopf '" + parent + "'");
  const Model::Sub* s = m.find_sub(sub);
  if (!s) throw std::runtime_error("unknown sub '" + sub + "'");
  if (s->parent != parent)
    throw std::runtime_error("sub '" + sub + "' is declared over '" + s->parent + "', not '" +
                             parent + "'");
  return {H, s};
}

}  // namespace

CommandResult run_command(const std::vector<std::string>& args) {
  CLI::App app{"exact computation with finitely presented affine supergroup pairs"};
  app.require_subcommand(1);

  int bound = default_bound();
  std::string field_str = "q";
  std::string format = "text";
  std::string corpus = default_corpus();
  std::string chart;
  bool override_affinity = false;

  struct SubSpec {
    CLI::App* cmd;
    std::vector<std::string> names;
  };
  std::map<std::string, SubSpec> specs;
  auto add_cmd = [&](const std::string& name, const std::string& desc, int positionals) {
    CLI::App* c = app.add_subcommand(name, desc);
    auto& spec = specs[name];
    spec.cmd = c;
    spec.names.resize(positionals);
    if (positionals >= 1) c->add_option("parent", spec.names[0], "hopf name");
    if (positionals >= 2) c->add_option("sub", spec.names[1], "sub name");
    c->add_option("--bound", bound, "weight window bound");
    c->add_option("--field", field_str, "ground field: q or p=PRIME");
    c->add_option("--format", format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    c->add_option("--corpus", corpus, "presentation corpus directory");
    if (name == "consistency") c->add_option("--chart", chart, "x=EXPR distinguished open");
    if (name == "quotient")
      c->add_flag("--override-affinity", override_affinity, "build despite uncertified affinity");
    return c;
  };
  add_cmd("validate", "check the Hopf laws of a presentation", 1);
  add_cmd("analyze", "window profile, cotangent data, gradedness", 1);
  add_cmd("lie", "odd bracket pairing of the dual Lie superalgebra", 1);
  add_cmd("gr", "associated graded Hopf superalgebra (smash form)", 1);
  add_cmd("quotient", "build the quotient superalgebra of a pair", 2);
  add_cmd("galois", "Galois (free-quotient) certification of a pair", 2);
  add_cmd("splitting", "splitting conditions, theta and kappa laws", 2);
  add_cmd("consistency", "chart or graded-degeneration consistency", 2);

  std::vector<const char*> argv;
  argv.push_back("superquot");
  for (auto& a : args) argv.push_back(a.c_str());

  CommandResult res;
  std::string cmd_name;
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    CLI::App* active = app.get_subcommands().at(0);
    cmd_name = active->get_name();
    auto& spec = specs.at(cmd_name);
    for (size_t i = 0; i < spec.names.size(); ++i)
      if (spec.names[i].empty())
        throw std::runtime_error(cmd_name + " needs " + std::to_string(spec.names.size()) +
                                 " name argument(s)");

    Field f = parse_field(field_str);
    Model model = load_corpus(corpus, f);
    if (model.default_bound() && !active->count("--bound")) bound = *model.default_bound();

    Doc d;
    int exit_code = 0;

    if (cmd_name == "validate" || cmd_name == "analyze" || cmd_name == "lie" ||
        cmd_name == "gr") {
      const HopfSuperalgebra* H = model.find_hopf(spec.names[0]);
      if (!H) throw std::runtime_error("unknown hopf '" + spec.names[0] + "'");
      if (cmd_name == "validate") {
        auto v = H->validate(bound);
        d.verdict("hopf_laws", v.ok, bound);
        d.dims("window", window_profile(H->algebra(), bound));
        d.wits("hopf_law_failures", v.failures);
        exit_code = v.ok ? 0 : 2;
      } else if (cmd_name == "analyze") {
        auto v = H->validate(bound);
        auto lie = lie_superalgebra(*H, bound);
        d.verdict("hopf_laws", v.ok, bound);
        d.verdict("graded", lie.graded, bound);
        d.dims("window", window_profile(H->algebra(), bound));
        d.dims("odd_cotangent", {lie.dim_odd});
        d.dims("even_cotangent", {lie.dim_even_cotangent});
        d.gens("odd_cotangent", lie.w_labels);
        d.gens("even", lie.even_labels);
        d.wits("hopf_law_failures", v.failures);
        exit_code = v.ok ? 0 : 2;
      } else if (cmd_name == "lie") {
        auto lie = lie_superalgebra(*H, bound);
        d.verdict("graded", lie.graded, bound);
        d.dims("odd", {lie.dim_odd});
        d.dims("even_cotangent", {lie.dim_even_cotangent});
        d.gens("odd_cotangent", lie.w_labels);
        std::vector<std::string> brackets;
        for (size_t e = 0; e < lie.pairing.size(); ++e)
          for (size_t i = 0; i < lie.pairing[e].size(); ++i)
            for (size_t j = 0; j < lie.pairing[e][i].size(); ++j)
              if (!lie.pairing[e][i][j].is_zero())
                brackets.push_back("<[" + lie.w_labels[i] + "*," + lie.w_labels[j] + "*], " +
                                   lie.even_labels[e] + "> = " + lie.pairing[e][i][j].str());
        d.wits("bracket", brackets);
        exit_code = lie.graded ? 0 : 2;
      } else {  // gr
        auto lie0 = lie_superalgebra(*H, bound);
        auto G = gr_hopf_smash(*H, bound);
        auto lieG = lie_superalgebra(G, bound);
        auto v = G.validate(bound);
        d.verdict("graded_original", lie0.graded, bound);
        d.verdict("graded_gr", lieG.graded, bound);
        d.verdict("hopf_laws_gr", v.ok, bound);
        d.gens("gr_presentation", presentation_lines(G));
        d.wits("hopf_law_failures", v.failures);
        exit_code = (lieG.graded && v.ok) ? 0 : 2;
      }
    } else {
      auto pr = resolve_pair(model, spec.names[0], spec.names[1]);
      auto S = prepare_pair(*pr.parent, pr.sub->name, pr.sub->ideal, bound);
      d.wits("hopf_ideal_issues", S.issues);
      if (!S.pair_ok) {
        d.verdict("hopf_ideal", false, bound);
        exit_code = 2;
      } else if (cmd_name == "galois") {
        auto g = check_galois(S, bound);
        d.verdict("galois", g.verdict, bound);
        std::vector<int> dom, rank, target, degree;
        for (auto& b : g.beta) {
          degree.push_back(b.degree);
          dom.push_back(b.dom_dim);
          rank.push_back(b.rank);
          target.push_back(b.target_dim);
        }
        d.dims("beta_degree", degree);
        d.dims("beta_domain", dom);
        d.dims("beta_rank", rank);
        d.dims("beta_target", target);
        d.wits("alpha", g.alpha_witnesses);
        d.wits("beta_kernel", g.kernel_witnesses);
        d.wits("notes", g.notes);
        exit_code = verdict_exit(g.verdict);
      } else if (cmd_name == "quotient") {
        auto aff = check_affinity(S, bound);
        d.verdict("affinity", aff.verdict, bound);
        d.wits("affinity_notes", aff.notes);
        if (aff.verdict != Verdict::Proven && !override_affinity) {
          exit_code = verdict_exit(aff.verdict);
        } else {
          auto Z = compute_z(S);
          auto QR = build_quotient(S, Z, bound);
          d.verdict("normal", S.normal ? Verdict::Proven : Verdict::Unknown, bound);
          d.verdict("oracle_match", QR.oracle_match, bound);
          if (QR.B1_freeness_applicable)
            d.verdict("B1_free", QR.B1_free, bound);
          else
            d.verdict("B1_free", Verdict::Unknown, bound);
          d.dims("z", {Z.dim});
          d.dims("B", QR.B_dims);
          d.dims("B1", QR.B1_dims);
          d.dims("quotient_window", QR.window_dims);
          d.dims("layers", QR.layer_dims);
          d.dims("binomial", QR.binomial_expected);
          d.dims("oracle", QR.oracle_dims);
          d.gens("z", Z.labels);
          d.gens("B", QR.B_gen_names);
          d.gens("B1", QR.B1_gen_names);
          if (!QR.oracle_match)
            exit_code = 2;
          else
            exit_code = verdict_exit(aff.verdict);
        }
      } else if (cmd_name == "splitting") {
        auto Z = compute_z(S);
        auto sp = check_splitting(S, Z, bound);
        auto th = theta_retraction(S, Z, bound);
        auto kp = kappa_check(S, bound);
        d.verdict("costable", sp.costable, bound);
        d.verdict("colinear", sp.colinear, bound);
        d.verdict("graded", sp.graded, bound);
        d.verdict("theta", th.verdict, bound);
        d.verdict("kappa", kp.ok, bound);
        Verdict split = Verdict::Unknown;
        if (sp.costable == Verdict::Proven || sp.colinear == Verdict::Proven ||
            sp.graded == Verdict::Proven)
          split = Verdict::Proven;
        else if (sp.costable == Verdict::Disproven && sp.colinear == Verdict::Disproven &&
                 sp.graded == Verdict::Disproven)
          split = Verdict::Disproven;
        d.verdict("split", split, bound);
        d.dims("z", {static_cast<int>(Z.labels.size())});
        d.gens("z", Z.labels);
        d.gens("theta_route", {th.route});
        d.wits("splitting_notes", sp.notes);
        d.wits("theta_notes", th.notes);
        if (!kp.ok) d.wits("kappa", {kp.detail});
        exit_code = (!kp.ok || split == Verdict::Disproven) ? 2 : verdict_exit(split);
      } else {  // consistency
        auto Z = compute_z(S);
        auto QR = build_quotient(S, Z, bound);
        ConsistencyReport r;
        if (!chart.empty()) {
          std::string expr = chart;
          if (auto eq = chart.find('='); eq != std::string::npos) expr = chart.substr(eq + 1);
          SuperElement x = parse_element(pr.parent->algebra(), expr);
          r = local_consistency_check(S, QR, x, bound);
          d.verdict("local_consistency", r.verdict, bound);
        } else {
          r = gr_quotient_check(S, QR, bound);
          d.verdict("gr_consistency", r.verdict, bound);
        }
        d.dims("local", r.local_dims);
        d.dims("quotient", r.quotient_dims);
        d.wits("notes", r.notes);
        exit_code = verdict_exit(r.verdict);
      }
    }

    json doc;
    std::string echo = cmd_name;
    for (auto& n : spec.names) echo += " " + n;
    doc["command"] = echo;
    doc["verdicts"] = d.verdicts;
    doc["dimensions"] = d.dimensions;
    doc["generators"] = d.generators;
    doc["witnesses"] = d.witnesses;
    doc["bound"] = bound;
    doc["field"] = f.describe();
    res.output = render(doc, format);
    res.exit_code = exit_code;
  } catch (const CLI::CallForHelp&) {
    res.output = app.help();
    res.exit_code = 0;
  } catch (const CLI::ParseError& e) {
    res.output = std::string("error: ") + e.what() + "\n";
    res.exit_code = 1;
  } catch (const std::exception& e) {
    res.output = std::string("error: ") + e.what() + "\n";
    res.exit_code = 1;
  }
  return res;
}

}  // namespace sq
