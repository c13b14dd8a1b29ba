#include "gpd/cli.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gpd/error.hpp"
#include "gpd/holonomy.hpp"
#include "gpd/json_io.hpp"
#include "gpd/models.hpp"
#include "gpd/monodromy.hpp"
#include "gpd/sections.hpp"
#include "gpd/suite.hpp"

namespace gpd::cli {
namespace {

using json = nlohmann::json;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string model;
  std::string at;
  std::optional<int> smoothness;
  int depth = 8;
  int samples = 200;
  std::uint64_t seed = 17;
  std::string format = "json";
  int variant = 0;
  std::vector<std::string> inputs;
};

struct Report {
  std::string command;
  json fingerprint;
  json verdict;
  json witness;
  json certificate;
};

std::optional<json> builtin(const std::string& name, std::optional<int> r) {
  if (name == "pradines-1") return to_json(Model(build_pradines_1()));
  if (name == "pradines-2") return to_json(Model(build_pradines_2({r.value_or(0)})));
  if (name == "mobius") return to_json(Model(build_mobius()));
  if (name == "cyclic-6") {
    json g = to_json(FiniteGroupoid::cyclic_group(6));
    return json{{"groupoid", g}, {"carrier", {"0", "1", "5"}}};
  }
  return std::nullopt;
}

class Context {
 public:
  Context(Options opt, std::istream& in) : opt_(std::move(opt)), in_(in) {}

  const Options& opt() const { return opt_; }

  json read_doc(const std::string& src) {
    if (src == "-") return parse_stream(in_, "<stdin>");
    if (!src.empty() && (src[0] == '{' || src[0] == '[' || src[0] == '"')) return parse_text(src, "<inline>");
    std::ifstream f(src);
    if (!f) throw InputError("cannot open '" + src + "'");
    return parse_stream(f, src);
  }

  json input(std::size_t i) {
    if (i >= opt_.inputs.size()) throw InputError("missing input document #" + std::to_string(i + 1));
    return read_doc(opt_.inputs[i]);
  }

  const json& model_doc() {
    if (doc_) return *doc_;
    if (opt_.model.empty() || opt_.model == "-") {
      doc_ = parse_stream(in_, "<stdin>");
    } else if (!std::filesystem::exists(opt_.model) && builtin(opt_.model, opt_.smoothness)) {
      doc_ = *builtin(opt_.model, opt_.smoothness);
    } else {
      doc_ = read_doc(opt_.model);
    }
    return *doc_;
  }

  bool is_pregroupoid() { return model_doc().contains("groupoid"); }

  /// Parsed model with the smoothness override; validated against G1-G5
  /// unless `validate` is false.
  const Model& model(bool validate = true) {
    if (!model_) {
      if (is_pregroupoid()) throw InputError("expected a model, got a pregroupoid document");
      Model m = model_from_json(model_doc());
      if (opt_.smoothness) {
        if (*opt_.smoothness != 0 && *opt_.smoothness != 1) throw InputError("--smoothness must be 0 or 1");
        m = with_smoothness(std::move(m), {*opt_.smoothness});
      }
      model_ = std::move(m);
    }
    if (validate && !validated_) {
      AxiomReport rep = check_axioms(*model_, opt_.depth);
      for (int i = 0; i < 5; ++i)
        if (!rep.g[i].holds)
          throw Error(ErrorCode::InvalidModel, "model fails G" + std::to_string(i + 1),
                      {{"axiom", "G" + std::to_string(i + 1)}, {"witness", rep.g[i].witness}});
      validated_ = true;
    }
    return *model_;
  }

  std::string model_fingerprint() {
    if (model_) return fingerprint(to_json(*model_));
    return fingerprint(model_doc());
  }

  Pregroupoid pregroupoid() {
    if (is_pregroupoid()) return pregroupoid_from_json(model_doc());
    const Model& m = model();
    if (!is_bundle(m)) throw InputError("monodromy commands take a quotient bundle or a pregroupoid document");
    return Pregroupoid::bundle_piece(bundle(m));
  }

  Point at() {
    if (opt_.at.empty()) {
      const Model& m = model();
      if (is_bundle(m)) throw InputError("--at is required");
      const Chart& c = complex(m).charts.front();
      return {c.id, c.base};
    }
    Point p = point_from_json(json(opt_.at));
    const Model& m = model();
    if (is_bundle(m) && !p.chart.empty()) throw InputError("bundle models take a rational --at");
    if (!is_bundle(m) && p.chart.empty()) p.chart = complex(m).charts.front().id;
    if (!is_bundle(m)) complex(m).chart(p.chart);
    return p;
  }

 private:
  json parse_text(const std::string& text, const std::string& where) {
    try {
      return json::parse(text);
    } catch (const json::parse_error& e) {
      throw InputError(where + ": parse error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
  }
  json parse_stream(std::istream& s, const std::string& where) {
    if (&s == &in_) {
      if (stdin_used_) throw InputError("stdin can only be read once");
      stdin_used_ = true;
    }
    std::stringstream buf;
    buf << s.rdbuf();
    return parse_text(buf.str(), where);
  }

  Options opt_;
  std::istream& in_;
  bool stdin_used_ = false;
  bool validated_ = false;
  std::optional<json> doc_;
  std::optional<Model> model_;
};

json germ_json(const Model& m, const GermClass& g) {
  return {{"at", to_string(g.base)}, {"section", to_json(g.word)}, {"value", to_json(final_map(m, g))}};
}

Report with_model(Context& c, const std::string& cmd, json verdict, json witness, json cert) {
  return {cmd, c.model_fingerprint(), std::move(verdict), std::move(witness), std::move(cert)};
}

// ----------------------------------------------------------------- commands

Report cmd_check_axioms(Context& c) {
  const Model& m = c.model(false);
  AxiomReport rep = check_axioms(m, c.opt().depth);
  json wit = nullptr;
  for (int i = 0; i < 5 && wit.is_null(); ++i)
    if (!rep.g[i].holds) wit = {{"axiom", "G" + std::to_string(i + 1)}, {"witness", rep.g[i].witness}};
  return with_model(c, "check-axioms", rep.all(), wit, rep.to_json());
}

Report cmd_section_admissible(Context& c) {
  const Model& m = c.model();
  Verdict v = is_admissible(m, section_entry_from_json(m, c.input(0)));
  return with_model(c, "section admissible", v.holds, v.witness, nullptr);
}

Report cmd_section_procedure(Context& c) {
  const Model& m = c.model();
  SectionWord w = section_from_json(m, c.input(0));
  std::optional<Rational> at;
  if (!c.opt().at.empty()) at = c.at().y;
  Verdict v = is_local_procedure(m, w, at);
  return with_model(c, "section procedure", v.holds, v.witness, to_json(w));
}

Report cmd_section_product(Context& c) {
  const Model& m = c.model();
  SectionWord a = section_from_json(m, c.input(0));
  SectionWord b = section_from_json(m, c.input(1));
  SectionWord p = ehresmann_product(m, a, b);
  return with_model(c, "section product", "defined", nullptr, to_json(p));
}

Report cmd_section_inverse(Context& c) {
  const Model& m = c.model();
  SectionWord w = section_inverse(m, section_from_json(m, c.input(0)));
  return with_model(c, "section inverse", "defined", nullptr, to_json(w));
}

Report cmd_section_eval(Context& c) {
  const Model& m = c.model();
  SectionWord w = section_from_json(m, c.input(0));
  ModelArrow a = w.evaluate(m, c.at().y);
  return with_model(c, "section eval", to_string(a), nullptr, to_json(a));
}

Report cmd_germ_eq(Context& c) {
  const Model& m = c.model();
  GermClass a = germ_from_json(m, c.input(0)), b = germ_from_json(m, c.input(1));
  return with_model(c, "germ eq", germ_equal(m, a, b), nullptr, nullptr);
}

Report cmd_germ_in_j0(Context& c) {
  const Model& m = c.model();
  Verdict v = in_j0(m, germ_from_json(m, c.input(0)));
  return with_model(c, "germ in-j0", v.holds, v.witness, nullptr);
}

Report cmd_germ_compose(Context& c) {
  const Model& m = c.model();
  GermClass p = germ_product(m, germ_from_json(m, c.input(0)), germ_from_json(m, c.input(1)));
  return with_model(c, "germ compose", to_string(final_map(m, p)), nullptr, germ_json(m, p));
}

Report cmd_hol_kernel(Context& c) {
  const Model& m = c.model();
  KernelDescriptor k = kernel_at(m, c.at(), c.opt().depth);
  return with_model(c, "hol kernel", k.label(), nullptr, to_json(k));
}

Report cmd_hol_extendible(Context& c) {
  const Model& m = c.model();
  Verdict v = is_extendible(m, c.opt().depth);
  return with_model(c, "hol extendible", v.holds, v.holds ? json(nullptr) : v.witness, v.holds ? v.witness : json());
}

Report cmd_hol_equal(Context& c) {
  const Model& m = c.model();
  bool eq = hol_equal(m, germ_from_json(m, c.input(0)), germ_from_json(m, c.input(1)));
  return with_model(c, "hol equal", eq, nullptr, nullptr);
}

Report cmd_hol_chart(Context& c) {
  const Model& m = c.model();
  SectionWord f = section_from_json(m, c.input(0));
  ModelArrow w = arrow_from_json(m, c.input(1));
  HolClass h = chart_map(m, f, w, c.opt().variant);
  return with_model(c, "hol chart", to_string(final_map(m, h)), nullptr, germ_json(m, h));
}

Report cmd_hol_transition(Context& c) {
  const Model& m = c.model();
  SectionWord f = section_from_json(m, c.input(0));
  SectionWord g = section_from_json(m, c.input(1));
  ModelArrow w = arrow_from_json(m, c.input(2));
  ModelArrow t = chart_transition(m, f, g, w);
  ModelArrow d = left_translate(m, f, g, w);
  bool agree = arrow_equal(m, t, d);
  return with_model(c, "hol transition", agree, agree ? json(nullptr) : json{{"transition", to_json(t)}, {"direct", to_json(d)}},
                    {{"transition", to_json(t)}, {"direct", to_json(d)}});
}

Report cmd_hol_generates(Context& c) {
  const Model& m = c.model(false);
  Verdict v = generates(m, c.opt().depth);
  return with_model(c, "hol generates", v.holds, v.holds ? json(nullptr) : v.witness, v.holds ? v.witness : json());
}

Report cmd_hol_audit(Context& c) {
  const Model& m = c.model();
  NormalityReport r = normality_audit(m, c.opt().samples, c.opt().seed);
  return with_model(c, "hol audit-normality", r.failures == 0, r.first_failure, r.to_json());
}

Report cmd_hol_lift(Context& c) {
  json doc = c.input(0);
  LiftProblem p = lift_problem_from_json(doc);
  GroupoidMorphism xi = lift_morphism(p);
  return {"hol lift", fingerprint(doc), "lifted", nullptr, to_json(p.a, p.h, xi)};
}

Report cmd_mono_reduce(Context& c) {
  Pregroupoid p = c.pregroupoid();
  MonodromyWord w = mon_reduce(p, word_from_json(c.input(0)));
  return with_model(c, "mono reduce", w.letters.size(), nullptr,
                    {{"word", to_json(w)}, {"ambient", ambient_product(p, w)}});
}

Report cmd_mono_equal(Context& c) {
  Pregroupoid p = c.pregroupoid();
  MonEquality e = mon_equal(p, word_from_json(c.input(0)), word_from_json(c.input(1)), c.opt().depth);
  return with_model(c, "mono equal", to_string(e.verdict), nullptr, e.certificate);
}

Report cmd_mono_extend(Context& c) {
  Pregroupoid p = c.pregroupoid();
  json images = json::array();
  if (!p.is_finite()) {
    for (std::size_t i = 0; i < c.opt().inputs.size(); ++i) {
      MonodromyWord w = word_from_json(c.input(i));
      images.push_back({{"word", to_json(w)}, {"image", mon_extend_cover(p, w).str()}});
    }
    return with_model(c, "mono extend", "extends", nullptr, {{"codomain", "R"}, {"images", images}});
  }
  json spec = c.input(0);
  FiniteGroupoid k = finite_groupoid_from_json(spec.at("K"));
  std::map<ArrowId, ArrowId> f;
  for (const auto& [w, v] : spec.at("f").items()) f[p.ambient().arrow_id(w)] = k.arrow_id(v.get<std::string>());
  MonExtension ext = mon_extend(p, k, f);
  json letters = json::object();
  for (const auto& [w, v] : ext.on_letters()) letters[p.ambient().name(w)] = k.name(v);
  for (std::size_t i = 1; i < c.opt().inputs.size(); ++i) {
    MonodromyWord w = word_from_json(c.input(i));
    images.push_back({{"word", to_json(w)}, {"image", k.name(ext.apply(w))}});
  }
  return with_model(c, "mono extend", "extends", nullptr, {{"on_letters", letters}, {"images", images}});
}

Report cmd_mono_star(Context& c) {
  Pregroupoid p = c.pregroupoid();
  std::string base = c.opt().at;
  if (base.empty()) throw InputError("--at is required");
  json rep = star_projection_check(p, base, c.opt().depth);
  std::string verdict;
  if (rep.value("bijective", false))
    verdict = "bijective";
  else if (rep.contains("fiber_over_identity"))
    verdict = "fiber " + rep["fiber_over_identity"].get<std::string>();
  else
    verdict = rep.value("surjective", false) ? "surjective" : "not surjective";
  return with_model(c, "mono star", verdict, nullptr, rep);
}

Report cmd_suite(Context& c) {
  suite::Config cfg;
  cfg.seed = c.opt().seed;
  if (!c.opt().model.empty()) {
    Model m = c.model(false);
    if (!is_bundle(m)) throw InputError("paper-suite --model replaces pradines-1 and must be a quotient bundle");
    cfg.pradines_1 = bundle(m);
  }
  json rows = json::array();
  bool all = true;
  for (const auto& r : suite::run_all(cfg)) {
    rows.push_back(suite::to_json(r));
    all = all && r.pass;
  }
  json fp = cfg.pradines_1 ? json(c.model_fingerprint()) : json(nullptr);
  return {"paper-suite", fp, all ? "pass" : "fail", nullptr, rows};
}

// ------------------------------------------------------------------ output

json report_json(const Report& r, const Options& o) {
  return {{"command", r.command},     {"model_fingerprint", r.fingerprint}, {"verdict", r.verdict},
          {"witness", r.witness},     {"certificate", r.certificate},       {"seed", o.seed},
          {"engine_version", kEngineVersion}};
}

std::string text_value(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void write_text(std::ostream& out, const Report& r, const Options& o) {
  if (r.command == "paper-suite") {
    for (const auto& row : r.certificate)
      out << std::setw(2) << row["id"].get<int>() << "  " << (row["pass"].get<bool>() ? "PASS" : "FAIL") << "  "
          << row["title"].get<std::string>() << "\n";
  }
  json j = report_json(r, o);
  for (const char* key : {"command", "model_fingerprint", "verdict", "witness", "certificate", "seed", "engine_version"}) {
    if (r.command == "paper-suite" && std::string(key) == "certificate") continue;
    out << std::left << std::setw(18) << key << text_value(j[key]) << "\n";
  }
}

struct Leaf {
  std::string group, name, help;
  std::function<Report(Context&)> fn;
};

const std::vector<Leaf>& leaves() {
  static const std::vector<Leaf> all = {
      {"", "check-axioms", "verify G1-G5 with witnesses", cmd_check_axioms},
      {"section", "admissible", "admissibility of raw section data", cmd_section_admissible},
      {"section", "procedure", "local-procedure membership (whole domain or --at)", cmd_section_procedure},
      {"section", "product", "Ehresmann product of two sections", cmd_section_product},
      {"section", "inverse", "generalised inverse", cmd_section_inverse},
      {"section", "eval", "value at --at", cmd_section_eval},
      {"germ", "eq", "germ equality", cmd_germ_eq},
      {"germ", "in-j0", "membership in J0", cmd_germ_in_j0},
      {"germ", "compose", "germ product", cmd_germ_compose},
      {"hol", "kernel", "kernel of the final map at --at", cmd_hol_kernel},
      {"hol", "extendible", "whether the structure on W extends to G", cmd_hol_extendible},
      {"hol", "equal", "equality in Hol", cmd_hol_equal},
      {"hol", "chart", "chart map of a section at a W-element", cmd_hol_chart},
      {"hol", "transition", "chart transition against left translation", cmd_hol_transition},
      {"hol", "generates", "whether W generates G", cmd_hol_generates},
      {"hol", "audit-normality", "randomised J0 normality audit", cmd_hol_audit},
      {"hol", "lift", "lift a morphism through a pregroupoid cover", cmd_hol_lift},
      {"mono", "reduce", "reduce a pregroupoid word", cmd_mono_reduce},
      {"mono", "equal", "bounded equality in M(W)", cmd_mono_equal},
      {"mono", "extend", "extend a pregroupoid morphism to M(W)", cmd_mono_extend},
      {"mono", "star", "star projection check at --at", cmd_mono_star},
      {"", "paper-suite", "run every acceptance criterion", cmd_suite},
  };
  return all;
}

void add_common(CLI::App* s, Options& o) {
  s->add_option("--model", o.model, "model file, builtin name, or - for stdin (default stdin)");
  s->add_option("--at", o.at, "base point (p/q, or CHART:p/q)");
  s->add_option("--smoothness", o.smoothness, "override smoothness class (0 or 1)");
  s->add_option("--depth", o.depth, "search depth")->check(CLI::PositiveNumber);
  s->add_option("--samples", o.samples, "sample count")->check(CLI::PositiveNumber);
  s->add_option("--seed", o.seed, "random seed");
  s->add_option("--variant", o.variant, "section construction variant")->check(CLI::Range(0, 2));
  s->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  s->add_option("inputs", o.inputs, "input documents (file, inline JSON, or -)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Holonomy and monodromy groupoids with exact arithmetic", "gpd"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kEngineVersion);

  const Leaf* chosen = nullptr;
  std::string example_name;
  auto* ex = app.add_subcommand("example", "emit a builtin model (pradines-1, pradines-2, mobius, cyclic-6)");
  ex->add_option("name", example_name)->required();
  ex->add_option("--smoothness", opt.smoothness, "smoothness class for pradines-2");

  std::map<std::string, CLI::App*> groups;
  for (const auto& leaf : leaves()) {
    CLI::App* parent = &app;
    if (!leaf.group.empty()) {
      auto [it, fresh] = groups.try_emplace(leaf.group, nullptr);
      if (fresh) {
        it->second = app.add_subcommand(leaf.group, leaf.group + " commands");
        it->second->require_subcommand(1);
      }
      parent = it->second;
    }
    CLI::App* s = parent->add_subcommand(leaf.name, leaf.help);
    add_common(s, opt);
    s->callback([&chosen, &leaf] { chosen = &leaf; });
  }

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (ex->parsed()) {
      auto doc = builtin(example_name, opt.smoothness);
      if (!doc) throw InputError("unknown example '" + example_name + "'");
      out << doc->dump(2) << "\n";
      return 0;
    }
    if (!chosen) throw InputError("no command");
    Context ctx(opt, in);
    Report r = chosen->fn(ctx);
    if (opt.format == "text")
      write_text(out, r, opt);
    else
      out << report_json(r, opt).dump(2) << "\n";
    return 0;
  } catch (const InputError& e) {
    err << json{{"error", "input"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  } catch (const Error& e) {
    bool input = e.code() == ErrorCode::Parse || e.code() == ErrorCode::InvalidModel ||
                 e.code() == ErrorCode::UnknownArrow || e.code() == ErrorCode::UnknownObject;
    err << json{{"error", std::string(to_string(e.code()))}, {"message", e.what()}, {"witness", e.witness()}}.dump()
        << "\n";
    return input ? 2 : 3;
  } catch (const json::exception& e) {
    err << json{{"error", "input"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  }
}

}  // namespace gpd::cli
