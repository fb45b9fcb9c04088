// hoaft: law suites, approximation spaces, program models and projections.

#include <cstdlib>
#include <future>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hoaft/error.hpp"
#include "hoaft/holog.hpp"
#include "hoaft/io.hpp"
#include "hoaft/laws.hpp"

using namespace hoaft;

namespace {

enum Exit { ok = 0, failed = 1, usage = 2 };

int run_laws_cmd(std::size_t max_size, const std::string& suite, unsigned threads) {
  std::vector<LawResult> results;
  if (suite == "all" && threads > 1) {
    // each suite is independent; collect in suite order
    std::vector<std::future<std::vector<LawResult>>> parts;
    for (const char* s : {"ccc", "bilat", "lu", "approx"})
      parts.push_back(std::async(std::launch::async, [=] { return run_laws(s, max_size); }));
    for (auto& f : parts)
      for (auto& r : f.get()) results.push_back(std::move(r));
  } else {
    results = run_laws(suite, max_size);
  }
  bool all = true;
  for (const auto& r : results) {
    std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << " (" << r.checked << " checks): " << r.detail << '\n';
    all = all && r.pass;
  }
  return all ? ok : failed;
}

int run_space_cmd(const std::string& system, const std::string& type, const std::string& show, bool json) {
  const ApproximationSystem s = load_system(system);
  const auto sp = s.app(TypeExpr::parse(type));
  const Poset& p = sp->poset();
  std::vector<Element> listed;
  for (Element e = 0; e < p.size(); ++e) {
    if (show == "exact" && !sp->is_exact(e)) continue;
    if (show == "consistent" && !sp->is_consistent(e)) continue;
    listed.push_back(e);
  }
  if (json) {
    Json out;
    out["type"] = sp->type().str();
    out["flavor"] = std::string(to_string(s.flavor()));
    out["size"] = p.size();
    out["exact"] = sp->exact_elements().size();
    Json elems = Json::array();
    for (Element e : listed) {
      Json j;
      j["name"] = p.name(e);
      j["value"] = value_to_json(*sp, e);
      j["exact"] = sp->is_exact(e);
      j["consistent"] = sp->is_consistent(e);
      j["projection"] = sp->is_exact(e) ? semantic_to_json(sp->semantics(), sp->project(e)) : Json();
      elems.push_back(std::move(j));
    }
    out["elements"] = std::move(elems);
    std::cout << out.dump(2) << '\n';
    return ok;
  }
  std::cout << "type " << sp->type().str() << ", " << to_string(s.flavor()) << ", " << p.size() << " elements, "
            << sp->exact_elements().size() << " exact; showing " << listed.size() << " (" << show << ")\n";
  for (Element e : listed) {
    std::cout << "  " << p.name(e);
    if (sp->is_exact(e))
      std::cout << "  exact -> " << semantic_to_json(sp->semantics(), sp->project(e)).dump();
    else if (sp->is_consistent(e))
      std::cout << "  consistent";
    std::cout << '\n';
  }
  return ok;
}

int run_model_cmd(const std::string& file, const std::string& system, const std::string& mode, bool experimental,
                  bool json) {
  Evaluator ev(parse_program(read_file(file)), load_system(system));
  const Element m = compute_model(ev, mode == "wf" ? Mode::wf : Mode::kk, experimental);
  const ModelAnalysis a = analyze_model(ev, m);
  const Json model = model_to_json(ev, m);
  if (json) {
    Json out;
    out["mode"] = mode;
    out["two_valued"] = a.two_valued;
    out["model"] = model;
    std::cout << out.dump(2) << '\n';
    return ok;
  }
  std::cout << "mode " << mode << ", two_valued " << (a.two_valued ? "true" : "false") << '\n';
  for (const auto& [sym, e] : model.items()) {
    std::cout << "  " << sym << " : " << e["type"].get<std::string>() << " = " << e["value"].dump();
    if (!e["projection"].is_null()) std::cout << "  projection " << e["projection"].dump();
    std::cout << '\n';
  }
  return ok;
}

int run_project_cmd(const std::string& file, const std::string& system) {
  Json model;
  try {
    model = Json::parse(read_file(file));
  } catch (const Json::exception& e) {
    throw Error(Errc::invalid_input, file + ": " + e.what());
  }
  std::cout << project_model(model, load_system(system)).dump(2) << '\n';
  return ok;
}

int exit_for(const Error& e) {
  switch (e.code()) {
    case Errc::not_exact:
    case Errc::internal_law_failure:
    case Errc::not_monotone:
      return failed;
    default:
      return usage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximation fixpoint theory over higher-order approximation spaces"};
  app.require_subcommand(1);
  unsigned threads = 1;
  app.add_option("--threads", threads, "Worker threads (output does not depend on it)")->check(CLI::Range(1u, 256u));

  std::size_t max_size = 3;
  std::string suite = "all";
  auto* laws = app.add_subcommand("laws", "Run the exhaustive law suites");
  laws->add_option("--max-size", max_size, "Largest structure size")->check(CLI::Range(1, 6));
  laws->add_option("--suite", suite)->check(CLI::IsMember({"ccc", "bilat", "lu", "approx", "all"}));

  std::string system = "builtin:lu-bool", type, show = "all";
  bool json = false;
  auto* space = app.add_subcommand("space", "List an approximation space");
  space->add_option("--system", system, "System file, builtin:lu-bool or builtin:bilat-bool");
  space->add_option("--type", type, "Type, e.g. o->o")->required();
  space->add_option("--show", show)->check(CLI::IsMember({"exact", "consistent", "all"}));
  space->add_flag("--json", json);

  std::string program, mode = "kk";
  bool experimental = false;
  auto* model = app.add_subcommand("model", "Compute the model of a program");
  model->add_option("program", program, "Program file (.hl)")->required();
  model->add_option("--system", system);
  model->add_option("--mode", mode)->check(CLI::IsMember({"kk", "wf"}));
  model->add_flag("--experimental-lu-stable", experimental, "Allow the well-founded model on LU systems");
  model->add_flag("--json", json);

  std::string model_file;
  auto* project = app.add_subcommand("project", "Project an exact model to classical values");
  project->add_option("model", model_file, "Model JSON from `model --json`")->required();
  project->add_option("--system", system);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : usage;
  }

  if (const char* cap = std::getenv("AFT_SIZE_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(cap, &end, 10);
    if (*cap == '\0' || *end != '\0' || v == 0) {
      std::cerr << "error: AFT_SIZE_CAP must be a positive integer\n";
      return usage;
    }
    set_size_cap(static_cast<std::size_t>(v));
  }

  try {
    if (*laws) return run_laws_cmd(max_size, suite, threads);
    if (*space) return run_space_cmd(system, type, show, json);
    if (*model) return run_model_cmd(program, system, mode, experimental, json);
    if (*project) return run_project_cmd(model_file, system);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_for(e);
  }
  return usage;
}
