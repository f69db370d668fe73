#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cartan/cohomology.hpp"
#include "cartan/verification.hpp"
#include "json.hpp"

using namespace cartan;
using nlohmann::json;

namespace {

enum class Format { Table, Json, Csv };

struct Config {
  std::string family = "H";
  std::uint32_t p = 5;
  std::size_t n = 2;
  std::optional<int> min_degree;
  std::string coefficients = "adjoint";
  std::size_t k = 2;
  bool weight_zero = false;
  std::optional<int> degree;
  std::string decompose = "none";
  bool no_representatives = false;
  std::size_t max_terms = 20;
  bool relative = false;
  std::string format = "table";
  std::size_t threads = 0;
  std::string memory_budget;
  bool experimental = false;
  std::uint64_t seed = 1;
  std::size_t samples = 200000;

  // command-specific
  std::string a, b;
  std::string theorem;
  std::vector<std::string> cocycles;
  bool lemmas = false;
  bool structure = false;
  bool all = false;
  std::string cochain;
  std::vector<std::string> args;
  std::string what = "structure";
};

Format format_of(const Config& c) {
  if (c.format == "json") return Format::Json;
  if (c.format == "csv") return Format::Csv;
  if (c.format == "table") return Format::Table;
  throw CLI::ValidationError("--format", "expected json, table or csv");
}

ResourceLimits limits_of(const Config& c) {
  ResourceLimits l = ResourceLimits::defaults();
  if (!c.memory_budget.empty()) l.memory_budget = parse_memory_size(c.memory_budget);
  l.threads = c.threads;
  return l;
}

ModelPtr model_of(const Config& c) {
  if (c.p < 5 || !is_prime(c.p)) throw std::invalid_argument("--p must be a prime >= 5 (got " + std::to_string(c.p) + ")");
  Family f = parse_family(c.family);
  if (is_contact(f) && (c.n < 3 || c.n % 2 == 0))
    throw std::invalid_argument("parity: the contact family needs odd n >= 3 (got n = " + std::to_string(c.n) + ")");
  if (!is_contact(f) && (c.n < 2 || c.n % 2 == 1))
    throw std::invalid_argument("parity: the Hamiltonian family needs even n >= 2 (got n = " + std::to_string(c.n) + ")");
  return LieAlgebraModel::make(f, c.p, c.n, c.min_degree);
}

void add_model_options(CLI::App* app, Config& c) {
  app->add_option("--family", c.family, "K, Kprime, H or Hprime")->capture_default_str();
  app->add_option("--p", c.p, "prime >= 5")->capture_default_str();
  app->add_option("--n", c.n, "number of variables")->capture_default_str();
  app->add_option("--min-degree", c.min_degree, "restrict to the subalgebra of degree >= d");
}

void add_global_options(CLI::App* app, Config& c) {
  app->add_option("--format", c.format, "json, table or csv")->capture_default_str();
  app->add_option("--threads", c.threads, "worker threads (0 = all cores)");
  app->add_option("--memory-budget", c.memory_budget, "e.g. 512M or 2G (default: $CARTAN_MEMORY_BUDGET or 1G)");
  app->add_flag("--experimental", c.experimental, "enable experimental cochains");
  app->add_option("--seed", c.seed, "seed for sampling checks")->capture_default_str();
  app->add_option("--samples", c.samples, "random samples for sampling checks")->capture_default_str();
}

std::string monomial(const LieAlgebraModel& g, const MultiIndex& a) {
  return to_string(Polynomial::monomial(g.context(), a));
}

MultiIndex parse_element(const LieAlgebraModel& g, const std::string& text) {
  if (text.find('x') != std::string::npos || text == "1") {
    Polynomial f = parse_polynomial(g.context(), text);
    if (f.terms().size() != 1 || f.terms().begin()->second != 1)
      throw std::invalid_argument("'" + text + "' is not a single monomial");
    return f.terms().begin()->first;
  }
  MultiIndex a = parse_multiindex(text);
  if (a.size() != g.n())
    throw std::invalid_argument("multi-index '" + text + "' has " + std::to_string(a.size()) + " entries, expected " +
                                std::to_string(g.n()));
  return a;
}

std::uint32_t element_index(const LieAlgebraModel& g, const std::string& text) {
  MultiIndex a = parse_element(g, text);
  auto idx = g.index_of(a);
  if (!idx) throw std::domain_error(monomial(g, a) + " is not a basis element of " + g.name());
  return *idx;
}

int cmd_dim(const Config& c) {
  auto g = model_of(c);
  std::map<int, std::size_t> comps;
  for (std::uint32_t i = 0; i < g->dim(); ++i) ++comps[g->degree_of(i)];
  auto cartan = g->cartan_decomposition();
  Weight zero;
  zero.components.assign(g->weight_components(), 0);
  std::size_t cartan_dim = cartan.count(zero) ? cartan.at(zero) : 0;
  switch (format_of(c)) {
    case Format::Json: {
      json j = {{"schema", 1},
                {"model", g->name()},
                {"family", std::string(family_name(g->family()))},
                {"p", g->p()},
                {"n", g->n()},
                {"dim", g->dim()},
                {"lowest_degree", g->lowest_degree()},
                {"highest_degree", g->highest_degree()},
                {"cartan_dim", cartan_dim},
                {"weights", cartan.size()}};
      json cj = json::object();
      for (auto [d, k] : comps) cj[std::to_string(d)] = k;
      j["components"] = cj;
      std::cout << j.dump(2) << "\n";
      break;
    }
    case Format::Csv:
      std::cout << "degree,dim\n";
      for (auto [d, k] : comps) std::cout << d << "," << k << "\n";
      break;
    case Format::Table:
      std::cout << g->dim() << "\n";
      std::cout << "model      " << g->name() << "\n";
      std::cout << "degrees    " << g->lowest_degree() << ".." << g->highest_degree() << "\n";
      std::cout << "components";
      for (auto [d, k] : comps) std::cout << " " << d << ":" << k;
      std::cout << "\ncartan     " << cartan_dim << "\n";
      break;
  }
  return 0;
}

int cmd_bracket(const Config& c) {
  auto g = model_of(c);
  auto x = element_index(*g, c.a);
  auto y = element_index(*g, c.b);
  auto v = g->bracket(x, y);
  std::string text = to_string(g->to_polynomial(v));
  if (format_of(c) == Format::Json) {
    json terms = json::array();
    for (const auto& e : v) terms.push_back({{"monomial", monomial(*g, g->element(e.index))}, {"coeff", e.value}});
    std::cout << json{{"schema", 1}, {"model", g->name()}, {"a", monomial(*g, g->element(x))},
                      {"b", monomial(*g, g->element(y))}, {"bracket", text}, {"terms", terms}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << text << "\n";
  }
  return 0;
}

CochainFilter filter_of(const Config& c) {
  if (c.degree) return CochainFilter::weight_zero_degree(*c.degree);
  if (c.weight_zero) return CochainFilter::weight_zero();
  return CochainFilter::none();
}

Decomposition decomposition_of(const Config& c) {
  if (c.decompose == "none") return Decomposition::Monolithic;
  if (c.decompose == "degree") return Decomposition::ByDegree;
  if (c.decompose == "block") return Decomposition::ByBlock;
  throw CLI::ValidationError("--decompose", "expected none, degree or block");
}

int cmd_cohomology(const Config& c, std::size_t k) {
  auto g = model_of(c);
  const Format fmt = format_of(c);
  if (c.relative) {
    if (parse_module(c.coefficients) != ModuleKind::Trivial)
      throw std::invalid_argument("--relative is computed with trivial coefficients only");
    auto r = relative_cohomology(g, k, limits_of(c).memory_budget);
    if (fmt == Format::Json) {
      std::cout << json{{"schema", 1}, {"model", g->name()}, {"k", k}, {"relative_to", "degree -1 part"},
                        {"dimC", r.dimC}, {"dimZ", r.dimZ}, {"dimB", r.dimB}, {"dimH", r.dimH}}
                       .dump(2)
                << "\n";
    } else {
      std::cout << "model   " << g->name() << " relative to its degree -1 part\nk       " << k << "\ndimC    " << r.dimC
                << "\ndimZ    " << r.dimZ << "\ndimB    " << r.dimB << "\ndimH    " << r.dimH << "\n";
    }
    return 0;
  }
  auto m = CoefficientModule::make(g, parse_module(c.coefficients));
  CohomologyOptions o;
  o.filter = filter_of(c);
  o.decomposition = decomposition_of(c);
  o.representatives = !c.no_representatives;
  o.limits = limits_of(c);
  auto r = cohomology(g, m, k, o);
  if (fmt == Format::Json) {
    std::cout << to_json(r, c.max_terms).dump(2) << "\n";
    return 0;
  }
  if (fmt == Format::Csv) {
    std::cout << "model,k,module,filter,dimC,dimZ,dimB,dimH\n"
              << r.model << "," << r.k << "," << r.module << "," << r.filter << "," << r.dimC << "," << r.dimZ << ","
              << r.dimB << "," << r.dimH << "\n";
    return 0;
  }
  std::cout << "model           " << r.model << "\nk               " << r.k << "\nmodule          " << r.module
            << "\nfilter          " << r.filter << "\ndecomposition   " << r.decomposition << " (" << r.blocks.size()
            << " blocks)\ndimC            " << r.dimC << "\ndimZ            " << r.dimZ << "\ndimB            " << r.dimB
            << "\ndimH            " << r.dimH << "\nelapsed_ms      " << r.elapsed_ms << "\n";
  for (std::size_t i = 0; i < r.representatives.size(); ++i)
    std::cout << "representative " << i + 1 << ":\n" << r.representatives[i].to_string(c.max_terms) << "\n";
  if (r.representatives_omitted) std::cout << "representatives omitted (block too large)\n";
  return 0;
}

int cmd_verify(const Config& c) {
  VerifyOptions o;
  o.limits = limits_of(c);
  o.seed = c.seed;
  o.samples = c.samples;
  o.experimental = c.experimental;
  Ledger ledger;
  std::vector<std::function<TheoremCheck()>> jobs;
  if (c.all) {
    jobs.push_back([o] { return verify_theorem_H(5, 2, o); });
    jobs.push_back([o] { return verify_theorem_H(7, 2, o); });
    jobs.push_back([o] { return verify_theorem_K(5, 3, o); });
  }
  if (!c.theorem.empty()) {
    Family f = parse_family(c.theorem);
    const auto p = c.p;
    const auto n = c.n;
    if (is_contact(f))
      jobs.push_back([o, p, n] { return verify_theorem_K(p, n, o); });
    else
      jobs.push_back([o, p, n] { return verify_theorem_H(p, n, o); });
  }
  // argument errors surface before any job runs
  if (!c.theorem.empty()) {
    Family f = parse_family(c.theorem);
    if (c.p < 5 || !is_prime(c.p)) throw std::invalid_argument("--p must be a prime >= 5");
    if (is_contact(f) ? (c.n < 3 || c.n % 2 == 0) : (c.n < 2 || c.n % 2 == 1))
      throw std::invalid_argument("parity: n does not fit the family");
  }
  ModelPtr g;
  if (!c.cocycles.empty() || c.lemmas || c.structure) g = model_of(c);
  for (const auto& name : c.cocycles) {
    named_cochain(name, g, c.experimental);  // validates the name and its domain
    jobs.push_back([name, g, o] { return verify_cocycle(name, g, o); });
  }
  ledger = run_checks(jobs, c.threads);
  if (c.structure || c.all) {
    auto s = c.all ? verify_structure(Family::K, 5, 3) : verify_structure(g->family(), g->p(), g->n());
    ledger.insert(ledger.end(), s.begin(), s.end());
  }
  if (c.lemmas || c.all) {
    auto add = [&](Family f, std::uint32_t p, std::size_t n) {
      auto l = verify_lemmas(f, p, n, o);
      ledger.insert(ledger.end(), l.begin(), l.end());
    };
    if (c.all) {
      add(Family::K, 5, 3);
      add(Family::H, 5, 2);
      add(Family::H, 7, 2);
    } else {
      add(g->family(), g->p(), g->n());
    }
  }
  if (ledger.empty()) throw CLI::ValidationError("verify", "nothing to verify: pass --theorem, --cocycle, --lemmas, --structure or --all");
  const bool ok = ledger_passed(ledger);
  switch (format_of(c)) {
    case Format::Json: {
      json j = ledger_json(ledger);
      j["seed"] = c.seed;
      std::cout << j.dump(2) << "\n";
      break;
    }
    case Format::Csv:
      std::cout << "id,status,expected,computed,provenance\n";
      for (const auto& k : ledger)
        std::cout << '"' << k.id << "\"," << status_name(k.status) << ",\"" << k.expected << "\",\"" << k.computed
                  << "\"," << provenance_name(k.provenance) << "\n";
      break;
    case Format::Table:
      std::cout << ledger_table(ledger);
      for (const auto& k : ledger)
        if (!k.detail.empty()) std::cout << "note " << k.id << ": " << k.detail << "\n";
      std::cout << (ok ? "all checks passed" : "some checks FAILED") << " (seed " << c.seed << ")\n";
      break;
  }
  return ok ? 0 : 1;
}

int cmd_eval(const Config& c) {
  auto g = model_of(c);
  auto named = named_cochain(c.cochain, g, c.experimental);
  if (c.args.size() != named.arity)
    throw std::invalid_argument(named.name + " takes " + std::to_string(named.arity) + " arguments, got " +
                                std::to_string(c.args.size()));
  std::vector<std::uint32_t> idx;
  for (const auto& a : c.args) idx.push_back(element_index(*g, a));
  auto v = named.evaluate(idx);
  std::string text = named.module->kind() == ModuleKind::Trivial ? std::to_string(v.empty() ? 0 : v.front().value)
                                                                  : to_string(named.module->to_polynomial(v));
  if (format_of(c) == Format::Json) {
    json args = json::array();
    for (auto i : idx) args.push_back(monomial(*g, g->element(i)));
    json j = {{"schema", 1}, {"model", g->name()}, {"cochain", named.name}, {"args", args}, {"value", text}};
    if (!named.note.empty()) j["note"] = named.note;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << text << "\n";
  }
  return 0;
}

int cmd_export(const Config& c) {
  auto g = model_of(c);
  const Format fmt = format_of(c);
  if (c.what == "structure") {
    if (fmt == Format::Json) {
      json rows = json::array();
      for (std::uint32_t i = 0; i < g->dim(); ++i)
        for (std::uint32_t j = i + 1; j < g->dim(); ++j)
          for (const auto& e : g->bracket(i, j))
            rows.push_back({monomial(*g, g->element(i)), monomial(*g, g->element(j)),
                            monomial(*g, g->element(e.index)), e.value});
      std::cout << json{{"schema", 1}, {"model", g->name()}, {"columns", {"left", "right", "result", "coeff"}},
                        {"constants", rows}}
                       .dump()
                << "\n";
      return 0;
    }
    std::cout << "left,right,result,coeff\n";
    for (std::uint32_t i = 0; i < g->dim(); ++i)
      for (std::uint32_t j = i + 1; j < g->dim(); ++j)
        for (const auto& e : g->bracket(i, j))
          std::cout << monomial(*g, g->element(i)) << "," << monomial(*g, g->element(j)) << ","
                    << monomial(*g, g->element(e.index)) << "," << e.value << "\n";
    return 0;
  }
  if (c.what == "differential") {
    auto m = CoefficientModule::make(g, parse_module(c.coefficients));
    auto filter = filter_of(c);
    CochainSpace src(g, m, c.k, filter);
    CochainSpace dst(g, m, c.k + 1, filter);
    auto d = differential_matrix(src, dst, limits_of(c).memory_budget);
    if (fmt == Format::Json) {
      json rows = json::array();
      for (const auto& t : d.triplets()) rows.push_back({t.row, t.col, t.value});
      std::cout << json{{"schema", 1}, {"model", g->name()}, {"k", c.k}, {"rows", d.rows()}, {"cols", d.cols()},
                        {"entries", rows}}
                       .dump()
                << "\n";
      return 0;
    }
    std::cout << "row,col,value\n";
    for (const auto& t : d.triplets()) std::cout << t.row << "," << t.col << "," << t.value << "\n";
    return 0;
  }
  throw CLI::ValidationError("--what", "expected structure or differential");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cartan-type Lie algebras over F_p: brackets, cocycles and cohomology"};
  app.require_subcommand(1);
  Config c;

  auto* dim = app.add_subcommand("dim", "basis dimension and grading summary");
  add_model_options(dim, c);
  add_global_options(dim, c);

  auto* bracket = app.add_subcommand("bracket", "bracket of two basis monomials");
  add_model_options(bracket, c);
  add_global_options(bracket, c);
  bracket->add_option("--a", c.a, "multi-index (e.g. 1,0,1) or monomial (e.g. x1*x3)")->required();
  bracket->add_option("--b", c.b, "multi-index or monomial")->required();

  auto add_cohomology_options = [&](CLI::App* sub) {
    add_model_options(sub, c);
    add_global_options(sub, c);
    sub->add_option("--coefficients", c.coefficients, "adjoint, ambient, polynomials, trivial, top or character")
        ->capture_default_str();
    sub->add_flag("--weight-zero", c.weight_zero, "keep weight-zero cochains only");
    sub->add_option("--degree", c.degree, "keep weight-zero cochains of this total degree");
    sub->add_option("--decompose", c.decompose, "none, degree or block")->capture_default_str();
    sub->add_flag("--no-representatives", c.no_representatives, "skip representative cocycles");
    sub->add_option("--max-terms", c.max_terms, "terms printed per representative")->capture_default_str();
    sub->add_flag("--relative", c.relative, "relative to the degree -1 part (trivial coefficients)");
  };
  auto* h2 = app.add_subcommand("h2", "second cohomology");
  add_cohomology_options(h2);
  auto* h3 = app.add_subcommand("h3", "third cohomology");
  add_cohomology_options(h3);
  auto* hk = app.add_subcommand("hk", "cohomology in arity k (0..3)");
  add_cohomology_options(hk);
  hk->add_option("--k", c.k, "cochain arity")->required();

  auto* verify = app.add_subcommand("verify", "run theorem, cocycle and lemma checks");
  add_model_options(verify, c);
  add_global_options(verify, c);
  verify->add_option("--theorem", c.theorem, "K or H: the second adjoint cohomology statement");
  verify->add_option("--cocycle", c.cocycles, "cochain name (repeatable), e.g. Phi, Pi:1,2, Sq:x1, Xi");
  verify->add_flag("--lemmas", c.lemmas, "dimension, Cartan and commutator claims");
  verify->add_flag("--structure", c.structure, "antisymmetry, Jacobi, grading, weights");
  verify->add_flag("--all", c.all, "the desk-scale ledger");

  auto* eval = app.add_subcommand("eval", "evaluate a named cochain");
  add_model_options(eval, c);
  add_global_options(eval, c);
  eval->add_option("--cochain", c.cochain, "e.g. Phi, Pi:1,2, Sq:x1")->required();
  eval->add_option("--arg", c.args, "argument (repeatable): multi-index or monomial")->required();

  auto* exp = app.add_subcommand("export", "CSV/JSON export of structure constants or a differential");
  add_model_options(exp, c);
  add_global_options(exp, c);
  exp->add_option("--what", c.what, "structure or differential")->capture_default_str();
  exp->add_option("--coefficients", c.coefficients, "module for differential export")->capture_default_str();
  exp->add_option("--k", c.k, "source arity for differential export")->capture_default_str();
  exp->add_flag("--weight-zero", c.weight_zero, "weight-zero cochains only");
  exp->add_option("--degree", c.degree, "weight-zero cochains of this total degree");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*dim) return cmd_dim(c);
    if (*bracket) return cmd_bracket(c);
    if (*h2) return cmd_cohomology(c, 2);
    if (*h3) return cmd_cohomology(c, 3);
    if (*hk) return cmd_cohomology(c, c.k);
    if (*verify) return cmd_verify(c);
    if (*eval) return cmd_eval(c);
    if (*exp) return cmd_export(c);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
