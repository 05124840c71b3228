#pragma once

// Command-line front end. run_command() is the whole program; tools/xq.cpp
// only forwards argv to it.
//
// Exit codes: 0 ran, 1 usage / input error, 2 budget exceeded.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "xq/bench.hpp"
#include "xq/compile.hpp"
#include "xq/errors.hpp"
#include "xq/fbdd_engine.hpp"
#include "xq/io.hpp"
#include "xq/mlp_engine.hpp"
#include "xq/oracle.hpp"
#include "xq/perceptron_engine.hpp"
#include "xq/reductions.hpp"

namespace xq {

namespace cli_detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

inline Instance instance_arg(const std::string& s) {
  auto x = parse_instance(s);
  if (!x) throw Error("instance must be a string over {0,1}: " + s);
  return *x;
}

inline PartialInstance partial_arg(const std::string& s) {
  auto y = parse_partial(s);
  if (!y) throw Error("partial instance must be a string over {0,1,*}: " + s);
  return *y;
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

struct QueryArgs {
  std::string model;
  std::string instance;
  std::string partial;
  std::size_t k = 0;
  std::optional<std::uint64_t> limit;
};

inline std::string run_query(const std::string& query, const QueryArgs& a) {
  AnyModel model = parse_model(read_file(a.model));
  auto lim = [&](std::uint64_t d) { return a.limit.value_or(d); };
  if (query == "mcr" || query == "msr") {
    Instance x = instance_arg(a.instance);
    const bool mcr = query == "mcr";
    QueryVerdict v = std::visit(
        overloaded{
            [&](const Fbdd& m) { return mcr ? mcr_fbdd(m, x, a.k) : msr_fbdd(m, x, a.k, lim(kDefaultFbddLimit)); },
            [&](const Perceptron& m) { return mcr ? mcr_perceptron(m, x, a.k) : msr_perceptron(m, x, a.k); },
            [&](const Mlp& m) {
              return mcr ? mcr_mlp(m, x, a.k, lim(kDefaultMlpLimit)) : msr_mlp(m, x, a.k, lim(kDefaultMlpLimit));
            },
        },
        model);
    return v.str();
  }
  if (query == "csr") {
    Instance x = instance_arg(a.instance);
    PartialInstance y = partial_arg(a.partial);
    bool yes = std::visit(overloaded{
                              [&](const Fbdd& m) { return csr_fbdd(m, x, y); },
                              [&](const Perceptron& m) { return csr_perceptron(m, x, y); },
                              [&](const Mlp& m) { return csr_mlp(m, x, y, lim(kDefaultMlpLimit)); },
                          },
                          model);
    return yes ? "YES" : "NO";
  }
  PartialInstance y = partial_arg(a.partial);
  Integer count = std::visit(overloaded{
                                 [&](const Fbdd& m) { return cc_fbdd(m, y); },
                                 [&](const Perceptron& m) { return cc_perceptron(m, y, lim(kDefaultDpLimit)); },
                                 [&](const Mlp& m) { return cc_mlp(m, y, lim(kDefaultMlpLimit)); },
                             },
                             model);
  return to_string(count);
}

inline std::string run_oracle(const std::string& query, const QueryArgs& a) {
  AnyModel model = parse_model(read_file(a.model));
  const std::uint64_t limit = a.limit.value_or(kDefaultOracleLimit);
  Query q;
  if (query == "mcr") q = McrQuery{instance_arg(a.instance), a.k};
  else if (query == "msr") q = MsrQuery{instance_arg(a.instance), a.k};
  else if (query == "csr") q = CsrCheck{instance_arg(a.instance), partial_arg(a.partial)};
  else q = CcQuery{partial_arg(a.partial)};
  QueryResult r = std::visit([&](const auto& m) { return oracle_query(m, q, limit); }, model);
  if (auto v = std::get_if<QueryVerdict>(&r)) return v->str();
  return to_string(std::get<Integer>(r));
}

}  // namespace cli_detail

inline int run_command(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  using namespace cli_detail;
  CLI::App app{"Exact explanation queries over FBDDs, perceptrons and MLPs", "xq"};
  app.require_subcommand(1);

  QueryArgs qa;
  std::string result;

  auto add_query_flags = [&](CLI::App* sub, const std::string& q) {
    sub->add_option("--model", qa.model, "model file (fbdd, perceptron or mlp)")->required();
    if (q == "mcr" || q == "msr" || q == "csr") sub->add_option("--instance", qa.instance, "instance over {0,1}")->required();
    if (q == "csr" || q == "cc") sub->add_option("--partial", qa.partial, "partial instance over {0,1,*}")->required();
    if (q == "mcr" || q == "msr") sub->add_option("--k", qa.k, "distance or size bound")->required();
    sub->add_option("--limit", qa.limit, "enumeration budget");
  };

  for (std::string q : {"mcr", "msr", "csr", "cc"}) {
    auto* sub = app.add_subcommand(q, "run the " + q + " query");
    add_query_flags(sub, q);
    sub->callback([&, q] { result = run_query(q, qa); });
  }

  auto* oracle = app.add_subcommand("oracle", "answer a query by exhaustive enumeration");
  oracle->require_subcommand(1);
  for (std::string q : {"mcr", "msr", "csr", "cc"}) {
    auto* sub = oracle->add_subcommand(q, "brute-force " + q);
    add_query_flags(sub, q);
    sub->callback([&, q] { result = run_oracle(q, qa); });
  }

  std::string input, output;
  std::uint64_t budget = kDefaultStepBudget;
  auto* compile = app.add_subcommand("compile", "translate between model families");
  compile->require_subcommand(1);
  {
    auto* s = compile->add_subcommand("circuit-to-mlp", "Boolean circuit to relu MLP");
    s->add_option("--input", input, "circuit file")->required();
    s->callback([&] { result = serialize(circuit_to_mlp(parse_circuit(read_file(input)))); });
    s = compile->add_subcommand("maj-to-rmlp", "majority circuit to relu MLP");
    s->add_option("--input", input, "majcircuit file")->required();
    s->callback([&] { result = serialize(majority_to_rmlp(parse_majcircuit(read_file(input)))); });
    s = compile->add_subcommand("relu-to-step", "relu MLP to step-only MLP");
    s->add_option("--input", input, "mlp file")->required();
    s->add_option("--budget", budget, "maximum number of step units");
    s->callback([&] { result = serialize(relu_to_step(parse_mlp(read_file(input)), budget)); });
  }

  std::size_t k = 0, t = 0, depth_budget = 4;
  std::optional<std::uint64_t> limit;
  auto* reduce = app.add_subcommand("reduce", "build a query instance from a source problem");
  reduce->require_subcommand(1);
  auto emit = [&](const std::string& model_text, const std::string& line) {
    write_file(output, model_text);
    result = line;
  };
  {
    auto* s = reduce->add_subcommand("vc", "vertex cover to MCR over an MLP");
    s->add_option("--graph", input, "undirected graph file")->required();
    s->add_option("--k", k)->required();
    s->add_option("--output", output, "where to write the model")->required();
    s->callback([&] {
      auto q = vc_to_mcr(parse_graph(read_file(input)), k);
      emit(serialize(q.model), "instance=" + q.x.str() + " k=" + std::to_string(q.k));
    });
    s = reduce->add_subcommand("domdag", "dominating set of a DAG to MSR over a decision tree");
    s->add_option("--graph", input, "directed graph file")->required();
    s->add_option("--k", k)->required();
    s->add_option("--output", output, "where to write the model")->required();
    s->callback([&] {
      auto q = domdag_to_msr(parse_graph(read_file(input)), k);
      emit(serialize(q.model), "instance=" + q.x.str() + " k=" + std::to_string(q.k));
    });
    s = reduce->add_subcommand("sic", "shortest implicant core to MSR over an MLP");
    s->add_option("--dnf", input, "dnf file (last term is the core)")->required();
    s->add_option("--k", k)->required();
    s->add_option("--output", output, "where to write the model")->required();
    s->callback([&] {
      auto q = sic_to_msr(parse_dnf(read_file(input)), k);
      emit(serialize(q.model), "instance=" + q.x.str() + " k=" + std::to_string(q.k));
    });
    s = reduce->add_subcommand("taut", "tautology to CSR over an MLP");
    s->add_option("--circuit", input, "circuit file")->required();
    s->add_option("--output", output, "where to write the model")->required();
    s->callback([&] {
      auto q = taut_to_csr(parse_circuit(read_file(input)));
      emit(serialize(q.model), q.rejected ? std::string("rejected") : "instance=" + q.x.str() + " partial=" + q.y.str());
    });
    s = reduce->add_subcommand("wcs", "weighted majority circuit satisfiability to MCR");
    s->add_option("--circuit", input, "majcircuit file")->required();
    s->add_option("--k", k)->required();
    s->add_option("--limit", limit, "budget for the small-n shortcut");
    s->add_option("--output", output, "where to write the model")->required();
    s->callback([&] {
      auto q = wcs_to_mcr(parse_majcircuit(read_file(input)), k, limit.value_or(std::uint64_t{1} << 22));
      emit(serialize(q.model), "instance=" + q.x.str() + " k=" + std::to_string(q.k));
    });
    s = reduce->add_subcommand("normalize", "majority circuit to bounded depth and weft");
    s->add_option("--circuit", input, "majcircuit file")->required();
    s->add_option("--k", k)->required();
    s->add_option("--t", t, "weft bound of the input")->required();
    s->add_option("--depth-budget", depth_budget, "largest accepted depth");
    s->add_option("--output", output, "where to write the circuit")->required();
    s->callback([&] {
      auto r = normalize_maj(parse_majcircuit(read_file(input)), k, t, depth_budget);
      emit(serialize(r.circuit), "k=" + std::to_string(r.k));
    });
  }

  std::uint64_t seed = 1;
  std::size_t reps = 3;
  auto* bench = app.add_subcommand("bench", "time the counting engines and print CSV");
  bench->add_option("--seed", seed);
  bench->add_option("--reps", reps);
  bench->callback([&] {
    std::vector<BenchRow> rows = bench_cc_fbdd({100, 300, 1000, 3000, 10000}, seed, reps);
    auto more = bench_cc_perceptron({10, 20, 40, 80}, seed, reps);
    rows.insert(rows.end(), more.begin(), more.end());
    more = bench_cc_mlp(6, 12, seed, reps);
    rows.insert(rows.end(), more.begin(), more.end());
    std::ostringstream csv;
    write_csv(csv, rows);
    result = csv.str();
  });

  std::vector<std::string> args(argv.rbegin(), argv.rend());
  if (!args.empty()) args.pop_back();  // program name
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  out << result;
  if (!result.empty() && result.back() != '\n') out << "\n";
  return 0;
}

}  // namespace xq
