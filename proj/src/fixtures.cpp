// Copyright 2026 The OptiGraph Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "optigraph/fixtures.hpp"

#include <array>

namespace optigraph {

std::vector<std::string> fixture_names() {
  return {"storage", "chain3_milp", "mini_cem", "mini_pcm", "mini_pcm_lp"};
}

Graph generate_fixture(std::string_view name) {
  if (name == "storage") return storage_fixture();
  if (name == "chain3_milp") return chain3_milp();
  if (name == "mini_cem") return mini_cem();
  if (name == "mini_pcm") return mini_pcm(false);
  if (name == "mini_pcm_lp") return mini_pcm(true);
  throw Error(Errc::kInvalidConfig, "unknown fixture '" + std::string(name) + "'");
}

Graph storage_fixture() {
  constexpr int kT = 20;
  std::array<double, kT> gamma{};
  gamma.fill(5.0);
  for (int t = 8; t <= 10; ++t) gamma[t - 1] = 20.0;
  for (int t = 16; t <= 20; ++t) gamma[t - 1] = 50.0;
  const double beta = 20.0;
  const double alpha = 10.0;
  const double zeta = 2.0;
  const double d_sell = 50.0;
  const double d_save = 20.0;
  const double d_buy = 15.0;
  const double y_bar = 10.0;

  Graph graph("storage");
  Node& planning = graph.add_node("planning");
  const VarRef size = planning.add_variable("storage_size", 0.0);
  planning.set_objective(LinearExpr{{size, alpha}});

  for (int t = 1; t <= kT; ++t) {
    Node& node = graph.add_node("op" + std::to_string(t));
    const VarRef stored = node.add_variable("y_stored", 0.0);
    const VarRef sell = node.add_variable("y_sell", 0.0, d_sell);
    const VarRef save = node.add_variable("y_save", -d_save, d_save);
    const VarRef buy = node.add_variable("x_buy", 0.0, d_buy);
    node.add_constraint(LinearExpr{{save, 1}, {sell, 1}, {buy, -zeta}},
                        Sense::kEqual, 0.0);
    node.set_objective(LinearExpr{{buy, beta}, {sell, -gamma[t - 1]}});
    if (t == 1) node.add_constraint(LinearExpr{{stored, 1}}, Sense::kEqual, y_bar);
  }
  for (int t = 1; t < kT; ++t) {
    const std::string a = "op" + std::to_string(t);
    const std::string b = "op" + std::to_string(t + 1);
    graph.add_link_constraint(LinearExpr{{{b, "y_stored"}, 1},
                                         {{a, "y_stored"}, -1},
                                         {{b, "y_save"}, -1}},
                              Sense::kEqual, 0.0);
  }
  for (int t = 1; t <= kT; ++t) {
    graph.add_link_constraint(
        LinearExpr{{{"op" + std::to_string(t), "y_stored"}, 1}, {size, -1}},
        Sense::kLessEqual, 0.0);
  }
  return graph;
}

Partition storage_two_block_partition() {
  Partition p;
  p.blocks.push_back({"planning"});
  p.blocks.emplace_back();
  for (int t = 1; t <= 20; ++t) p.blocks[1].push_back("op" + std::to_string(t));
  p.names = {"planning", "operations"};
  return p;
}

Graph storage_two_block() {
  return apply_partition(storage_fixture(), storage_two_block_partition());
}

Graph chain3_milp() {
  Graph graph("chain3");
  for (int i = 1; i <= 3; ++i) {
    Node& node = graph.add_node("n" + std::to_string(i));
    const VarRef x = node.add_variable("x", 0, 1, Integrality::kBinary);
    const VarRef y = node.add_variable("y", 0);
    node.add_constraint(LinearExpr{{x, 1}, {y, 1}}, Sense::kGreaterEqual, 1.3);
    node.set_objective(LinearExpr{{x, 1}, {y, 2}});
  }
  for (int i = 1; i <= 2; ++i) {
    graph.add_link_constraint(
        LinearExpr{{{"n" + std::to_string(i), "x"}, 1},
                   {{"n" + std::to_string(i + 1), "y"}, 1}},
        Sense::kGreaterEqual, i);
  }
  Partition p;
  p.blocks = {{"n1"}, {"n2"}, {"n3"}};
  p.names = {"g1", "g2", "g3"};
  return apply_partition(graph, p);
}

Graph mini_cem(bool lift) {
  constexpr int kRegions = 3;
  constexpr int kHours = 2;
  const double demand[kRegions][kHours] = {{10, 14}, {8, 12}, {12, 16}};
  const double wind_cf[kRegions][kHours] = {{0.6, 0.2}, {0.3, 0.7}, {0.5, 0.4}};
  const double fuel_cost = 3.0;
  const double unmet_cost = 50.0;
  const double emission_rate = 1.0;
  const double emission_cap = 40.0;

  Graph graph("cem");
  Graph planning("planning");
  Node& plan = planning.add_node("plan");
  const VarRef cap_gas = plan.add_variable("cap_gas", 0.0);
  const VarRef cap_wind = plan.add_variable("cap_wind", 0.0);
  plan.set_objective(LinearExpr{{cap_gas, 4.0}, {cap_wind, 6.0}});
  graph.add_subgraph(std::move(planning));

  for (int r = 0; r < kRegions; ++r) {
    Graph ops("ops" + std::to_string(r + 1));
    for (int h = 0; h < kHours; ++h) {
      Node& node = ops.add_node("o" + std::to_string(r + 1) + "_h" +
                                std::to_string(h + 1));
      const VarRef gas = node.add_variable("gas", 0.0);
      const VarRef wind = node.add_variable("wind", 0.0);
      const VarRef unmet = node.add_variable("unmet", 0.0);
      node.add_constraint(LinearExpr{{gas, 1}, {wind, 1}, {unmet, 1}},
                          Sense::kEqual, demand[r][h]);
      node.set_objective(LinearExpr{{gas, fuel_cost}, {unmet, unmet_cost}});
    }
    graph.add_subgraph(std::move(ops));
  }
  LinearExpr emissions;
  for (int r = 0; r < kRegions; ++r) {
    for (int h = 0; h < kHours; ++h) {
      const std::string id =
          "o" + std::to_string(r + 1) + "_h" + std::to_string(h + 1);
      graph.add_link_constraint(LinearExpr{{{id, "gas"}, 1}, {cap_gas, -1}},
                                Sense::kLessEqual, 0.0);
      graph.add_link_constraint(
          LinearExpr{{{id, "wind"}, 1}, {cap_wind, -wind_cf[r][h]}},
          Sense::kLessEqual, 0.0);
      emissions.add({id, "gas"}, emission_rate);
    }
  }
  const std::string policy =
      graph.add_link_constraint(std::move(emissions), Sense::kLessEqual,
                                emission_cap)
          .id;
  if (lift) reroute_link(graph, policy, "planning");
  return graph;
}

Graph mini_pcm(bool relaxed) {
  constexpr int kPeriods = 12;
  constexpr int kBlock = 4;
  const double demand[kPeriods] = {30, 25, 20, 25, 40, 55,
                                   70, 65, 50, 45, 60, 35};
  const Integrality on_off =
      relaxed ? Integrality::kContinuous : Integrality::kBinary;

  Graph graph(relaxed ? "pcm_lp" : "pcm");
  for (int t = 1; t <= kPeriods; ++t) {
    Node& node = graph.add_node("t" + std::to_string(t));
    const VarRef g1 = node.add_variable("g1", 0, 50);
    const VarRef g2 = node.add_variable("g2", 0, 30);
    const VarRef u1 = node.add_variable("u1", 0, 1, on_off);
    const VarRef u2 = node.add_variable("u2", 0, 1, on_off);
    const VarRef ch = node.add_variable("ch", 0, 10);
    const VarRef dis = node.add_variable("dis", 0, 10);
    const VarRef soc = node.add_variable("soc", 0, 40);
    const VarRef unmet = node.add_variable("unmet", 0);
    const VarRef spill = node.add_variable("spill", 0);
    node.add_constraint(LinearExpr{{g1, 1}, {g2, 1}, {dis, 1}, {ch, -1},
                                   {unmet, 1}, {spill, -1}},
                        Sense::kEqual, demand[t - 1]);
    node.add_constraint(LinearExpr{{g1, 1}, {u1, -50}}, Sense::kLessEqual, 0);
    node.add_constraint(LinearExpr{{g1, 1}, {u1, -10}}, Sense::kGreaterEqual, 0);
    node.add_constraint(LinearExpr{{g2, 1}, {u2, -30}}, Sense::kLessEqual, 0);
    node.add_constraint(LinearExpr{{g2, 1}, {u2, -5}}, Sense::kGreaterEqual, 0);
    if (t == 1) {
      node.add_constraint(LinearExpr{{soc, 1}, {ch, -0.9}, {dis, 1}},
                          Sense::kEqual, 20.0);
    }
    node.set_objective(LinearExpr{{g1, 2.0}, {g2, 5.0}, {u1, 10.0},
                                  {u2, 4.0}, {ch, 0.1}, {unmet, 100.0}});
  }
  for (int t = 2; t <= kPeriods; ++t) {
    const std::string prev = "t" + std::to_string(t - 1);
    const std::string cur = "t" + std::to_string(t);
    graph.add_link_constraint(LinearExpr{{{cur, "soc"}, 1},
                                         {{prev, "soc"}, -1},
                                         {{cur, "ch"}, -0.9},
                                         {{cur, "dis"}, 1}},
                              Sense::kEqual, 0.0);
    graph.add_link_constraint(
        LinearExpr{{{cur, "g1"}, 1}, {{prev, "g1"}, -1}}, Sense::kLessEqual,
        20.0);
    graph.add_link_constraint(
        LinearExpr{{{prev, "g1"}, 1}, {{cur, "g1"}, -1}}, Sense::kLessEqual,
        20.0);
  }
  Partition p;
  for (int b = 0; b < kPeriods / kBlock; ++b) {
    p.blocks.emplace_back();
    for (int t = b * kBlock + 1; t <= (b + 1) * kBlock; ++t) {
      p.blocks.back().push_back("t" + std::to_string(t));
    }
    p.names.push_back("pcm" + std::to_string(b + 1));
  }
  return apply_partition(graph, p);
}

}  // namespace optigraph
