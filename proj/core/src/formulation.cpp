// Copyright 2026 The eevc Authors
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

#include "eevc/formulation.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

namespace eevc {

using milp::kInf;
using milp::LinearTerm;
using milp::Model;
using milp::Sense;
using milp::VarKind;

const char* to_cstring(Approach approach) {
  switch (approach) {
    case Approach::kCachingOnly: return "caching-only";
    case Approach::kVirtOnly: return "virt-only";
    case Approach::kIntegrated: return "integrated";
  }
  return "?";
}

Approach approach_from_string(const std::string& name) {
  if (name == "caching-only" || name == "caching") return Approach::kCachingOnly;
  if (name == "virt-only" || name == "virtualization-only" || name == "virt")
    return Approach::kVirtOnly;
  if (name == "integrated") return Approach::kIntegrated;
  throw std::invalid_argument("unknown approach: " + name);
}

namespace {

std::string idx(const std::string& prefix, std::initializer_list<int> indices) {
  std::string out = prefix;
  for (int i : indices) {
    out += '_';
    out += std::to_string(i);
  }
  return out;
}

struct Builder {
  const Scenario& scenario;
  const Topology& topo;
  Approach approach;
  const DemandSet& demand;
  const CnvmInterTraffic& inter;

  Model model;
  VariableMap vars;
  double big_m = 0.0;
  PiecewiseSegments piecewise;

  int H, R, N, A, AH, AC;
  std::vector<double> video_gbps, regular_gbps;

  Builder(const Scenario& sc, const Topology& tp, Approach ap,
          const DemandSet& dm, const CnvmInterTraffic& it)
      : scenario(sc), topo(tp), approach(ap), demand(dm), inter(it) {
    H = topo.num_hosting();
    R = topo.num_rrh();
    N = topo.num_core();
    A = static_cast<int>(topo.arcs().size());
    AH = static_cast<int>(topo.hosting_arcs().size());
    AC = static_cast<int>(topo.core_arcs().size());
    if (static_cast<int>(demand.cells.size()) != R) {
      throw std::invalid_argument("build_formulation: demand does not match topology");
    }
    for (const CellDemand& cell : demand.cells) {
      video_gbps.push_back(cell.video_gbps);
      regular_gbps.push_back(cell.regular_gbps);
    }
    big_m = 10.0 * (demand.total_fronthaul_gbps() + inter.total() + 1.0);
  }

  bool core_host(int h) const {
    return topo.hosting_node(h).kind == NodeKind::kCore;
  }
  int core_of_host(int h) const { return topo.hosting_node(h).index; }
  int host_of_core(int s) const {
    return topo.hosting_index({NodeKind::kCore, s});
  }

  void declare_variables() {
    const double wl_full = demand.total_fronthaul_gbps() /
                               scenario.radio.cpri_rate_gbps *
                               scenario.radio.bbu_workload_full_gops() +
                           scenario.power.cnvm_gops;
    const int psi_i_ub =
        static_cast<int>(std::ceil(wl_full / scenario.power.server_max_gops)) + 1;
    const int w_ub = static_cast<int>(
                         std::ceil(big_m / scenario.power.wavelength_gbps)) + 1;
    const int wp_ub = w_ub * std::max(1, N * (N - 1));
    const int ports_ub = w_ub;

    auto add_block = [&](std::vector<int>& slot, int size) { slot.assign(size, -1); };
    vars.num_hosting = H;
    vars.num_rrh = R;
    vars.num_core = N;
    vars.num_arcs = A;
    vars.num_hosting_arcs = AH;
    vars.num_core_arcs = AC;
    add_block(vars.cnvm_traffic, H * H);
    add_block(vars.bbuvm_traffic, H * R);
    add_block(vars.regular_traffic, H * R);
    add_block(vars.inter_cnvm, H * H);
    add_block(vars.cache_traffic, H * R);
    add_block(vars.cache_routed, H * H * R);
    add_block(vars.server_traffic, N * R);
    add_block(vars.server_routed, N * H * R);
    add_block(vars.server_to_host, N * H);
    add_block(vars.pair_traffic, H * H);
    add_block(vars.hosts_bbuvm, H);
    add_block(vars.serves_rrh, H * R);
    add_block(vars.cnvm_serves, H * H);
    add_block(vars.hosts_cnvm, H);
    add_block(vars.cnvm_pair, H * H);
    add_block(vars.hosts_any_vm, H);
    add_block(vars.cache_serves, H * R);
    add_block(vars.hosts_server, N);
    add_block(vars.hit_ratio, H);
    add_block(vars.hit_gate, H * R);
    add_block(vars.cache_size, H);
    add_block(vars.cache_size_int, H);
    add_block(vars.cache_size_frac, H);
    add_block(vars.bbu_workload, H);
    add_block(vars.workload_int, H);
    add_block(vars.workload_frac, H);
    add_block(vars.rrh_link_flow, H * R * A);
    add_block(vars.pair_link_flow, H * H * AH);
    add_block(vars.wavelengths_virtual, N * N);
    add_block(vars.wavelengths_routed, N * N * AC);
    add_block(vars.wavelengths_physical, AC);
    add_block(vars.fibers, AC);
    add_block(vars.agg_ports, N);

    for (int p = 0; p < H; ++p)
      for (int h = 0; h < H; ++h)
        vars.cnvm_traffic[vars.hh(p, h)] =
            model.add_variable(idx("lamB", {p, h}), VarKind::kContinuous, 0.0, kInf);
    for (int h = 0; h < H; ++h)
      for (int r = 0; r < R; ++r)
        vars.bbuvm_traffic[vars.hr(h, r)] =
            model.add_variable(idx("lamR", {h, r}), VarKind::kContinuous, 0.0, kInf);
    for (int h = 0; h < H; ++h)
      for (int r = 0; r < R; ++r)
        vars.regular_traffic[vars.hr(h, r)] =
            model.add_variable(idx("lamG", {h, r}), VarKind::kContinuous, 0.0, kInf);
    for (int p = 0; p < H; ++p)
      for (int q = 0; q < H; ++q)
        if (p != q)
          vars.inter_cnvm[vars.hh(p, q)] = model.add_variable(
              idx("lamE", {p, q}), VarKind::kContinuous, 0.0, kInf);
    for (int u = 0; u < H; ++u)
      for (int r = 0; r < R; ++r)
        vars.cache_traffic[vars.hr(u, r)] =
            model.add_variable(idx("lamC", {u, r}), VarKind::kContinuous, 0.0, kInf);
    for (int u = 0; u < H; ++u)
      for (int h = 0; h < H; ++h)
        for (int r = 0; r < R; ++r)
          vars.cache_routed[vars.uhr(u, h, r)] = model.add_variable(
              idx("lamCr", {u, h, r}), VarKind::kContinuous, 0.0, kInf);
    for (int s = 0; s < N; ++s)
      for (int r = 0; r < R; ++r)
        vars.server_traffic[vars.sr(s, r)] =
            model.add_variable(idx("lamS", {s, r}), VarKind::kContinuous, 0.0, kInf);
    for (int s = 0; s < N; ++s)
      for (int h = 0; h < H; ++h)
        for (int r = 0; r < R; ++r)
          vars.server_routed[vars.shr(s, h, r)] = model.add_variable(
              idx("lamSr", {s, h, r}), VarKind::kContinuous, 0.0, kInf);
    for (int s = 0; s < N; ++s)
      for (int h = 0; h < H; ++h)
        vars.server_to_host[vars.sh(s, h)] = model.add_variable(
            idx("lamSh", {s, h}), VarKind::kContinuous, 0.0, kInf);
    for (int p = 0; p < H; ++p)
      for (int q = 0; q < H; ++q)
        if (p != q)
          vars.pair_traffic[vars.hh(p, q)] = model.add_variable(
              idx("lamT", {p, q}), VarKind::kContinuous, 0.0, kInf);

    const bool pin_core = approach == Approach::kCachingOnly;
    for (int h = 0; h < H; ++h)
      for (int r = 0; r < R; ++r)
        vars.serves_rrh[vars.hr(h, r)] =
            model.add_variable(idx("sigBr", {h, r}), VarKind::kBinary, 0.0, 1.0);
    for (int h = 0; h < H; ++h)
      vars.hosts_bbuvm[h] = model.add_variable(
          idx("sigB", {h}), VarKind::kBinary, 0.0,
          pin_core && !core_host(h) ? 0.0 : 1.0);
    for (int p = 0; p < H; ++p)
      for (int h = 0; h < H; ++h)
        vars.cnvm_serves[vars.hh(p, h)] =
            model.add_variable(idx("sigEr", {p, h}), VarKind::kBinary, 0.0, 1.0);
    for (int p = 0; p < H; ++p)
      vars.hosts_cnvm[p] = model.add_variable(
          idx("sigE", {p}), VarKind::kBinary, 0.0,
          pin_core && !core_host(p) ? 0.0 : 1.0);
    const bool no_caches = approach == Approach::kVirtOnly;
    for (int u = 0; u < H; ++u)
      for (int r = 0; r < R; ++r)
        vars.cache_serves[vars.hr(u, r)] = model.add_variable(
            idx("sigC", {u, r}), VarKind::kBinary, 0.0, no_caches ? 0.0 : 1.0);
    for (int s = 0; s < N; ++s)
      vars.hosts_server[s] =
          model.add_variable(idx("sigS", {s}), VarKind::kBinary, 0.0, 1.0);

    for (int u = 0; u < H; ++u)
      vars.hit_ratio[u] = model.add_variable(
          idx("delta", {u}), VarKind::kContinuous, 0.0, no_caches ? 0.0 : 1.0);
    for (int u = 0; u < H; ++u)
      vars.cache_size[u] =
          model.add_variable(idx("Zc", {u}), VarKind::kContinuous, 0.0, 100.0);

    const double wl_ub = demand.total_fronthaul_gbps() /
                         scenario.radio.cpri_rate_gbps *
                         scenario.radio.bbu_workload_full_gops();
    for (int h = 0; h < H; ++h)
      vars.bbu_workload[h] = model.add_variable(
          idx("PsiB", {h}), VarKind::kContinuous, 0.0, wl_ub);
    for (int h = 0; h < H; ++h)
      vars.workload_int[h] = model.add_variable(
          idx("PsiI", {h}), VarKind::kInteger, 0.0, psi_i_ub);
    for (int h = 0; h < H; ++h)
      vars.workload_frac[h] = model.add_variable(
          idx("PsiF", {h}), VarKind::kContinuous, 0.0, 1.0 - milp::kFracStrictness);

    for (int h = 0; h < H; ++h)
      for (int r = 0; r < R; ++r)
        for (int a = 0; a < A; ++a)
          vars.rrh_link_flow[vars.hra(h, r, a)] = model.add_variable(
              idx("fR", {h, r, a}), VarKind::kContinuous, 0.0, kInf);
    for (int p = 0; p < H; ++p)
      for (int q = 0; q < H; ++q)
        if (p != q)
          for (int a = 0; a < AH; ++a)
            vars.pair_link_flow[vars.pqa(p, q, a)] = model.add_variable(
                idx("fT", {p, q, a}), VarKind::kContinuous, 0.0, kInf);

    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        if (i != j)
          vars.wavelengths_virtual[vars.nn(i, j)] = model.add_variable(
              idx("Wv", {i, j}), VarKind::kInteger, 0.0, w_ub);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        if (i != j)
          for (int a = 0; a < AC; ++a)
            vars.wavelengths_routed[vars.nna(i, j, a)] = model.add_variable(
                idx("Wr", {i, j, a}), VarKind::kInteger, 0.0, w_ub);
    for (int a = 0; a < AC; ++a)
      vars.wavelengths_physical[a] =
          model.add_variable(idx("Wp", {a}), VarKind::kInteger, 0.0, wp_ub);
    for (int a = 0; a < AC; ++a)
      vars.fibers[a] =
          model.add_variable(idx("fib", {a}), VarKind::kInteger, 0.0, wp_ub);
    for (int m = 0; m < N; ++m)
      vars.agg_ports[m] = model.add_variable(idx("ports", {m}), VarKind::kInteger,
                                             0.0, ports_ub);
  }

  void emit_constraints() {
    const double alpha = scenario.power.backhaul_ratio;

    // (11) CNVM->BBUVM feed equals the backhaul share of each BBUVM's
    // download traffic.
    for (int h = 0; h < H; ++h) {
      std::vector<LinearTerm> terms;
      for (int p = 0; p < H; ++p) terms.push_back({vars.cnvm_traffic[vars.hh(p, h)], 1.0});
      for (int r = 0; r < R; ++r)
        terms.push_back({vars.bbuvm_traffic[vars.hr(h, r)], -alpha});
      model.add_constraint(milp::make_label(11, {{"h", h}}), std::move(terms),
                           Sense::kEq, 0.0);
    }
    // (12) regular demand is satisfied.
    for (int r = 0; r < R; ++r) {
      std::vector<LinearTerm> terms;
      for (int h = 0; h < H; ++h)
        terms.push_back({vars.regular_traffic[vars.hr(h, r)], 1.0});
      model.add_constraint(milp::make_label(12, {{"r", r}}), std::move(terms),
                           Sense::kEq, regular_gbps[r]);
    }
    // (13)-(14) serving indicator per (h, r); (15)-(16) hosting indicator.
    for (int h = 0; h < H; ++h) {
      for (int r = 0; r < R; ++r) {
        milp::gadget_activity_link(
            model, {{vars.regular_traffic[vars.hr(h, r)], 1.0}},
            vars.serves_rrh[vars.hr(h, r)], big_m,
            milp::make_label(13, {{"h", h}, {"r", r}}),
            milp::make_label(14, {{"h", h}, {"r", r}}));
      }
    }
    for (int h = 0; h < H; ++h) {
      std::vector<LinearTerm> sum;
      for (int r = 0; r < R; ++r)
        sum.push_back({vars.bbuvm_traffic[vars.hr(h, r)], 1.0});
      milp::gadget_activity_link(model, sum, vars.hosts_bbuvm[h], big_m,
                                 milp::make_label(15, {{"h", h}}),
                                 milp::make_label(16, {{"h", h}}));
    }
    // (17)-(20) CNVM serving/hosting indicators.
    for (int p = 0; p < H; ++p) {
      for (int h = 0; h < H; ++h) {
        milp::gadget_activity_link(
            model, {{vars.cnvm_traffic[vars.hh(p, h)], 1.0}},
            vars.cnvm_serves[vars.hh(p, h)], big_m,
            milp::make_label(17, {{"p", p}, {"h", h}}),
            milp::make_label(18, {{"p", p}, {"h", h}}));
      }
    }
    for (int p = 0; p < H; ++p) {
      std::vector<LinearTerm> sum;
      for (int h = 0; h < H; ++h)
        sum.push_back({vars.cnvm_traffic[vars.hh(p, h)], 1.0});
      milp::gadget_activity_link(model, sum, vars.hosts_cnvm[p], big_m,
                                 milp::make_label(19, {{"p", p}}),
                                 milp::make_label(20, {{"p", p}}));
    }
    // (21)-(23) co-hosting AND; (24) inter-VM traffic.
    for (int p = 0; p < H; ++p) {
      for (int q = 0; q < H; ++q) {
        if (p == q) continue;
        vars.cnvm_pair[vars.hh(p, q)] = milp::gadget_and(
            model, vars.hosts_cnvm[p], vars.hosts_cnvm[q], idx("psiAnd", {p, q}),
            milp::make_label(21, {{"p", p}, {"q", q}}),
            milp::make_label(22, {{"p", p}, {"q", q}}),
            milp::make_label(23, {{"p", p}, {"q", q}}));
      }
    }
    for (int p = 0; p < H; ++p) {
      for (int q = 0; q < H; ++q) {
        if (p == q) continue;
        model.add_constraint(milp::make_label(24, {{"p", p}, {"q", q}}),
                             {{vars.inter_cnvm[vars.hh(p, q)], 1.0},
                              {vars.cnvm_pair[vars.hh(p, q)], -inter.at(p, q)}},
                             Sense::kEq, 0.0);
      }
    }
    // (25)-(27) hosts-any-VM OR.
    for (int h = 0; h < H; ++h) {
      vars.hosts_any_vm[h] = milp::gadget_or(
          model, vars.hosts_bbuvm[h], vars.hosts_cnvm[h], idx("sigX", {h}),
          milp::make_label(25, {{"h", h}}), milp::make_label(26, {{"h", h}}),
          milp::make_label(27, {{"h", h}}));
    }
    // (28) video demand split between server and caches.
    for (int r = 0; r < R; ++r) {
      std::vector<LinearTerm> terms;
      for (int s = 0; s < N; ++s)
        terms.push_back({vars.server_traffic[vars.sr(s, r)], 1.0});
      for (int u = 0; u < H; ++u)
        terms.push_back({vars.cache_traffic[vars.hr(u, r)], 1.0});
      model.add_constraint(milp::make_label(28, {{"r", r}}), std::move(terms),
                           Sense::kEq, video_gbps[r]);
    }
    // (29) at most one cache serves an RRH.
    for (int r = 0; r < R; ++r) {
      std::vector<LinearTerm> terms;
      for (int u = 0; u < H; ++u)
        terms.push_back({vars.cache_serves[vars.hr(u, r)], 1.0});
      model.add_constraint(milp::make_label(29, {{"r", r}}), std::move(terms),
                           Sense::kLe, 1.0);
    }
    // (30)-(31) video server activity; (32) exactly one server.
    for (int s = 0; s < N; ++s) {
      std::vector<LinearTerm> sum;
      for (int r = 0; r < R; ++r)
        sum.push_back({vars.server_traffic[vars.sr(s, r)], 1.0});
      milp::gadget_activity_link(model, sum, vars.hosts_server[s], big_m,
                                 milp::make_label(30, {{"s", s}}),
                                 milp::make_label(31, {{"s", s}}));
    }
    {
      std::vector<LinearTerm> terms;
      for (int s = 0; s < N; ++s) terms.push_back({vars.hosts_server[s], 1.0});
      model.add_constraint("C32", std::move(terms), Sense::kEq, 1.0);
    }
    // (33)-(36) hit-ratio product; (37) hit ratio cap.
    for (int u = 0; u < H; ++u) {
      for (int r = 0; r < R; ++r) {
        vars.hit_gate[vars.hr(u, r)] = milp::gadget_product(
            model, vars.cache_serves[vars.hr(u, r)], vars.hit_ratio[u],
            idx("Theta", {u, r}), milp::make_label(33, {{"u", u}, {"r", r}}),
            milp::make_label(34, {{"u", u}, {"r", r}}),
            milp::make_label(35, {{"u", u}, {"r", r}}),
            milp::make_label(36, {{"u", u}, {"r", r}}));
      }
    }
    for (int u = 0; u < H; ++u) {
      model.add_constraint(milp::make_label(37, {{"u", u}}),
                           {{vars.hit_ratio[u], 1.0}}, Sense::kLe, 1.0);
    }
    // (38) cache traffic from the gated hit ratio.
    for (int u = 0; u < H; ++u) {
      for (int r = 0; r < R; ++r) {
        model.add_constraint(milp::make_label(38, {{"u", u}, {"r", r}}),
                             {{vars.cache_traffic[vars.hr(u, r)], 1.0},
                              {vars.hit_gate[vars.hr(u, r)], -video_gbps[r]}},
                             Sense::kEq, 0.0);
      }
    }
    // (39) piecewise cache sizing; (40) integer/fractional split.
    piecewise = build_piecewise_segments(scenario.zipf.exponent,
                                         scenario.zipf.catalog_size,
                                         scenario.zipf.segments);
    for (int u = 0; u < H; ++u) {
      for (std::size_t k = 0; k < piecewise.lines.size(); ++k) {
        model.add_constraint(
            milp::make_label(39, {{"u", u}, {"k", static_cast<int>(k)}}),
            {{vars.cache_size[u], 1.0},
             {vars.hit_ratio[u], -piecewise.lines[k].a}},
            Sense::kGe, piecewise.lines[k].b);
      }
    }
    for (int u = 0; u < H; ++u) {
      auto [zic, zfc] = milp::gadget_int_frac_split(
          model, vars.cache_size[u], idx("Zic", {u}), idx("Zfc", {u}),
          milp::make_label(40, {{"u", u}}));
      vars.cache_size_int[u] = zic;
      vars.cache_size_frac[u] = zfc;
    }
    // (41)-(44) cache traffic passes the serving BBUVM; (45)-(48) likewise
    // for the video server.
    for (int u = 0; u < H; ++u) {
      for (int h = 0; h < H; ++h) {
        for (int r = 0; r < R; ++r) {
          milp::gadget_gate(model, vars.cache_routed[vars.uhr(u, h, r)],
                            vars.cache_traffic[vars.hr(u, r)],
                            vars.serves_rrh[vars.hr(h, r)], big_m,
                            milp::make_label(41, {{"u", u}, {"h", h}, {"r", r}}),
                            milp::make_label(42, {{"u", u}, {"h", h}, {"r", r}}),
                            milp::make_label(43, {{"u", u}, {"h", h}, {"r", r}}),
                            milp::make_label(44, {{"u", u}, {"h", h}, {"r", r}}));
        }
      }
    }
    for (int s = 0; s < N; ++s) {
      for (int h = 0; h < H; ++h) {
        for (int r = 0; r < R; ++r) {
          milp::gadget_gate(model, vars.server_routed[vars.shr(s, h, r)],
                            vars.server_traffic[vars.sr(s, r)],
                            vars.serves_rrh[vars.hr(h, r)], big_m,
                            milp::make_label(45, {{"s", s}, {"h", h}, {"r", r}}),
                            milp::make_label(46, {{"s", s}, {"h", h}, {"r", r}}),
                            milp::make_label(47, {{"s", s}, {"h", h}, {"r", r}}),
                            milp::make_label(48, {{"s", s}, {"h", h}, {"r", r}}));
        }
      }
    }
    // (49) BBUVM download composition.
    for (int h = 0; h < H; ++h) {
      for (int r = 0; r < R; ++r) {
        std::vector<LinearTerm> terms{{vars.bbuvm_traffic[vars.hr(h, r)], 1.0},
                                      {vars.regular_traffic[vars.hr(h, r)], -1.0}};
        for (int u = 0; u < H; ++u)
          terms.push_back({vars.cache_routed[vars.uhr(u, h, r)], -1.0});
        for (int s = 0; s < N; ++s)
          terms.push_back({vars.server_routed[vars.shr(s, h, r)], -1.0});
        model.add_constraint(milp::make_label(49, {{"h", h}, {"r", r}}),
                             std::move(terms), Sense::kEq, 0.0);
      }
    }
    // (50)-(51) hosting-pair transport volumes.
    for (int p = 0; p < H; ++p) {
      for (int q = 0; q < H; ++q) {
        if (p == q) continue;
        std::vector<LinearTerm> terms{{vars.pair_traffic[vars.hh(p, q)], 1.0},
                                      {vars.inter_cnvm[vars.hh(p, q)], -1.0},
                                      {vars.cnvm_traffic[vars.hh(p, q)], -1.0}};
        const double alpha_ = scenario.power.backhaul_ratio;
        for (int r = 0; r < R; ++r)
          terms.push_back({vars.cache_routed[vars.uhr(p, q, r)], -alpha_});
        if (core_host(p)) {
          const int s = core_of_host(p);
          for (int r = 0; r < R; ++r)
            terms.push_back({vars.server_routed[vars.shr(s, q, r)], -alpha_});
          model.add_constraint(milp::make_label(51, {{"p", p}, {"q", q}}),
                               std::move(terms), Sense::kEq, 0.0);
        } else {
          model.add_constraint(milp::make_label(50, {{"p", p}, {"q", q}}),
                               std::move(terms), Sense::kEq, 0.0);
        }
      }
    }
    // (52) baseband workload; (53) normalized split; (54) hosting budget.
    const double wl_rate = scenario.radio.bbu_workload_full_gops() /
                           scenario.radio.cpri_rate_gbps;
    for (int h = 0; h < H; ++h) {
      std::vector<LinearTerm> terms{{vars.bbu_workload[h], 1.0}};
      for (int r = 0; r < R; ++r)
        terms.push_back({vars.bbuvm_traffic[vars.hr(h, r)], -wl_rate});
      model.add_constraint(milp::make_label(52, {{"h", h}}), std::move(terms),
                           Sense::kEq, 0.0);
    }
    const double psi_s = scenario.power.server_max_gops;
    for (int h = 0; h < H; ++h) {
      model.add_constraint(milp::make_label(53, {{"h", h}}),
                           {{vars.workload_int[h], 1.0},
                            {vars.workload_frac[h], 1.0},
                            {vars.bbu_workload[h], -1.0 / psi_s},
                            {vars.hosts_cnvm[h], -scenario.power.cnvm_gops / psi_s}},
                           Sense::kEq, 0.0);
    }
    for (int h = 0; h < H; ++h) {
      const double idle = scenario.power.server_idle_w;
      const double span = scenario.power.server_max_w - idle;
      model.add_constraint(
          milp::make_label(54, {{"h", h}}),
          {{vars.workload_int[h], idle},
           {vars.hosts_any_vm[h], idle},
           {vars.workload_frac[h], span}},
          Sense::kLe, scenario.power.host_budget_w(topo.hosting_node(h).kind));
    }
    // (55) flow conservation of BBUVM->RRH traffic at every node.
    for (int h = 0; h < H; ++h) {
      const NodeRef origin = topo.hosting_node(h);
      for (int r = 0; r < R; ++r) {
        const NodeRef sink{NodeKind::kRrh, r};
        for (int x = 0; x < topo.num_nodes(); ++x) {
          const NodeRef node = topo.node_of_uid(x);
          std::vector<LinearTerm> terms;
          for (NodeRef y : topo.neighbors(node)) {
            terms.push_back(
                {vars.rrh_link_flow[vars.hra(h, r, topo.arc_index(node, y))], 1.0});
            terms.push_back(
                {vars.rrh_link_flow[vars.hra(h, r, topo.arc_index(y, node))], -1.0});
          }
          double coef = 0.0;
          if (node == origin) coef -= 1.0;
          if (node == sink) coef += 1.0;
          if (coef != 0.0)
            terms.push_back({vars.bbuvm_traffic[vars.hr(h, r)], coef});
          model.add_constraint(
              milp::make_label(55, {{"h", h}, {"r", r}, {"x", x}}),
              std::move(terms), Sense::kEq, 0.0);
        }
      }
    }
    // (56) flow conservation of hosting-pair traffic over hosting nodes.
    for (int p = 0; p < H; ++p) {
      for (int q = 0; q < H; ++q) {
        if (p == q) continue;
        for (int x = 0; x < H; ++x) {
          const NodeRef node = topo.hosting_node(x);
          std::vector<LinearTerm> terms;
          for (NodeRef y : topo.neighbors(node)) {
            if (!Topology::is_hosting_kind(y.kind)) continue;
            terms.push_back(
                {vars.pair_link_flow[vars.pqa(p, q, topo.hosting_arc_index(node, y))],
                 1.0});
            terms.push_back(
                {vars.pair_link_flow[vars.pqa(p, q, topo.hosting_arc_index(y, node))],
                 -1.0});
          }
          double coef = 0.0;
          if (x == p) coef -= 1.0;
          if (x == q) coef += 1.0;
          if (coef != 0.0) terms.push_back({vars.pair_traffic[vars.hh(p, q)], coef});
          model.add_constraint(
              milp::make_label(56, {{"p", p}, {"q", q}, {"x", x}}),
              std::move(terms), Sense::kEq, 0.0);
        }
      }
    }
    // (57)-(58) download never flows up the GPON tree.
    for (int u = 0; u < topo.num_onu(); ++u) {
      const NodeRef onu{NodeKind::kOnu, u};
      std::vector<LinearTerm> terms;
      for (NodeRef y : topo.neighbors(onu)) {
        if (y.kind != NodeKind::kOlt) continue;
        const int arc = topo.arc_index(onu, y);
        const int harc = topo.hosting_arc_index(onu, y);
        for (int h = 0; h < H; ++h)
          for (int r = 0; r < R; ++r)
            terms.push_back({vars.rrh_link_flow[vars.hra(h, r, arc)], 1.0});
        for (int p = 0; p < H; ++p)
          for (int q = 0; q < H; ++q)
            if (p != q)
              terms.push_back({vars.pair_link_flow[vars.pqa(p, q, harc)], 1.0});
      }
      model.add_constraint(milp::make_label(57, {{"i", u}}), std::move(terms),
                           Sense::kEq, 0.0);
    }
    for (int l = 0; l < topo.num_olt(); ++l) {
      const NodeRef olt{NodeKind::kOlt, l};
      std::vector<LinearTerm> terms;
      for (NodeRef y : topo.neighbors(olt)) {
        if (y.kind != NodeKind::kCore) continue;
        const int arc = topo.arc_index(olt, y);
        const int harc = topo.hosting_arc_index(olt, y);
        for (int h = 0; h < H; ++h)
          for (int r = 0; r < R; ++r)
            terms.push_back({vars.rrh_link_flow[vars.hra(h, r, arc)], 1.0});
        for (int p = 0; p < H; ++p)
          for (int q = 0; q < H; ++q)
            if (p != q)
              terms.push_back({vars.pair_link_flow[vars.pqa(p, q, harc)], 1.0});
      }
      model.add_constraint(milp::make_label(58, {{"i", l}}), std::move(terms),
                           Sense::kEq, 0.0);
    }
    // (59) wavelength capacity of core-layer virtual links.
    const double B = scenario.power.wavelength_gbps;
    for (int i = 0; i < N; ++i) {
      for (int j = 0; j < N; ++j) {
        if (i == j) continue;
        std::vector<LinearTerm> terms;
        const NodeRef ci{NodeKind::kCore, i}, cj{NodeKind::kCore, j};
        const int arc = topo.arc_index(ci, cj);
        if (arc >= 0) {
          const int harc = topo.hosting_arc_index(ci, cj);
          for (int p = 0; p < H; ++p)
            for (int q = 0; q < H; ++q)
              if (p != q)
                terms.push_back({vars.pair_link_flow[vars.pqa(p, q, harc)], 1.0});
          for (int h = 0; h < H; ++h)
            for (int r = 0; r < R; ++r)
              terms.push_back({vars.rrh_link_flow[vars.hra(h, r, arc)], 1.0});
        }
        terms.push_back({vars.wavelengths_virtual[vars.nn(i, j)], -B});
        model.add_constraint(milp::make_label(59, {{"i", i}, {"j", j}}),
                             std::move(terms), Sense::kLe, 0.0);
      }
    }
    // (60) lightpath routing conservation.
    for (int i = 0; i < N; ++i) {
      for (int j = 0; j < N; ++j) {
        if (i == j) continue;
        for (int m = 0; m < N; ++m) {
          std::vector<LinearTerm> terms;
          for (int n : topo.core_neighbors(m)) {
            terms.push_back(
                {vars.wavelengths_routed[vars.nna(i, j, topo.core_arc_index(m, n))],
                 1.0});
            terms.push_back(
                {vars.wavelengths_routed[vars.nna(i, j, topo.core_arc_index(n, m))],
                 -1.0});
          }
          double coef = 0.0;
          if (m == i) coef -= 1.0;
          if (m == j) coef += 1.0;
          if (coef != 0.0)
            terms.push_back({vars.wavelengths_virtual[vars.nn(i, j)], coef});
          model.add_constraint(
              milp::make_label(60, {{"i", i}, {"j", j}, {"m", m}}),
              std::move(terms), Sense::kEq, 0.0);
        }
      }
    }
    // (61)-(62) fiber capacity and physical wavelength count.
    for (int a = 0; a < AC; ++a) {
      const Arc& arc = topo.core_arcs()[a];
      std::vector<LinearTerm> terms;
      for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
          if (i != j) terms.push_back({vars.wavelengths_routed[vars.nna(i, j, a)], 1.0});
      std::vector<LinearTerm> cap = terms;
      cap.push_back(
          {vars.fibers[a], -static_cast<double>(scenario.power.wavelengths_per_fiber)});
      model.add_constraint(
          milp::make_label(61, {{"m", arc.from.index}, {"n", arc.to.index}}),
          std::move(cap), Sense::kLe, 0.0);
      std::vector<LinearTerm> count{{vars.wavelengths_physical[a], 1.0}};
      for (LinearTerm& t : terms) t.coef = -1.0;
      count.insert(count.end(), terms.begin(), terms.end());
      model.add_constraint(
          milp::make_label(62, {{"m", arc.from.index}, {"n", arc.to.index}}),
          std::move(count), Sense::kEq, 0.0);
    }
    // (63) aggregation ports cover the traffic towards attached OLTs.
    for (int i = 0; i < N; ++i) {
      const NodeRef core{NodeKind::kCore, i};
      std::vector<LinearTerm> terms{{vars.agg_ports[i], B}};
      for (NodeRef y : topo.neighbors(core)) {
        if (y.kind != NodeKind::kOlt) continue;
        const int arc = topo.arc_index(core, y);
        const int harc = topo.hosting_arc_index(core, y);
        for (int p = 0; p < H; ++p)
          for (int q = 0; q < H; ++q)
            if (p != q)
              terms.push_back({vars.pair_link_flow[vars.pqa(p, q, harc)], -1.0});
        for (int h = 0; h < H; ++h)
          for (int r = 0; r < R; ++r)
            terms.push_back({vars.rrh_link_flow[vars.hra(h, r, arc)], -1.0});
      }
      model.add_constraint(milp::make_label(63, {{"i", i}}), std::move(terms),
                           Sense::kGe, 0.0);
    }
    // (64) definitional: per-host video feed (declared but unconstrained in
    // the printed set).
    for (int s = 0; s < N; ++s) {
      for (int h = 0; h < H; ++h) {
        std::vector<LinearTerm> terms{{vars.server_to_host[vars.sh(s, h)], 1.0}};
        for (int r = 0; r < R; ++r)
          terms.push_back({vars.server_routed[vars.shr(s, h, r)], -1.0});
        model.add_constraint(milp::make_label(64, {{"s", s}, {"h", h}}),
                             std::move(terms), Sense::kEq, 0.0);
      }
    }
  }

  void emit_objective() {
    const PowerParams& pw = scenario.power;
    // Router ports and transponders.
    for (int m = 0; m < N; ++m)
      model.add_objective(vars.agg_ports[m], pw.router_port_w);
    for (int a = 0; a < AC; ++a) {
      model.add_objective(vars.wavelengths_physical[a],
                          pw.router_port_w + pw.transponder_w);
      const CoreLink& link = topo.core_arc_link(a);
      model.add_objective(vars.fibers[a],
                          pw.edfa_w * edfa_count(link.distance_km, link.span_km));
      model.add_objective(vars.wavelengths_physical[a],
                          pw.regenerator_w * link.regenerators);
    }
    // ONU and OLT load-proportional terms over outgoing arcs; idle parts are
    // constants.
    const double onu_slope = pw.onu_max_w / pw.onu_capacity_gbps;
    const double olt_slope = (pw.olt_max_w - pw.olt_idle_w) / pw.olt_capacity_gbps;
    for (int a = 0; a < A; ++a) {
      const Arc& arc = topo.arcs()[a];
      double slope = 0.0;
      if (arc.from.kind == NodeKind::kOnu) slope = onu_slope;
      if (arc.from.kind == NodeKind::kOlt) slope = olt_slope;
      if (slope == 0.0) continue;
      for (int h = 0; h < H; ++h)
        for (int r = 0; r < R; ++r)
          model.add_objective(vars.rrh_link_flow[vars.hra(h, r, a)], slope);
    }
    for (int a = 0; a < AH; ++a) {
      const Arc& arc = topo.hosting_arcs()[a];
      double slope = 0.0;
      if (arc.from.kind == NodeKind::kOnu) slope = onu_slope;
      if (arc.from.kind == NodeKind::kOlt) slope = olt_slope;
      if (slope == 0.0) continue;
      for (int p = 0; p < H; ++p)
        for (int q = 0; q < H; ++q)
          if (p != q)
            model.add_objective(vars.pair_link_flow[vars.pqa(p, q, a)], slope);
    }
    model.add_objective_constant(topo.num_onu() * pw.rrh_w +
                                 topo.num_olt() * pw.olt_idle_w);
    // Servers.
    for (int h = 0; h < H; ++h) {
      model.add_objective(vars.workload_int[h], pw.server_idle_w);
      model.add_objective(vars.hosts_any_vm[h], pw.server_idle_w);
      model.add_objective(vars.workload_frac[h], pw.server_max_w - pw.server_idle_w);
    }
    // Video streaming energy.
    for (int s = 0; s < N; ++s)
      for (int h = 0; h < H; ++h)
        for (int r = 0; r < R; ++r)
          model.add_objective(vars.server_routed[vars.shr(s, h, r)],
                              pw.server_energy_j_per_gb * pw.backhaul_ratio);
    // Cache storage power.
    for (int u = 0; u < H; ++u)
      model.add_objective(vars.cache_size_int[u],
                          pw.cache_w_per_gb() * pw.cache_capacity_gb / 100.0);
  }

  BuildReport make_report() const {
    BuildReport report;
    report.approach = approach;
    report.hour = demand.hour;
    report.seed = demand.seed;
    report.num_variables = model.num_variables();
    report.num_constraints = model.num_constraints();
    for (const milp::Variable& var : model.variables()) {
      if (var.kind == VarKind::kBinary) ++report.num_binary;
      if (var.kind == VarKind::kInteger) ++report.num_integer;
    }
    report.big_m = big_m;
    report.zipf_exponent = scenario.zipf.exponent;
    report.zipf_catalog = scenario.zipf.catalog_size;
    report.piecewise = piecewise;
    std::map<std::string, int> by_symbol;
    for (const milp::Variable& var : model.variables()) {
      std::size_t cut = var.name.find('_');
      by_symbol[var.name.substr(0, cut)]++;
    }
    report.variable_counts.assign(by_symbol.begin(), by_symbol.end());
    std::map<int, int> by_number;
    for (const milp::LinearConstraint& row : model.constraints()) {
      by_number[milp::parse_label(row.label).number]++;
    }
    report.constraint_counts.assign(by_number.begin(), by_number.end());
    return report;
  }
};

}  // namespace

Formulation build_formulation(const Scenario& scenario, const Topology& topology,
                              Approach approach, const DemandSet& demand,
                              const CnvmInterTraffic& inter_traffic) {
  Builder builder(scenario, topology, approach, demand, inter_traffic);
  builder.model.name = std::string("eevc_") + to_cstring(approach) + "_h" +
                       std::to_string(demand.hour);
  builder.declare_variables();
  builder.emit_constraints();
  builder.emit_objective();
  builder.model.validate();
  Formulation out{std::move(builder.model), std::move(builder.vars),
                  builder.make_report()};
  return out;
}

namespace {

void copy_fields(const std::vector<int>& ids, const std::vector<double>& from,
                 std::vector<double>& to) {
  for (std::size_t k = 0; k < ids.size(); ++k) {
    if (ids[k] >= 0) to[k] = from[ids[k]];
  }
}

void store_fields(const std::vector<int>& ids, const std::vector<double>& from,
                  std::vector<double>& to) {
  for (std::size_t k = 0; k < ids.size(); ++k) {
    if (ids[k] >= 0) to[ids[k]] = from[k];
  }
}

}  // namespace

std::vector<double> encode_solution(const Solution& solution,
                                    const VariableMap& vars) {
  int max_id = 0;
  auto track = [&](const std::vector<int>& ids) {
    for (int id : ids) max_id = std::max(max_id, id + 1);
  };
  track(vars.cnvm_traffic); track(vars.bbuvm_traffic); track(vars.regular_traffic);
  track(vars.inter_cnvm); track(vars.cache_traffic); track(vars.cache_routed);
  track(vars.server_traffic); track(vars.server_routed); track(vars.server_to_host);
  track(vars.pair_traffic); track(vars.hosts_bbuvm); track(vars.serves_rrh);
  track(vars.cnvm_serves); track(vars.hosts_cnvm); track(vars.cnvm_pair);
  track(vars.hosts_any_vm); track(vars.cache_serves); track(vars.hosts_server);
  track(vars.hit_ratio); track(vars.hit_gate); track(vars.cache_size);
  track(vars.cache_size_int); track(vars.cache_size_frac); track(vars.bbu_workload);
  track(vars.workload_int); track(vars.workload_frac); track(vars.rrh_link_flow);
  track(vars.pair_link_flow); track(vars.wavelengths_virtual);
  track(vars.wavelengths_routed); track(vars.wavelengths_physical);
  track(vars.fibers); track(vars.agg_ports);

  std::vector<double> assignment(max_id, 0.0);
  store_fields(vars.cnvm_traffic, solution.cnvm_traffic, assignment);
  store_fields(vars.bbuvm_traffic, solution.bbuvm_traffic, assignment);
  store_fields(vars.regular_traffic, solution.regular_traffic, assignment);
  store_fields(vars.inter_cnvm, solution.inter_cnvm, assignment);
  store_fields(vars.cache_traffic, solution.cache_traffic, assignment);
  store_fields(vars.cache_routed, solution.cache_routed, assignment);
  store_fields(vars.server_traffic, solution.server_traffic, assignment);
  store_fields(vars.server_routed, solution.server_routed, assignment);
  store_fields(vars.server_to_host, solution.server_to_host, assignment);
  store_fields(vars.pair_traffic, solution.pair_traffic, assignment);
  store_fields(vars.hosts_bbuvm, solution.hosts_bbuvm, assignment);
  store_fields(vars.serves_rrh, solution.serves_rrh, assignment);
  store_fields(vars.cnvm_serves, solution.cnvm_serves, assignment);
  store_fields(vars.hosts_cnvm, solution.hosts_cnvm, assignment);
  store_fields(vars.cnvm_pair, solution.cnvm_pair, assignment);
  store_fields(vars.hosts_any_vm, solution.hosts_any_vm, assignment);
  store_fields(vars.cache_serves, solution.cache_serves, assignment);
  store_fields(vars.hosts_server, solution.hosts_server, assignment);
  store_fields(vars.hit_ratio, solution.hit_ratio, assignment);
  store_fields(vars.hit_gate, solution.hit_gate, assignment);
  store_fields(vars.cache_size, solution.cache_size, assignment);
  store_fields(vars.cache_size_int, solution.cache_size_int, assignment);
  store_fields(vars.cache_size_frac, solution.cache_size_frac, assignment);
  store_fields(vars.bbu_workload, solution.bbu_workload, assignment);
  store_fields(vars.workload_int, solution.workload_int, assignment);
  store_fields(vars.workload_frac, solution.workload_frac, assignment);
  store_fields(vars.rrh_link_flow, solution.rrh_link_flow, assignment);
  store_fields(vars.pair_link_flow, solution.pair_link_flow, assignment);
  store_fields(vars.wavelengths_virtual, solution.wavelengths_virtual, assignment);
  store_fields(vars.wavelengths_routed, solution.wavelengths_routed, assignment);
  store_fields(vars.wavelengths_physical, solution.wavelengths_physical, assignment);
  store_fields(vars.fibers, solution.fibers, assignment);
  store_fields(vars.agg_ports, solution.agg_ports, assignment);
  return assignment;
}

Solution decode_solution(const std::vector<double>& assignment,
                         const VariableMap& vars, const Topology& topology) {
  Solution solution(topology);
  if (solution.num_hosting != vars.num_hosting || solution.num_rrh != vars.num_rrh ||
      solution.num_core != vars.num_core || solution.num_arcs != vars.num_arcs) {
    throw std::invalid_argument("decode_solution: variable map does not match topology");
  }
  copy_fields(vars.cnvm_traffic, assignment, solution.cnvm_traffic);
  copy_fields(vars.bbuvm_traffic, assignment, solution.bbuvm_traffic);
  copy_fields(vars.regular_traffic, assignment, solution.regular_traffic);
  copy_fields(vars.inter_cnvm, assignment, solution.inter_cnvm);
  copy_fields(vars.cache_traffic, assignment, solution.cache_traffic);
  copy_fields(vars.cache_routed, assignment, solution.cache_routed);
  copy_fields(vars.server_traffic, assignment, solution.server_traffic);
  copy_fields(vars.server_routed, assignment, solution.server_routed);
  copy_fields(vars.server_to_host, assignment, solution.server_to_host);
  copy_fields(vars.pair_traffic, assignment, solution.pair_traffic);
  copy_fields(vars.hosts_bbuvm, assignment, solution.hosts_bbuvm);
  copy_fields(vars.serves_rrh, assignment, solution.serves_rrh);
  copy_fields(vars.cnvm_serves, assignment, solution.cnvm_serves);
  copy_fields(vars.hosts_cnvm, assignment, solution.hosts_cnvm);
  copy_fields(vars.cnvm_pair, assignment, solution.cnvm_pair);
  copy_fields(vars.hosts_any_vm, assignment, solution.hosts_any_vm);
  copy_fields(vars.cache_serves, assignment, solution.cache_serves);
  copy_fields(vars.hosts_server, assignment, solution.hosts_server);
  copy_fields(vars.hit_ratio, assignment, solution.hit_ratio);
  copy_fields(vars.hit_gate, assignment, solution.hit_gate);
  copy_fields(vars.cache_size, assignment, solution.cache_size);
  copy_fields(vars.cache_size_int, assignment, solution.cache_size_int);
  copy_fields(vars.cache_size_frac, assignment, solution.cache_size_frac);
  copy_fields(vars.bbu_workload, assignment, solution.bbu_workload);
  copy_fields(vars.workload_int, assignment, solution.workload_int);
  copy_fields(vars.workload_frac, assignment, solution.workload_frac);
  copy_fields(vars.rrh_link_flow, assignment, solution.rrh_link_flow);
  copy_fields(vars.pair_link_flow, assignment, solution.pair_link_flow);
  copy_fields(vars.wavelengths_virtual, assignment, solution.wavelengths_virtual);
  copy_fields(vars.wavelengths_routed, assignment, solution.wavelengths_routed);
  copy_fields(vars.wavelengths_physical, assignment, solution.wavelengths_physical);
  copy_fields(vars.fibers, assignment, solution.fibers);
  copy_fields(vars.agg_ports, assignment, solution.agg_ports);
  return solution;
}

std::vector<ConstraintViolation> check_solution(const milp::Model& model,
                                                const std::vector<double>& assignment,
                                                double tol) {
  if (assignment.size() != static_cast<std::size_t>(model.num_variables())) {
    throw std::invalid_argument("check_solution: assignment does not cover all variables");
  }
  std::vector<ConstraintViolation> out;
  for (const milp::Variable& var : model.variables()) {
    const double value = assignment[var.id];
    if (value < var.lower - tol) {
      out.push_back({"bound[" + var.name + "]", value - var.lower});
    } else if (value > var.upper + tol) {
      out.push_back({"bound[" + var.name + "]", value - var.upper});
    }
    if (var.kind != VarKind::kContinuous) {
      const double nearest = std::round(value);
      if (std::fabs(value - nearest) > tol) {
        out.push_back({"integral[" + var.name + "]", value - nearest});
      }
    }
  }
  for (const milp::LinearConstraint& row : model.constraints()) {
    double activity = 0.0;
    for (const LinearTerm& term : row.terms) {
      activity += term.coef * assignment[term.var];
    }
    const double resid = activity - row.rhs;
    bool violated = false;
    switch (row.sense) {
      case Sense::kLe: violated = resid > tol; break;
      case Sense::kGe: violated = resid < -tol; break;
      case Sense::kEq: violated = std::fabs(resid) > tol; break;
    }
    if (violated) out.push_back({row.label, resid});
  }
  return out;
}

std::string BuildReport::to_text() const {
  std::ostringstream out;
  out << "build report\n";
  out << "approach: " << to_cstring(approach) << "\n";
  out << "hour: " << hour << "\nseed: " << seed << "\n";
  out << "variables: " << num_variables << " (binary " << num_binary
      << ", integer " << num_integer << ")\n";
  out << "constraints: " << num_constraints << "\n";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", big_m);
  out << "big_m: " << buf << "\n";
  out << "zipf: exponent " << zipf_exponent << ", catalog " << zipf_catalog
      << ", segments " << piecewise.lines.size() << "\n";
  out << "piecewise lines (slope intercept):\n";
  for (const auto& line : piecewise.lines) {
    std::snprintf(buf, sizeof(buf), "  %.9g %.9g", line.a, line.b);
    out << buf << "\n";
  }
  std::snprintf(buf, sizeof(buf), "%.9g", piecewise.max_under_error_percent);
  out << "piecewise max under-approximation (percent of capacity): " << buf << "\n";
  out << "variables by symbol:\n";
  for (const auto& [symbol, count] : variable_counts) {
    out << "  " << symbol << ": " << count << "\n";
  }
  out << "constraints by family:\n";
  for (const auto& [number, count] : constraint_counts) {
    out << "  C" << number << ": " << count << "\n";
  }
  return out.str();
}

}  // namespace eevc
