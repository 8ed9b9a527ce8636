#pragma once

#include <hhdu/invariants.hpp>
#include <hhdu/yoneda.hpp>

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

namespace hhdu {

using json = nlohmann::ordered_json;

struct Check {
  std::string group;
  std::string name;
  bool pass = false;
  std::string detail;
};

inline const std::vector<std::string>& check_groups() {
  static const std::vector<std::string> g{"dims", "structure", "rank", "basis", "chain", "cup", "ring", "invariants"};
  return g;
}

struct InstanceReport {
  Instance inst;
  CaseClassification cls;
  Stratum stratum;
  HHDims computed, closed;
  std::vector<Check> checks;   // computation against the corrected tables
  std::vector<Check> printed;  // computation against the tables exactly as printed
  bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
  }
};

namespace detail {

// x^i y = b lambda_{i-1} y x^i + lambda_i x y x^{i-1} at every start vertex, n = 1, 1 <= i <= m+1.
inline Check xiy_check(const Beilinson& B) {
  const Instance& inst = B.instance();
  Check c{"structure", "x^i y expansion", true, ""};
  for (int i = 1; i <= inst.m() + 1; ++i) {
    const std::string xi(static_cast<std::size_t>(i), 'x');
    for (int p = 1; p + i + inst.m() <= inst.ell(); ++p) {
      NormalElement want = B.path(p, "y" + xi).scaled(inst.beta() * inst.lambda(i - 1));
      want.add(B.path(p, "xy" + std::string(static_cast<std::size_t>(i - 1), 'x')), inst.lambda(i));
      if (B.path(p, xi + "y") != want) {
        c.pass = false;
        c.detail = "fails at i=" + std::to_string(i) + ", vertex " + std::to_string(p);
        return c;
      }
    }
  }
  return c;
}

inline bool expected_unipotent(const Instance& inst) { return inst.n() == 1 && inst.m() <= 2; }

}  // namespace detail

inline InstanceReport verify_instance(const Instance& inst, const std::set<std::string>& only = {}) {
  auto want = [&](const std::string& g) { return only.empty() || only.count(g) > 0; };
  const auto hc = assemble_hom_complex(inst);
  const Beilinson& B = hc->algebra();
  const int n = inst.n(), m = inst.m();
  const auto cls = classify(inst);
  const bool I = cls.cond1 == Cond1::CaseI;
  InstanceReport r{inst, cls, stratum_of(inst), hh_dims_computed(*hc), hh_dims_closed_form(inst), {}, {}};
  auto add = [&](std::vector<Check>& to, const std::string& g, const std::string& name, bool pass, std::string detail = "") {
    to.push_back({g, name, pass, std::move(detail)});
  };
  // an exception inside a group (e.g. a representative that is not a cocycle) fails that group
  auto guarded = [&](const std::string& g, const std::function<void()>& body) {
    if (!want(g)) return;
    try {
      body();
    } catch (const std::exception& e) {
      add(r.checks, g, "evaluation", false, e.what());
    }
  };

  guarded("dims", [&] {
    add(r.checks, "dims", "computed = closed form", r.computed == r.closed, "computed " + r.computed.str() + ", closed form " + r.closed.str());
  });

  guarded("structure", [&] {
    add(r.checks, "structure", "d2 d1 = 0", (hc->d2_matrix() * hc->d1_matrix()).is_zero());
    add(r.checks, "structure", "Ker d1 = constants", kernel_d1_is_constants(*hc));
    const auto e = expected_tau_dims(inst);
    const bool dims_ok = hc->dim(0) == e[0] && hc->dim(1) == e[1] && hc->dim(2) == e[2];
    add(r.checks, "structure", "Hom space dimensions", dims_ok,
        std::to_string(hc->dim(0)) + "," + std::to_string(hc->dim(1)) + "," + std::to_string(hc->dim(2)));
    add(r.checks, "structure", "d2 = block form from L1, L2", build_M2_closed_form(inst) == hc->d2_matrix());
    if (n == 1) r.checks.push_back(detail::xiy_check(B));
  });

  guarded("rank", [&] {
    if (!(m > n && n > 1)) return;
    std::vector<std::size_t> rows(static_cast<std::size_t>(2 * (n + m))), cols(static_cast<std::size_t>(3 * (n + m)));
    std::iota(rows.begin(), rows.end(), 0);
    std::iota(cols.begin(), cols.end(), 0);
    const std::size_t direct = rank(hc->d2_matrix().submatrix(rows, cols));
    const std::size_t expect = static_cast<std::size_t>(n + m - (I ? 1 : 0));
    add(r.checks, "rank", "rank L1 = n+m-[Case I]", direct == expect, "rank " + std::to_string(direct));
    add(r.checks, "rank", "rank L1 via circulant", rank_L1_via_circulant(inst) == direct);
  });

  guarded("basis", [&] {
    const auto b1 = verify_hh1_basis(*hc, hh1_basis(*hc));
    const auto b2 = verify_hh2_basis(*hc, hh2_basis(*hc));
    add(r.checks, "basis", "HH^1 representatives", b1.ok, b1.detail);
    add(r.checks, "basis", "HH^2 representatives", b2.ok, b2.detail);
    if (n == 1) {
      const auto v = check_image_V(*hc);
      add(r.checks, "basis", "V in Im d2", v.ok, v.detail);
    }
    if (m > n && n > 1 && I) {
      const auto v = check_image_basis_L1_caseI(*hc);
      add(r.checks, "basis", "basis of Im d2 on the L1 block", v.ok, v.detail);
    }
    try {
      const auto p1 = verify_hh1_basis(*hc, hh1_basis(*hc, TableReading::Literal));
      add(r.printed, "basis", "HH^1 table as printed", p1.ok, p1.detail);
    } catch (const std::invalid_argument& e) {
      add(r.printed, "basis", "HH^1 table as printed", false, e.what());
    }
    const auto p2 = verify_hh2_basis(*hc, hh2_basis(*hc, TableReading::Literal));
    add(r.printed, "basis", "HH^2 table as printed", p2.ok, p2.detail);
  });

  guarded("chain", [&] {
    for (const auto& q : chain_map_labels()) {
      if (!admissible(inst, q)) continue;
      const auto c = check_chain_map(*hc, q);
      add(r.checks, "chain", "sigma^" + q, c.ok(), (c.sign == -1 ? "lifts -h^" + q + "; " : std::string()) + c.detail);
      add(r.printed, "chain", "sigma^" + q + " lifts h^" + q, c.sign == 1 && c.commutes, c.detail);
    }
  });

  guarded("cup", [&] {
    for (const auto& id : check_product_identities(*hc)) add(r.checks, "cup", id.name, id.pass, id.observed);
    for (const auto& id : check_product_identities(*hc, TableReading::Literal)) add(r.printed, "cup", id.name, id.pass, id.observed);
    const auto gc = check_graded_commutativity(*hc);
    add(r.checks, "cup", "graded commutativity", gc.ok, gc.detail);
    add(r.printed, "cup", "graded commutativity", gc.ok, gc.detail);
    const auto un = check_unit(*hc);
    add(r.checks, "cup", "unit", un.ok, un.detail);
    const auto pe = check_perturbation(*hc);
    add(r.checks, "cup", "coboundary perturbation", pe.ok, pe.detail);
  });

  guarded("ring", [&] {
    const auto t = product_table(*hc);
    for (auto reading : {TableReading::Corrected, TableReading::Literal}) {
      auto& to = reading == TableReading::Corrected ? r.checks : r.printed;
      const auto row = ring_table_row(inst, reading);
      if (!row) {
        add(to, "ring", "ring table row", false, "no row applies");
        continue;
      }
      const auto mt = match_ring_row(t, *row, static_cast<std::size_t>(r.computed.h1));
      std::string d = row->printed;
      if (!row->note.empty()) d += " [" + row->note + "]";
      if (!mt.detail.empty()) d += "; " + mt.detail;
      add(to, "ring", "(a,b,I) against the table", mt.ok(), d);
    }
  });

  guarded("invariants", [&] {
    const auto d = derived_invariants(inst, r.computed);
    add(r.checks, "invariants", "Happel trace", d.trace_identity_ok,
        "chi " + std::to_string(d.chi_hh) + ", -tr Phi " + d.minus_trace_coxeter.get_str());
    add(r.checks, "invariants", "unipotency tests agree", d.unipotent == d.unipotent_by_char_poly);
    add(r.checks, "invariants", "unipotency verdict", d.unipotent == detail::expected_unipotent(inst),
        d.unipotent ? "unipotent" : "not unipotent");
    if (m > n && n > 1) {
      const long chi = n == 2 ? m + 4 : n + m;
      add(r.checks, "invariants", "chi value", d.chi_hh == chi && d.chi_hh != 2 * (n + m), "chi " + std::to_string(d.chi_hh));
    }
  });
  return r;
}

struct SweepPoint {
  int n, m;
  Stratum stratum;
  std::optional<std::pair<Rational, Rational>> params;
  std::string note;
};

// Every sample of every stratum for n+m <= max_sum; unreachable strata appear with no params.
inline std::vector<SweepPoint> sweep_points(int max_sum) {
  std::vector<SweepPoint> out;
  for (auto [n, m] : sweep_weights(max_sum))
    for (const auto& s : stratum_samples(n, m)) {
      if (s.params.empty()) out.push_back({n, m, s.stratum, std::nullopt, s.note});
      for (const auto& p : s.params) out.push_back({n, m, s.stratum, p, s.note});
    }
  return out;
}

inline unsigned thread_cap() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* e = std::getenv("HH_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(e, &end, 10);
    if (end != e && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return hw;
}

inline std::vector<InstanceReport> verify_sweep(int max_sum, const std::set<std::string>& only = {},
                                                std::optional<int> lambda_fault = std::nullopt, unsigned threads = thread_cap()) {
  std::vector<Instance> insts;
  for (const auto& p : sweep_points(max_sum)) {
    if (!p.params) continue;
    Instance inst(p.n, p.m, p.params->first, p.params->second);
    insts.push_back(lambda_fault ? inst.with_lambda_fault(*lambda_fault) : inst);
  }
  std::vector<std::optional<InstanceReport>> slots(insts.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < insts.size();) slots[k] = verify_instance(insts[k], only);
  };
  std::vector<std::thread> pool;
  const unsigned t = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(insts.size())));
  for (unsigned i = 0; i + 1 < t; ++i) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  std::vector<InstanceReport> out;
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

// ---- serialization ----

inline json to_json(const Check& c) { return json{{"name", c.group + ": " + c.name}, {"pass", c.pass}, {"detail", c.detail}}; }

inline json instance_json(const Instance& inst) {
  return json{{"n", inst.n()}, {"m", inst.m()}, {"alpha", inst.alpha().get_str()}, {"beta", inst.beta().get_str()}};
}

inline json dims_json(const HHDims& d) { return json{{"h0", d.h0}, {"h1", d.h1}, {"h2", d.h2}}; }

inline json to_json(const InstanceReport& r) {
  json j;
  j["instance"] = instance_json(r.inst);
  j["classification"] = json{{"cond1", to_string(r.cls.cond1)}, {"cond2", to_string(r.cls.cond2)}, {"stratum", to_string(r.stratum)}};
  j["dims"] = dims_json(r.computed);
  json cf = dims_json(r.closed);
  cf["agree"] = r.computed == r.closed;
  j["closed_form"] = cf;
  j["checks"] = json::array();
  for (const auto& c : r.checks) j["checks"].push_back(to_json(c));
  j["as_printed"] = json::array();
  for (const auto& c : r.printed) j["as_printed"].push_back(to_json(c));
  return j;
}

}  // namespace hhdu
