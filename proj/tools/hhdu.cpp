#include <hhdu/report.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <tuple>

using namespace hhdu;

namespace {

struct Options {
  int n = 1, m = 1;
  std::string alpha = "0", beta = "1";
  bool reduce = false, canonicalize = false, printed = false;
  std::string format = "text";
  std::string output;
  int max_sum = 12;
  std::vector<std::string> only;
  std::optional<int> fault;
  std::string kind = "summary";
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Resolved {
  Instance inst;
  int k = 1;
  bool swapped = false;
};

Resolved resolve(const Options& o) {
  Rational a, b;
  try {
    a = parse_rational(o.alpha);
    b = parse_rational(o.beta);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (b == 0) throw UsageError("beta must be nonzero");
  if (o.n < 1 || o.m < 1) throw UsageError("weights must be positive");
  const auto red = reduce_weights(o.n, o.m);
  if (red.k != 1 && !o.reduce) throw UsageError("weights must be coprime (pass --reduce)");
  if (red.swapped && !o.canonicalize) throw UsageError("weights must satisfy m >= n (pass --canonicalize)");
  auto norm = normalize(o.n, o.m, a, b);
  Resolved r{norm.inst, norm.k, norm.swapped};
  if (o.fault) r.inst = r.inst.with_lambda_fault(*o.fault);
  return r;
}

void emit(const Options& o, const std::string& text) {
  if (o.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.output, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + o.output);
  f << text;
  if (!f) throw std::runtime_error("cannot write " + o.output);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::string tex_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '_' || c == '&' || c == '#' || c == '%') out += '\\';
    out += c;
  }
  return out;
}

json resolved_json(const Options& o, const Resolved& r) {
  json j;
  j["instance"] = json{{"n", o.n}, {"m", o.m}, {"alpha", parse_rational(o.alpha).get_str()}, {"beta", parse_rational(o.beta).get_str()}};
  if (r.k != 1 || r.swapped)
    j["reduced"] = json{{"n", r.inst.n()}, {"m", r.inst.m()}, {"alpha", r.inst.alpha().get_str()},
                        {"beta", r.inst.beta().get_str()}, {"k", r.k}, {"swapped", r.swapped}};
  const auto c = classify(r.inst);
  j["classification"] = json{{"cond1", to_string(c.cond1)}, {"cond2", to_string(c.cond2)}};
  return j;
}

std::string text_checks(const std::vector<Check>& cs) {
  std::ostringstream s;
  for (const auto& c : cs) {
    s << (c.pass ? "PASS " : "FAIL ") << c.group << ": " << c.name;
    if (!c.detail.empty()) s << " (" << c.detail << ")";
    s << "\n";
  }
  return s.str();
}

HHDims scaled(HHDims d, int k) {
  d.h0 *= k, d.h1 *= k, d.h2 *= k;
  return d;
}

int cmd_compute(const Options& o) {
  const auto r = resolve(o);
  const auto hc = assemble_hom_complex(r.inst);
  const HHDims comp = scaled(hh_dims_computed(*hc), r.k), closed = scaled(hh_dims_closed_form(r.inst), r.k);
  const Check agree{"dims", "computed = closed form", comp == closed, ""};
  if (o.format == "json") {
    json j = resolved_json(o, r);
    j["dims"] = dims_json(comp);
    json cf = dims_json(closed);
    cf["agree"] = agree.pass;
    j["closed_form"] = cf;
    j["checks"] = json::array({to_json(agree)});
    emit(o, dump(j));
  } else if (o.format == "csv") {
    std::ostringstream s;
    s << "instance,k,case1,case2,h0,h1,h2,agree\n";
    const auto c = classify(r.inst);
    s << csv_quote(r.inst.label()) << "," << r.k << "," << to_string(c.cond1) << "," << to_string(c.cond2) << "," << comp.h0 << ","
      << comp.h1 << "," << comp.h2 << "," << (agree.pass ? "true" : "false") << "\n";
    emit(o, s.str());
  } else {
    std::ostringstream s;
    const auto c = classify(r.inst);
    s << "instance " << r.inst.label();
    if (r.k != 1) s << " (k=" << r.k << ")";
    if (r.swapped) s << " (x and y interchanged)";
    s << "\nCase " << to_string(c.cond1) << ", Case " << to_string(c.cond2) << "\n";
    s << "HH dims " << comp.str() << ", closed form " << closed.str() << "\n" << text_checks({agree});
    emit(o, s.str());
  }
  return agree.pass ? 0 : 1;
}

int cmd_basis(const Options& o) {
  const auto r = resolve(o);
  if (r.k != 1) throw UsageError("basis needs coprime weights");
  const auto hc = assemble_hom_complex(r.inst);
  const auto reading = o.printed ? TableReading::Literal : TableReading::Corrected;
  std::vector<Check> checks;
  json j = resolved_json(o, r);
  std::ostringstream s;
  s << "instance " << r.inst.label() << ", " << regime_label(r.inst) << "\n";
  auto section = [&](int deg, const std::function<CocycleBasis()>& make) {
    const std::string key = "hh" + std::to_string(deg);
    try {
      const auto B = make();
      const auto v = deg == 1 ? verify_hh1_basis(*hc, B) : verify_hh2_basis(*hc, B);
      checks.push_back({"basis", "HH^" + std::to_string(deg) + " representatives", v.ok, v.detail});
      json arr = json::array();
      s << "HH^" << deg << ":\n";
      for (const auto& c : B.classes) {
        arr.push_back(c.label);
        s << "  " << c.label << "\n";
      }
      for (const auto& note : B.notes) s << "  note: " << note << "\n";
      j[key] = json{{"classes", arr}, {"notes", B.notes}};
    } catch (const std::invalid_argument& e) {
      checks.push_back({"basis", "HH^" + std::to_string(deg) + " representatives", false, e.what()});
      j[key] = json{{"error", e.what()}};
    }
  };
  section(1, [&] { return hh1_basis(*hc, reading); });
  section(2, [&] { return hh2_basis(*hc, reading); });
  j["checks"] = json::array();
  for (const auto& c : checks) j["checks"].push_back(to_json(c));
  emit(o, o.format == "json" ? dump(j) : s.str() + text_checks(checks));
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; }) ? 0 : 1;
}

int cmd_ring(const Options& o) {
  const auto r = resolve(o);
  if (r.k != 1) throw UsageError("ring needs coprime weights");
  const auto hc = assemble_hom_complex(r.inst);
  const auto reading = o.printed ? TableReading::Literal : TableReading::Corrected;
  const auto t = product_table(*hc);
  std::vector<Check> checks;
  for (const auto& id : check_product_identities(*hc, reading)) checks.push_back({"cup", id.name, id.pass, id.observed});
  const auto gc = check_graded_commutativity(*hc);
  checks.push_back({"cup", "graded commutativity", gc.ok, gc.detail});
  const auto row = ring_table_row(r.inst, reading);
  json j = resolved_json(o, r);
  json rels = json::array();
  for (const auto& v : t.relations) rels.push_back(relation_string(t.pairs, v));
  j["generators"] = t.generators;
  j["a"] = t.a;
  j["b"] = t.b;
  j["relations"] = rels;
  std::ostringstream s;
  s << "instance " << r.inst.label() << "\nLambda(" << t.a << "," << t.b << ")/I\n";
  for (std::size_t i = 0; i < t.generators.size(); ++i) s << "  s" << i + 1 << " = " << t.generators[i] << "\n";
  s << "  I = (";
  for (std::size_t i = 0; i < rels.size(); ++i) s << (i ? ", " : "") << rels[i].get<std::string>();
  s << ")\n";
  if (row) {
    const auto mt = match_ring_row(t, *row, t.a);
    std::string d = row->printed + (row->note.empty() ? "" : " [" + row->note + "]") + (mt.detail.empty() ? "" : "; " + mt.detail);
    checks.push_back({"ring", "(a,b,I) against the table", mt.ok(), d});
    j["table_row"] = row->printed;
  } else {
    checks.push_back({"ring", "(a,b,I) against the table", false, "no row applies"});
  }
  j["checks"] = json::array();
  for (const auto& c : checks) j["checks"].push_back(to_json(c));
  emit(o, o.format == "json" ? dump(j) : s.str() + text_checks(checks));
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; }) ? 0 : 1;
}

int cmd_invariants(const Options& o) {
  const auto r = resolve(o);
  if (r.k != 1) throw UsageError("invariants needs coprime weights");
  const auto d = derived_invariants(r.inst);
  std::vector<Check> checks{{"invariants", "Happel trace", d.trace_identity_ok, ""},
                            {"invariants", "unipotency tests agree", d.unipotent == d.unipotent_by_char_poly, ""}};
  json j = resolved_json(o, r);
  j["chi_hh"] = d.chi_hh;
  j["minus_trace_coxeter"] = d.minus_trace_coxeter.get_str();
  j["unipotent"] = d.unipotent;
  j["surface_obstructed"] = d.surface_obstructed;
  j["serre_char_poly"] = char_poly(d.serre_action).str();
  j["checks"] = json::array();
  for (const auto& c : checks) j["checks"].push_back(to_json(c));
  std::ostringstream s;
  s << "instance " << r.inst.label() << "\nchi_HH " << d.chi_hh << "\n-tr Phi " << d.minus_trace_coxeter.get_str() << "\nunipotent "
    << (d.unipotent ? "yes" : "no") << "\nsurface obstructed " << (d.surface_obstructed ? "yes" : "no") << "\n"
    << text_checks(checks);
  emit(o, o.format == "json" ? dump(j) : s.str());
  return d.trace_identity_ok && d.unipotent == d.unipotent_by_char_poly ? 0 : 1;
}

int cmd_verify(const Options& o) {
  std::set<std::string> only(o.only.begin(), o.only.end());
  for (const auto& g : only)
    if (std::find(check_groups().begin(), check_groups().end(), g) == check_groups().end()) throw UsageError("unknown check group " + g);
  const auto reports = verify_sweep(o.max_sum, only, o.fault);
  std::size_t failed = 0;
  for (const auto& r : reports)
    for (const auto& c : r.checks) failed += c.pass ? 0 : 1;
  if (o.format == "json") {
    json j;
    j["max_sum"] = o.max_sum;
    j["instances"] = json::array();
    for (const auto& r : reports) j["instances"].push_back(to_json(r));
    j["unreachable"] = json::array();
    for (const auto& p : sweep_points(o.max_sum))
      if (!p.params) j["unreachable"].push_back(json{{"n", p.n}, {"m", p.m}, {"stratum", to_string(p.stratum)}, {"note", p.note}});
    j["failed_checks"] = failed;
    emit(o, dump(j));
  } else {
    std::ostringstream s;
    for (const auto& r : reports) {
      std::size_t bad = 0;
      for (const auto& c : r.checks) bad += c.pass ? 0 : 1;
      s << (bad ? "FAIL " : "PASS ") << r.inst.label() << " " << to_string(r.stratum) << " " << r.computed.str() << " ("
        << r.checks.size() - bad << "/" << r.checks.size() << ")\n";
      for (const auto& c : r.checks)
        if (!c.pass) s << "    " << c.group << ": " << c.name << (c.detail.empty() ? "" : " (" + c.detail + ")") << "\n";
    }
    for (const auto& p : sweep_points(o.max_sum))
      if (!p.params) s << "untested (" << p.n << "," << p.m << ") " << to_string(p.stratum) << ": " << p.note << "\n";
    s << reports.size() << " instances, " << failed << " failed checks\n";
    emit(o, s.str());
  }
  return failed == 0 ? 0 : 1;
}

// One representative per (n, m, stratum): the first sample.
std::vector<Instance> table_instances(int max_sum) {
  std::vector<Instance> out;
  std::set<std::tuple<int, int, Stratum>> seen;
  for (const auto& p : sweep_points(max_sum)) {
    if (!p.params || !seen.insert({p.n, p.m, p.stratum}).second) continue;
    out.emplace_back(p.n, p.m, p.params->first, p.params->second);
  }
  return out;
}

int cmd_table(const Options& o) {
  const auto insts = table_instances(o.max_sum);
  std::ostringstream s;
  if (o.kind == "summary") {
    json arr = json::array();
    if (o.format == "csv") s << "instance,case1,case2,h0,h1,h2,chi,unipotent\n";
    if (o.format == "tex") s << "\\begin{tabular}{lllrrrrl}\n$(n,m,\\alpha,\\beta)$ & Cond.~1 & Cond.~2 & $h^0$ & $h^1$ & $h^2$ & $\\chi$ & unipotent \\\\\n\\hline\n";
    for (const auto& inst : insts) {
      const auto dims = hh_dims_computed(*assemble_hom_complex(inst));
      const auto d = derived_invariants(inst, dims);
      const auto c = classify(inst);
      const std::string c2 = inst.n() == 1 ? to_string(c.cond2) : std::string("-");
      if (o.format == "csv")
        s << csv_quote(inst.label()) << "," << to_string(c.cond1) << "," << c2 << "," << dims.h0 << "," << dims.h1 << "," << dims.h2
          << "," << d.chi_hh << "," << (d.unipotent ? "true" : "false") << "\n";
      else if (o.format == "tex")
        s << "$" << inst.label() << "$ & " << to_string(c.cond1) << " & " << c2 << " & " << dims.h0 << " & " << dims.h1 << " & " << dims.h2
          << " & " << d.chi_hh << " & " << (d.unipotent ? "yes" : "no") << " \\\\\n";
      else
        arr.push_back(json{{"instance", instance_json(inst)}, {"case1", to_string(c.cond1)}, {"case2", c2}, {"dims", dims_json(dims)},
                           {"chi", d.chi_hh}, {"unipotent", d.unipotent}});
    }
    if (o.format == "tex") s << "\\end{tabular}\n";
    if (o.format == "json") s << dump(arr);
  } else if (o.kind == "ring") {
    json arr = json::array();
    if (o.format == "csv") s << "instance,regime,a,b,relations,table_row,match\n";
    if (o.format == "tex") s << "\\begin{tabular}{llll}\ninstance & regime & $(a,b)$ & $I$ \\\\\n\\hline\n";
    for (const auto& inst : insts) {
      const auto hc = assemble_hom_complex(inst);
      const auto t = product_table(*hc);
      std::string rel;
      for (std::size_t i = 0; i < t.relations.size(); ++i) rel += (i ? "; " : "") + relation_string(t.pairs, t.relations[i]);
      if (rel.empty()) rel = "0";
      const auto row = ring_table_row(inst, TableReading::Literal);
      const bool match = row && match_ring_row(t, *row, t.a).ok();
      const std::string rowname = row ? row->printed : "";
      if (o.format == "csv")
        s << csv_quote(inst.label()) << "," << csv_quote(regime_label(inst)) << "," << t.a << "," << t.b << "," << csv_quote(rel) << ","
          << csv_quote(rowname) << "," << (match ? "true" : "false") << "\n";
      else if (o.format == "tex")
        s << "$" << inst.label() << "$ & " << regime_label(inst) << " & $(" << t.a << "," << t.b << ")$ & $" << rel << "$ \\\\\n";
      else
        arr.push_back(json{{"instance", instance_json(inst)}, {"regime", regime_label(inst)}, {"a", t.a}, {"b", t.b},
                           {"relations", rel}, {"table_row", rowname}, {"matches_printed", match}});
    }
    if (o.format == "tex") s << "\\end{tabular}\n";
    if (o.format == "json") s << dump(arr);
  } else if (o.kind == "basis") {
    json arr = json::array();
    if (o.format == "csv") s << "instance,regime,degree,class\n";
    if (o.format == "tex") s << "\\begin{tabular}{lll}\nregime & $HH^1$ & $HH^2$ \\\\\n\\hline\n";
    for (const auto& inst : insts) {
      const auto hc = assemble_hom_complex(inst);
      const auto b1 = hh1_basis(*hc), b2 = hh2_basis(*hc);
      std::vector<std::string> l1, l2;
      for (const auto& c : b1.classes) l1.push_back(c.label);
      for (const auto& c : b2.classes) l2.push_back(c.label);
      if (o.format == "csv") {
        for (const auto& l : l1) s << csv_quote(inst.label()) << "," << csv_quote(regime_label(inst)) << ",1," << csv_quote(l) << "\n";
        for (const auto& l : l2) s << csv_quote(inst.label()) << "," << csv_quote(regime_label(inst)) << ",2," << csv_quote(l) << "\n";
      } else if (o.format == "tex") {
        auto join = [](const std::vector<std::string>& v) {
          std::string r;
          for (std::size_t i = 0; i < v.size(); ++i) r += (i ? ", " : "") + tex_escape(v[i]);
          return r;
        };
        s << regime_label(inst) << " $" << inst.label() << "$ & " << join(l1) << " & " << join(l2) << " \\\\\n";
      } else {
        arr.push_back(json{{"instance", instance_json(inst)}, {"regime", regime_label(inst)}, {"hh1", l1}, {"hh2", l2}});
      }
    }
    if (o.format == "tex") s << "\\end{tabular}\n";
    if (o.format == "json") s << dump(arr);
  } else {
    throw UsageError("unknown table kind " + o.kind);
  }
  emit(o, s.str());
  return 0;
}

void instance_flags(CLI::App* sub, Options& o) {
  sub->add_option("--n", o.n, "degree of x");
  sub->add_option("--m", o.m, "degree of y");
  sub->add_option("--alpha", o.alpha, "alpha as p or p/q");
  sub->add_option("--beta", o.beta, "beta as p or p/q");
  sub->add_flag("--reduce", o.reduce, "divide out gcd(n, m)");
  sub->add_flag("--canonicalize", o.canonicalize, "interchange x and y when n > m");
}

void common_flags(CLI::App* sub, Options& o, std::vector<std::string> formats) {
  sub->add_option("--format", o.format, "output format")->check(CLI::IsMember(formats));
  sub->add_option("--output", o.output, "write to a file instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hhdu: exact HH^0, HH^1, HH^2 and cup products for the Beilinson algebra of A(alpha, beta)"};
  app.require_subcommand(1);
  Options o;
  int fault = -2;
  auto* compute = app.add_subcommand("compute", "HH dimensions, computed and closed form");
  auto* basis = app.add_subcommand("basis", "representatives of HH^1 and HH^2");
  auto* ring = app.add_subcommand("ring", "cup products and the ring presentation");
  auto* inv = app.add_subcommand("invariants", "Cartan/Coxeter invariants and unipotency");
  auto* verify = app.add_subcommand("verify", "run all cross-checks over a sweep");
  auto* table = app.add_subcommand("table", "render tables from computation");
  for (auto* s : {compute, basis, ring, inv}) {
    instance_flags(s, o);
    common_flags(s, o, {"text", "json", "csv"});
    s->add_option("--fault-lambda", fault, "flip the sign of lambda_r (mutation testing)");
  }
  for (auto* s : {basis, ring}) s->add_flag("--printed", o.printed, "use the tables exactly as printed");
  common_flags(verify, o, {"text", "json"});
  verify->add_option("--max-sum", o.max_sum, "largest n+m")->check(CLI::Range(2, 40));
  verify->add_option("--only", o.only, "restrict to check groups")->delimiter(',');
  verify->add_option("--fault-lambda", fault, "flip the sign of lambda_r (mutation testing)");
  common_flags(table, o, {"text", "json", "csv", "tex"});
  table->add_option("--max-sum", o.max_sum, "largest n+m")->check(CLI::Range(2, 40));
  table->add_option("--kind", o.kind, "summary, ring or basis")->check(CLI::IsMember({"summary", "ring", "basis"}));

  CLI11_PARSE(app, argc, argv);
  if (fault != -2) o.fault = fault;
  try {
    if (compute->parsed()) return cmd_compute(o);
    if (basis->parsed()) return cmd_basis(o);
    if (ring->parsed()) return cmd_ring(o);
    if (inv->parsed()) return cmd_invariants(o);
    if (verify->parsed()) return cmd_verify(o);
    if (table->parsed()) {
      if (o.format == "text") o.format = "csv";
      return cmd_table(o);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
