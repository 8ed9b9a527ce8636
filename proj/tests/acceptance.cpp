#include <hhdu/report.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace hhdu;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

struct Run {
  int status;
  std::string out;
};

Run run(const std::string& cmd) {
  Run r{-1, ""};
  FILE* p = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf;
  std::size_t k;
  while ((k = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), k);
  const int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Failures among the named entries of one group, over all instances.
struct Tally {
  std::size_t seen = 0, failed = 0;
  std::string first;
  void add(const InstanceReport& r, const Check& c) {
    ++seen;
    if (c.pass) return;
    if (failed++ == 0) first = r.inst.label() + " " + c.name + (c.detail.empty() ? "" : " (" + c.detail + ")");
  }
  bool ok() const { return seen > 0 && failed == 0; }
  std::string str() const {
    return std::to_string(failed) + "/" + std::to_string(seen) + " failing" + (failed ? "; first: " + first : "");
  }
};

Tally tally(const std::vector<InstanceReport>& reps, bool printed, const std::string& group) {
  Tally t;
  for (const auto& r : reps)
    for (const auto& c : printed ? r.printed : r.checks)
      if (c.group == group) t.add(r, c);
  return t;
}

Verdict dimensions(const std::vector<InstanceReport>& reps) {
  const auto t = tally(reps, false, "dims");
  const std::vector<std::pair<Instance, HHDims>> spots{{Instance(2, 3, 0, 1), {1, 1, 7}},
                                                        {Instance(3, 5, 0, 1), {1, 2, 9}},
                                                        {Instance(1, 1, 0, 1), {1, 6, 9}},
                                                        {Instance(1, 2, 1, -1), {1, 3, 8}}};
  std::string bad;
  for (const auto& [inst, d] : spots) {
    const auto got = hh_dims_computed(*assemble_hom_complex(inst));
    if (got != d || hh_dims_closed_form(inst) != d) bad += " " + inst.label() + "->" + got.str();
  }
  return {t.ok() && bad.empty(), std::to_string(reps.size()) + " instances, " + t.str() + (bad.empty() ? "; spot values match" : "; spot mismatch" + bad)};
}

Verdict l1_rank(const std::vector<InstanceReport>& reps) {
  const auto t = tally(reps, false, "rank");
  std::size_t circ = 0, circ_bad = 0;
  for (std::size_t nm = 1; nm <= 12; ++nm)
    for (std::size_t m = 0; m <= nm; ++m) {
      const QPoly f = QPoly::monomial(1, m) + QPoly{1};
      ++circ;
      if (circulant_rank(nm, f) != rank(circulant(circulant_row(nm, f)))) ++circ_bad;
    }
  return {t.ok() && circ_bad == 0, "direct L1 rank: " + t.str() + "; circulant gcd formula vs dense rank: " + std::to_string(circ_bad) + "/" +
                                       std::to_string(circ) + " disagree"};
}

Verdict basis_tables(const std::vector<InstanceReport>& reps) {
  const auto printed = tally(reps, true, "basis"), corrected = tally(reps, false, "basis");
  return {printed.ok(), "as printed: " + printed.str() + "; corrected tables: " + corrected.str()};
}

Verdict chain_maps(const std::vector<InstanceReport>& reps) {
  const auto t = tally(reps, false, "chain");
  std::size_t neg = 0;
  for (const auto& r : reps)
    for (const auto& c : r.checks)
      if (c.group == "chain" && c.detail.rfind("lifts -h^", 0) == 0) ++neg;
  return {t.ok(), "diagram identities and generic lifter: " + t.str() + "; sigma^2 lifts -h^2 in " + std::to_string(neg) +
                      " Case I instances (sign absorbed into the lifted class)"};
}

Verdict cup_products(const std::vector<InstanceReport>& reps) {
  Tally printed, comm;
  for (const auto& r : reps)
    for (const auto& c : r.printed)
      if (c.group == "cup") (c.name == "graded commutativity" ? comm : printed).add(r, c);
  const auto corrected = tally(reps, false, "cup");
  return {printed.ok() && comm.ok(), "printed scalars: " + printed.str() + "; graded commutativity: " + comm.str() +
                                         "; corrected scalars: " + corrected.str()};
}

Verdict ring_presentations(const std::vector<InstanceReport>& reps) {
  const auto printed = tally(reps, true, "ring"), corrected = tally(reps, false, "ring");
  return {printed.ok(), "rows as printed: " + printed.str() + "; corrected rows: " + corrected.str()};
}

Verdict invariants(const std::vector<InstanceReport>& reps) {
  const auto t = tally(reps, false, "invariants");
  return {t.ok(), t.str()};
}

Verdict structure(const std::vector<InstanceReport>& reps) {
  const auto t = tally(reps, false, "structure");
  std::size_t conf = 0, conf_bad = 0;
  for (const auto& r : reps) {
    if (r.inst.n() + r.inst.m() > 8) continue;
    ++conf;
    if (!check_rewriting_confluence(Rewriter(r.inst.alpha(), r.inst.beta()), 8, true)) ++conf_bad;
  }
  return {t.ok() && conf > 0 && conf_bad == 0,
          "d2d1, Ker d1, Hom dims, x^i y: " + t.str() + "; xxyy confluence: " + std::to_string(conf_bad) + "/" + std::to_string(conf) + " failing"};
}

Verdict cli(const std::string& exe, const std::string& golden) {
  std::ifstream man(golden + "/manifest.txt");
  std::string line, bad;
  std::size_t files = 0;
  while (std::getline(man, line)) {
    if (line.empty()) continue;
    const auto sp = line.find(' ');
    const std::string name = line.substr(0, sp), args = line.substr(sp + 1);
    ++files;
    const auto a = run(exe + " " + args), b = run(exe + " " + args);
    if (a.status != 0 || a.out != b.out || a.out != slurp(golden + "/" + name)) bad += " " + name;
    if (name.ends_with(".json") && a.status == 0 && json::parse(a.out).dump(2) + "\n" != a.out) bad += " " + name + "(round-trip)";
  }
  const int clean = run(exe + " verify --max-sum 6").status;
  const int fault = run(exe + " verify --max-sum 6 --fault-lambda 2").status;
  const int beta0 = run(exe + " compute --n 1 --m 1 --alpha 0 --beta 0").status;
  const bool codes = clean == 0 && fault == 1 && beta0 == 2;
  return {files > 0 && bad.empty() && codes, std::to_string(files) + " golden files" + (bad.empty() ? " byte-identical" : ", mismatched:" + bad) +
                                                  "; exit codes clean/fault/beta=0: " + std::to_string(clean) + "/" + std::to_string(fault) + "/" +
                                                  std::to_string(beta0)};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: acceptance <hhdu executable> <golden dir>\n";
    return 2;
  }
  const auto reps = verify_sweep(12);
  const std::vector<std::pair<std::string, Verdict>> rows{
      {"HH dimensions", dimensions(reps)},        {"rank of L1", l1_rank(reps)},
      {"basis tables", basis_tables(reps)},       {"chain maps", chain_maps(reps)},
      {"cup products", cup_products(reps)},       {"ring presentations", ring_presentations(reps)},
      {"derived invariants", invariants(reps)},   {"structural properties", structure(reps)},
      {"cli", cli(argv[1], argv[2])},
  };
  int failed = 0;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& [name, v] = rows[k];
    std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << k + 1 << " (" << name << "): " << v.detail << "\n";
    failed += !v.pass;
  }
  return failed ? 1 : 0;
}
