// Runs the ten acceptance criteria on the built-in data and prints one line each.
#include <cstdio>
#include <functional>
#include <string>

#include "poisson_forge/suites.hpp"

using namespace poisson_forge;

namespace {

struct Tally {
  std::size_t total = 0, passed = 0;
  bool all() const { return total > 0 && total == passed; }
};

Tally tally(const Report& r, const std::function<bool(const std::string&)>& select) {
  Tally t;
  for (const auto& i : r.items) {
    if (!select(i.label)) continue;
    ++t.total;
    t.passed += i.passed;
  }
  return t;
}

bool starts(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }
bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

std::string frac(const Tally& t) { return std::to_string(t.passed) + "/" + std::to_string(t.total); }

int failures = 0;

void line(int n, const std::string& name, bool ok, const std::string& detail) {
  std::printf("criterion %2d %-12s %s  %s\n", n, name.c_str(), ok ? "PASS" : "FAIL", detail.c_str());
  if (!ok) ++failures;
}

}  // namespace

int main() {
  {
    Report r = run_suite("jacobi");
    Tally triples = tally(r, [](const std::string& l) { return starts(l, "triple"); });
    Tally mutations = tally(r, [](const std::string& l) { return starts(l, "mutation"); });
    line(1, "jacobi", triples.all() && triples.total == 20 && mutations.all() && mutations.total >= 16,
         frac(triples) + " triples, " + frac(mutations) + " mutations detected");
  }
  {
    Report r = run_suite("casimir");
    Tally t = tally(r, [](const std::string&) { return true; });
    line(2, "casimir", t.all() && t.total == 12, frac(t) + " identities");
  }
  {
    Report r = run_suite("pdda");
    Tally eta = tally(r, [](const std::string& l) { return starts(l, "eta_"); });
    Tally formulas = tally(r, [](const std::string& l) { return starts(l, "formula X"); });
    Tally finals = tally(r, [](const std::string& l) { return starts(l, "formula T"); });
    Tally pairs = tally(r, [](const std::string& l) { return starts(l, "{T"); });
    Tally series = tally(r, [](const std::string& l) { return starts(l, "series"); });
    line(3, "pdda",
         eta.all() && eta.total == 5 && formulas.all() && formulas.total == 10 && finals.all() && finals.total == 6 &&
             pairs.all() && pairs.total == 15 && series.all(),
         frac(eta) + " eta, " + frac(formulas) + " formulas, " + frac(finals) + " final generators, " + frac(pairs) +
             " torus pairs, " + frac(series) + " series terms");
  }
  {
    Report r = run_suite("pullback");
    Tally o1 = tally(r, [](const std::string& l) { return starts(l, "Omega1 level") && !contains(l, "product"); });
    Tally o2 = tally(r, [](const std::string& l) { return starts(l, "Omega2 level") && !contains(l, "product"); });
    Tally ends = tally(r, [](const std::string& l) { return contains(l, " ends at degree "); });
    line(4, "pullback", r.passed() && o1.total == 4 && o2.total == 3 && ends.all() && ends.total == 2,
         frac(o1) + " Omega1 lines, " + frac(o2) + " Omega2 lines, " + frac(ends) + " end points");
  }
  {
    Report r = run_suite("pl2");
    Tally rel = tally(r, [](const std::string& l) { return starts(l, "normal_form(Omega"); });
    Tally ids = tally(r, [](const std::string& l) { return starts(l, "pl2."); });
    Tally jac = tally(r, [](const std::string& l) { return starts(l, "quotient triple"); });
    line(5, "quotient",
         r.passed() && rel.total == 2 && ids.total == 4 && jac.total == 20,
         frac(rel) + " relations, " + frac(ids) + " identities, " + frac(jac) + " triples mod the ideal");
  }
  {
    Report r = run_suite("localization");
    Tally t = tally(r, [](const std::string&) { return true; });
    line(6, "localization", t.all() && t.total == 12, frac(t) + " identities");
  }
  {
    Report r = run_suite("torus");
    Tally lattice = tally(r, [](const std::string& l) { return starts(l, "central lattice"); });
    Tally trips = tally(r, [](const std::string& l) { return contains(l, " witness") && !contains(l, "independence"); });
    Tally indep = tally(r, [](const std::string& l) { return contains(l, "independence"); });
    line(7, "torus",
         lattice.all() && trips.all() && trips.total == 2 * kTorusRoundtrips && indep.all() &&
             indep.total == kTorusRoundtrips,
         frac(lattice) + " lattice, " + frac(trips) + " roundtrips, " + frac(indep) + " witness checks");
  }
  {
    Report r = run_suite("derivations");
    Tally theta = tally(r, [](const std::string& l) { return starts(l, "theta D"); });
    Tally tilde = tally(r, [](const std::string& l) { return starts(l, "theta_tilde D"); });
    Tally fail = tally(r, [](const std::string& l) { return contains(l, "fails with residue 2*beta"); });
    Tally outer = tally(r, [](const std::string& l) { return starts(l, "theta not inner"); });
    Tally inner = tally(r, [](const std::string& l) { return starts(l, "ham_x3 recovered"); });
    line(8, "derivations",
         theta.all() && theta.total == 17 && tilde.all() && tilde.total == 17 && fail.all() && outer.all() &&
             inner.all(),
         frac(theta) + " theta, " + frac(tilde) + " theta_tilde, " + frac(fail) + " residue 2*beta, " + frac(outer) +
             " outer at d=4, " + frac(inner) + " inner at d=2");
  }
  {
    Report r = run_suite("centre");
    Tally t = tally(r, [](const std::string&) { return true; });
    line(9, "centre", t.all() && t.total == 4, frac(t) + " spans");
  }
  {
    Report r = run_suite("grading");
    Tally table = tally(r, [](const std::string& l) { return l == "bracket table graded"; });
    Tally omega = tally(r, [](const std::string& l) { return starts(l, "Omega"); });
    line(10, "grading", table.all() && omega.all() && omega.total == 2, frac(table) + " table, " + frac(omega) + " Casimir weights");
  }
  std::printf("%s\n", failures ? "ACCEPTANCE FAILED" : "ACCEPTANCE PASSED");
  return failures ? 1 : 0;
}
