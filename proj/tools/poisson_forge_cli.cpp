#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <iostream>
#include <memory>
#include <string>

#include "poisson_forge/poisson_forge.h"

namespace {

using json = nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct CString {
  char* p = nullptr;
  ~CString() { pf_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

struct AlgebraHandle {
  pf_algebra* p = nullptr;
  ~AlgebraHandle() { pf_algebra_free(p); }
};

struct Failure {
  pf_status status;
};

void check(pf_status s) {
  if (s != PF_OK) throw Failure{s};
}

void load_algebra(const std::string& path, AlgebraHandle& a) {
  check(path.empty() ? pf_algebra_builtin(&a.p) : pf_algebra_load(path.c_str(), &a.p));
}

void emit(bool as_json, const std::string& text, const json& doc) {
  if (as_json) {
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << text;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of Poisson algebra identities"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));

  auto* verify = app.add_subcommand("verify", "Run a built-in verification suite");
  std::string suite;
  std::uint64_t seed = 20240601;
  bool timing = false;
  verify->add_option("suite", suite, "all, jacobi, casimir, pdda, pullback, pl2, localization, torus, derivations, "
                                     "centre or grading")
      ->required();
  verify->add_option("--seed", seed, "Seed for randomized suites");
  verify->add_flag("--timing", timing, "Include elapsed times");

  auto* bracket = app.add_subcommand("bracket", "Poisson bracket of two expressions");
  std::string f, g, algebra_path;
  bracket->add_option("f", f)->required();
  bracket->add_option("g", g)->required();
  bracket->add_option("--algebra", algebra_path, "Algebra definition file")->check(CLI::ExistingFile);

  auto* nf = app.add_subcommand("nf", "Normal form in the quotient");
  std::string expr, alpha = "symbolic", beta = "symbolic";
  nf->add_option("expr", expr)->required();
  nf->add_option("--alpha", alpha, "symbolic, a, or a rational");
  nf->add_option("--beta", beta, "symbolic, b, or a rational");

  auto* decompose = app.add_subcommand("decompose", "Split a torus derivation into ham_gamma + D_theta");
  std::string spec_path, witness = "smallest";
  decompose->add_option("--file", spec_path, "Derivation file")->required();
  decompose->add_option("--witness", witness)->check(CLI::IsMember({"smallest", "largest"}));

  auto* eta = app.add_subcommand("eta", "The eta values of the Ore data");
  eta->add_option("--algebra", algebra_path, "Algebra definition file")->check(CLI::ExistingFile);

  auto* chain = app.add_subcommand("chain", "Dump every chain element");
  chain->add_option("--algebra", algebra_path, "Algebra definition file")->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }
  const bool as_json = format == "json";

  try {
    if (*verify) {
      pf_report* raw = nullptr;
      check(pf_run_verify(suite.c_str(), seed, &raw));
      std::unique_ptr<pf_report, void (*)(pf_report*)> report(raw, pf_report_free);
      CString out;
      check(as_json ? pf_report_json(raw, timing, &out.p) : pf_report_text(raw, timing, &out.p));
      std::cout << out.str();
      return pf_report_passed(raw) ? kExitPass : kExitFail;
    }
    if (*bracket) {
      AlgebraHandle a;
      load_algebra(algebra_path, a);
      CString out;
      check(pf_algebra_bracket(a.p, f.c_str(), g.c_str(), &out.p));
      emit(as_json, out.str() + "\n", json{{"bracket", out.str()}});
      return kExitPass;
    }
    if (*nf) {
      CString out;
      check(pf_quotient_normal_form(expr.c_str(), alpha.c_str(), beta.c_str(), &out.p));
      emit(as_json, out.str() + "\n", json{{"normal_form", out.str()}});
      return kExitPass;
    }
    if (*decompose) {
      CString out;
      pf_status s = pf_decompose_file(spec_path.c_str(), witness == "largest" ? PF_WITNESS_LARGEST : PF_WITNESS_SMALLEST,
                                      &out.p);
      if (s == PF_ERR_INCONSISTENT) {
        emit(as_json, std::string("not a Poisson derivation: ") + pf_last_error() + "\n",
             json{{"error", pf_last_error()}});
        return kExitFail;
      }
      check(s);
      json doc = json::parse(out.str());
      std::string text = "gamma = " + doc["gamma"].get<std::string>() + "\n";
      for (std::size_t i = 0; i < doc["theta"].size(); ++i) {
        text += "theta(e" + std::to_string(i + 1) + ") = " + doc["theta"][i].get<std::string>() + "\n";
      }
      emit(as_json, text, doc);
      return kExitPass;
    }
    if (*eta) {
      AlgebraHandle a;
      load_algebra(algebra_path, a);
      std::size_t n = 0;
      check(pf_algebra_generator_count(a.p, &n));
      std::string text;
      json doc = json::object();
      for (std::size_t i = 2; i <= n; ++i) {
        CString out;
        pf_status s = pf_algebra_eta(a.p, i, &out.p);
        std::string value = s == PF_ERR_UNDEFINED ? "undefined" : (check(s), out.str());
        text += "eta_" + std::to_string(i) + ": " + value + "\n";
        doc[std::to_string(i)] = value;
      }
      emit(as_json, text, json{{"eta", doc}});
      return kExitPass;
    }
    if (*chain) {
      AlgebraHandle a;
      load_algebra(algebra_path, a);
      CString out;
      check(pf_algebra_chain_dump(a.p, &out.p));
      json lines = json::array();
      std::string dump = out.str();
      for (std::size_t start = 0; start < dump.size();) {
        std::size_t end = dump.find('\n', start);
        std::string line = dump.substr(start, end - start);
        std::size_t eq = line.find(" = ");
        lines.push_back({{"symbol", line.substr(0, eq)}, {"expr", line.substr(eq + 3)}});
        start = end == std::string::npos ? dump.size() : end + 1;
      }
      emit(as_json, dump, json{{"chain", lines}});
      return kExitPass;
    }
  } catch (const Failure& e) {
    std::cerr << "error: " << pf_last_error() << "\n";
    return e.status == PF_ERR_INTERNAL ? kExitFail : kExitUsage;
  }
  return kExitUsage;
}
