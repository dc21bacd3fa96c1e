// Command-line front end: construct the built-in group families, analyze
// arbitrary group files, and verify the expected invariants end to end.
//
// Exit codes: 0 success, 1 verification/operation failure, 2 usage or parse
// errors.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dlab/common.hpp"
#include "dlab/constructions.hpp"
#include "dlab/dgraph.hpp"
#include "dlab/gf.hpp"
#include "dlab/perm.hpp"
#include "dlab/solver.hpp"
#include "json.hpp"

namespace {

struct PrimePower {
  std::uint32_t p = 0;
  std::uint32_t k = 0;
};

PrimePower factor_prime_power(std::uint32_t q) {
  if (q < 2) throw std::invalid_argument("q must be at least 2");
  std::uint32_t p = 0;
  for (std::uint32_t d = 2; d * d <= q; ++d)
    if (q % d == 0) {
      p = d;
      break;
    }
  if (p == 0) return {q, 1};  // q itself is prime
  std::uint32_t k = 0, rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++k;
  }
  if (rest != 1)
    throw std::invalid_argument("q = " + std::to_string(q) + " is not a prime power");
  return {p, k};
}

int read_thread_env() {
  // Upper bound for solver concurrency. The current solver always runs the
  // deterministic single-threaded path, which satisfies any bound >= 1.
  const char* raw = std::getenv("DERANGEMENT_LAB_THREADS");
  if (raw == nullptr) return 1;
  char* end = nullptr;
  const long v = std::strtol(raw, &end, 10);
  if (end == raw || *end != '\0' || v < 1)
    throw std::invalid_argument("DERANGEMENT_LAB_THREADS must be a positive integer");
  return int(v);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open output file " + path);
  os << text;
}

void emit(const std::optional<std::string>& out_path, const std::string& text) {
  if (out_path)
    write_text(*out_path, text);
  else
    std::cout << text;
}

nlohmann::json load_json(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot open group file " + path);
  nlohmann::json j;
  is >> j;
  return j;
}

nlohmann::ordered_json field_to_json(const dlab::FieldSpec& s) {
  return {{"p", s.p}, {"k", s.k}, {"modulus", s.modulus}};
}

// Collects named pass/fail lines; the process exit code reflects the verdict.
class VerifyLog {
 public:
  void check(const std::string& name, bool pass, const std::string& detail) {
    all_pass_ &= pass;
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << name << ": " << detail << "\n";
  }

  int finish(const std::string& label) {
    std::cout << "RESULT: " << (all_pass_ ? "PASS " : "FAIL ") << label << "\n";
    return all_pass_ ? 0 : 1;
  }

  bool all_pass() const { return all_pass_; }

 private:
  bool all_pass_ = true;
};

std::string rho_str(const dlab::Rational& r) { return dlab::to_string(r); }

void maybe_write_report(const std::optional<std::string>& out,
                        const dlab::AnalysisReport& report) {
  if (out) write_text(*out, dlab::report_to_json(report).dump(2) + "\n");
}

int verify_main_family(std::uint32_t q, const dlab::AnalysisOptions& opts,
                        const std::optional<std::string>& out) {
  const PrimePower pp = factor_prime_power(q);
  const dlab::FieldSpec field = dlab::make_field(pp.p, pp.k);
  VerifyLog log;

  const dlab::PermGroup g = dlab::build_gq(field, opts.group_cap);
  const std::uint64_t q2 = std::uint64_t(q) * q;
  log.check("degree", g.degree() == q * (q + 1),
            "degree " + std::to_string(g.degree()) + " == q(q+1)");
  log.check("order", g.order() == q2 * (q2 - 1),
            "order " + std::to_string(g.order()) + " == q^2(q^2-1)");
  log.check("transitive", g.is_transitive(), "group acts transitively on the lines");

  const dlab::PermGroup mq = dlab::build_mq(field, opts.group_cap);
  const dlab::PermGroup fix = g.fix_subgroup(opts.group_cap);
  log.check("fix_equals_mq", fix.same_elements(mq),
            "Fix(G) == M_q of order " + std::to_string(mq.order()));

  const dlab::AnalysisReport report = dlab::analyze(g, opts);
  const std::uint64_t want_parts = q + 1;
  const std::uint64_t want_size = q2 * (q - 1);
  log.check("multipartite",
            report.multipartite_kind == "proper" && report.multipartite &&
                report.multipartite->first == want_parts &&
                report.multipartite->second == want_size,
            "complete (q+1)-partite: " + std::to_string(want_parts) + " parts of size " +
                std::to_string(want_size));
  log.check("alpha", report.alpha_exact && report.alpha && *report.alpha == want_size,
            "alpha == q^2(q-1) == " + std::to_string(want_size));
  log.check("rho", report.alpha && report.rho == dlab::Rational::make(q, 1),
            "rho == " + rho_str(report.rho) + " == q");
  log.check("internal_checks", report.all_checks_pass(),
            "all analyzer invariants hold");
  maybe_write_report(out, report);
  return log.finish("main q=" + std::to_string(q));
}

int verify_fourell_family(std::uint32_t ell, const dlab::AnalysisOptions& opts,
                           const std::optional<std::string>& out) {
  VerifyLog log;
  const dlab::FourEllSpec spec = dlab::build_fourell(ell, opts.group_cap);
  const dlab::PermGroup& g = spec.group;
  const std::uint64_t want_order = (1ull << (ell - 1)) * 2 * ell;

  log.check("order", g.order() == want_order,
            "order " + std::to_string(g.order()) + " == 2^(l-1) * 2l");
  log.check("transitive", g.is_transitive(), "group acts transitively");
  log.check("tau_derangement", dlab::is_derangement(spec.tau),
            "tau moves every point");

  // conjugation by tau inverts the four arithmetic cycles, swapped in pairs
  // (1<->3, 2<->4); conjugation a^t is the left-to-right word t a t^-1
  bool eq4 = true;
  const int image_of[4] = {2, 3, 0, 1};
  for (int i = 0; i < 4; ++i)
    eq4 &= dlab::conjugate(spec.arith_cycles[i], spec.tau) ==
           dlab::invert(spec.arith_cycles[image_of[i]]);
  log.check("conjugation_identities", eq4,
            "tau A_i tau^-1 == A_{i+2 mod 4}^-1 for i = 1..4");
  log.check("tau_inverts_c",
            dlab::conjugate(spec.c, spec.tau) == dlab::invert(spec.c),
            "tau c tau^-1 == c^-1");

  bool h_stable = true;
  for (const dlab::Perm& pi : spec.pis) {
    h_stable &= spec.h_group.contains(dlab::conjugate(pi, spec.c));
    h_stable &= spec.h_group.contains(dlab::conjugate(pi, spec.tau));
  }
  log.check("h_invariant", h_stable, "c and tau normalize H");

  bool parity = true;
  for (const dlab::Perm& h : spec.h_group.elements())
    parity &= dlab::fixed_points(h).size() >= 4;
  log.check("h_parity", parity, "every element of H fixes at least 4 points");

  const dlab::PermGroup top = dlab::PermGroup::generate({spec.tau, spec.c}, "top");
  log.check("dihedral_top", top.order() == 2ull * ell,
            "<tau, c> has order 2l == " + std::to_string(2 * ell));
  std::uint64_t meet = 0;
  for (const dlab::Perm& e : top.elements())
    if (spec.h_group.contains(e)) ++meet;
  log.check("semidirect", meet == 1 && g.order() == spec.h_group.order() * top.order(),
            "H and <tau, c> meet trivially and |G| == |H| * 2l");

  const dlab::PermGroup fix = g.fix_subgroup(opts.group_cap);
  log.check("fix_equals_h", fix.same_elements(spec.h_group),
            "Fix(G) == H of order " + std::to_string(spec.h_group.order()));

  const dlab::AnalysisReport report = dlab::analyze(g, opts);
  log.check("multipartite",
            report.multipartite_kind == "proper" && report.multipartite &&
                report.multipartite->first == 2ull * ell &&
                report.multipartite->second == (1ull << (ell - 1)),
            "complete 2l-partite: " + std::to_string(2 * ell) + " parts of size " +
                std::to_string(1ull << (ell - 1)));
  log.check("rho", report.alpha && report.rho == dlab::Rational::make(2, 1),
            "rho == " + rho_str(report.rho) + " == 2");
  log.check("internal_checks", report.all_checks_pass(),
            "all analyzer invariants hold");
  maybe_write_report(out, report);
  return log.finish("fourell ell=" + std::to_string(ell));
}

int verify_twop_bound(const std::string& group_path, std::uint32_t p,
                        const dlab::AnalysisOptions& opts,
                        const std::optional<std::string>& out) {
  VerifyLog log;
  const dlab::PermGroup g = dlab::group_from_json(load_json(group_path), opts.group_cap);
  // two_p_clique validates the preconditions itself; a bad degree, even p, or
  // intransitive input surfaces as a usage error before anything is printed
  const dlab::TwoPResult res = dlab::two_p_clique(g, p);
  log.check("degree", true, "degree " + std::to_string(g.degree()) +
                                " == 2p with p = " + std::to_string(p));
  log.check("transitive", true, "group acts transitively");
  switch (res.route) {
    case dlab::TwoPResult::Route::kDerangementPower:
      log.check("clique", res.clique.size() == p,
                "order-p derangement spans a clique of size p");
      break;
    case dlab::TwoPResult::Route::kBlockComposition:
      log.check("clique", res.clique.size() == p,
                "p-cycles on the two size-p blocks compose to a clique of size p");
      break;
    case dlab::TwoPResult::Route::kPrimitiveFallback:
      log.check("clique", true,
                "no size-p block system; falling back to the exact coclique solver");
      break;
  }

  const dlab::AnalysisReport report = dlab::analyze(g, opts);
  log.check("alpha_exact", report.alpha_exact, "alpha computed exactly");
  log.check("rho_at_most_2",
            report.alpha && report.rho <= dlab::Rational::make(2, 1),
            "rho == " + rho_str(report.rho) + " <= 2");
  if (res.route != dlab::TwoPResult::Route::kPrimitiveFallback && report.alpha) {
    // the clique certifies alpha <= |G|/p via the clique-coclique bound
    log.check("clique_certificate", *report.alpha * p <= g.order(),
              "alpha * p <= |G|");
  }
  log.check("internal_checks", report.all_checks_pass(),
            "all analyzer invariants hold");
  maybe_write_report(out, report);
  return log.finish("twop p=" + std::to_string(p));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"derangement-lab: transitive groups, their derangement graphs, "
               "and exact EKR-type invariants"};
  app.require_subcommand(1);
  app.fallthrough();  // parent options may follow a subcommand name

  std::uint64_t max_order = dlab::kDefaultGroupCap;
  std::uint64_t max_vertices = dlab::kDefaultGraphCap;
  std::uint64_t strict_cap = 500;
  app.add_option("--max-order", max_order, "group closure cap (elements)");
  app.add_option("--max-vertices", max_vertices, "derangement graph cap (vertices)");
  app.add_option("--strict-cap", strict_cap, "strict-EKR enumeration cap (group order)");

  // construct
  auto* construct = app.add_subcommand("construct", "write a group file");
  std::string kind;
  construct->add_option("kind", kind, "gq|fourell|example6|agl2|cyclic")->required();
  std::uint32_t q = 0, ell = 0, cyc_n = 0;
  construct->add_option("--q", q, "prime power for gq/agl2");
  construct->add_option("--ell", ell, "odd integer >= 3 for fourell");
  construct->add_option("--n", cyc_n, "degree for cyclic");
  std::string out_path;
  construct->add_option("--out", out_path, "output file (default stdout)");

  // lines
  auto* lines = app.add_subcommand("lines", "write the line table of AG(2,q) as CSV");
  std::uint32_t lines_q = 0;
  lines->add_option("--q", lines_q, "prime power")->required();
  std::string lines_out;
  lines->add_option("--out", lines_out, "output file (default stdout)");

  // analyze
  auto* analyze_cmd = app.add_subcommand("analyze", "full report for a group file");
  std::string group_path;
  analyze_cmd->add_option("--group", group_path, "group JSON file")->required();
  std::string analyze_out, analyze_format = "json", dot_path, bitmap_path;
  analyze_cmd->add_option("--out", analyze_out, "report file (default stdout)");
  analyze_cmd->add_option("--format", analyze_format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  analyze_cmd->add_option("--dot", dot_path, "also write the graph in DOT form");
  analyze_cmd->add_option("--bitmap", bitmap_path, "also write the adjacency bitmap");

  // verify
  auto* verify = app.add_subcommand("verify", "check the expected conclusions for a family");
  verify->require_subcommand(1);
  auto* vmain = verify->add_subcommand("main", "the q(q+1)-degree family");
  std::uint32_t vq = 0;
  vmain->add_option("--q", vq, "prime power")->required();
  auto* vfour = verify->add_subcommand("fourell", "the degree-4l family");
  std::uint32_t vell = 0;
  vfour->add_option("--ell", vell, "odd integer >= 3")->required();
  auto* vtwop = verify->add_subcommand("twop", "degree-2p clique bound");
  std::string vgroup;
  std::uint32_t vp = 0;
  vtwop->add_option("--group", vgroup, "group JSON file")->required();
  vtwop->add_option("--p", vp, "odd prime")->required();
  std::string verify_out;
  verify->add_option("--out", verify_out, "write the analysis report JSON here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    read_thread_env();

    dlab::AnalysisOptions opts;
    opts.group_cap = max_order;
    opts.graph_cap = max_vertices;
    opts.solver.strict_group_cap = strict_cap;

    if (*construct) {
      nlohmann::ordered_json j;
      if (kind == "gq" || kind == "agl2") {
        if (q == 0) throw std::invalid_argument("--q is required for " + kind);
        const PrimePower pp = factor_prime_power(q);
        const dlab::FieldSpec field = dlab::make_field(pp.p, pp.k);
        const dlab::PermGroup g = kind == "gq" ? dlab::build_gq(field, max_order)
                                               : dlab::build_agl2(field, max_order);
        j = dlab::group_to_json(g);
        j["field"] = field_to_json(field);
      } else if (kind == "fourell") {
        if (ell == 0) throw std::invalid_argument("--ell is required for fourell");
        if (ell % 2 == 0 || ell < 3)
          throw std::invalid_argument("ell must be an odd integer >= 3");
        j = dlab::group_to_json(dlab::build_fourell(ell, max_order).group);
      } else if (kind == "example6") {
        j = dlab::group_to_json(dlab::build_example6());
      } else if (kind == "cyclic") {
        if (cyc_n == 0) throw std::invalid_argument("--n is required for cyclic");
        j = dlab::group_to_json(dlab::build_cyclic_regular(cyc_n));
      } else {
        throw std::invalid_argument("unknown construction kind " + kind);
      }
      emit(out_path.empty() ? std::nullopt : std::optional(out_path), j.dump(2) + "\n");
      return 0;
    }

    if (*lines) {
      const PrimePower pp = factor_prime_power(lines_q);
      const dlab::FieldSpec field = dlab::make_field(pp.p, pp.k);
      std::ostringstream os;
      dlab::write_lines_csv(os, field);
      emit(lines_out.empty() ? std::nullopt : std::optional(lines_out), os.str());
      return 0;
    }

    if (*analyze_cmd) {
      const dlab::PermGroup g = dlab::group_from_json(load_json(group_path), max_order);
      const dlab::AnalysisReport report = dlab::analyze(g, opts);
      if (!dot_path.empty() || !bitmap_path.empty()) {
        const dlab::DerangementGraph graph = dlab::DerangementGraph::build(g, max_vertices);
        if (!dot_path.empty()) {
          const dlab::MultipartiteResult mp = graph.complete_multipartite();
          std::ostringstream os;
          graph.write_dot(os, mp.decomposition ? &*mp.decomposition : nullptr);
          write_text(dot_path, os.str());
        }
        if (!bitmap_path.empty()) {
          std::ostringstream os(std::ios::binary);
          graph.write_bitmap(os);
          write_text(bitmap_path, os.str());
        }
      }
      std::ostringstream os;
      if (analyze_format == "json")
        os << dlab::report_to_json(report).dump(2) << "\n";
      else
        dlab::write_report_csv(os, report);
      emit(analyze_out.empty() ? std::nullopt : std::optional(analyze_out), os.str());
      return 0;
    }

    if (*verify) {
      const std::optional<std::string> out =
          verify_out.empty() ? std::nullopt : std::optional(verify_out);
      if (*vmain) return verify_main_family(vq, opts, out);
      if (*vfour) return verify_fourell_family(vell, opts, out);
      if (*vtwop) return verify_twop_bound(vgroup, vp, opts, out);
    }
  } catch (const dlab::CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
