#include "coarseprox/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "coarseprox/expr.hpp"
#include "coarseprox/harness.hpp"
#include "coarseprox/normality.hpp"
#include "coarseprox/oracle.hpp"

namespace coarseprox {

namespace {

constexpr const char* kVersion = "1";

void emit(const nlohmann::json& j, const std::string& out) {
  std::string text = j.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot write " + out);
    f << text;
  }
}

int usage_error(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  return 2;
}

struct DecideArgs {
  std::string relation, exprA, exprB, out, mode;
  std::string backend = "z-metric";
  std::vector<long long> windows{100, 1000};
};

struct WitnessArgs {
  std::string kind, exprA, exprB, out;
  std::string backend = "z-metric";
};

struct CertifyArgs {
  std::string target, candidate, out;
  long long trace_len = 50;
};

struct ValidateArgs {
  std::string file, out;
};

struct CheckArgs {
  std::string suite = "all", out;
  std::string backend = "z-metric";
  std::uint64_t seed = 0;
  bool seed_given = false;
  int sets = 40, pairs = 300, triples = 120, oracle_pairs = 80;
  std::vector<long long> windows{100, 1000, 5000};
};

nlohmann::json error_json(const std::string& command, const std::string& kind,
                          const std::string& message) {
  return {{"command", command},
          {"error", {{"kind", kind}, {"message", message}}},
          {"version", kVersion}};
}

const char* normality_kind(NormalityError::Kind k) {
  switch (k) {
    case NormalityError::PrecFails: return "prec-fails";
    case NormalityError::NotNested: return "not-nested";
    case NormalityError::NotDisjoint: return "not-disjoint";
  }
  return "?";
}

int do_decide_windowed(const DecideArgs& d, const SetExpr& ea, const SetExpr& eb) {
  EPSet a = elaborate_z(ea), b = elaborate_z(eb);
  long long w = d.windows.empty() ? 1000 : d.windows.back();
  ZPred pa = [&a](long long x) { return a.member(x); };
  ZPred pb = [&b](long long x) { return b.member(x); };
  Verdict v = Verdict::unknown(w);
  nlohmann::json witness = nlohmann::json::object();
  // window evidence only refutes or exhibits; absence of evidence stays unknown
  if (d.relation == "b") {
    if (oracle_b_z(pa, pb, w)) {
      v = Verdict::yes();
      witness = {{"window", w}};
    }
  } else if (d.relation == "prec") {
    if (!oracle_prec_z(pa, pb, w)) {
      v = Verdict::no();
      witness = {{"window", w}};
    }
  } else if (d.relation == "nbhd") {
    EPSet cb = EPSet::complement(b);
    ZPred pcb = [&cb](long long x) { return cb.member(x); };
    if (oracle_b_z(pa, pcb, w)) {
      v = Verdict::no();
      witness = {{"window", w}};
    }
  } else {
    auto r = oracle_lambda_z(pa, pb, w);
    if (r) {
      v = Verdict::yes();
      witness = {{"r", *r}, {"window", w}};
    }
  }
  emit({{"command", "decide"},
        {"relation", d.relation},
        {"backend", "windowed"},
        {"mode", "windowed"},
        {"inputs", {{"A", a.to_json()}, {"B", b.to_json()}}},
        {"result", v.to_json()},
        {"witness", witness},
        {"version", kVersion}},
       d.out);
  return 0;
}

int do_decide(const DecideArgs& d) {
  ExprPtr ea = parse_expr(d.exprA), eb = parse_expr(d.exprB);
  bool takes_mode = d.relation == "prec" || d.relation == "b";
  if (!d.mode.empty() && !takes_mode)
    return usage_error("--mode applies to 'prec' and 'b' only");
  if (d.backend == "windowed") {
    if (!d.mode.empty()) return usage_error("--mode applies to exact backends only");
    return do_decide_windowed(d, *ea, *eb);
  }

  RelationResult r;
  nlohmann::json aj, bj;
  auto dispatch = [&](auto a, auto b) {
    aj = a.to_json();
    bj = b.to_json();
    if (d.relation == "b") {
      auto m = parse_b_mode(d.mode.empty() ? "image" : d.mode);
      if (!m) throw std::invalid_argument("unknown b mode: " + d.mode);
      r = b_rel(a, b, *m);
    } else if (d.relation == "prec") {
      auto m = parse_prec_mode(d.mode.empty() ? "image" : d.mode);
      if (!m) throw std::invalid_argument("unknown prec mode: " + d.mode);
      r = prec(a, b, *m);
    } else if (d.relation == "lambda") {
      r = lambda_rel(a, b);
    } else {
      r = nbhd(a, b);
    }
  };
  if (d.backend == "z-metric")
    dispatch(elaborate_z(*ea), elaborate_z(*eb));
  else
    dispatch(elaborate_q(*ea), elaborate_q(*eb));

  emit({{"command", "decide"},
        {"relation", d.relation},
        {"backend", d.backend},
        {"mode", r.mode},
        {"inputs", {{"A", aj}, {"B", bj}}},
        {"result", r.verdict.to_json()},
        {"witness", r.witness},
        {"version", kVersion}},
       d.out);
  return 0;
}

int do_witness(const WitnessArgs& w) {
  if (w.backend != "z-metric")
    return usage_error("witness constructions live on the metric backend");
  EPSet a = elaborate_z(*parse_expr(w.exprA));
  EPSet b = elaborate_z(*parse_expr(w.exprB));
  nlohmann::json witness;
  try {
    if (w.kind == "normal") {
      witness = interpolate(a, b).to_json();
    } else if (w.kind == "star") {
      witness = {{"C", interpolate_star(a, b).to_json()}};
    } else {
      auto [x1, x2] = split_asymptotic(a, b);
      witness = {{"X1", x1.to_json()}, {"X2", x2.to_json()}};
    }
  } catch (const NormalityError& e) {
    emit(error_json("witness", normality_kind(e.kind), e.what()), w.out);
    return 1;
  }
  emit({{"command", "witness"},
        {"kind", w.kind},
        {"backend", w.backend},
        {"inputs", {{"A", a.to_json()}, {"B", b.to_json()}}},
        {"witness", witness},
        {"version", kVersion}},
       w.out);
  return 0;
}

int do_certify(const CertifyArgs& c) {
  QSet cand = elaborate_q(*parse_expr(c.candidate));
  NonNormalityCertificate cert{nlohmann::json(), Rat(0), {}, RatAP(Rat(0), Rat(1))};
  try {
    cert = nonnormality_certificate(cand, c.trace_len);
  } catch (const NormalityError& e) {
    emit(error_json("certify", normality_kind(e.kind), e.what()), c.out);
    return 1;
  }
  emit({{"command", "certify"},
        {"backend", "q-halfline"},
        {"inputs", {{"C", cand.to_json()}}},
        {"certificate", cert.to_json()},
        {"version", kVersion}},
       c.out);
  return 0;
}

int do_validate(const ValidateArgs& v) {
  std::ifstream f(v.file);
  if (!f) return usage_error("cannot read " + v.file);
  nlohmann::json j;
  try {
    f >> j;
  } catch (const nlohmann::json::exception& e) {
    return usage_error(std::string("malformed JSON: ") + e.what());
  }
  bool ok = false;
  try {
    const nlohmann::json& cj = j.contains("certificate") ? j.at("certificate") : j;
    ok = validate_certificate(NonNormalityCertificate::from_json(cj));
  } catch (const std::exception&) {
    ok = false;
  }
  emit({{"command", "validate"},
        {"file", v.file},
        {"result", ok},
        {"version", kVersion}},
       v.out);
  return ok ? 0 : 1;
}

int do_check(const CheckArgs& c) {
  BackendKind kind;
  if (c.backend == "z-metric")
    kind = BackendKind::ZMetric;
  else if (c.backend == "q-halfline")
    kind = BackendKind::QHalfLine;
  else
    return usage_error("check runs on the exact backends");

  SeedPlan plan;
  plan.seed = c.seed_given ? c.seed : 1;
  if (!c.seed_given) {
    if (const char* env = std::getenv("COARSEPROX_SEED"))
      plan.seed = std::strtoull(env, nullptr, 10);
  }
  plan.set_count = c.sets;
  plan.pair_count = c.pairs;
  plan.triple_count = c.triples;
  plan.oracle_pair_count = c.oracle_pairs;
  plan.windows = c.windows;

  std::vector<std::string> suites;
  if (c.suite == "all")
    suites = {"bornology", "proximity", "nbhd", "resemblance", "crosscheck"};
  else
    suites = {c.suite};
  std::vector<CheckReport> reports;
  try {
    reports = run_suites(kind, plan, suites);
  } catch (const std::invalid_argument& e) {
    return usage_error(e.what());
  }
  bool match = true;
  nlohmann::json rs = nlohmann::json::array();
  for (const CheckReport& r : reports) {
    match = match && report_matches_expectation(kind, r);
    rs.push_back(r.to_json());
  }
  emit({{"command", "check"},
        {"backend", c.backend},
        {"plan", plan.to_json()},
        {"reports", rs},
        {"expected_pattern_match", match},
        {"version", kVersion}},
       c.out);
  return match ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"exact decision engine for coarse closeness on the integers and the rational half line"};
  app.require_subcommand(1);

  DecideArgs d;
  CLI::App* decide = app.add_subcommand("decide", "evaluate a relation on two sets");
  decide->add_option("relation", d.relation, "one of b, lambda, prec, nbhd")
      ->required()
      ->check(CLI::IsMember({"b", "lambda", "prec", "nbhd"}));
  decide->add_option("exprA", d.exprA)->required();
  decide->add_option("exprB", d.exprB)->required();
  decide->add_option("--backend", d.backend)
      ->check(CLI::IsMember({"z-metric", "q-halfline", "windowed"}));
  decide->add_option("--mode", d.mode, "characterization to evaluate");
  decide->add_option("--windows", d.windows, "probe bounds for the windowed backend");
  decide->add_option("--out", d.out);

  WitnessArgs w;
  CLI::App* witness = app.add_subcommand("witness", "construct an interpolation or split witness");
  witness->add_option("kind", w.kind, "one of normal, star, split")
      ->required()
      ->check(CLI::IsMember({"normal", "star", "split"}));
  witness->add_option("exprA", w.exprA)->required();
  witness->add_option("exprB", w.exprB)->required();
  witness->add_option("--backend", w.backend)->check(CLI::IsMember({"z-metric"}));
  witness->add_option("--out", w.out);

  CertifyArgs c;
  CLI::App* certify = app.add_subcommand("certify", "produce a non-interpolability certificate");
  certify->add_option("target", c.target)->required()->check(CLI::IsMember({"nonnormal"}));
  certify->add_option("--candidate", c.candidate)->required();
  certify->add_option("--trace-len", c.trace_len)->check(CLI::PositiveNumber);
  certify->add_option("--out", c.out);

  ValidateArgs v;
  CLI::App* validate = app.add_subcommand("validate", "revalidate an emitted certificate");
  validate->add_option("file", v.file)->required();
  validate->add_option("--out", v.out);

  CheckArgs ch;
  CLI::App* check = app.add_subcommand("check", "run the seeded property suites");
  check->add_option("--suite", ch.suite)
      ->check(CLI::IsMember({"all", "bornology", "proximity", "nbhd", "resemblance", "crosscheck"}));
  check->add_option("--backend", ch.backend)
      ->check(CLI::IsMember({"z-metric", "q-halfline"}));
  check->add_option("--seed", ch.seed)->each([&ch](const std::string&) { ch.seed_given = true; });
  check->add_option("--sets", ch.sets);
  check->add_option("--pairs", ch.pairs);
  check->add_option("--triples", ch.triples);
  check->add_option("--oracle-pairs", ch.oracle_pairs);
  check->add_option("--windows", ch.windows);
  check->add_option("--out", ch.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*decide) return do_decide(d);
    if (*witness) return do_witness(w);
    if (*certify) return do_certify(c);
    if (*validate) return do_validate(v);
    if (*check) return do_check(ch);
  } catch (const ParseError& e) {
    return usage_error(e.what());
  } catch (const ElaborationError& e) {
    return usage_error(e.what());
  } catch (const std::invalid_argument& e) {
    return usage_error(e.what());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace coarseprox
