#include "fsl/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "fsl/constructions.hpp"
#include "fsl/errors.hpp"
#include "fsl/irrational.hpp"
#include "fsl/json_io.hpp"
#include "fsl/quasivar.hpp"

namespace fsl::cli {

namespace {

// Options shared by every leaf command.
struct Common {
  std::string out_path;
  bool meta = false;
};

struct Outcome {
  Outcome() = default;
  Outcome(Json r, int c = kExitOk) : report(std::move(r)), code(c) {}

  Json report;
  int code = kExitOk;
  std::string text;  // raw payload (DOT) instead of JSON, when set
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

std::int64_t parse_int(const std::string& raw, const char* what) {
  std::string s;
  for (char c : raw) {
    if (c != ' ') s += c;
  }
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw ParseError(std::string("bad integer in ") + what + ": '" + raw + "'");
  }
  if (used != s.size()) throw ParseError(std::string("bad integer in ") + what + ": '" + raw + "'");
  return v;
}

GroupSpec parse_orders(const std::string& text) {
  std::vector<std::int64_t> orders;
  for (const auto& part : split(text, ',')) orders.push_back(parse_int(part, "--orders"));
  return GroupSpec(std::move(orders));
}

// "v1;v2" where each v is a comma-joined coordinate list; the subgroup they generate.
Subgroup parse_subgroup(const GroupSpec& g, const std::string& text) {
  std::vector<GroupElement> gens;
  if (!text.empty()) {
    for (const auto& v : split(text, ';')) {
      std::vector<std::int64_t> coords;
      for (const auto& c : split(v, ',')) coords.push_back(parse_int(c, "--subgroup"));
      if (coords.size() != g.rank()) throw ParseError("element '" + v + "' has the wrong number of coordinates");
      gens.push_back(g.reduce(std::move(coords)));
    }
  }
  return Subgroup::generated_by(g, gens);
}

FSemilattice load_algebra(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return algebra_from_json(j);
}

Index find_generator(const FSemilattice& a, const std::string& label) {
  auto x = a.find_label(label);
  if (!x) throw ParseError("no carrier element labeled '" + label + "'");
  return *x;
}

Json labels_of(const FSemilattice& a, std::span<const Index> xs) {
  Json j = Json::array();
  for (Index x : xs) j.push_back(a.label(x));
  return j;
}

Json valuation_json(const FSemilattice& a, const QuasiIdentity& qi, std::span<const Index> v) {
  Json j;
  for (std::size_t i = 0; i < v.size(); ++i) j[qi.variables[i]] = a.label(v[i]);
  return j;
}

std::string valuation_text(const FSemilattice& a, const QuasiIdentity& qi, std::span<const Index> v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += qi.variables[i] + "=" + a.label(v[i]);
  }
  return s;
}

Json congruence_json(const FSemilattice& a, const Congruence& c) {
  Json blocks = Json::array();
  for (const auto& b : c.blocks()) blocks.push_back(labels_of(a, b));
  return blocks;
}

Outcome cmd_subgroups(const std::string& orders) {
  auto g = parse_orders(orders);
  auto subs = subgroups(g);
  Json list = Json::array();
  for (const auto& s : subs) list.push_back(to_json(s));
  Json r;
  r["group"] = to_json(g);
  r["count"] = subs.size();
  r["subgroups"] = std::move(list);
  return {r};
}

struct BuildArgs {
  std::string orders = "1";
  std::string subgroup;
  std::string transversal;
  std::string u = "one";
  int k = 1;
};

Outcome cmd_build(const std::string& kind, const BuildArgs& b) {
  if (kind == "ak") return {to_json(a_k(b.k))};
  auto g = parse_orders(b.orders);
  if (kind == "two-element") return {to_json(two_element(g))};
  auto sub = parse_subgroup(g, b.subgroup);
  if (kind == "maroti") return {to_json(maroti(g, sub))};
  // twisted
  SubgroupAlgebra u = [&] {
    if (b.u == "one") return one_element_over(sub);
    if (b.u == "chain2") return chain2_over(sub);
    throw ParseError("--u must be 'one' or 'chain2'");
  }();
  if (b.transversal.empty() || b.transversal == "normalized") {
    return {to_json(twisted_multiple({transversal(g, sub, true), u}))};
  }
  if (b.transversal == "greatest") return {to_json(twisted_multiple({transversal(g, sub, false), u}))};
  std::vector<GroupElement> reps;
  for (const auto& v : split(b.transversal, ';')) {
    std::vector<std::int64_t> coords;
    for (const auto& c : split(v, ',')) coords.push_back(parse_int(c, "--transversal"));
    if (coords.size() != g.rank()) throw ParseError("representative '" + v + "' has the wrong number of coordinates");
    reps.push_back(g.reduce(std::move(coords)));
  }
  return {to_json(twisted_multiple({Transversal(sub, std::move(reps)), u}))};
}

Outcome cmd_validate(const FSemilattice& a) {
  auto rep = validate_axioms(a);
  Json r;
  r["valid"] = rep.valid;
  if (!rep.valid) {
    r["axiom"] = rep.axiom;
    r["message"] = rep.message;
    r["witness"] = labels_of(a, rep.witness);
    if (rep.generator) r["generator"] = *rep.generator;
  }
  return {r, rep.valid ? kExitOk : kExitPropertyFailed};
}

Outcome cmd_check_minimal(const FSemilattice& a, Index gen) {
  require_valid(a);
  auto v = is_minimal_free(a, gen);
  Json r;
  r["generator"] = a.label(gen);
  r["minimal"] = v.minimal;
  if (v.counterexample) {
    auto sub = subalgebra_generated(a, *v.counterexample);
    Json c;
    c["element"] = a.label(*v.counterexample);
    c["subalgebra"] = labels_of(a, sub.embedding);
    c["subalgebra_size"] = sub.embedding.size();
    c["algebra_size"] = a.size();
    r["counterexample"] = std::move(c);
  }
  return {r, v.minimal ? kExitOk : kExitPropertyFailed};
}

Outcome cmd_verify_bijection(const std::string& orders) {
  auto g = parse_orders(orders);
  auto rep = verify_bijection(g);
  Json subs = Json::array();
  for (const auto& c : rep.subgroups) {
    Json s;
    s["elements"] = to_json(c.subgroup)["elements"];
    s["carrier_size"] = c.carrier_size;
    s["minimal"] = c.minimal ? Json(*c.minimal) : Json(nullptr);
    s["stabilizer_round_trip"] = c.stabilizer_round_trip;
    subs.push_back(std::move(s));
  }
  Json r;
  r["group"] = to_json(g);
  r["subgroups"] = std::move(subs);
  r["representatives"] = rep.representatives;
  r["pairwise_distinct"] = rep.pairwise_distinct;
  if (rep.isomorphic_pair) r["isomorphic_pair"] = {rep.isomorphic_pair->first, rep.isomorphic_pair->second};
  r["ok"] = rep.ok;
  r["summary"] = rep.summary();
  return {r, rep.ok ? kExitOk : kExitPropertyFailed};
}

Outcome cmd_quasi(const FSemilattice& a, const std::string& text) {
  require_valid(a);
  auto qi = parse_quasi_identity(text, a.group());
  auto res = holds_quasi_identity(a, qi);
  Json r;
  r["qi"] = to_string(qi);
  r["holds"] = res.holds;
  if (res.counterexample) {
    r["witness"] = valuation_json(a, qi, *res.counterexample);
    r["summary"] = "fails, witness " + valuation_text(a, qi, *res.counterexample);
  } else {
    r["summary"] = "holds";
  }
  return {r, res.holds ? kExitOk : kExitPropertyFailed};
}

// Minimality is checked up front so that a non-minimal input gets a
// certificate instead of an error.
std::optional<Outcome> not_minimal(const FSemilattice& a, Index gen) {
  auto v = is_minimal_free(a, gen);
  if (v.minimal) return std::nullopt;
  Outcome o = cmd_check_minimal(a, gen);
  return o;
}

Outcome cmd_decompose(const FSemilattice& a, Index gen, std::size_t bound) {
  require_valid(a);
  if (auto o = not_minimal(a, gen)) return *o;
  auto d = decompose_ku(a, gen, bound);
  Json iso = Json::array();
  for (Index x = 0; x < d.isomorphism.size(); ++x) {
    Json e;
    e["from"] = d.reconstruction.label(x);
    e["to"] = a.label(d.isomorphism[x]);
    iso.push_back(std::move(e));
  }
  Json images = Json::array();
  for (const auto& g : d.u.generator_images) images.push_back(to_json(g));
  Json r;
  r["K"] = to_json(d.k);
  r["U"] = to_json(d.u.algebra);
  r["U_generator_images"] = std::move(images);
  r["U_in_A"] = labels_of(a, d.u_embedding);
  r["reconstruction"] = to_json(d.reconstruction);
  r["isomorphism"] = std::move(iso);
  r["block_bound"] = d.block_bound;
  r["block_checks"] = d.block_checks;
  return {r};
}

Outcome cmd_simplicity(const FSemilattice& a, Index gen, std::size_t limit) {
  require_valid(a);
  if (auto o = not_minimal(a, gen)) return *o;
  auto rep = simplicity_and_quotient_report(a, gen, limit);
  Json qs = Json::array();
  bool all_fail = true;
  for (const auto& q : rep.quotients) {
    Json e;
    e["blocks"] = congruence_json(a, q.congruence);
    e["separating_fails"] = q.separating_fails;
    if (q.counterexample) {
      auto qa = quotient(a, q.congruence);
      e["witness"] = valuation_json(qa, rep.separating, *q.counterexample);
    }
    all_fail = all_fail && q.separating_fails;
    qs.push_back(std::move(e));
  }
  Json r;
  r["congruences"] = rep.congruence_count;
  r["simple"] = rep.simple;
  r["separating"] = to_string(rep.separating);
  r["quotients"] = std::move(qs);
  return {r, all_fail ? kExitOk : kExitPropertyFailed};
}

Json certificate_json(const irrational::ScaledCertificate& c) {
  Json j;
  j["rational_part"] = c.rational_part;
  j["surd_coeff"] = c.surd_coeff;
  j["d"] = c.d;
  j["rational_part_squared"] = c.a_squared;
  j["surd_coeff_squared_times_d"] = c.b_squared_d;
  j["scaled_alpha_below_p"] = c.below;
  return j;
}

Json verdict_json(const irrational::AlgebraVerdict& v) {
  Json samples = Json::array();
  for (const auto& s : v.samples) {
    Json e;
    e["m"] = s.x.m;
    e["n"] = s.x.n;
    e["holds"] = s.holds;
    samples.push_back(std::move(e));
  }
  Json j;
  j["holds"] = v.holds;
  j["certificate"] = certificate_json(v.certificate);
  if (v.failing_witness) j["witness"] = {v.failing_witness->m, v.failing_witness->n};
  j["samples"] = std::move(samples);
  return j;
}

Outcome cmd_balpha(const std::string& a_text, const std::string& b_text, std::size_t samples) {
  using namespace irrational;
  auto alpha = parse_irrational(a_text);
  auto beta = parse_irrational(b_text);
  auto f = rational_between(alpha, beta);
  auto rep = check_separating_identity(alpha, beta, f.num, f.den, samples);
  Json r;
  r["alpha"] = alpha.to_string();
  r["beta"] = beta.to_string();
  r["rational"] = {{"p", rep.p}, {"q", rep.q}};
  r["identity"] = "(g^" + std::to_string(rep.p) + ",1)(x) ^ (1,g^" + std::to_string(rep.q) + ")(x) = (1,g^" +
                  std::to_string(rep.q) + ")(x)";
  r["in_alpha"] = verdict_json(rep.alpha);
  r["in_beta"] = verdict_json(rep.beta);
  bool ok = rep.alpha.holds && !rep.beta.holds;
  r["summary"] = std::string(rep.alpha.holds ? "holds" : "fails") + " in B_" + alpha.to_string() + ", " +
                 (rep.beta.holds ? "holds" : "fails") + " in B_" + beta.to_string();
  return {r, ok ? kExitOk : kExitPropertyFailed};
}

std::string quote(const std::string& s) { return Json(s).dump(); }

std::string timestamp() {
  auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

}  // namespace

std::string hasse_dot(const FSemilattice& a, bool with_actions) {
  std::ostringstream os;
  os << "digraph hasse {\n  rankdir=BT;\n";
  for (Index x = 0; x < a.size(); ++x) os << "  n" << x << " [label=" << quote(a.label(x)) << "];\n";
  for (auto [lo, hi] : cover_edges(a)) os << "  n" << lo << " -> n" << hi << ";\n";
  if (with_actions) {
    for (std::size_t i = 0; i < a.action().size(); ++i) {
      for (Index x = 0; x < a.size(); ++x) {
        if (a.gen(i, x) == x) continue;
        os << "  n" << x << " -> n" << a.gen(i, x) << " [style=dashed, constraint=false, label=\"g" << i
           << "\"];\n";
      }
    }
  }
  os << "}\n";
  return os.str();
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Semilattices over abelian groups: build, validate and verify.", "fslc"};
  app.require_subcommand(1);

  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", common.out_path, "Write the report here instead of stdout");
    sub->add_flag("--meta", common.meta, "Print a timestamp to stderr");
  };

  std::string orders, algebra_path, generator, qi_text, alpha, beta, dot_path;
  std::size_t limit = kDefaultCongruenceLimit, bound = kDefaultBlockBound, samples = 64;
  bool actions = false;
  BuildArgs build_args;

  auto* group = app.add_subcommand("group", "Group utilities");
  group->require_subcommand(1);
  auto* subs = group->add_subcommand("subgroups", "List all subgroups");
  subs->add_option("--orders", orders, "Cyclic factor orders, e.g. 2,4")->required();
  add_common(subs);

  auto* build = app.add_subcommand("build", "Emit a construction as JSON");
  build->require_subcommand(1);
  std::string build_kind;
  for (const char* kind : {"maroti", "twisted", "ak", "two-element"}) {
    auto* b = build->add_subcommand(kind);
    b->callback([&build_kind, kind] { build_kind = kind; });
    add_common(b);
    if (std::string(kind) == "ak") {
      b->add_option("--k", build_args.k, "Number of atoms")->required();
      continue;
    }
    b->add_option("--orders", build_args.orders, "Cyclic factor orders")->required();
    if (std::string(kind) == "two-element") continue;
    b->add_option("--subgroup", build_args.subgroup, "Generators of the subgroup, e.g. \"2\" or \"1,0;0,2\"");
    if (std::string(kind) == "twisted") {
      b->add_option("--transversal", build_args.transversal,
                    "normalized (default), greatest, or explicit representatives \"v1;v2\"");
      b->add_option("--u", build_args.u, "one or chain2");
    }
  }

  auto* validate = app.add_subcommand("validate", "Check the axioms");
  validate->add_option("--algebra", algebra_path)->required();
  add_common(validate);

  auto* hasse = app.add_subcommand("hasse", "Hasse diagram in DOT");
  hasse->add_option("--algebra", algebra_path)->required();
  hasse->add_option("--dot", dot_path, "DOT output path (stdout when omitted)");
  hasse->add_flag("--actions", actions, "Draw generator actions as dashed arcs");
  add_common(hasse);

  auto* check_min = app.add_subcommand("check-minimal", "Decide minimality of a 1-generated algebra");
  check_min->add_option("--algebra", algebra_path)->required();
  check_min->add_option("--generator", generator)->required();
  add_common(check_min);

  auto* bij = app.add_subcommand("verify-bijection", "Subgroups versus minimal algebras");
  bij->add_option("--orders", orders)->required();
  add_common(bij);

  auto* quasi = app.add_subcommand("quasi", "Model-check a quasi-identity");
  quasi->add_option("--algebra", algebra_path)->required();
  quasi->add_option("--qi", qi_text)->required();
  add_common(quasi);

  auto* dec = app.add_subcommand("decompose", "Recover (K, U) from a minimal algebra");
  dec->add_option("--algebra", algebra_path)->required();
  dec->add_option("--generator", generator)->required();
  dec->add_option("--bound", bound, "Largest number of translates in the coset check");
  add_common(dec);

  auto* simp = app.add_subcommand("simplicity", "Congruences and quotient checks");
  simp->add_option("--algebra", algebra_path)->required();
  simp->add_option("--generator", generator)->required();
  simp->add_option("--limit", limit, "Largest carrier for congruence enumeration");
  add_common(simp);

  auto* bal = app.add_subcommand("balpha", "Separate B_alpha from B_beta");
  bal->add_option("--alpha", alpha)->required();
  bal->add_option("--beta", beta)->required();
  bal->add_option("--samples", samples, "Sample points per algebra");
  add_common(bal);

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Outcome result;
  try {
    if (subs->parsed()) {
      result = cmd_subgroups(orders);
    } else if (build->parsed()) {
      result = cmd_build(build_kind, build_args);
    } else if (bij->parsed()) {
      result = cmd_verify_bijection(orders);
    } else if (bal->parsed()) {
      result = cmd_balpha(alpha, beta, samples);
    } else {
      auto a = load_algebra(algebra_path);
      if (validate->parsed()) {
        result = cmd_validate(a);
      } else if (hasse->parsed()) {
        require_valid(a);
        result.text = hasse_dot(a, actions);
        if (!dot_path.empty()) {
          std::ofstream f(dot_path);
          if (!f || !(f << result.text)) throw ParseError("cannot write " + dot_path);
          result.text.clear();
          result.report["nodes"] = a.size();
          result.report["edges"] = cover_edges(a).size();
          result.report["dot"] = dot_path;
        }
      } else if (check_min->parsed()) {
        result = cmd_check_minimal(a, find_generator(a, generator));
      } else if (quasi->parsed()) {
        result = cmd_quasi(a, qi_text);
      } else if (dec->parsed()) {
        result = cmd_decompose(a, find_generator(a, generator), bound);
      } else if (simp->parsed()) {
        result = cmd_simplicity(a, find_generator(a, generator), limit);
      }
    }
  } catch (const VerificationError& e) {
    err << "verification failed: " << e.what() << '\n';
    return kExitPropertyFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  std::string payload = result.text.empty() ? dump(result.report) : result.text;
  if (common.out_path.empty()) {
    out << payload;
  } else {
    std::ofstream f(common.out_path);
    if (!f || !(f << payload)) {
      err << "error: cannot write " << common.out_path << '\n';
      return kExitUsage;
    }
  }
  if (common.meta) err << "{\"generated_at\": " << quote(timestamp()) << "}\n";
  return result.code;
}

}  // namespace fsl::cli
