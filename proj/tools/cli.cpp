#include "cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "lva/autgrp.hpp"
#include "lva/cover.hpp"
#include "lva/errors.hpp"
#include "lva/fock.hpp"
#include "lva/lattice.hpp"
#include "lva/vertex.hpp"

namespace lva::cli {

namespace {

using nlohmann::ordered_json;

std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

// Line on which each row of the "gram" array starts, found by a bracket scan
// of the raw text. Used only for diagnostics.
std::vector<std::size_t> gram_row_lines(const std::string& text) {
  std::vector<std::size_t> lines;
  const auto key = text.find("\"gram\"");
  if (key == std::string::npos) return lines;
  std::size_t line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + key, '\n'));
  int depth = 0;
  bool in_string = false;
  for (std::size_t i = key + 6; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '\n') ++line;
    if (c == '"') in_string = !in_string;
    if (in_string) continue;
    if (c == '[') {
      if (++depth == 2) lines.push_back(line);
    } else if (c == ']') {
      if (--depth == 0) break;
    }
  }
  return lines;
}

std::string where(const std::string& origin, const std::vector<std::size_t>& row_lines, std::size_t row) {
  if (row < row_lines.size()) return origin + ":" + std::to_string(row_lines[row]) + ": ";
  return origin + ": ";
}

ordered_json integer_json(const Integer& n) {
  if (n.fits_slong_p()) return n.get_si();
  return n.get_str();
}

ordered_json vector_json(const LatticeVector& v) { return v.coords; }

ordered_json matrix_json(const IntMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    ordered_json r = ordered_json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
    rows.push_back(std::move(r));
  }
  return rows;
}

ordered_json check_json(const CheckRecord& c) {
  ordered_json j;
  j["name"] = c.name;
  j["anchor"] = c.anchor;
  j["instances"] = c.instances;
  j["failures"] = c.failures;
  j["verdict"] = c.passed() ? "pass" : "fail";
  j["counterexample"] = c.passed() ? ordered_json(nullptr) : ordered_json(c.counterexample);
  return j;
}

CheckRecord single(std::string name, std::string anchor, bool ok, const std::string& witness) {
  CheckRecord r{std::move(name), std::move(anchor)};
  r.record(ok, witness);
  return r;
}

struct Context {
  const RunConfig& cfg;
  Report& report;
  ordered_json& results;
  std::vector<CheckRecord> checks;
  bool cap_hit = false;
  bool refused = false;
};

long long or_default(long long v, long long d) { return v < 0 ? d : v; }

// ---------------------------------------------------------------- analyze

void run_analyze(Context& ctx, const Lattice& l) {
  auto& res = ctx.results;
  const auto phi = roots(l);
  std::size_t positive = 0;
  for (const auto& a : phi) positive += is_positive(a) ? 1 : 0;
  const auto type = cartan_type(l);
  const Integer predicted = weyl_order_from_type(type);

  res["determinant"] = integer_json(l.determinant());
  res["roots"] = phi.size();
  res["positive_roots"] = positive;
  ordered_json simple = ordered_json::array();
  for (const auto& a : simple_roots(l)) simple.push_back(vector_json(a));
  res["simple_roots"] = simple;
  ordered_json ct = ordered_json::array();
  for (const auto& c : type) ct.push_back({{"type", std::string(1, c.type)}, {"rank", c.rank}});
  res["cartan_type"] = ct;
  res["weyl_order_from_type"] = integer_json(predicted);

  try {
    const RootDatum rd = root_datum(l);
    res["root_datum"] = {{"root_span_rank", rd.root_span_rank}, {"semisimple", rd.semisimple}, {"reduced", rd.reduced}};
    ctx.checks.push_back(single("root-datum", "root-datum/axioms", true, {}));
  } catch (const DomainError& e) {
    res["root_datum"] = nullptr;
    ctx.checks.push_back(single("root-datum", "root-datum/axioms", false, e.what()));
  }

  const Integer weight_one = graded_dimension(l, 1);
  res["weight_one_dimension"] = integer_json(weight_one);
  ctx.checks.push_back(single("weight-one-roots", "lattice/roots-span-weight-one",
                              weight_one == Integer(static_cast<long>(phi.size() + l.rank())),
                              "dim V_1 = " + weight_one.get_str() + " but |roots| + rank = " +
                                  std::to_string(phi.size() + l.rank())));

  const std::size_t cap = default_group_cap();
  res["group_cap"] = cap;
  try {
    const auto w = weyl_group(l, cap);
    res["weyl_order"] = w.order();
    ctx.checks.push_back(single("weyl-order", "lattice/weyl-order-from-type",
                                Integer(static_cast<unsigned long>(w.order())) == predicted,
                                "closure " + std::to_string(w.order()) + " vs type " + predicted.get_str()));
    const auto o = orthogonal_group(l, cap);
    res["orthogonal_order"] = o.order();
    CheckRecord sub{"weyl-in-orthogonal", "lattice/weyl-subgroup-of-orthogonal"};
    for (const auto& g : w.elements()) sub.record(o.contains(g), "Weyl element not in O(L)");
    ctx.checks.push_back(sub);
    const auto outer = outer_classes(w, o);
    res["outer_classes"] = outer.size();
    ordered_json reps = ordered_json::array();
    for (const auto& m : outer) reps.push_back(matrix_json(m));
    res["outer_representatives"] = reps;
    ctx.checks.push_back(single("outer-index", "lattice/outer-classes-index", outer.size() * w.order() == o.order(),
                                std::to_string(outer.size()) + " * " + std::to_string(w.order()) +
                                    " != " + std::to_string(o.order())));
  } catch (const ResourceCapExceeded& e) {
    // O(L) contains W(L), so it cannot fit under a cap that W already exceeds.
    res["weyl_order"] = nullptr;
    res["orthogonal_order"] = nullptr;
    res["outer_classes"] = nullptr;
    res["resource_cap"] = e.what();
    ctx.cap_hit = true;
  }
}

// ---------------------------------------------------------- verify-axioms

void run_verify_axioms(Context& ctx, const Lattice& l, const Ring& ring) {
  AxiomSuiteConfig sc;
  sc.max_weight = ctx.cfg.max_weight;
  sc.max_mode = ctx.cfg.max_mode;
  sc.samples = static_cast<std::size_t>(ctx.cfg.samples);
  sc.seed = ctx.cfg.seed;
  sc.threads = ctx.cfg.threads;

  const LatticeVertexAlgebra va(l);
  ctx.results["basis_size"] = truncation_basis(l, sc.max_weight).size();
  ctx.results["mode"] = sc.samples == 0 ? "exhaustive" : "sampled";
  ctx.results["arithmetic"] = "Q";
  const auto rep = axiom_suite(va, sc);
  for (const auto* r : rep.records()) ctx.checks.push_back(*r);

  if (ring.kind() != RingKind::rationals) {
    // Identities hold over any ring once the Z-form is closed under all modes.
    ctx.results["integral_form"] = {{"depth_bound", "2*weight"}};
    ctx.checks.push_back(zform_closure_check(va, sc.max_weight, sc.max_mode, sc.samples, sc.seed));
  }
}

// ------------------------------------------------------------ graded-dims

void run_graded_dims(Context& ctx, const Lattice& l) {
  const long long top = ctx.cfg.max_weight;
  const auto theta = theta_coefficients(l, top);
  const auto parts = colored_partitions(l.rank(), top);
  ordered_json rows = ordered_json::array();
  CheckRecord rec{"graded-dimension", "fock/graded-dimension-generating-function"};
  for (long long w = 0; w <= top; ++w) {
    const Integer oracle = graded_dimension(l, w);
    const auto enumerated = weight_basis(l, w).size();
    rows.push_back({{"weight", w}, {"oracle", integer_json(oracle)}, {"enumerated", enumerated}});
    rec.record(oracle == Integer(static_cast<unsigned long>(enumerated)),
               "weight " + std::to_string(w) + ": oracle " + oracle.get_str() + ", enumerated " +
                   std::to_string(enumerated));
  }
  ordered_json th = ordered_json::array(), cp = ordered_json::array();
  for (const auto& t : theta) th.push_back(integer_json(t));
  for (const auto& p : parts) cp.push_back(integer_json(p));
  ctx.results["theta_coefficients"] = th;
  ctx.results["colored_partitions"] = cp;
  ctx.results["dimensions"] = rows;
  ctx.checks.push_back(rec);
}

// -------------------------------------------------------------- aut-report

void run_aut_report(Context& ctx, const Lattice& l, const Ring& ring) {
  const long long N = ctx.cfg.truncation;
  if (N < 1) throw InputError("--truncation must be at least 1");
  const auto samples = static_cast<std::size_t>(ctx.cfg.samples);
  const long long aut_weight = ctx.cfg.max_weight;
  const LatticeVertexAlgebra va(l);
  auto& res = ctx.results;

  const auto mt = main_theorem_report(va, N, N == 1 ? 2 : 0, samples, ctx.cfg.seed);
  res["cartan_type"] = mt.cartan_type;
  res["truncation"] = mt.truncation;
  res["cross_check_truncation"] = mt.cross_check_truncation;
  res["truncation_dimension"] = mt.truncation_dimension;
  res["orders"] = {{"roots", mt.roots},
                   {"weyl", mt.weyl_order},
                   {"orthogonal", mt.orthogonal_order},
                   {"outer_classes", mt.outer_classes},
                   {"cover_image", mt.cover_order},
                   {"cover_kernel", mt.cover_kernel_order},
                   {"tits", mt.tits_order},
                   {"weyl_preimage", mt.weyl_preimage_order},
                   {"quotient", mt.quotient_order}};
  for (const auto& c : mt.checks) ctx.checks.push_back(c);

  const auto tr = tits_relations(va, N, samples, ctx.cfg.seed);
  ctx.checks.push_back(tr.square);
  ctx.checks.push_back(tr.conjugation);
  ctx.checks.push_back(tr.sector_map);

  const CoverGroup cg = cover_group(ring, l);
  res["cover_group"] = {{"ring", ring.token()},
                        {"mu2_order", cg.mu2_order},
                        {"order", cg.order()},
                        {"kernel_order", cg.kernel_order},
                        {"image_order", cg.image_order},
                        {"closed", cg.closed},
                        {"exact", cg.exact}};
  std::size_t expected_kernel = 1;
  for (std::size_t i = 0; i < l.rank(); ++i) expected_kernel *= cg.mu2_order;
  ctx.checks.push_back(single("cover-exact-sequence", "cover/kernel-and-image",
                              cg.closed && cg.exact && cg.kernel_order == expected_kernel,
                              "kernel " + std::to_string(cg.kernel_order) + ", image " +
                                  std::to_string(cg.image_order) + ", |O(L)| " +
                                  std::to_string(cg.orthogonal_order)));

  // Automorphism checks on representatives of each constructed family.
  std::vector<AutAction> actions;
  std::vector<Rational> vals;
  for (std::size_t i = 0; i < l.rank(); ++i) vals.push_back(make_rational(static_cast<long long>(i) + 2, 3));
  actions.push_back(AutAction::torus(TorusCharacter{vals}));
  for (const auto& a : simple_roots(l)) {
    actions.push_back(AutAction::root_exp(RootGroupElement{a, make_rational(1)}, "root-exp[" + a.str() + "]"));
  }
  const auto o = orthogonal_group(l);
  const Ring q = Ring::rationals();
  std::vector<RingElement> minus_first(l.rank(), q.one());
  minus_first[0] = q.from_int(-1);
  for (std::size_t k = 0; k < o.order() && k < 4; ++k) {
    actions.push_back(AutAction::cover(lift_orthogonal(q, va.cocycle_ptr(), o.elements()[k], minus_first),
                                       "cover[" + std::to_string(k) + "]"));
  }
  for (const auto& a : actions) ctx.checks.push_back(is_vertex_automorphism(va, a, aut_weight, 0, ctx.cfg.seed));

  if (const auto h = find_twisting_isometry(l)) {
    const AutAction bad = AutAction::uncorrected(UncorrectedCover{*h, std::vector<int>(l.rank(), 1)});
    const CheckRecord r = is_vertex_automorphism(va, bad, aut_weight, 0, ctx.cfg.seed);
    CheckRecord neg{"negative-control", "cover/cocycle-correction-required"};
    neg.record(!r.passed(), "the uncorrected lift of " + matrix_json(*h).dump() + " passed every check");
    res["negative_control"] = {{"isometry", matrix_json(*h)}, {"failures_detected", r.failures}};
    ctx.checks.push_back(neg);
  } else {
    res["negative_control"] = nullptr;
  }
}

// --------------------------------------------------------------- conformal

void run_conformal(Context& ctx, const Lattice& l, const Ring& ring) {
  auto& res = ctx.results;
  const ConformalResult cr = conformal_vector(l, ring);
  res["ring"] = ring.token();
  res["determinant"] = integer_json(cr.determinant);
  res["determinant_is_unit"] = cr.determinant_is_unit;
  res["omega"] = cr.omega.str();
  res["c"] = cr.half_charge.get_str();
  res["exists"] = cr.ok;
  res["criterion_failures"] = cr.failures;
  if (!cr.ok) {
    res["refusal"] = cr.reason;
    ctx.refused = true;
    return;
  }
  ordered_json in_ring = ordered_json::object();
  for (const auto& [s, c] : cr.omega_in_ring) in_ring[s.str()] = c.value().get_str();
  res["omega_in_ring"] = in_ring;

  const LatticeVertexAlgebra va(l);
  const long long mw = ctx.cfg.max_weight;
  res["virasoro_max_weight"] = mw;
  const auto vr = virasoro_check(va, ring, ctx.cfg.max_mode, mw, ctx.cfg.threads);
  ctx.checks.push_back(vr.bracket);
  ctx.checks.push_back(vr.l0_weight);
  ctx.checks.push_back(vr.l_minus1_translation);
  ctx.checks.push_back(vr.heisenberg_bracket);
}

// Fills the per-command defaults so that the echoed config is the one used.
RunConfig with_defaults(RunConfig c) {
  struct Defaults {
    const char* command;
    long long max_weight;
    long long samples;
  };
  static constexpr Defaults table[] = {
      {"analyze", 1, 0}, {"verify-axioms", 3, 0}, {"graded-dims", 6, 0}, {"aut-report", 1, 8}, {"conformal", 2, 0}};
  for (const auto& d : table) {
    if (c.command != d.command) continue;
    c.max_weight = or_default(c.max_weight, d.max_weight);
    c.samples = or_default(c.samples, d.samples);
  }
  return c;
}

ordered_json config_json(const RunConfig& c) {
  ordered_json j;
  j["lattice"] = c.lattice_source;
  j["ring"] = c.ring;
  j["max_weight"] = c.max_weight;
  j["max_mode"] = c.max_mode;
  j["truncation"] = c.truncation;
  j["samples"] = c.samples;
  j["seed"] = c.seed;
  return j;
}

}  // namespace

Lattice parse_lattice_text(const std::string& text, const std::string& origin) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
    std::string msg = e.what();
    if (const auto p = msg.find("syntax error"); p != std::string::npos) msg = msg.substr(p);
    throw InputError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
  }
  if (!doc.is_object()) throw InputError(origin + ":1: expected an object with fields 'name' and 'gram'");
  std::string name = "custom";
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw InputError(origin + ": field 'name' must be a string");
    name = doc["name"].get<std::string>();
  }
  if (!doc.contains("gram")) throw InputError(origin + ": missing field 'gram'");
  const auto& g = doc["gram"];
  const auto row_lines = gram_row_lines(text);
  if (!g.is_array() || g.empty()) throw InputError(origin + ": 'gram' must be a non-empty array of rows");
  const std::size_t n = g.size();
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!g[i].is_array() || g[i].size() != n) {
      throw InputError(where(origin, row_lines, i) + "gram row " + std::to_string(i + 1) + " must have " +
                       std::to_string(n) + " entries");
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (!g[i][j].is_number_integer()) {
        throw InputError(where(origin, row_lines, i) + "gram entry (" + std::to_string(i + 1) + "," +
                         std::to_string(j + 1) + ") is not an integer");
      }
      m(i, j) = g[i][j].get<long long>();
    }
  }
  if (const auto v = gram_violation(m)) throw InputError(where(origin, row_lines, v->row) + v->message);
  return Lattice(name, m);
}

Lattice parse_lattice_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open lattice file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_lattice_text(ss.str(), path);
}

Lattice resolve_lattice(const std::string& source) {
  if (Lattice::is_preset(source)) return Lattice::preset(source);
  if (std::filesystem::exists(source)) return parse_lattice_file(source);
  std::string names;
  for (const auto& p : Lattice::preset_names()) names += (names.empty() ? "" : ", ") + p;
  throw InputError("'" + source + "' is neither a preset (" + names + ") nor a readable file");
}

ExitCode run(const RunConfig& requested, Report& report) {
  const RunConfig config = with_defaults(requested);
  report = Report::object();
  report["artifact"] = "lvatool";
  report["version"] = kVersion;
  report["command"] = config.command;
  report["config"] = config_json(config);
  report["lattice"] = nullptr;
  report["results"] = ordered_json::object();
  report["checks"] = ordered_json::array();

  Context ctx{config, report, report["results"], {}};
  ExitCode code = ExitCode::ok;
  try {
    const Lattice l = resolve_lattice(config.lattice_source);
    const Ring ring = Ring::parse(config.ring);
    report["lattice"] = {{"name", l.name()},
                         {"rank", l.rank()},
                         {"gram", matrix_json(l.gram())},
                         {"determinant", integer_json(l.determinant())}};
    if (config.max_mode < 0) throw InputError("--max-mode must be non-negative");
    if (config.command == "analyze") {
      run_analyze(ctx, l);
    } else if (config.command == "verify-axioms") {
      run_verify_axioms(ctx, l, ring);
    } else if (config.command == "graded-dims") {
      run_graded_dims(ctx, l);
    } else if (config.command == "aut-report") {
      run_aut_report(ctx, l, ring);
    } else if (config.command == "conformal") {
      run_conformal(ctx, l, ring);
    } else {
      throw InputError("unknown command '" + config.command + "'");
    }
  } catch (const InputError& e) {
    report["error"] = e.what();
    report["verdict"] = "input-error";
    return ExitCode::input_error;
  } catch (const ResourceCapExceeded& e) {
    report["results"]["resource_cap"] = e.what();
    ctx.cap_hit = true;
  }

  bool all_pass = true;
  for (const auto& c : ctx.checks) {
    report["checks"].push_back(check_json(c));
    all_pass = all_pass && c.passed();
  }
  if (ctx.cap_hit) {
    report["verdict"] = "resource-cap";
    code = ExitCode::resource_cap;
  } else if (!all_pass) {
    report["verdict"] = "fail";
    code = ExitCode::check_failed;
  } else if (ctx.refused) {
    report["verdict"] = "refused";
  } else {
    report["verdict"] = "pass";
  }
  return code;
}

std::string render_text(const Report& report) {
  std::ostringstream out;
  out << report.value("artifact", "") << " " << report.value("version", "") << "  command: "
      << report.value("command", "") << "\n";
  if (report.contains("lattice") && report["lattice"].is_object()) {
    const auto& l = report["lattice"];
    out << "lattice: " << l["name"].get<std::string>() << "  rank " << l["rank"].dump() << "  gram "
        << l["gram"].dump() << "  det " << l["determinant"].dump() << "\n";
  }
  if (report.contains("error")) out << "error: " << report["error"].get<std::string>() << "\n";
  if (report.contains("results")) {
    for (const auto& [k, v] : report["results"].items()) {
      out << "  " << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  }
  if (report.contains("checks")) {
    for (const auto& c : report["checks"]) {
      const bool pass = c["verdict"] == "pass";
      out << (pass ? "[PASS] " : "[FAIL] ") << c["name"].get<std::string>() << "  ("
          << c["instances"].get<std::uint64_t>() << " instances, " << c["failures"].get<std::uint64_t>()
          << " failures)  " << c["anchor"].get<std::string>() << "\n";
      if (!pass) out << "       counterexample: " << c["counterexample"].get<std::string>() << "\n";
    }
  }
  out << "verdict: " << report.value("verdict", "") << "\n";
  if (report.contains("wall_time_seconds")) out << "wall time: " << report["wall_time_seconds"].dump() << " s\n";
  return out.str();
}

int run_and_emit(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.format != "text" && config.format != "structured" && config.format != "json") {
    err << "error: --format must be 'text' or 'structured'\n";
    return static_cast<int>(ExitCode::input_error);
  }
  Report report;
  const auto start = std::chrono::steady_clock::now();
  ExitCode code = run(config, report);
  if (config.timing) {
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
    report["wall_time_seconds"] = dt.count();
  }
  const std::string body = config.format == "text" ? render_text(report) : report.dump(2) + "\n";
  if (config.output.empty() || config.output == "-") {
    out << body;
  } else {
    std::ofstream f(config.output);
    if (!f) {
      err << "error: cannot write '" << config.output << "'\n";
      return static_cast<int>(ExitCode::input_error);
    }
    f << body;
  }
  if (code == ExitCode::input_error && report.contains("error")) err << "error: " << report["error"].get<std::string>() << "\n";
  return static_cast<int>(code);
}

}  // namespace lva::cli
