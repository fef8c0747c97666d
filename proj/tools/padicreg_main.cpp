// padicreg: command-line front end. One verb per invocation; every report is
// a JSON document on stdout (or --output). Exit codes: 0 ok, 2 verification
// failure, 3 precondition error, 4 schema error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "padicreg/io.hpp"
#include "padicreg/selftest.hpp"
#include "padicreg/simplex.hpp"

using namespace padicreg;
using io::Json;

namespace {

struct Common {
  std::optional<std::uint64_t> p;
  std::optional<int> m;
  std::optional<int> d;
  std::string modulus;
  std::optional<int> e;
  std::optional<int> s;
  std::optional<int> n;
  std::optional<int> target;
  std::optional<int> degree_cap;
  std::string input;
  std::string output;
};

int default_target() {
  if (const char* env = std::getenv("PADICREG_TARGET")) {
    try {
      const int t = std::stoi(env);
      if (t >= 1) return t;
    } catch (const std::exception&) {
    }
    throw SchemaError("PADICREG_TARGET must be a positive integer");
  }
  return 6;
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw SchemaError("not an integer list: " + text);
    }
  }
  return out;
}

void add_common(CLI::App* app, Common& c) {
  app->add_option("--p", c.p, "prime");
  app->add_option("--M", c.m, "working precision (digits)");
  app->add_option("--d", c.d, "unramified degree");
  app->add_option("--modulus", c.modulus, "comma-separated monic modulus, low degree first");
  app->add_option("--e", c.e, "congruence level");
  app->add_option("--s", c.s, "cocycle degree parameter");
  app->add_option("--N", c.n, "matrix size");
  app->add_option("--target", c.target, "target precision (default $PADICREG_TARGET or 6)");
  app->add_option("--degree-cap", c.degree_cap, "override the truncation degree");
  app->add_option("--input", c.input, "input JSON file");
  app->add_option("--output", c.output, "write the report here instead of stdout");
}

int target_of(const Common& c) { return c.target ? *c.target : default_target(); }

EvalOptions options_of(const Common& c) {
  EvalOptions o;
  if (c.degree_cap) o.degree_cap = *c.degree_cap;
  return o;
}

/// Tuple input: flags override JSON fields; a missing M is filled in with the
/// precision the evaluation needs.
GroupTuple load_tuple(const Common& c) {
  if (c.input.empty()) throw SchemaError("--input is required");
  Json j = io::read_file(c.input);
  if (!j.is_object()) throw SchemaError("tuple input must be a JSON object");
  if (c.p) j["p"] = *c.p;
  if (c.e) j["e"] = *c.e;
  if (c.s) j["s"] = *c.s;
  if (c.n) j["N"] = *c.n;
  if (c.d) j["d"] = *c.d;
  if (!c.modulus.empty()) j["modulus"] = parse_int_list(c.modulus);
  if (c.m) j["M"] = *c.m;
  if (!j.contains("M")) {
    if (!j.contains("p") || !j.contains("e") || !j.contains("s")) throw SchemaError("tuple needs p, e and s");
    j["M"] = eval_work_precision(target_of(c), j["e"].get<int>(), j["s"].get<int>(), j["p"].get<std::uint64_t>(),
                                 options_of(c));
  }
  return io::tuple_from_json(j);
}

void emit(const Common& c, const Json& report) {
  const std::string text = report.dump(2) + "\n";
  if (c.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(c.output);
  if (!out) throw SchemaError("cannot write " + c.output);
  out << text;
}

Json eval_report(const EvalResult& r) {
  Json j;
  j["value"] = io::to_json(r.value);
  j["degree_cap"] = r.degree_cap;
  j["work_precision"] = r.work_precision;
  return j;
}

int verdict(const Common& c, Json report, bool ok) {
  report["status"] = ok ? "verified" : "failed";
  emit(c, report);
  return ok ? 0 : static_cast<int>(ErrorCode::kVerificationFailure);
}

Json defect_json(std::int64_t v) {
  if (v == kInfiniteValuation) return "inf";
  return v;
}

std::vector<int> parse_exponents(const std::string& text) {
  std::vector<int> a;
  for (auto v : parse_int_list(text)) a.push_back(static_cast<int>(v));
  return a;
}

}  // namespace

int main(int argc, char** argv) {
  // "regulator pair" and "regulator rnf" are accepted as two words.
  std::vector<std::string> args(argv, argv + argc);
  if (args.size() >= 3 && args[1] == "regulator" && (args[2] == "pair" || args[2] == "rnf")) {
    args[1] = "regulator-" + args[2];
    args.erase(args.begin() + 2);
  }
  std::vector<char*> cargs;
  for (auto& a : args) cargs.push_back(a.data());

  CLI::App app{"p-adic regulator toolkit"};
  app.require_subcommand(1);
  Common c;

  auto* eval = app.add_subcommand("cocycle-eval", "value of the cocycle on a 2s-tuple");
  add_common(eval, c);
  bool literal_power = false;
  eval->add_flag("--literal-power", literal_power, "multiply out the power of nu^-1 dnu directly");

  auto* check = app.add_subcommand("cocycle-check", "alternating face sum on a (2s+1)-tuple");
  add_common(check, c);

  auto* inv = app.add_subcommand("invariance-check", "translation / conjugation invariance");
  add_common(inv, c);
  std::string mode;
  inv->add_option("--mode", mode, "translate | conjugate (default: the input's 'mode')");

  auto* gal = app.add_subcommand("galois-check", "Frobenius equivariance");
  add_common(gal, c);

  auto* integ = app.add_subcommand("simplex-integrate", "exact integral of a monomial top form");
  add_common(integ, c);
  std::string exps;
  int omit = 0;
  std::optional<int> substitute;
  integ->add_option("--a", exps, "exponents, comma-separated")->required();
  integ->add_option("--omit", omit, "index of the missing dx");
  integ->add_option("--oracle", substitute, "also run the iterated-integral oracle eliminating this index");

  auto* stokes = app.add_subcommand("simplex-stokes", "both sides of Stokes for a monomial form");
  add_common(stokes, c);
  int u = 0, v = 0;
  stokes->add_option("--a", exps, "exponents, comma-separated")->required();
  stokes->add_option("--u", u, "first missing index")->required();
  stokes->add_option("--v", v, "second missing index")->required();

  std::string group_file, chain_file, config_file;
  auto* tapply = app.add_subcommand("transfer-apply", "chain-level transfer to the subgroup");
  add_common(tapply, c);
  tapply->add_option("--group", group_file, "group JSON")->required();
  tapply->add_option("--chain", chain_file, "chain JSON")->required();

  auto* tcheck = app.add_subcommand("transfer-check", "chain-map and factorisation identities");
  add_common(tcheck, c);
  tcheck->add_option("--group", group_file, "group JSON")->required();
  tcheck->add_option("--chain", chain_file, "chain JSON")->required();

  bool allow_non_cycle = false;
  auto* rpair = app.add_subcommand("regulator-pair", "pair a cycle in G_{N,e} with the cocycle");
  add_common(rpair, c);
  rpair->add_option("--config", config_file, "config JSON")->required();
  rpair->add_option("--chain", chain_file, "chain JSON")->required();
  rpair->add_flag("--allow-non-cycle", allow_non_cycle, "pair even when the boundary is nonzero");

  auto* rnf = app.add_subcommand("regulator-rnf", "transfer, pair and divide by the index");
  add_common(rnf, c);
  rnf->add_option("--config", config_file, "config JSON")->required();
  rnf->add_option("--chain", chain_file, "chain JSON")->required();

  auto* logc = app.add_subcommand("log", "p-adic logarithm of an element of O_F");
  add_common(logc, c);
  std::string value;
  bool extend = false;
  logc->add_option("--value", value, "coefficients, comma-separated, low degree first")->required();
  logc->add_flag("--extend", extend, "homomorphic extension to all units");

  auto* absval = app.add_subcommand("absval", "Q_p-valued absolute values of a rational");
  add_common(absval, c);
  std::string x_text;
  std::optional<std::uint64_t> place;
  bool check_product = false;
  absval->add_option("--x", x_text, "nonzero rational, e.g. 6 or -3/7")->required();
  absval->add_option("--place", place, "a single prime place (default: every relevant place)");
  absval->add_flag("--check-product", check_product, "verify the product formula");

  auto* self = app.add_subcommand("selftest", "quick invariant suite");
  add_common(self, c);

  try {
    try {
      app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::ParseError& ex) {
      const int rc = app.exit(ex);
      return rc == 0 ? 0 : static_cast<int>(ErrorCode::kSchema);
    }

    if (eval->parsed()) {
      auto opts = options_of(c);
      opts.literal_power = literal_power;
      const GroupTuple t = load_tuple(c);
      emit(c, eval_report(cocycle_eval(t, target_of(c), opts)));
      return 0;
    }
    if (check->parsed()) {
      const GroupTuple t = load_tuple(c);
      const auto dv = cocycle_defect(t, target_of(c), options_of(c));
      return verdict(c, Json{{"defect_valuation", defect_json(dv)}, {"target", target_of(c)}}, dv >= target_of(c));
    }
    if (inv->parsed()) {
      const GroupTuple t = load_tuple(c);
      const Json j = io::read_file(c.input);
      if (mode.empty()) mode = j.value("mode", std::string("translate"));
      if (mode != "translate" && mode != "conjugate") throw SchemaError("mode must be translate or conjugate");
      const OMatrix y1 = io::matrix_from_json(j.at("y1"), t.params);
      const OMatrix y2 = j.contains("y2") ? io::matrix_from_json(j.at("y2"), t.params) : OMatrix::identity(t.params, t.matrix_size());
      const auto dv = invariance_defect(t, y1, y2, mode == "translate" ? InvarianceMode::kTranslate : InvarianceMode::kConjugate,
                                        target_of(c), options_of(c));
      return verdict(c, Json{{"mode", mode}, {"defect_valuation", defect_json(dv)}, {"target", target_of(c)}},
                     dv >= target_of(c));
    }
    if (gal->parsed()) {
      const GroupTuple t = load_tuple(c);
      const auto dv = galois_defect(t, target_of(c), options_of(c));
      return verdict(c, Json{{"defect_valuation", defect_json(dv)}, {"target", target_of(c)}}, dv >= target_of(c));
    }
    if (integ->parsed()) {
      const auto a = parse_exponents(exps);
      const int n = static_cast<int>(a.size()) - 1;
      Json j{{"a", a}, {"omit", omit}, {"n", n}, {"value", simplex::to_string(simplex::integrate_monomial(a, omit, n))}};
      if (substitute) j["oracle"] = simplex::to_string(simplex::iterated_integral_oracle(a, *substitute, n));
      emit(c, j);
      return 0;
    }
    if (stokes->parsed()) {
      const auto a = parse_exponents(exps);
      const auto sides = simplex::stokes_check(a, u, v);
      return verdict(c,
                     Json{{"a", a}, {"u", u}, {"v", v}, {"boundary", simplex::to_string(sides.boundary)},
                          {"interior", simplex::to_string(sides.interior)}},
                     sides.boundary == sides.interior);
    }
    if (tapply->parsed() || tcheck->parsed()) {
      const Json g = io::read_file(group_file);
      const Json ch = io::read_file(chain_file);
      const std::string kind = g.value("kind", std::string());
      Json report;
      bool ok = true;
      if (kind == "permutation") {
        const auto cosets = io::permutation_cosets_from_json(g);
        const auto chain = io::permutation_chain_from_json(ch, cosets.group().degree());
        if (tapply->parsed()) {
          report = io::to_json(transfer(cosets, chain));
        } else {
          const bool cm = chain.degree < 1 || check_chain_map(cosets, chain);
          const bool fc = factorization_check(cosets, chain);
          report = Json{{"chain_map", cm}, {"factorization", fc}};
          ok = cm && fc;
        }
      } else if (kind == "matrix") {
        const auto cosets = io::matrix_cosets_from_json(g);
        const auto chain = io::matrix_chain_from_json(ch, cosets.group().params());
        if (tapply->parsed()) {
          report = io::to_json(transfer(cosets, chain));
        } else {
          const bool cm = chain.degree < 1 || check_chain_map(cosets, chain);
          const bool fc = factorization_check(cosets, chain);
          report = Json{{"chain_map", cm}, {"factorization", fc}};
          ok = cm && fc;
        }
      } else {
        throw SchemaError("group kind must be 'permutation' or 'matrix'");
      }
      if (tapply->parsed()) {
        emit(c, report);
        return 0;
      }
      return verdict(c, report, ok);
    }
    if (rpair->parsed() || rnf->parsed()) {
      RegulatorConfig cfg = io::config_from_json(io::read_file(config_file));
      if (c.target) cfg.target = *c.target;
      else if (!io::read_file(config_file).contains("target")) cfg.target = default_target();
      cfg.validate();
      const int precision = rpair->parsed() ? pairing_precision(cfg, cfg.target) : regulator_precision(cfg);
      const RingParams params(cfg.p, precision, cfg.modulus);
      const MatrixGroup group(params, cfg.n, cfg.e);
      const auto chain = io::matrix_chain_from_json(io::read_file(chain_file), params);
      Json report;
      if (rpair->parsed()) {
        report["value"] = io::to_json(pair(cfg, group, chain, cfg.target, !allow_non_cycle));
      } else {
        const QpElem r = regulator_nf(cfg, group, chain);
        report["index"] = group_index(cfg.n, cfg.p, cfg.d, cfg.e).get_str();
        report["value"] = io::to_json(r);
        report["normalization"] = simplex::to_string(normalization_constant(cfg.s));
        report["normalized"] = io::to_json(hat_r(cfg.s, r));
      }
      report["target"] = cfg.target;
      emit(c, report);
      return 0;
    }
    if (logc->parsed()) {
      if (!c.p || !c.m) throw SchemaError("log needs --p and --M");
      std::vector<std::int64_t> modulus;
      if (!c.modulus.empty()) modulus = parse_int_list(c.modulus);
      const RingParams params(*c.p, *c.m, modulus);
      const auto coeffs = parse_int_list(value);
      if (coeffs.size() != static_cast<std::size_t>(params.degree())) throw SchemaError("--value needs d coefficients");
      std::vector<mpz_class> big;
      for (auto x : coeffs) big.emplace_back(std::to_string(x));
      const RingElem x = RingElem::from_mpz_coeffs(params, big);
      QpElem v = extend ? extend_log(x) : padic_log(x);
      if (c.target) v = v.with_absolute_precision(*c.target);
      emit(c, Json{{"value", io::to_json(v)}});
      return 0;
    }
    if (absval->parsed()) {
      if (!c.p) throw SchemaError("absval needs --p");
      mpq_class x;
      if (x.set_str(x_text, 10) != 0) throw SchemaError("not a rational: " + x_text);
      x.canonicalize();
      const int target = target_of(c);
      const int precision = c.m ? *c.m : target + 4;
      Json places = Json::array();
      const auto values = place ? std::vector<PlaceValue>{abs_value_q(x, place, *c.p, precision)}
                                : all_places(x, *c.p, precision);
      for (const auto& pv : values) {
        Json j;
        if (pv.place) j["place"] = *pv.place;
        else j["place"] = "inf";
        j["exact"] = simplex::to_string(pv.exact);
        if (pv.value) j["value"] = io::to_json(*pv.value);
        else j["sign"] = pv.sign;
        places.push_back(j);
      }
      Json report{{"x", simplex::to_string(x)}, {"p", *c.p}, {"places", places}};
      if (!check_product) {
        emit(c, report);
        return 0;
      }
      const auto pf = product_formula_check(x, *c.p, target);
      report["product_exactly_one"] = pf.exact_one;
      report["finite_product_times_sign_one"] = pf.finite_times_sign_one;
      report["log_sum_valuation"] = pf.log_sum_valuation;
      report["target"] = target;
      return verdict(c, report, pf.exact_one && pf.finite_times_sign_one && pf.log_sum_valuation >= target);
    }
    if (self->parsed()) {
      Json results = Json::array();
      bool ok = true;
      for (const auto& r : run_selftest()) {
        results.push_back(Json{{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
        ok = ok && r.passed;
      }
      return verdict(c, Json{{"checks", results}}, ok);
    }
  } catch (const Error& ex) {
    Json err{{"status", "error"}, {"code", static_cast<int>(ex.code())}, {"message", ex.what()}};
    std::cout << err.dump(2) << "\n";
    return static_cast<int>(ex.code());
  } catch (const std::exception& ex) {
    Json err{{"status", "error"}, {"code", static_cast<int>(ErrorCode::kSchema)}, {"message", ex.what()}};
    std::cout << err.dump(2) << "\n";
    return static_cast<int>(ErrorCode::kSchema);
  }
  return 0;
}
