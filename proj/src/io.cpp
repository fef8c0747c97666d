#include "padicreg/io.hpp"

#include <fstream>
#include <sstream>

#include "padicreg/simplex.hpp"

namespace padicreg::io {

namespace {

const Json& field(const Json& j, const char* name) {
  if (!j.is_object()) throw SchemaError("expected a JSON object");
  const auto it = j.find(name);
  if (it == j.end()) throw SchemaError(std::string("missing field '") + name + "'");
  return *it;
}

template <class T>
T integer_field(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (!v.is_number_integer()) throw SchemaError(std::string("field '") + name + "' must be an integer");
  return v.get<T>();
}

mpz_class integer_value(const Json& v) {
  if (v.is_number_integer()) return mpz_class(std::to_string(v.get<std::int64_t>()));
  if (v.is_string()) {
    mpz_class r;
    if (r.set_str(v.get<std::string>(), 10) != 0) throw SchemaError("not a base-10 integer: " + v.get<std::string>());
    return r;
  }
  throw SchemaError("expected an integer or a decimal string");
}

}  // namespace

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    throw SchemaError(std::string("invalid JSON: ") + ex.what());
  }
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

RingParams ring_from_json(const Json& j, std::optional<int> precision) {
  const auto p = integer_field<std::uint64_t>(j, "p");
  const int m = precision ? *precision : integer_field<int>(j, "M");
  std::vector<std::int64_t> modulus;
  if (j.contains("modulus") && !j["modulus"].is_null()) {
    if (!j["modulus"].is_array()) throw SchemaError("modulus must be an array of integers");
    for (const auto& c : j["modulus"]) {
      if (!c.is_number_integer()) throw SchemaError("modulus must be an array of integers");
      modulus.push_back(c.get<std::int64_t>());
    }
  }
  if (j.contains("d")) {
    const int d = integer_field<int>(j, "d");
    const int implied = modulus.size() <= 2 ? 1 : static_cast<int>(modulus.size()) - 1;
    if (d != implied) throw SchemaError("d does not match the modulus degree");
  }
  return RingParams(p, m, modulus);
}

RingElem ring_elem_from_json(const Json& j, const RingParams& params) {
  if (j.is_array()) {
    if (j.size() != static_cast<std::size_t>(params.degree()))
      throw SchemaError("ring element needs exactly d coefficients");
    std::vector<mpz_class> cs;
    for (const auto& c : j) cs.push_back(integer_value(c));
    return RingElem::from_mpz_coeffs(params, cs);
  }
  return RingElem::from_mpz(params, integer_value(j));
}

OMatrix matrix_from_json(const Json& j, const RingParams& params) {
  if (!j.is_array() || j.empty()) throw SchemaError("matrix must be a non-empty array of rows");
  const int n = static_cast<int>(j.size());
  OMatrix m(params, n);
  for (int i = 0; i < n; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(n)) throw SchemaError("matrix must be square");
    for (int k = 0; k < n; ++k) m.set(i, k, ring_elem_from_json(row[static_cast<std::size_t>(k)], params));
  }
  return m;
}

GroupTuple tuple_from_json(const Json& j) {
  GroupTuple t{ring_from_json(j), integer_field<int>(j, "s"), integer_field<int>(j, "e"), {}};
  const int n = integer_field<int>(j, "N");
  const Json& elems = field(j, "elems");
  if (!elems.is_array()) throw SchemaError("elems must be an array of matrices");
  for (const auto& m : elems) {
    t.elems.push_back(matrix_from_json(m, t.params));
    if (t.elems.back().size() != n) throw SchemaError("matrix size differs from N");
  }
  return t;
}

RegulatorConfig config_from_json(const Json& j) {
  RegulatorConfig c;
  c.p = integer_field<std::uint64_t>(j, "p");
  if (j.contains("modulus")) {
    for (const auto& x : j["modulus"]) c.modulus.push_back(x.get<std::int64_t>());
  }
  c.d = c.modulus.size() <= 2 ? 1 : static_cast<int>(c.modulus.size()) - 1;
  if (j.contains("d") && integer_field<int>(j, "d") != c.d) throw SchemaError("d does not match the modulus degree");
  c.e = integer_field<int>(j, "e");
  c.s = integer_field<int>(j, "s");
  c.n = integer_field<int>(j, "N");
  if (j.contains("target")) c.target = integer_field<int>(j, "target");
  return c;
}

Json to_json(const RingElem& x) { return x.to_strings(); }

Json to_json(const QpElem& x) {
  Json out;
  out["zero"] = x.is_zero();
  if (x.is_zero()) {
    out["valuation"] = nullptr;
    if (x.is_exact_zero()) out["absolute_precision"] = nullptr;
    else out["absolute_precision"] = x.absolute_precision();
    out["unit"] = nullptr;
    out["relative_precision"] = 0;
  } else {
    out["valuation"] = x.valuation();
    out["absolute_precision"] = x.absolute_precision();
    out["unit"] = to_json(x.unit());
    out["relative_precision"] = x.relative_precision();
    // Base-p digits of each unit coefficient, least significant first.
    Json digits = Json::array();
    for (u64 c : x.unit().coeffs()) {
      Json ds = Json::array();
      for (int k = 0; k < x.relative_precision(); ++k) {
        ds.push_back(c % x.params().prime());
        c /= x.params().prime();
      }
      digits.push_back(ds);
    }
    out["digits"] = digits;
  }
  out["text"] = x.to_string();
  return out;
}

Json to_json(const OMatrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.size(); ++i) {
    Json row = Json::array();
    for (int k = 0; k < m.size(); ++k) {
      const RingElem x = m.at(i, k);
      if (m.params().degree() == 1) row.push_back(x.to_strings()[0]);
      else row.push_back(to_json(x));
    }
    rows.push_back(row);
  }
  return rows;
}

Json to_json(const GroupTuple& t) {
  Json out;
  out["p"] = t.params.prime();
  out["M"] = t.params.precision();
  out["d"] = t.params.degree();
  if (t.params.degree() > 1) out["modulus"] = t.params.modulus();
  out["e"] = t.e;
  out["s"] = t.s;
  out["N"] = t.matrix_size();
  out["elems"] = Json::array();
  for (const auto& g : t.elems) out["elems"].push_back(to_json(g));
  return out;
}

namespace {

template <class E, class Parse>
BarChain<E> chain_from_json(const Json& j, Parse parse_elem) {
  BarChain<E> c{integer_field<int>(j, "degree"), {}};
  const Json& terms = field(j, "terms");
  if (!terms.is_array()) throw SchemaError("terms must be an array");
  for (const auto& t : terms) {
    const auto coeff = integer_field<std::int64_t>(t, "coeff");
    const Json& tuple = field(t, "tuple");
    if (!tuple.is_array() || tuple.size() != static_cast<std::size_t>(c.degree))
      throw SchemaError("tuple length must equal the chain degree");
    std::vector<E> elems;
    for (const auto& x : tuple) elems.push_back(parse_elem(x));
    c.add(elems, coeff);
  }
  return c;
}

}  // namespace

BarChain<OMatrix> matrix_chain_from_json(const Json& j, const RingParams& params) {
  return chain_from_json<OMatrix>(j, [&](const Json& x) { return matrix_from_json(x, params); });
}

Json to_json(const BarChain<OMatrix>& c) {
  Json out;
  out["degree"] = c.degree;
  out["terms"] = Json::array();
  for (const auto& [t, k] : c.terms) {
    Json tuple = Json::array();
    for (const auto& g : t) tuple.push_back(to_json(g));
    out["terms"].push_back(Json{{"coeff", k}, {"tuple", tuple}});
  }
  return out;
}

namespace {

PermutationGroup::Elem permutation_from_json(const Json& x, int degree) {
  if (!x.is_array() || x.size() != static_cast<std::size_t>(degree))
    throw SchemaError("permutation must list " + std::to_string(degree) + " one-line images");
  std::vector<int> images;
  std::vector<bool> seen(static_cast<std::size_t>(degree), false);
  for (const auto& v : x) {
    if (!v.is_number_integer()) throw SchemaError("permutation images must be integers");
    const int k = v.get<int>();
    if (k < 1 || k > degree || seen[static_cast<std::size_t>(k - 1)]) throw SchemaError("not a permutation");
    seen[static_cast<std::size_t>(k - 1)] = true;
    images.push_back(k);
  }
  return PermutationGroup::from_one_line(images);
}

}  // namespace

BarChain<PermutationGroup::Elem> permutation_chain_from_json(const Json& j, int degree) {
  return chain_from_json<PermutationGroup::Elem>(j, [&](const Json& x) { return permutation_from_json(x, degree); });
}

Json to_json(const BarChain<PermutationGroup::Elem>& c) {
  Json out;
  out["degree"] = c.degree;
  out["terms"] = Json::array();
  for (const auto& [t, k] : c.terms) {
    Json tuple = Json::array();
    for (const auto& g : t) tuple.push_back(PermutationGroup::to_one_line(g));
    out["terms"].push_back(Json{{"coeff", k}, {"tuple", tuple}});
  }
  return out;
}

CosetSystem<PermutationGroup> permutation_cosets_from_json(const Json& j) {
  const int degree = integer_field<int>(j, "degree");
  const Json& sub = field(j, "subgroup");
  std::optional<PermutationGroup> group;
  if (sub.is_string()) {
    if (sub == "alternating") group = PermutationGroup::alternating_in_symmetric(degree);
    else if (sub == "dihedral" && degree == 4) group = PermutationGroup::dihedral_in_s4();
    else throw SchemaError("unknown named subgroup");
  } else if (sub.is_array()) {
    std::vector<PermutationGroup::Elem> gens;
    for (const auto& g : sub) gens.push_back(permutation_from_json(g, degree));
    group.emplace(degree, gens);
  } else {
    throw SchemaError("subgroup must be a name or a list of generators");
  }
  if (!j.contains("reps")) return right_cosets(*group);
  std::vector<PermutationGroup::Elem> reps;
  for (const auto& r : j["reps"]) reps.push_back(permutation_from_json(r, degree));
  CosetSystem<PermutationGroup> cs(*group, reps);
  if (cs.size() != right_cosets(*group).size()) throw PreconditionError("representatives do not cover every coset");
  return cs;
}

CosetSystem<MatrixGroup> matrix_cosets_from_json(const Json& j) {
  return right_cosets(MatrixGroup(ring_from_json(j), integer_field<int>(j, "N"), integer_field<int>(j, "e")));
}

std::string rational_string(const mpq_class& q) { return simplex::to_string(q); }

}  // namespace padicreg::io
