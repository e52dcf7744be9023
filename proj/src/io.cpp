#include "conicfo/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace conicfo {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw InputError(where + ": missing field '" + key + "'");
  return j.at(key);
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) throw InputError(where + ": expected a number");
  return j.get<double>();
}

// null stands for an infinite bound with the given sign.
Vec vector_of(const json& j, const std::string& where, double null_value = std::nan("")) {
  if (!j.is_array()) throw InputError(where + ": expected an array");
  Vec v(static_cast<Index>(j.size()));
  for (size_t i = 0; i < j.size(); ++i) {
    if (j[i].is_null() && !std::isnan(null_value)) v[static_cast<Index>(i)] = null_value;
    else v[static_cast<Index>(i)] = number(j[i], where);
  }
  return v;
}

Index dim_of(const json& j, const std::string& where) {
  const json& d = field(j, "dim", where);
  if (!d.is_number_integer() || d.get<long long>() < 1) throw InputError(where + ": dim must be a positive integer");
  return static_cast<Index>(d.get<long long>());
}

Cone cone_of(const json& j, const std::string& where) {
  const std::string type = field(j, "type", where).get<std::string>();
  if (type == "zero") return Cone::zero(dim_of(j, where));
  if (type == "nonneg") return Cone::nonneg(dim_of(j, where));
  if (type == "soc") return Cone::second_order(dim_of(j, where));
  if (type == "product") {
    const json& parts = field(j, "parts", where);
    if (!parts.is_array()) throw InputError(where + ": parts must be an array");
    std::vector<Cone> cs;
    for (const auto& p : parts) cs.push_back(cone_of(p, where + ".parts"));
    return Cone::product(std::move(cs));
  }
  throw InputError(where + ": unknown cone type '" + type + "'");
}

SimpleSet set_of(const json& j, const std::string& where) {
  const std::string type = field(j, "type", where).get<std::string>();
  const double inf = std::numeric_limits<double>::infinity();
  if (type == "box") {
    return SimpleSet::box(vector_of(field(j, "lower", where), where + ".lower", -inf),
                          vector_of(field(j, "upper", where), where + ".upper", inf));
  }
  if (type == "ball") {
    return SimpleSet::ball(vector_of(field(j, "center", where), where + ".center"),
                           number(field(j, "radius", where), where + ".radius"));
  }
  if (type == "p_power_epigraph") {
    const double cap = j.contains("u1_max") ? number(j.at("u1_max"), where) : inf;
    return SimpleSet::p_power_epigraph(number(field(j, "p", where), where + ".p"), cap);
  }
  if (type == "full") return SimpleSet::full_space(dim_of(j, where));
  throw InputError(where + ": unknown set type '" + type + "'");
}

std::shared_ptr<SeparableQuadratic> objective_of(const json& j, Index n, const std::string& where) {
  const std::string kind = field(j, "kind", where).get<std::string>();
  const double c0 = j.contains("c0") ? number(j.at("c0"), where + ".c0") : 0.0;
  if (kind == "zero") return SeparableQuadratic::zero(n);
  if (kind == "linear") return SeparableQuadratic::linear(vector_of(field(j, "c", where), where + ".c"), c0);
  if (kind == "quadratic_diag") {
    return SeparableQuadratic::quadratic_diag(vector_of(field(j, "d", where), where + ".d"),
                                              vector_of(field(j, "c", where), where + ".c"), c0);
  }
  throw InputError(where + ": unknown objective kind '" + kind + "'");
}

Mat matrix_of(const json& j, Index m, Index n) {
  if (!j.is_array()) throw InputError("G: expected an array");
  Mat G(m, n);
  if (!j.empty() && j[0].is_array()) {
    if (static_cast<Index>(j.size()) != m) throw InputError("G: expected " + std::to_string(m) + " rows");
    for (Index i = 0; i < m; ++i) {
      const Vec row = vector_of(j[static_cast<size_t>(i)], "G row");
      if (row.size() != n) throw InputError("G: row " + std::to_string(i) + " has wrong length");
      G.row(i) = row.transpose();
    }
  } else {
    const Vec flat = vector_of(j, "G");
    if (flat.size() != m * n) throw InputError("G: expected m*n = " + std::to_string(m * n) + " entries");
    for (Index i = 0; i < m; ++i)
      for (Index k = 0; k < n; ++k) G(i, k) = flat[i * n + k];
  }
  return G;
}

json array_of(const Vec& v) {
  json a = json::array();
  for (Index i = 0; i < v.size(); ++i) {
    if (std::isfinite(v[i])) a.push_back(v[i]);
    else a.push_back(nullptr);
  }
  return a;
}

json cone_json(const Cone& K) {
  switch (K.kind()) {
    case Cone::Kind::Zero: return {{"type", "zero"}, {"dim", K.dim()}};
    case Cone::Kind::NonnegOrthant: return {{"type", "nonneg"}, {"dim", K.dim()}};
    case Cone::Kind::SecondOrder: return {{"type", "soc"}, {"dim", K.dim()}};
    case Cone::Kind::Product: {
      json parts = json::array();
      for (const auto& c : K.parts()) parts.push_back(cone_json(c));
      return {{"type", "product"}, {"parts", parts}};
    }
  }
  return {};
}

json set_json(const SimpleSet& U) {
  switch (U.kind()) {
    case SimpleSet::Kind::Box: return {{"type", "box"}, {"lower", array_of(U.lower())}, {"upper", array_of(U.upper())}};
    case SimpleSet::Kind::Ball: return {{"type", "ball"}, {"center", array_of(U.center())}, {"radius", U.radius()}};
    case SimpleSet::Kind::PPowerEpigraph: {
      json j = {{"type", "p_power_epigraph"}, {"p", U.p()}};
      if (std::isfinite(U.u1_max())) j["u1_max"] = U.u1_max();
      return j;
    }
    case SimpleSet::Kind::FullSpace: return {{"type", "full"}, {"dim", U.dim()}};
  }
  return {};
}

}  // namespace

LoadedProblem parse_problem_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("problem file: ") + e.what());
  }
  try {
    const json& jn = field(j, "n", "problem");
    const json& jm = field(j, "m", "problem");
    if (!jn.is_number_integer() || !jm.is_number_integer() || jn.get<long long>() < 1 || jm.get<long long>() < 1)
      throw InputError("problem: n and m must be positive integers");
    const Index n = static_cast<Index>(jn.get<long long>());
    const Index m = static_cast<Index>(jm.get<long long>());
    Mat G = matrix_of(field(j, "G", "problem"), m, n);
    Vec g = vector_of(field(j, "g", "problem"), "g");
    if (g.size() != m) throw InputError("g: expected length " + std::to_string(m));
    Cone K = cone_of(field(j, "cone", "problem"), "cone");
    SimpleSet U = set_of(field(j, "set", "problem"), "set");
    auto f = objective_of(field(j, "objective", "problem"), n, "objective");
    LoadedProblem out{ConicProblem(f, std::move(U), std::move(G), std::move(g), std::move(K)), {}};
    if (j.contains("known")) {
      const json& k = j.at("known");
      if (k.contains("f_star")) out.known.f_star = number(k.at("f_star"), "known.f_star");
      if (k.contains("f_lower")) out.known.f_lower = number(k.at("f_lower"), "known.f_lower");
      if (k.contains("R_d")) out.known.R_d = number(k.at("R_d"), "known.R_d");
      if (k.contains("x_star")) {
        out.known.x_star = vector_of(k.at("x_star"), "known.x_star");
        if (out.known.x_star->size() != m) throw InputError("known.x_star: expected length m");
      }
      if (k.contains("u_star")) {
        out.known.u_star = vector_of(k.at("u_star"), "known.u_star");
        if (out.known.u_star->size() != n) throw InputError("known.u_star: expected length n");
      }
      if (auto ds = out.known.delta_star(); ds && *ds < -1e-12)
        throw InputError("known: f_lower exceeds f_star");
    }
    return out;
  } catch (const json::exception& e) {
    throw InputError(std::string("problem file: ") + e.what());
  }
}

LoadedProblem load_problem_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem_json(ss.str());
}

std::string problem_to_json(const ConicProblem& p, const KnownSolution& known) {
  const auto* q = dynamic_cast<const SeparableQuadratic*>(&p.f());
  if (!q) throw CapabilityError("problem_to_json: only separable quadratic objectives serialize");
  json j;
  j["n"] = p.n();
  j["m"] = p.m();
  json G = json::array();
  for (Index i = 0; i < p.m(); ++i) G.push_back(array_of(p.G().row(i).transpose()));
  j["G"] = G;
  j["g"] = array_of(p.g());
  j["cone"] = cone_json(p.K());
  j["set"] = set_json(p.U());
  json obj;
  switch (q->kind()) {
    case SeparableQuadratic::Kind::Zero: obj = {{"kind", "zero"}}; break;
    case SeparableQuadratic::Kind::Linear: obj = {{"kind", "linear"}, {"c", array_of(q->c())}}; break;
    case SeparableQuadratic::Kind::QuadraticDiag:
      obj = {{"kind", "quadratic_diag"}, {"d", array_of(q->d())}, {"c", array_of(q->c())}};
      break;
  }
  if (q->c0() != 0.0) obj["c0"] = q->c0();
  j["objective"] = obj;
  json k = json::object();
  if (known.f_star) k["f_star"] = *known.f_star;
  if (known.f_lower) k["f_lower"] = *known.f_lower;
  if (known.R_d) k["R_d"] = *known.R_d;
  if (known.x_star) k["x_star"] = array_of(*known.x_star);
  if (known.u_star) k["u_star"] = array_of(*known.u_star);
  j["known"] = k;
  return j.dump(2);
}

void save_problem_json(const ConicProblem& p, const KnownSolution& known, const std::string& path) {
  const std::string text = problem_to_json(p, known);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text << '\n';
  if (!out) throw IoError("write failed for '" + path + "'");
}

std::string report_to_json(const SolveReport& r) {
  json j;
  j["method"] = r.method;
  j["u"] = array_of(r.u);
  if (r.x.size() > 0) j["x"] = array_of(r.x);
  j["outer_iterations"] = r.outer_iterations;
  j["doublings"] = r.doublings;
  j["final_param"] = r.final_param;
  j["infeas"] = r.infeas;
  if (r.subopt_gap) j["subopt_gap"] = *r.subopt_gap;
  j["counters"] = {{"proj_U", r.counters.proj_U},       {"proj_K", r.counters.proj_K},
                   {"proj_Kstar", r.counters.proj_Kstar}, {"matvec_G", r.counters.matvec_G},
                   {"matvec_Gt", r.counters.matvec_Gt}, {"grad_f", r.counters.grad_f}};
  j["precondition_warning"] = r.precondition_warning;
  j["notes"] = r.notes;
  json h = json::array();
  for (const auto& it : r.history) {
    json e = {{"k", it.k}, {"infeas", it.infeas}, {"param", it.param},
              {"projections", it.counters.projections()}};
    if (it.subopt_gap) e["subopt_gap"] = *it.subopt_gap;
    h.push_back(e);
  }
  j["history"] = h;
  return j.dump(2);
}

}  // namespace conicfo
