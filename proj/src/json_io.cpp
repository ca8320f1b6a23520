#include "gptnoise/json_io.hpp"

#include <fstream>

namespace gptnoise::io {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

template <typename T>
T get(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_error(std::string("missing key \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    parse_error(std::string("bad value for \"") + key + "\": " + e.what());
  }
}

json vector_json(const RVector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

RVector vector_from_json(const json& j) {
  std::vector<double> v;
  try {
    v = j.get<std::vector<double>>();
  } catch (const json::exception& e) {
    parse_error(std::string("expected a numeric array: ") + e.what());
  }
  return Eigen::Map<RVector>(v.data(), static_cast<Index>(v.size()));
}

}  // namespace

json to_json(const CMatrix& m) {
  std::vector<double> re, im;
  for (Index i = 0; i < m.rows(); ++i)
    for (Index k = 0; k < m.cols(); ++k) {
      re.push_back(m(i, k).real());
      im.push_back(m(i, k).imag());
    }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

CMatrix matrix_from_json(const json& j) {
  const auto rows = get<Index>(j, "rows");
  const auto cols = get<Index>(j, "cols");
  const auto re = get<std::vector<double>>(j, "re");
  const auto im = j.contains("im") ? get<std::vector<double>>(j, "im") : std::vector<double>(re.size(), 0.0);
  if (rows < 0 || cols < 0 || re.size() != static_cast<std::size_t>(rows * cols) || im.size() != re.size())
    parse_error("matrix entry count does not match rows x cols");
  CMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index k = 0; k < cols; ++k) {
      const auto idx = static_cast<std::size_t>(i * cols + k);
      m(i, k) = Complex(re[idx], im[idx]);
    }
  return m;
}

json to_json(const StateSpace& s) {
  switch (s.kind()) {
    case SpaceKind::Polytope: {
      const auto& v = s.as_polytope().vertices;
      json verts = json::array();
      for (Index c = 0; c < v.cols(); ++c) verts.push_back(vector_json(v.col(c)));
      return {{"type", "polytope"}, {"vertices", verts}};
    }
    case SpaceKind::Quantum: return {{"type", "quantum"}, {"dim", s.as_quantum().dim}};
    case SpaceKind::Process: return {{"type", "process"}, {"dimA", s.as_process().dim_a}, {"dimB", s.as_process().dim_b}};
  }
  return {};
}

StateSpace space_from_json(const json& j) {
  const auto type = get<std::string>(j, "type");
  if (type == "quantum") return StateSpace::quantum(get<Index>(j, "dim"));
  if (type == "process") return StateSpace::process(get<Index>(j, "dimA"), get<Index>(j, "dimB"));
  if (type == "polytope") {
    const auto& verts = j.at("vertices");
    if (!verts.is_array() || verts.empty()) parse_error("polytope needs a non-empty vertex list");
    const RVector first = vector_from_json(verts.front());
    RMatrix v(first.size(), static_cast<Index>(verts.size()));
    for (std::size_t c = 0; c < verts.size(); ++c) {
      const RVector col = vector_from_json(verts[c]);
      if (col.size() != first.size()) parse_error("vertices have different dimensions");
      v.col(static_cast<Index>(c)) = col;
    }
    return StateSpace::polytope(v);
  }
  parse_error("unknown space type \"" + type + "\"");
}

json to_json(const Effect& e) {
  if (e.kind() == SpaceKind::Polytope) return {{"linear", vector_json(e.as_polytope().linear)}, {"offset", e.as_polytope().offset}};
  return to_json(e.op().matrix());
}

Effect effect_from_json(const json& j, const StateSpace& space) {
  switch (space.kind()) {
    case SpaceKind::Polytope:
      if (j.contains("vertex_values")) return polytope_effect_from_vertex_values(space, vector_from_json(j.at("vertex_values")));
      return PolytopeEffect{vector_from_json(j.at("linear")), get<double>(j, "offset")};
    case SpaceKind::Quantum: return QuantumEffect{HermitianMatrix(matrix_from_json(j), 1e-9)};
    case SpaceKind::Process: return ProcessEffect{HermitianMatrix(matrix_from_json(j), 1e-9)};
  }
  parse_error("unsupported space");
}

json to_json(const Observable& a) {
  json effects = json::array();
  for (const auto& e : a.effects()) effects.push_back(to_json(e));
  return {{"v", kSchemaVersion}, {"space", to_json(a.space())}, {"outcomes", a.outcomes()}, {"effects", effects}};
}

Observable observable_from_json(const json& j) {
  if (j.contains("v") && get<int>(j, "v") != kSchemaVersion) parse_error("unsupported schema version");
  if (!j.contains("space")) parse_error("missing key \"space\"");
  const StateSpace space = space_from_json(j.at("space"));
  const auto& effects = j.at("effects");
  if (!effects.is_array()) parse_error("effects must be an array");
  std::vector<int> outcomes;
  if (j.contains("outcomes")) {
    outcomes = get<std::vector<int>>(j, "outcomes");
  } else {
    for (std::size_t x = 0; x < effects.size(); ++x) outcomes.push_back(static_cast<int>(x));
  }
  std::vector<Effect> e;
  for (const auto& item : effects) e.push_back(effect_from_json(item, space));
  return Observable(space, std::move(outcomes), std::move(e));
}

json to_json(const PPOVM& a) {
  json effects = json::array();
  for (const auto& e : a.observable().effects()) effects.push_back(to_json(e.op().matrix()));
  return {{"dimA", a.dims().dim_a}, {"dimB", a.dims().dim_b}, {"rho", to_json(a.rho().matrix())}, {"outcomes", a.observable().outcomes()}, {"effects", effects}};
}

PPOVM ppovm_from_json(const json& j) {
  const auto space = StateSpace::process(get<Index>(j, "dimA"), get<Index>(j, "dimB"));
  const auto& effects = j.at("effects");
  if (!effects.is_array()) parse_error("effects must be an array");
  std::vector<int> outcomes;
  if (j.contains("outcomes")) {
    outcomes = get<std::vector<int>>(j, "outcomes");
  } else {
    for (std::size_t x = 0; x < effects.size(); ++x) outcomes.push_back(static_cast<int>(x));
  }
  std::vector<Effect> e;
  for (const auto& item : effects) e.push_back(ProcessEffect{HermitianMatrix(matrix_from_json(item), 1e-9)});
  PPOVM p(Observable(space, std::move(outcomes), std::move(e)));
  if (j.contains("rho")) {
    const CMatrix declared = matrix_from_json(j.at("rho"));
    if (declared.rows() != p.rho().dim() || (declared - p.rho().matrix()).cwiseAbs().maxCoeff() > kNormalizationTol)
      throw Error(ErrorCode::InvalidPPOVM, "declared rho does not match the effects' normalization");
  }
  return p;
}

Observable any_observable_from_json(const json& j) {
  if (j.is_object() && j.contains("dimA") && !j.contains("space")) return ppovm_from_json(j).observable();
  return observable_from_json(j);
}

json to_json(const ClassicalChannel& c) {
  json rows = json::array();
  for (Index i = 0; i < c.matrix().rows(); ++i) rows.push_back(vector_json(c.matrix().row(i).transpose()));
  return {{"in", c.in_outcomes()}, {"out", c.out_outcomes()}, {"matrix", rows}};
}

ClassicalChannel channel_from_json(const json& j) {
  const auto in = get<std::vector<int>>(j, "in");
  const auto out = get<std::vector<int>>(j, "out");
  const auto& rows = j.at("matrix");
  if (!rows.is_array() || rows.size() != in.size()) parse_error("channel matrix needs one row per input outcome");
  RMatrix m(static_cast<Index>(in.size()), static_cast<Index>(out.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const RVector r = vector_from_json(rows[i]);
    if (r.size() != static_cast<Index>(out.size())) parse_error("channel row length differs from the output count");
    m.row(static_cast<Index>(i)) = r.transpose();
  }
  return ClassicalChannel(in, out, m);
}

json to_json(const NoiseDecomposition& d) {
  return {{"t", d.t},
          {"exact", d.exact},
          {"method", std::string(to_string(d.method))},
          {"outcomes", d.trivial.outcomes()},
          {"probs", vector_json(d.trivial.probs())},
          {"residual", to_json(d.residual)}};
}

json to_json(const JointObservable& g) { return {{"factors", g.factors()}, {"base", to_json(g.base())}}; }

JointObservable joint_from_json(const json& j) {
  return JointObservable(observable_from_json(j.at("base")), get<std::vector<std::vector<int>>>(j, "factors"));
}

json to_json(const CompatibilityVerdict& v) {
  json out = {{"status", std::string(to_string(v.status))},
              {"inequality_value", v.inequality_value},
              {"threshold", v.threshold},
              {"noise_contents", v.noise_contents}};
  if (v.weights) out["weights"] = vector_json(*v.weights);
  if (v.joint) out["witness"] = to_json(*v.joint);
  if (v.certificate) out["certificate"] = vector_json(*v.certificate);
  return out;
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    parse_error(path + ": " + e.what());
  }
}

}  // namespace gptnoise::io
