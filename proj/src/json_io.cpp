#include "sicprob/json_io.hpp"

#include <fstream>
#include <string>

namespace sicprob::json {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::Format, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

Complex decode_complex(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) bad("complex entry must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

template <typename T>
T get(const json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    bad(std::string("field \"") + key + "\": " + e.what());
  }
}

}  // namespace

json encode(const ComplexVector& v) {
  json entries = json::array();
  for (Index i = 0; i < v.size(); ++i) entries.push_back({v(i).real(), v(i).imag()});
  return {{"dim", v.size()}, {"entries", std::move(entries)}};
}

json encode(const ComplexMatrix& m) {
  json entries = json::array();
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) entries.push_back({m(r, c).real(), m(r, c).imag()});
  return {{"dim", m.rows()}, {"entries", std::move(entries)}};
}

json encode(const GroupSpec& g) {
  if (g.kind() == GroupSpec::Kind::Single) return {{"kind", "single"}, {"d", g.base_dim()}};
  return {{"kind", "tensor_power"}, {"base_d", g.base_dim()}, {"k", g.factors()}};
}

json encode(const Fiducial& f) {
  return {{"label", f.label}, {"dim", f.dim}, {"group", encode(f.group)}, {"vector", encode(f.vector)}};
}

json encode(const ProbVector& p) { return {{"outcomes", p.outcomes()}, {"values", p.values}}; }

json encode(const ConditionalMatrix& c) {
  json rows = json::array();
  for (Index j = 0; j < c.values.rows(); ++j) {
    json row = json::array();
    for (Index i = 0; i < c.values.cols(); ++i) row.push_back(c.values(j, i));
    rows.push_back(std::move(row));
  }
  return {{"ground", c.ground_outcomes()}, {"sky", c.sky_outcomes()}, {"rows", std::move(rows)}};
}

json encode(const VerificationReport& r) {
  return {{"dim", r.dim},
          {"max_overlap_deviation", r.max_overlap_deviation},
          {"max_resolution_deviation", r.max_resolution_deviation},
          {"pass", r.pass},
          {"tolerance", r.tolerance}};
}

ComplexVector decode_vector(const json& j) {
  const auto dim = get<Index>(j, "dim");
  const json& entries = field(j, "entries");
  if (dim < 1 || !entries.is_array() || static_cast<Index>(entries.size()) != dim) {
    bad("vector: entries must hold exactly dim values");
  }
  ComplexVector v(dim);
  for (Index i = 0; i < dim; ++i) v(i) = decode_complex(entries[static_cast<std::size_t>(i)]);
  return v;
}

ComplexMatrix decode_matrix(const json& j) {
  const auto dim = get<Index>(j, "dim");
  const json& entries = field(j, "entries");
  if (dim < 1 || !entries.is_array() || static_cast<Index>(entries.size()) != dim * dim) {
    bad("matrix: entries must hold exactly dim^2 values");
  }
  ComplexMatrix m(dim, dim);
  for (Index r = 0; r < dim; ++r)
    for (Index c = 0; c < dim; ++c) m(r, c) = decode_complex(entries[static_cast<std::size_t>(r * dim + c)]);
  return m;
}

GroupSpec decode_group(const json& j) {
  const auto kind = get<std::string>(j, "kind");
  if (kind == "single") return GroupSpec::single(get<int>(j, "d"));
  if (kind == "tensor_power") return GroupSpec::tensor_power(get<int>(j, "base_d"), get<int>(j, "k"));
  bad("group: unknown kind \"" + kind + "\"");
}

Fiducial decode_fiducial(const json& j) {
  const GroupSpec group = decode_group(field(j, "group"));
  ComplexVector v = decode_vector(field(j, "vector"));
  if (get<Index>(j, "dim") != v.size()) bad("fiducial: dim does not match vector");
  const std::string label = j.contains("label") ? j.at("label").get<std::string>() : std::string();
  return make_fiducial(std::move(v), group, label);
}

std::vector<Fiducial> decode_fiducials(const json& j) {
  std::vector<Fiducial> out;
  if (j.is_array()) {
    for (const auto& rec : j) out.push_back(decode_fiducial(rec));
  } else {
    out.push_back(decode_fiducial(j));
  }
  return out;
}

ProbVector decode_prob_vector(const json& j) {
  const auto n = get<std::size_t>(j, "outcomes");
  auto values = get<std::vector<double>>(j, "values");
  if (values.size() != n) bad("prob vector: outcomes does not match values length");
  return ProbVector{std::move(values)};
}

ConditionalMatrix decode_conditional(const json& j) {
  const auto ground = get<Index>(j, "ground");
  const auto sky = get<Index>(j, "sky");
  const auto rows = get<std::vector<std::vector<double>>>(j, "rows");
  if (static_cast<Index>(rows.size()) != ground) bad("conditional: row count does not match ground");
  ConditionalMatrix c;
  c.values.resize(ground, sky);
  for (Index r = 0; r < ground; ++r) {
    if (static_cast<Index>(rows[static_cast<std::size_t>(r)].size()) != sky) bad("conditional: ragged rows");
    for (Index i = 0; i < sky; ++i) c.values(r, i) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)];
  }
  return c;
}

json read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    bad(path.string() + ": " + e.what());
  }
}

void write_file(const std::filesystem::path& path, const json& j, int indent) {
  std::ofstream out(path);
  if (!out) bad("cannot write " + path.string());
  out << j.dump(indent) << '\n';
}

}  // namespace sicprob::json
