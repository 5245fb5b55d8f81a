#include "utgrad/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "utgrad/error.hpp"

namespace utgrad {

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    const std::string what = e.what();
    const auto pos = what.find(": ", what.find("parse error"));
    const std::string msg = pos == std::string::npos ? what : what.substr(pos + 2);
    throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON: " + msg);
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str(), path);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError(path + ": cannot open file for writing");
  out << text;
  if (!out) throw InputError(path + ": write failed");
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

FieldSpec parse_field(const std::string& text) {
  if (text == "Q" || text == "rational") return FieldSpec::rational();
  std::string digits = (!text.empty() && (text[0] == 'F' || text[0] == 'p')) ? text.substr(1) : text;
  if (digits.empty() || digits.size() > 9 || digits.find_first_not_of("0123456789") != std::string::npos)
    throw InputError("malformed field '" + text + "' (expected F<p>, <p> or Q)");
  return FieldSpec::prime(static_cast<std::uint32_t>(std::stoul(digits)));
}

Json field_to_json(FieldSpec f) {
  if (f.is_prime()) return Json{{"kind", "prime"}, {"p", f.modulus()}};
  return Json{{"kind", "rational"}};
}

Json group_to_json(const AbelianGroup& g) {
  return Json{{"invariant_factors", g.invariant_factors()}, {"free_rank", g.free_rank()}};
}

Json element_to_json(const GroupElement& g) { return Json(g.coords); }

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw InputError("at " + (path.empty() ? std::string("/") : path) + ": " + msg);
}

const Json& member(const Json& j, const std::string& path, const char* key) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, std::string("missing key \"") + key + "\"");
  return *it;
}

void only_keys(const Json& j, const std::string& path, std::initializer_list<const char*> keys) {
  if (!j.is_object()) fail(path, "expected an object");
  std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) fail(path, "unexpected key \"" + k + "\"");
}

const Json& array(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

std::int64_t integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<std::int64_t>();
}

Scalar scalar(const Json& j, const std::string& path, FieldSpec f) {
  try {
    if (j.is_string()) return Scalar::parse(f, j.get<std::string>());
    if (j.is_number_integer()) return Scalar::from_int(f, j.get<std::int64_t>());
  } catch (const Error& e) {
    fail(path, e.what());
  }
  fail(path, "expected a scalar string");
}

FieldSpec field_at(const Json& j, const std::string& path) {
  const Json& kind = member(j, path, "kind");
  if (kind == "rational") {
    only_keys(j, path, {"kind"});
    return FieldSpec::rational();
  }
  if (kind != "prime") fail(path + "/kind", "expected \"prime\" or \"rational\"");
  only_keys(j, path, {"kind", "p"});
  const auto p = integer(member(j, path, "p"), path + "/p");
  if (p < 2 || p > 0xffffffffLL) fail(path + "/p", "not a prime: " + std::to_string(p));
  try {
    return FieldSpec::prime(static_cast<std::uint32_t>(p));
  } catch (const Error& e) {
    fail(path + "/p", e.what());
  }
}

AbelianGroup group_at(const Json& j, const std::string& path) {
  only_keys(j, path, {"invariant_factors", "free_rank"});
  std::vector<std::int64_t> factors;
  const Json& fs = array(member(j, path, "invariant_factors"), path + "/invariant_factors");
  for (std::size_t i = 0; i < fs.size(); ++i)
    factors.push_back(integer(fs[i], path + "/invariant_factors/" + std::to_string(i)));
  const auto free = integer(member(j, path, "free_rank"), path + "/free_rank");
  if (free < 0 || free > 8) fail(path + "/free_rank", "out of range");
  try {
    return AbelianGroup(factors, static_cast<int>(free));
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

GroupElement element_at(const Json& j, const std::string& path, const AbelianGroup& group) {
  array(j, path);
  GroupElement g;
  for (std::size_t i = 0; i < j.size(); ++i) g.coords.push_back(integer(j[i], path + "/" + std::to_string(i)));
  try {
    group.check(g);
  } catch (const Error& e) {
    fail(path, e.what());
  }
  return g;
}

int size_at(const Json& j, const std::string& path) {
  const auto n = integer(j, path);
  if (n < 1 || n > 64) fail(path, "n out of range");
  return static_cast<int>(n);
}

}  // namespace

FieldSpec field_from_json(const Json& j) { return field_at(j, ""); }
AbelianGroup group_from_json(const Json& j) { return group_at(j, ""); }
GroupElement element_from_json(const Json& j, const AbelianGroup& group) { return element_at(j, "", group); }

Json grading_to_json(const Grading& g) {
  const int n = g.n();
  Json comps = Json::array();
  for (const auto& [deg, s] : g.components()) {
    Json basis = Json::array();
    for (const auto& v : s.basis()) {
      Json entries = Json::array();
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
          entries.push_back(k < i ? std::string("0") : v[ut_index(n, i, k)].to_string());
      basis.push_back(std::move(entries));
    }
    comps.push_back(Json{{"degree", element_to_json(deg)}, {"basis", std::move(basis)}});
  }
  return Json{{"field", field_to_json(g.field())},
              {"n", n},
              {"group", group_to_json(g.group())},
              {"components", std::move(comps)}};
}

Grading grading_from_json(const Json& j) {
  if (!j.is_object()) fail("", "expected a grading object");
  only_keys(j, "", {"field", "n", "group", "components"});
  const FieldSpec f = field_at(member(j, "", "field"), "/field");
  const int n = size_at(member(j, "", "n"), "/n");
  const AbelianGroup group = group_at(member(j, "", "group"), "/group");
  const Json& comps = array(member(j, "", "components"), "/components");
  std::map<GroupElement, Subspace> out;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    const std::string cp = "/components/" + std::to_string(c);
    only_keys(comps[c], cp, {"degree", "basis"});
    GroupElement deg = element_at(member(comps[c], cp, "degree"), cp + "/degree", group);
    if (out.count(deg)) fail(cp + "/degree", "degree " + to_string(deg) + " listed twice");
    const Json& basis = array(member(comps[c], cp, "basis"), cp + "/basis");
    std::vector<Vector> vecs;
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const std::string bp = cp + "/basis/" + std::to_string(b);
      array(basis[b], bp);
      if (basis[b].size() != static_cast<std::size_t>(n) * n)
        fail(bp, "expected " + std::to_string(n * n) + " scalars (row-major n x n), got " +
                     std::to_string(basis[b].size()));
      Vector v = zero_vector(f, ut_dim(n));
      for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
          const std::size_t at = static_cast<std::size_t>(i) * n + k;
          Scalar s = scalar(basis[b][at], bp + "/" + std::to_string(at), f);
          if (k < i) {
            if (!s.is_zero()) fail(bp + "/" + std::to_string(at), "entry below the diagonal is nonzero");
          } else {
            v[ut_index(n, i, k)] = s;
          }
        }
      }
      vecs.push_back(std::move(v));
    }
    out.emplace(std::move(deg), Subspace::span(f, ut_dim(n), vecs));
  }
  return Grading(n, f, group, std::move(out));
}

Json descriptor_to_json(const GradingDescriptor& d) {
  Json j{{"kind", kind_name(d.kind)}, {"n", d.n}, {"group", group_to_json(d.group)}, {"t", element_to_json(d.t)}};
  if (d.g) j["g"] = element_to_json(*d.g);
  Json eta = Json::array();
  for (const auto& e : d.eta) eta.push_back(element_to_json(e));
  j["eta"] = std::move(eta);
  return j;
}

GradingDescriptor descriptor_from_json(const Json& j) {
  if (!j.is_object()) fail("", "expected a descriptor object");
  only_keys(j, "", {"kind", "n", "group", "t", "g", "eta"});
  const Json& kind = member(j, "", "kind");
  GradingDescriptor d;
  if (kind == "elementary") {
    d.kind = GradingDescriptor::Kind::elementary;
  } else if (kind == "type2") {
    d.kind = GradingDescriptor::Kind::type2;
  } else {
    fail("/kind", "expected \"elementary\" or \"type2\"");
  }
  d.n = size_at(member(j, "", "n"), "/n");
  d.group = group_at(member(j, "", "group"), "/group");
  d.t = element_at(member(j, "", "t"), "/t", d.group);
  if (j.contains("g")) d.g = element_at(j["g"], "/g", d.group);
  const Json& eta = array(member(j, "", "eta"), "/eta");
  for (std::size_t i = 0; i < eta.size(); ++i) d.eta.push_back(element_at(eta[i], "/eta/" + std::to_string(i), d.group));
  validate(d);
  return d;
}

bool is_descriptor_json(const Json& j) { return j.is_object() && j.contains("kind"); }

Json census_to_json(const CensusResult& r) {
  Json classes = Json::array();
  for (const auto& c : r.classes) {
    Json e{{"descriptor", descriptor_to_json(c.descriptor)}, {"orbit_size", c.orbit_size}};
    if (r.config.mode != CensusMode::sampled) e["found"] = c.found;
    if (!c.notes.empty()) e["notes"] = c.notes;
    classes.push_back(std::move(e));
  }
  return Json{{"n", r.config.n},
              {"field", field_to_json(r.config.field)},
              {"group", group_to_json(r.config.group)},
              {"mode", mode_name(r.config.mode)},
              {"seed", r.config.seed},
              {"automorphisms", r.automorphisms},
              {"total_gradings", r.total_gradings},
              {"nodes", r.nodes},
              {"graded_classes", r.classes.size()},
              {"elementary_classes", r.elementary_classes()},
              {"type2_classes", r.type2_classes()},
              {"practical_classes", r.practical_classes},
              {"predicted", {{"graded", r.predicted.graded}, {"practical", r.predicted.practical}}},
              {"classes", std::move(classes)},
              {"mismatches", r.mismatches},
              {"ok", r.ok()}};
}

}  // namespace utgrad
