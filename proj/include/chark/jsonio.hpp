#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "chark/presentation.hpp"
#include "chark/rep.hpp"

namespace chark {

using nlohmann::json;

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw error(path + ": " + e.what());
  }
  return j;
}

/* {"generators": m, "relators": ["g1 g2 g1^-1 g2^-1", ...],
 *  "orbits": n, "stabilizers": [["g1"], [], ...]} */
inline GAPresentation presentation_from_json(const json& j) {
  GAPresentation P;
  P.gens = j.at("generators").get<int>();
  P.orbits = j.value("orbits", 0);
  NameTable names = NameTable::standard(P.gens);
  for (const auto& r : j.value("relators", json::array()))
    P.relators.push_back(parse_word(r.get<std::string>(), names));
  P.stabilizers.assign(P.orbits, {});
  if (j.contains("stabilizers")) {
    const auto& st = j.at("stabilizers");
    if (static_cast<int>(st.size()) != P.orbits)
      throw error("stabilizers must list one entry per orbit");
    for (int i = 0; i < P.orbits; ++i)
      for (const auto& w : st.at(i)) P.stabilizers[i].push_back(parse_word(w.get<std::string>(), names));
  }
  P.validate();
  return P;
}

inline Rational scalar_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  throw error("scalar must be an integer or a \"num/den\" string");
}

/* {"matrices": [[[a,b],[c,d]], ...], "decorations": [[x,y], ...]}
 * with scalars as integers or "num/den" strings. */
template <class F>
Rep<F> rep_from_json(const json& j, const GAPresentation& P, const FieldCtx<F>& K) {
  Rep<F> r;
  const auto& ms = j.at("matrices");
  const auto& ds = j.at("decorations");
  if (static_cast<int>(ms.size()) != P.gens) throw error("matrix count != generator count");
  if (static_cast<int>(ds.size()) != P.orbits) throw error("decoration count != orbit count");
  auto sc = [&K](const json& x) { return K.from_rational(scalar_from_json(x)); };
  for (const auto& m : ms) {
    if (m.size() != 2 || m.at(0).size() != 2 || m.at(1).size() != 2)
      throw error("matrix must be [[a,b],[c,d]]");
    r.mats.push_back({sc(m.at(0).at(0)), sc(m.at(0).at(1)), sc(m.at(1).at(0)), sc(m.at(1).at(1))});
  }
  for (const auto& d : ds) {
    if (d.size() != 2) throw error("decoration must be [x,y]");
    r.decs.push_back({sc(d.at(0)), sc(d.at(1))});
  }
  std::string why = validate(r, P, K);
  if (!why.empty()) throw error("invalid representation: " + why);
  return r;
}

// accepts one rep object, an array of them, or {"reps": [...]}
template <class F>
std::vector<Rep<F>> reps_from_json(const json& j, const GAPresentation& P, const FieldCtx<F>& K) {
  std::vector<Rep<F>> out;
  const json* arr = &j;
  json tmp;
  if (j.is_object() && j.contains("reps")) arr = &j.at("reps");
  if (arr->is_object()) {
    tmp = json::array({*arr});
    arr = &tmp;
  }
  for (const auto& r : *arr) out.push_back(rep_from_json<F>(r, P, K));
  if (out.empty()) throw error("representation file holds no representations");
  return out;
}

template <class F>
json rep_to_json(const Rep<F>& r, const FieldCtx<F>& K) {
  json ms = json::array();
  for (const auto& m : r.mats)
    ms.push_back(json::array({json::array({K.str(m.a), K.str(m.b)}),
                              json::array({K.str(m.c), K.str(m.d)})}));
  json ds = json::array();
  for (const auto& d : r.decs) ds.push_back(json::array({K.str(d.x), K.str(d.y)}));
  return json{{"matrices", ms}, {"decorations", ds}};
}

}  // namespace chark
