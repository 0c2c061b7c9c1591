#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "ekr/classification.hpp"
#include "ekr/core.hpp"
#include "ekr/search.hpp"

namespace ekr {

using Json = nlohmann::ordered_json;

inline Json set_to_json(Set s) {
  Json a = Json::array();
  s.for_each([&](int e) { a.push_back(e); });
  return a;
}

inline Json family_to_json(const Family& f) {
  Json j;
  j["n"] = f.n();
  j["k"] = f.k();
  Json sets = Json::array();
  for (Set s : f) sets.push_back(set_to_json(s));
  j["sets"] = sets;
  return j;
}

/// Each set must be strictly ascending; duplicates are reported by name.
inline Family family_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("family JSON must be an object");
  for (const char* key : {"n", "k", "sets"}) {
    if (!j.contains(key)) throw std::invalid_argument(std::string("family JSON lacks \"") + key + "\"");
  }
  if (!j["n"].is_number_integer() || !j["k"].is_number_integer()) {
    throw std::invalid_argument("\"n\" and \"k\" must be integers");
  }
  const Params p{j["n"].get<int>(), j["k"].get<int>()};
  p.validate();
  if (!j["sets"].is_array()) throw std::invalid_argument("\"sets\" must be an array");
  std::vector<Set> members;
  for (const auto& a : j["sets"]) {
    if (!a.is_array()) throw std::invalid_argument("each set must be an array of integers");
    Set s;
    int prev = 0;
    for (const auto& e : a) {
      if (!e.is_number_integer()) throw std::invalid_argument("set " + a.dump() + " has a non-integer entry");
      const int v = e.get<int>();
      if (v < 1 || v > p.n) throw std::invalid_argument("set " + a.dump() + " leaves [" + std::to_string(p.n) + "]");
      if (v <= prev) throw std::invalid_argument("set " + a.dump() + " is not sorted ascending");
      prev = v;
      s.insert(v);
    }
    members.push_back(s);
  }
  return Family(p, std::move(members));
}

inline Family load_family(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  return family_from_json(j);
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

inline void save_family(const std::string& path, const Family& f) { write_text(path, family_to_json(f).dump(2) + "\n"); }

inline Json report_to_json(const ClassificationReport& r) {
  Json j;
  j["is_ekr"] = r.is_ekr;
  j["ekr_center"] = r.is_ekr ? Json(r.ekr_center) : Json(nullptr);
  j["is_hm"] = r.is_hm();
  if (r.hm) {
    j["hm"] = {{"center", r.hm->center}, {"exceptional", set_to_json(r.hm->exceptional)}};
  } else {
    j["hm"] = nullptr;
  }
  j["in_j2"] = r.in_j2();
  if (r.j2) {
    j["j2"] = {{"center", r.j2->center}, {"kernel", set_to_json(r.j2->kernel)}, {"pages", set_to_json(r.j2->pages)}};
  } else {
    j["j2"] = nullptr;
  }
  j["in_g2"] = r.in_g2();
  j["g2"] = r.g2 ? Json{{"core", set_to_json(r.g2->core)}} : Json(nullptr);
  j["in_g3"] = r.in_g3();
  j["g3"] = r.g3 ? Json{{"center", r.g3->center}, {"core", set_to_json(r.g3->core)}} : Json(nullptr);
  j["min_missing_degree"] = r.min_missing_degree;
  return j;
}

inline Json search_result_to_json(const SearchResult& r) {
  Json j;
  j["optimum"] = r.optimum;
  j["status"] = status_name(r.status);
  j["nodes"] = r.nodes;
  j["cuts"] = r.cuts;
  j["seconds"] = r.seconds;
  j["witness_count"] = r.witnesses.size();
  return j;
}

}  // namespace ekr
