#include "flipwide/report.hpp"

#include <algorithm>
#include <vector>

#include "flipwide/errors.hpp"

namespace flipwide {

namespace {

Json ids(const VertexSet& s) { return Json(s.members()); }

Json sorted_ids(const Sequence& s) {
  std::vector<Vertex> v = s.items();
  std::sort(v.begin(), v.end());
  return Json(v);
}

Json flip_list(std::vector<Flip> flips) {
  std::sort(flips.begin(), flips.end());
  Json out = Json::array();
  for (const Flip& f : flips) out.push_back(flip_to_json(f));
  return out;
}

std::vector<Vertex> read_ids(const Json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string("result JSON: ") + what + " must be an array");
  std::vector<Vertex> out;
  for (const Json& x : j) {
    if (!x.is_number_unsigned()) throw InputError(std::string("result JSON: ") + what + " holds a non-id");
    out.push_back(x.get<Vertex>());
  }
  return out;
}

}  // namespace

Json flip_to_json(const Flip& f) { return Json{{"a", ids(f.a)}, {"b", ids(f.b)}}; }

Json result_to_json(const FlipWideResult& res, std::size_t radius, bool verified) {
  Json trace = Json::array();
  for (const LevelTrace& t : res.trace) {
    trace.push_back(Json{{"case", to_string(t.parity)},
                         {"flips", flip_list(t.flips)},
                         {"level", t.level},
                         {"samples", Json(t.samples)},
                         {"shortcut", t.shortcut},
                         {"surviving", sorted_ids(t.surviving)}});
  }
  return Json{{"b_set", sorted_ids(res.b_set)},
              {"flips", flip_list(res.flip_set.flips())},
              {"radius", radius},
              {"trace", trace},
              {"verified", verified}};
}

LoadedResult result_from_json(const Json& doc) {
  const Json& j = (doc.is_object() && doc.contains("result")) ? doc.at("result") : doc;
  if (!j.is_object()) throw InputError("result JSON: expected an object");
  for (const char* key : {"b_set", "flips"})
    if (!j.contains(key)) throw InputError(std::string("result JSON: missing \"") + key + "\"");
  LoadedResult out;
  std::vector<Vertex> b = read_ids(j.at("b_set"), "b_set");
  std::sort(b.begin(), b.end());
  if (std::adjacent_find(b.begin(), b.end()) != b.end())
    throw InputError("result JSON: b_set repeats a vertex");
  out.result.b_set = Sequence(std::move(b));
  if (!j.at("flips").is_array()) throw InputError("result JSON: flips must be an array");
  for (const Json& f : j.at("flips")) {
    if (!f.is_object() || !f.contains("a") || !f.contains("b"))
      throw InputError("result JSON: flip needs \"a\" and \"b\"");
    out.result.flip_set.toggle(Flip{VertexSet(read_ids(f.at("a"), "flip side")),
                                    VertexSet(read_ids(f.at("b"), "flip side"))});
  }
  if (j.contains("radius")) {
    if (!j.at("radius").is_number_unsigned()) throw InputError("result JSON: radius must be a non-negative integer");
    out.radius = j.at("radius").get<std::size_t>();
  }
  if (j.contains("verified")) out.verified = j.at("verified").is_boolean() && j.at("verified").get<bool>();
  return out;
}

Json witness_to_json(const WitnessSearch& search, bool valid) {
  Json out{{"mode", to_string(search.mode)}, {"nodes", search.nodes}, {"found", search.witness.has_value()}};
  if (search.witness) {
    out["a"] = search.witness->a;
    out["b"] = search.witness->b;
    out["k"] = search.witness->k;
    out["valid"] = valid;
  }
  return out;
}

}  // namespace flipwide
