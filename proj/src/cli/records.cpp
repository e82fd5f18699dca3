#include "dfl/cli/records.hpp"

#include <cmath>

namespace dfl::cli {

OutputRecord solution_record(const SolutionRecord& s) {
  Json p = Json::object();
  p["n"] = s.instance.n();
  p["a"] = s.instance.a();
  p["t"] = s.instance.t();
  p["r"] = s.instance.r();
  p["classification"] = std::string(to_string(s.classification));
  p["witness"] = s.witness;
  if (s.decomposition) {
    const auto& d = *s.decomposition;
    p["decomposition"] = Json{{"x1", d.x1}, {"l1", d.l1}, {"x2", d.x2}, {"l2", d.l2}, {"ordered", d.ordered}};
  } else {
    p["decomposition"] = nullptr;
  }
  return {"solution", std::move(p)};
}

OutputRecord bound_check_record(const BoundCheckResult& r) {
  Json p = Json::object();
  p["name"] = r.name;
  p["domain_checked"] = r.domain_checked;
  p["passed"] = r.passed();
  p["checked"] = r.checked;
  p["failures"] = r.failures;
  if (std::isfinite(r.margin))
    p["margin"] = r.margin;
  else
    p["margin"] = nullptr;
  p["tolerance"] = r.tolerance;
  Json ce = Json::array();
  for (const auto& c : r.counterexamples) ce.push_back(Json{{"at", c.at}, {"slack", c.slack}});
  p["counterexamples"] = std::move(ce);
  p["notes"] = r.notes;
  return {"bound_check", std::move(p)};
}

Json to_json(const AbcTriple& t) {
  Json j = Json::object();
  j["a"] = t.a;
  j["b"] = t.b;
  j["c"] = t.c;
  j["rad"] = t.rad;
  j["quality"] = t.quality;
  j["explicit_ok"] = t.explicit_ok;
  j["explicit_margin"] = t.explicit_margin;
  return j;
}

Json to_json(const ProofTriple& p) {
  Json j = Json::object();
  j["x"] = p.x;
  j["j1"] = p.j1;
  j["j2"] = p.j2;
  j.update(to_json(p.triple));
  j["d"] = p.d;
  j["x_over_d"] = p.x_over_d;
  j["rhs"] = p.rhs;
  j["holds"] = p.holds;
  return j;
}

Json to_json(const BlockReport& b) {
  Json j = Json::object();
  j["x"] = b.x;
  j["k"] = b.k;
  j["lpf"] = b.lpf;
  j["val2"] = b.val2;
  j["all_composite"] = b.all_composite;
  j["term_radicals"] = b.term_radicals;
  return j;
}

OutputRecord triple_record(const AbcTriple& t) {
  Json p = Json::object();
  p["source"] = "direct";
  p.update(to_json(t));
  return {"triple", std::move(p)};
}

OutputRecord proof_triple_record(const ProofTriple& pt) {
  Json p = Json::object();
  p["source"] = "proof";
  p.update(to_json(pt));
  return {"triple", std::move(p)};
}

OutputRecord summary_record(std::string name, Json fields) {
  Json p = Json::object();
  p["name"] = std::move(name);
  p.update(fields);
  return {"scan_summary", std::move(p)};
}

}  // namespace dfl::cli
