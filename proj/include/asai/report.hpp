#pragma once

// JSON reports. Field order is fixed (ordered_json) and nothing
// run-dependent is written unless explicitly requested, so identical
// configurations give byte-identical output.

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"

#include "asai/asai.hpp"
#include "asai/easiness.hpp"
#include "asai/group_dsl.hpp"
#include "asai/group_law.hpp"
#include "asai/points.hpp"

namespace asai {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kReportSchemaVersion = 1;

struct ReportCaps {
  std::uint64_t max_order = FiniteGroupView::kDefaultMaxOrder;
  std::uint32_t max_extension = 0;
};

/// Coefficients over F_p, constant term first, padded to the field degree.
inline Json element_json(const FieldElement& x) {
  Json out = Json::array();
  const auto& c = x.coeffs();
  for (std::uint32_t i = 0; i < x.field().degree; ++i) out.push_back(i < c.size() ? c[i] : 0);
  return out;
}

inline Json point_json(const Point& pt) {
  Json out = Json::array();
  for (const auto& c : pt.coords) out.push_back(element_json(c));
  return out;
}

inline const char* family_name(Family f) {
  switch (f) {
    case Family::kUnipotentUpper:
      return "ul";
    case Family::kAdditivePower:
      return "ga_power";
    case Family::kNonExample:
      return "n2";
    case Family::kCustom:
      return "custom";
  }
  return "custom";
}

inline Json group_json(const GroupLaw& law) {
  Json g;
  g["name"] = law.name;
  g["family"] = family_name(law.family);
  g["dim"] = law.dim;
  g["law"] = print_group_dsl(law);
  return g;
}

inline Json caps_json(const ReportCaps& caps) {
  Json c;
  c["max_order"] = caps.max_order;
  c["max_ext"] = caps.max_extension;
  return c;
}

inline Json report_header(const std::string& command, const GroupLaw& law, std::uint64_t q) {
  Json r;
  r["version"] = kToolVersion;
  r["schema"] = kReportSchemaVersion;
  r["command"] = command;
  r["group"] = group_json(law);
  r["p"] = law.p;
  r["q"] = q;
  return r;
}

inline Json validation_json(const ValidationReport& v) {
  Json j;
  j["identity"] = v.identity;
  j["associativity"] = v.associativity;
  j["associativity_exhaustive"] = v.associativity_exhaustive;
  j["inverse"] = v.inverse;
  j["frobenius_homomorphism"] = v.frobenius_homomorphism;
  j["triples_checked"] = v.triples_checked;
  j["failures"] = v.failures;
  j["ok"] = v.ok();
  return j;
}

inline Json classes_json(const FiniteGroupView& view, const ClassTable& table) {
  Json out = Json::array();
  for (const auto& c : table.classes) {
    Json e;
    e["rep"] = point_json(view.point(c.rep));
    e["size"] = c.size();
    out.push_back(std::move(e));
  }
  return out;
}

/// With `full`, the witness points y and z are included.
inline Json lemma21_json(const std::optional<Lemma21Witness>& w, bool full) {
  if (!w) return nullptr;
  Json j;
  if (full) {
    j["y"] = point_json(w->y);
    j["z_degree"] = w->z.level().degree;
    j["z"] = point_json(w->z);
  }
  j["extension"] = w->extension;
  j["in_centralizer"] = w->in_centralizer;
  j["twisted_identity"] = w->twisted_identity;
  return j;
}

/// Norm map permutation, fixed flags and centralizer witnesses for one level.
inline Json level_json(const NormMapResult& r, const std::vector<std::optional<Lemma21Witness>>& lemma21,
                       bool full_witnesses) {
  Json j;
  j["m"] = r.m;
  j["order"] = r.table->class_of.size();
  Json classes = Json::array();
  for (std::size_t c = 0; c < r.perm.size(); ++c) {
    Json e;
    e["rep"] = point_json(r.witnesses[c].g);
    e["size"] = r.table->classes[c].size();
    classes.push_back(std::move(e));
  }
  j["classes"] = std::move(classes);
  j["n1_perm"] = r.perm;
  Json fixed = Json::array();
  for (std::size_t c = 0; c < r.perm.size(); ++c) fixed.push_back(r.perm[c] == c);
  j["fixed"] = std::move(fixed);
  j["moved"] = moved_classes(r).size();
  j["permutation_order"] = permutation_order(r.perm);
  Json l21 = Json::array();
  for (const auto& w : lemma21) l21.push_back(lemma21_json(w, full_witnesses));
  j["lemma21"] = std::move(l21);
  return j;
}

inline Json verdict_json(const EasinessVerdict& v) {
  Json j;
  j["kind"] = to_string(v.kind);
  j["m"] = v.m;
  j["witness"] = v.witness ? point_json(*v.witness) : Json(nullptr);
  j["trivial_per_m"] = v.trivial;
  if (v.kind == VerdictKind::kEasyUpTo) j["note"] = "evidence up to m, not a proof";
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

inline Json label_json(const FamilyLabel& l) {
  Json j;
  j["family"] = l.family;
  j["label"] = to_string(l.label);
  j["provenance"] = l.provenance;
  return j;
}

inline Json crosscheck_rows_json(const std::vector<CrosscheckRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) out.push_back(Json::array({r.m, r.cls, r.fixed, r.witness, r.agree()}));
  return out;
}

/// Canonical text: two-space indentation and a trailing newline.
inline std::string dump_report(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace asai
