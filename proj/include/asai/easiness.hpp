#pragma once

// Family easiness labels, the per-m scan of the twisting operator, and the
// classwise cross-check between fixed classes and centralizer witnesses.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "asai/asai.hpp"
#include "asai/errors.hpp"
#include "asai/group_law.hpp"
#include "asai/points.hpp"

namespace asai {

enum class EasyLabel { kEasy, kNotEasy, kUnknown };

inline const char* to_string(EasyLabel l) {
  switch (l) {
    case EasyLabel::kEasy:
      return "Easy";
    case EasyLabel::kNotEasy:
      return "NotEasy";
    case EasyLabel::kUnknown:
      return "Unknown";
  }
  return "Unknown";
}

struct FamilyLabel {
  std::string family;
  EasyLabel label = EasyLabel::kUnknown;
  std::string provenance;
};

inline FamilyLabel family_oracle(const GroupLaw& law) {
  switch (law.family) {
    case Family::kUnipotentUpper:
      return {"ul(" + std::to_string(law.family_param) + ")", EasyLabel::kEasy,
              "upper unitriangular matrices are the simplest easy unipotent group"};
    case Family::kAdditivePower:
      return {"ga_power(" + std::to_string(law.family_param) + ")", EasyLabel::kEasy,
              "commutative: every centralizer is the whole connected group"};
    case Family::kNonExample:
      if (law.p > 2) {
        return {"n2", EasyLabel::kNotEasy, "not easy when the characteristic is larger than 2"};
      }
      return {"n2", EasyLabel::kUnknown, "no claim in characteristic 2"};
    case Family::kCustom:
      break;
  }
  return {law.name, EasyLabel::kUnknown, "user law"};
}

enum class VerdictKind { kNotEasy, kEasyUpTo, kInconclusive };

inline const char* to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::kNotEasy:
      return "NotEasy";
    case VerdictKind::kEasyUpTo:
      return "EasyUpTo";
    case VerdictKind::kInconclusive:
      return "Inconclusive";
  }
  return "Inconclusive";
}

struct EasinessVerdict {
  VerdictKind kind = VerdictKind::kInconclusive;
  std::optional<Point> witness;  // NotEasy: representative of the first moved class
  std::uint32_t m = 0;           // NotEasy: level of the witness; otherwise last m completed
  std::vector<bool> trivial;     // per m = 1..m reached
  std::string note;              // Inconclusive: the cap that stopped the scan
};

using ClassProvider = std::function<std::shared_ptr<const ClassTable>(const FiniteGroupView&)>;

struct ScanCaps {
  std::uint64_t max_order = FiniteGroupView::kDefaultMaxOrder;
  std::uint32_t max_extension = 0;  // cap on N for Lang witnesses; 0 selects the default
  ClassProvider classes;            // defaults to conjugacy_classes

  std::uint32_t degree_cap(const FiniteGroupView& view) const {
    return max_extension == 0 ? 0 : max_extension * view.degree();
  }
  std::shared_ptr<const ClassTable> table(const FiniteGroupView& view) const {
    if (classes) return classes(view);
    return std::make_shared<const ClassTable>(conjugacy_classes(view));
  }
};

/// Runs norm_map for m = 1..max_m. The first nontrivial level yields NotEasy
/// (re-checked by recomputing the moved class); all trivial yields
/// EasyUpTo(max_m), which is evidence only. A size cap yields Inconclusive.
inline EasinessVerdict easiness_scan(const GroupLaw& law, FieldTower& tower, std::uint64_t q, std::uint32_t max_m,
                                     const ScanCaps& caps = {}) {
  if (max_m == 0) throw ParameterError("max_m must be positive");
  EasinessVerdict v;
  for (std::uint32_t m = 1; m <= max_m; ++m) {
    std::unique_ptr<FiniteGroupView> view;
    try {
      view = std::make_unique<FiniteGroupView>(law, tower, q, m, caps.max_order);
    } catch (const ResourceLimitError& e) {
      v.kind = VerdictKind::kInconclusive;
      v.note = e.what();
      return v;
    }
    const auto table = caps.table(*view);
    const auto r = norm_map(*view, table, {caps.degree_cap(*view), true});
    const bool trivial = is_asai_trivial(r);
    v.trivial.push_back(trivial);
    v.m = m;
    if (!trivial) {
      const auto c = moved_classes(r).front();
      const auto again = detail::norm_image(*view, table->classes[c].rep, caps.degree_cap(*view)).first;
      if (table->class_of[again] != r.perm[c]) throw InternalInconsistency("moved class is not reproducible");
      v.kind = VerdictKind::kNotEasy;
      v.witness = view->point(table->classes[c].rep);
      return v;
    }
  }
  v.kind = VerdictKind::kEasyUpTo;
  return v;
}

struct CrosscheckRow {
  std::uint32_t m = 0;
  std::uint32_t cls = 0;
  bool fixed = false;
  bool witness = false;
  bool agree() const { return fixed == witness; }
};

enum class CrosscheckStatus { kConsistent, kUnresolved, kContradiction };

inline const char* to_string(CrosscheckStatus s) {
  switch (s) {
    case CrosscheckStatus::kConsistent:
      return "CONSISTENT";
    case CrosscheckStatus::kUnresolved:
      return "UNRESOLVED";
    case CrosscheckStatus::kContradiction:
      return "CONTRADICTION";
  }
  return "UNRESOLVED";
}

struct LevelResult {
  NormMapResult norm;
  std::vector<std::optional<Lemma21Witness>> lemma21;  // per class
};

struct CrosscheckReport {
  FamilyLabel label;
  EasinessVerdict verdict;
  std::vector<LevelResult> levels;  // m = 1..verdict.trivial.size()
  std::vector<CrosscheckRow> rows;
  CrosscheckStatus status = CrosscheckStatus::kUnresolved;
};

/// Classwise fixed/witness matrix for m = 1..max_m plus the comparison with
/// the family label. A fixed/witness disagreement throws InternalInconsistency.
inline CrosscheckReport theorem22_crosscheck(const GroupLaw& law, FieldTower& tower, std::uint64_t q,
                                             std::uint32_t max_m, const ScanCaps& caps = {}) {
  if (max_m == 0) throw ParameterError("max_m must be positive");
  CrosscheckReport out;
  out.label = family_oracle(law);
  auto& v = out.verdict;
  bool moved_somewhere = false;
  std::uint32_t last_m = 0;
  for (std::uint32_t m = 1; m <= max_m; ++m) {
    std::unique_ptr<FiniteGroupView> view;
    try {
      view = std::make_unique<FiniteGroupView>(law, tower, q, m, caps.max_order);
    } catch (const ResourceLimitError& e) {
      v.note = e.what();
      break;
    }
    const auto table = caps.table(*view);
    LevelResult level{norm_map(*view, table, {caps.degree_cap(*view), true}), {}};
    const auto& r = level.norm;
    for (std::uint32_t c = 0; c < table->size(); ++c) {
      level.lemma21.push_back(lemma21_witness(*view, r, c));
      CrosscheckRow row{m, c, r.perm[c] == c, level.lemma21.back().has_value()};
      if (!row.agree()) {
        throw InternalInconsistency("fixed/witness disagreement at m=" + std::to_string(m) + ", class " +
                                    std::to_string(c));
      }
      out.rows.push_back(row);
    }
    const bool trivial = is_asai_trivial(r);
    v.trivial.push_back(trivial);
    last_m = m;
    if (!trivial && !moved_somewhere) {
      moved_somewhere = true;
      v.kind = VerdictKind::kNotEasy;
      v.witness = view->point(table->classes[moved_classes(r).front()].rep);
      v.m = m;
    }
    out.levels.push_back(std::move(level));
  }
  if (!moved_somewhere) {
    v.kind = v.note.empty() ? VerdictKind::kEasyUpTo : VerdictKind::kInconclusive;
    v.m = last_m;
  }

  switch (out.label.label) {
    case EasyLabel::kEasy:
      out.status = moved_somewhere ? CrosscheckStatus::kContradiction : CrosscheckStatus::kConsistent;
      break;
    case EasyLabel::kNotEasy:
      out.status = moved_somewhere ? CrosscheckStatus::kConsistent : CrosscheckStatus::kUnresolved;
      break;
    case EasyLabel::kUnknown:
      out.status = CrosscheckStatus::kUnresolved;
      break;
  }
  return out;
}

}  // namespace asai
