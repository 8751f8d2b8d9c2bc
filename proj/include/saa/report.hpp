#pragma once

#include <sstream>
#include <string>

#include "saa/classify.hpp"

namespace saa {

/// Frozen textual report for `describe`; byte-stable across runs.
inline std::string describe_text(const Algebra& A) {
  Fingerprint fp = fingerprint(A);
  std::ostringstream os;
  os << "p: " << A.field().p() << "\n";
  os << "dim: " << A.dim() << "\n";
  os << "nilpotent: " << (fp.nil_class ? "yes" : "no") << "\n";
  if (fp.nil_class) os << "class: " << *fp.nil_class << "\n";
  os << "rank: " << fp.rank << "\n";
  os << "lcs dims:";
  for (auto d : fp.lcs_dims) os << ' ' << d;
  os << "\n";
  os << "ucs dims:";
  for (auto d : fp.ucs_dims) os << ' ' << d;
  os << "\n";
  os << "center dim: " << fp.dim_center << "\n";
  os << "center isotropic: " << (fp.center_isotropic ? "yes" : "no") << "\n";
  os << "dim L2L2: " << fp.dim_l2l2 << "\n";
  return os.str();
}

inline std::string presentation_summary(const NilpotentPresentation& p) {
  if (p.empty()) return "-";
  std::ostringstream os;
  bool first = true;
  for (const auto& [t, v] : p.alpha()) {
    if (!first) os << ';';
    os << "x(" << t[0] << ',' << t[1] << ',' << t[2] << ")=" << v;
    first = false;
  }
  for (const auto& [t, v] : p.beta()) {
    if (!first) os << ';';
    os << "y(" << t[0] << ',' << t[1] << ',' << t[2] << ")=" << v;
    first = false;
  }
  return os.str();
}

/// Frozen census table. With `lines` only the machine-readable
/// "class <label> count <k>" rows are emitted.
inline std::string census_text(const CensusReport& r, bool lines = false) {
  std::ostringstream os;
  if (lines) {
    for (const CensusRow& row : r.rows)
      os << "class " << row.label.str() << " count " << row.count << "\n";
    return os.str();
  }
  os << "census n=" << r.n << " p=" << r.p << "\n";
  os << "presentations: " << r.total << "\n";
  os << "classes: " << r.rows.size() << "\n";
  std::size_t width = 0;
  for (const CensusRow& row : r.rows) width = std::max(width, row.label.str().size());
  for (const CensusRow& row : r.rows) {
    std::string label = row.label.str();
    label.resize(width, ' ');
    os << label << "  count=" << row.count;
    os << "  class=" << (row.fp.nil_class ? std::to_string(*row.fp.nil_class) : "none");
    os << "  center=" << row.fp.dim_center;
    os << "  rep=" << (row.rep ? presentation_summary(*row.rep) : "-") << "\n";
  }
  return os.str();
}

}  // namespace saa
