#pragma once

#include <json.hpp>

#include "siqs/numeric.hpp"
#include "siqs/spectra.hpp"

namespace siqs {

// One published-vs-derived discrepancy, emitted into every report.
struct LedgerEntry {
  std::string equation_label;  // stable label into the published reference table
  std::string printed;
  std::string derived;
};

using json = nlohmann::json;

json axis_to_json(const AxisSpec& axis);
json algebra_to_json(const AlgebraSpec& spec);
AlgebraSpec algebra_from_json(const json& j);
json rootlist_to_json(const RootList& roots);
json reps_to_json(const EnumerationResult& res);
json ledger_to_json(const std::vector<LedgerEntry>& entries);

// Published reference comparisons (empty when everything matches).
std::vector<LedgerEntry> ladder_ledger(const PotentialSpec& spec);
std::vector<LedgerEntry> algebra_ledger(const PotentialSpec& spec, const AlgebraSpec& derived);
std::vector<LedgerEntry> phi_ledger(const PhysicalRealization& real);
// Branch p-range comparisons at the standard binding hbar=1, |alpha|=1.
std::vector<LedgerEntry> representation_ledger(const std::string& name, int alpha_sign,
                                               const EnumerationResult& res, int p_max);

// Pretty "E(p)" form such as "(p+3)/2" for linear rational laws.
std::string energy_law_str(const Rational& slope, const Rational& intercept);

}  // namespace siqs
